#include "trilab/encode.hpp"

#include <stdexcept>

namespace trilab {

std::pair<Clause, Clause> encode_relator(const Word3& r) {
    Clause pos, neg;
    pos.reserve(3);
    neg.reserve(3);
    for (const SignedGenerator& l : r.letters) {
        pos.push_back(letter_literal(l));
        neg.push_back(letter_literal(l).complement());
    }
    return {pos, neg};
}

CnfFormula encode_presentation(const Presentation& pres, const std::vector<int>& subset) {
    CnfFormula f;
    f.num_variables = pres.n;
    for (const Word3& r : restrict_relators(pres, subset)) {
        auto [pos, neg] = encode_relator(r);
        f.clauses.push_back(std::move(pos));
        f.clauses.push_back(std::move(neg));
    }
    return f;
}

CnfFormula encode_presentation(const Presentation& pres) {
    std::vector<int> all(static_cast<std::size_t>(pres.n));
    for (int i = 1; i <= pres.n; ++i) all[static_cast<std::size_t>(i) - 1] = i;
    return encode_presentation(pres, all);
}

NaeFormula encode_nae(const Presentation& pres) {
    NaeFormula f;
    f.num_variables = pres.n;
    for (const Word3& r : pres.relators) {
        Clause c;
        c.reserve(3);
        for (const SignedGenerator& l : r.letters) c.push_back(letter_literal(l));
        f.clauses.push_back(std::move(c));
    }
    return f;
}

void append_at_most(std::vector<Clause>& clauses, const std::vector<Literal>& lits, int bound,
                    int& next_aux) {
    const int n = static_cast<int>(lits.size());
    if (bound < 0) throw std::invalid_argument("append_at_most: bound must be >= 0");
    if (bound >= n) return;
    if (bound == 0) {
        for (const Literal& l : lits) clauses.push_back({l.complement()});
        return;
    }
    // Register s(i,j), i in [1, n-1], j in [1, bound]: at least j of the
    // first i literals are true.
    const int base = next_aux - 1;
    auto reg = [&](int i, int j) { return Literal{base + (i - 1) * bound + j, false}; };
    next_aux += (n - 1) * bound;

    auto lit = [&](int i) { return lits[static_cast<std::size_t>(i) - 1]; };
    clauses.push_back({lit(1).complement(), reg(1, 1)});
    for (int j = 2; j <= bound; ++j) clauses.push_back({reg(1, j).complement()});
    for (int i = 2; i <= n - 1; ++i) {
        clauses.push_back({lit(i).complement(), reg(i, 1)});
        clauses.push_back({reg(i - 1, 1).complement(), reg(i, 1)});
        for (int j = 2; j <= bound; ++j) {
            clauses.push_back({lit(i).complement(), reg(i - 1, j - 1).complement(), reg(i, j)});
            clauses.push_back({reg(i - 1, j).complement(), reg(i, j)});
        }
        clauses.push_back({lit(i).complement(), reg(i - 1, bound).complement()});
    }
    clauses.push_back({lit(n).complement(), reg(n - 1, bound).complement()});
}

CnfFormula encode_survivor_query(const Presentation& pres, int k) {
    const int n = pres.n;
    if (k < 0 || k > n) throw std::invalid_argument("survivor query: k must lie in [0, n]");

    CnfFormula f;
    auto activity = [&](int i) { return Literal{n + i, false}; };

    for (const Word3& r : pres.relators) {
        auto [pos, neg] = encode_relator(r);
        Clause guarded_pos, guarded_neg;
        for (const SignedGenerator& l : r.letters) {
            guarded_pos.push_back(activity(l.index).complement());
            guarded_neg.push_back(activity(l.index).complement());
        }
        guarded_pos.insert(guarded_pos.end(), pos.begin(), pos.end());
        guarded_neg.insert(guarded_neg.end(), neg.begin(), neg.end());
        f.clauses.push_back(std::move(guarded_pos));
        f.clauses.push_back(std::move(guarded_neg));
    }

    // |A| >= k  <=>  at most n-k of the activity variables are false.
    std::vector<Literal> deactivated;
    deactivated.reserve(static_cast<std::size_t>(n));
    for (int i = 1; i <= n; ++i) deactivated.push_back(activity(i).complement());
    int next_aux = 2 * n + 1;
    append_at_most(f.clauses, deactivated, n - k, next_aux);

    f.num_variables = next_aux - 1;
    f.roles.assign(static_cast<std::size_t>(f.num_variables), VarRole::counter_aux);
    for (int v = 1; v <= n; ++v) f.roles[static_cast<std::size_t>(v) - 1] = VarRole::generator_sign;
    for (int v = n + 1; v <= 2 * n; ++v)
        f.roles[static_cast<std::size_t>(v) - 1] = VarRole::activity;
    return f;
}

}  // namespace trilab
