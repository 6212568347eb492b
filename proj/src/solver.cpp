#include "trilab/solver.hpp"

#include <algorithm>
#include <chrono>
#include <stdexcept>
#include <vector>

namespace trilab {

bool evaluate(const CnfFormula& f, const Assignment& eta) {
    if (eta.num_variables() != f.num_variables)
        throw std::invalid_argument("evaluate: assignment size does not match formula");
    for (const Clause& c : f.clauses) {
        bool sat = false;
        for (const Literal& l : c)
            if (eta.value(l)) {
                sat = true;
                break;
            }
        if (!sat) return false;
    }
    return true;
}

bool evaluate_nae(const NaeFormula& f, const Assignment& eta) {
    if (eta.num_variables() != f.num_variables)
        throw std::invalid_argument("evaluate_nae: assignment size does not match formula");
    for (const Clause& c : f.clauses) {
        bool any_true = false, any_false = false;
        for (const Literal& l : c) (eta.value(l) ? any_true : any_false) = true;
        if (!any_true || !any_false) return false;
    }
    return true;
}

namespace {

Assignment assignment_from_mask(int nv, std::uint32_t mask) {
    Assignment eta;
    eta.values.resize(static_cast<std::size_t>(nv));
    for (int v = 1; v <= nv; ++v)
        eta.values[static_cast<std::size_t>(v) - 1] = (mask >> (v - 1)) & 1u;
    return eta;
}

}  // namespace

BruteForceResult brute_force(const CnfFormula& f, bool count_models) {
    if (f.num_variables < 0 || f.num_variables > 26)
        throw std::invalid_argument("brute_force: limited to 26 variables");
    BruteForceResult res;
    const std::uint64_t total = 1ull << f.num_variables;
    for (std::uint64_t mask = 0; mask < total; ++mask) {
        bool sat = true;
        for (const Clause& c : f.clauses) {
            bool clause_sat = false;
            for (const Literal& l : c) {
                const bool val = ((mask >> (l.variable - 1)) & 1u) != l.negated;
                if (val) {
                    clause_sat = true;
                    break;
                }
            }
            if (!clause_sat) {
                sat = false;
                break;
            }
        }
        if (sat) {
            if (!res.verdict.model) {
                res.verdict.status = SolveStatus::satisfiable;
                res.verdict.model =
                    assignment_from_mask(f.num_variables, static_cast<std::uint32_t>(mask));
            }
            ++res.model_count;
            if (!count_models) return res;
        }
    }
    if (!res.verdict.model) res.verdict.status = SolveStatus::unsatisfiable;
    return res;
}

std::optional<Assignment> brute_force_nae(const NaeFormula& f) {
    if (f.num_variables < 0 || f.num_variables > 26)
        throw std::invalid_argument("brute_force_nae: limited to 26 variables");
    const std::uint64_t total = 1ull << f.num_variables;
    for (std::uint64_t mask = 0; mask < total; ++mask) {
        bool ok = true;
        for (const Clause& c : f.clauses) {
            bool any_true = false, any_false = false;
            for (const Literal& l : c) {
                const bool val = ((mask >> (l.variable - 1)) & 1u) != l.negated;
                (val ? any_true : any_false) = true;
            }
            if (!any_true || !any_false) {
                ok = false;
                break;
            }
        }
        if (ok) return assignment_from_mask(f.num_variables, static_cast<std::uint32_t>(mask));
    }
    return std::nullopt;
}

namespace {

// Internal literal encoding: 2v positive, 2v+1 negative (v is 1-based).
inline int pos_lit(int v) { return 2 * v; }
inline int lit_var(int l) { return l >> 1; }
inline int lit_neg(int l) { return l ^ 1; }

struct Watch {
    std::int32_t cref;
    std::int32_t blocker;
};

class Engine {
public:
    Engine(const CnfFormula& f, const SolverOptions& opts) : formula_(f), opts_(opts) {
        nv_ = f.num_variables;
        value_.assign(static_cast<std::size_t>(nv_) + 1, 0);
        level_.assign(static_cast<std::size_t>(nv_) + 1, 0);
        reason_.assign(static_cast<std::size_t>(nv_) + 1, -1);
        seen_.assign(static_cast<std::size_t>(nv_) + 1, 0);
        watches_.assign(2 * static_cast<std::size_t>(nv_) + 2, {});
        trail_.reserve(static_cast<std::size_t>(nv_));
    }

    Verdict run() {
        const auto start = std::chrono::steady_clock::now();
        if (opts_.budget_ms > 0) deadline_ = start + std::chrono::milliseconds(opts_.budget_ms);

        Verdict out;
        out.status = load() ? search() : SolveStatus::unsatisfiable;
        if (out.status == SolveStatus::satisfiable) {
            Assignment model;
            model.values.resize(static_cast<std::size_t>(nv_));
            for (int v = 1; v <= nv_; ++v)
                model.values[static_cast<std::size_t>(v) - 1] =
                    value_[static_cast<std::size_t>(v)] > 0;
            if (!evaluate(formula_, model))
                throw std::logic_error("solver returned a non-model; internal invariant broken");
            out.model = std::move(model);
        }
        out.stats = stats_;
        out.stats.elapsed_ms =
            std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
                .count();
        return out;
    }

private:
    int lit_value(int l) const {  // 1 true, -1 false, 0 unassigned
        const int v = value_[static_cast<std::size_t>(lit_var(l))];
        return (l & 1) ? -v : v;
    }

    void enqueue(int l, int reason) {
        const int v = lit_var(l);
        value_[static_cast<std::size_t>(v)] = (l & 1) ? -1 : 1;
        level_[static_cast<std::size_t>(v)] = current_level_;
        reason_[static_cast<std::size_t>(v)] = reason;
        trail_.push_back(l);
    }

    // Copies the formula into the arena: duplicate literals collapsed,
    // tautologies dropped, units enqueued. The public formula object is
    // untouched. Returns false on an immediate root contradiction.
    bool load() {
        std::vector<int> scratch;
        for (const Clause& c : formula_.clauses) {
            scratch.clear();
            for (const Literal& l : c) {
                if (l.variable < 1 || l.variable > nv_)
                    throw std::invalid_argument("solve: literal outside declared variables");
                scratch.push_back(pos_lit(l.variable) | (l.negated ? 1 : 0));
            }
            std::sort(scratch.begin(), scratch.end());
            scratch.erase(std::unique(scratch.begin(), scratch.end()), scratch.end());
            bool tautology = false;
            for (std::size_t i = 0; i + 1 < scratch.size(); ++i)
                if (scratch[i + 1] == lit_neg(scratch[i])) tautology = true;
            if (tautology) continue;
            if (scratch.empty()) return false;
            if (scratch.size() == 1) {
                const int l = scratch[0];
                if (lit_value(l) == -1) return false;
                if (lit_value(l) == 0) enqueue(l, -1);
                continue;
            }
            add_clause(scratch);
        }
        if (propagate() >= 0) return false;
        return eliminate_pure_literals();
    }

    int add_clause(const std::vector<int>& lits) {
        const int cref = static_cast<int>(arena_.size());
        arena_.push_back(static_cast<int>(lits.size()));
        arena_.insert(arena_.end(), lits.begin(), lits.end());
        watches_[static_cast<std::size_t>(lits[0])].push_back({cref, lits[1]});
        watches_[static_cast<std::size_t>(lits[1])].push_back({cref, lits[0]});
        return cref;
    }

    // Root-level pure-literal elimination to a fixpoint: a variable whose
    // occurrences in not-yet-satisfied clauses all share one polarity gets
    // that polarity at level 0.
    bool eliminate_pure_literals() {
        for (;;) {
            std::vector<std::uint8_t> occurs(2 * static_cast<std::size_t>(nv_) + 2, 0);
            for (std::size_t at = 0; at < arena_.size(); at += 1 + arena_[at]) {
                const int size = arena_[at];
                const int* lits = arena_.data() + at + 1;
                bool sat = false;
                for (int k = 0; k < size && !sat; ++k) sat = lit_value(lits[k]) == 1;
                if (sat) continue;
                for (int k = 0; k < size; ++k) occurs[static_cast<std::size_t>(lits[k])] = 1;
            }
            bool changed = false;
            for (int v = 1; v <= nv_; ++v) {
                if (value_[static_cast<std::size_t>(v)] != 0) continue;
                const bool pos = occurs[static_cast<std::size_t>(pos_lit(v))];
                const bool neg = occurs[static_cast<std::size_t>(pos_lit(v)) + 1];
                if (pos == neg) continue;  // mixed or absent: leave to search
                enqueue(pos ? pos_lit(v) : pos_lit(v) + 1, -1);
                changed = true;
            }
            if (!changed) return true;
            if (propagate() >= 0) return false;  // cannot happen; kept as a guard
        }
    }

    int propagate() {
        while (qhead_ < trail_.size()) {
            const int p = trail_[qhead_++];
            const int false_lit = lit_neg(p);
            auto& ws = watches_[static_cast<std::size_t>(false_lit)];
            std::size_t i = 0, j = 0;
            while (i < ws.size()) {
                const Watch w = ws[i++];
                if (lit_value(w.blocker) == 1) {
                    ws[j++] = w;
                    continue;
                }
                int* lits = arena_.data() + w.cref + 1;
                const int size = arena_[static_cast<std::size_t>(w.cref)];
                if (lits[0] == false_lit) std::swap(lits[0], lits[1]);
                const int first = lits[0];
                if (first != w.blocker && lit_value(first) == 1) {
                    ws[j++] = {w.cref, first};
                    continue;
                }
                bool moved = false;
                for (int k = 2; k < size; ++k) {
                    if (lit_value(lits[k]) != -1) {
                        std::swap(lits[1], lits[k]);
                        watches_[static_cast<std::size_t>(lits[1])].push_back({w.cref, first});
                        moved = true;
                        break;
                    }
                }
                if (moved) continue;
                ws[j++] = {w.cref, first};
                if (lit_value(first) == -1) {  // conflict
                    while (i < ws.size()) ws[j++] = ws[i++];
                    ws.resize(j);
                    qhead_ = trail_.size();
                    return w.cref;
                }
                enqueue(first, w.cref);
                ++stats_.propagations;
            }
            ws.resize(j);
        }
        return -1;
    }

    // First-UIP conflict analysis with reason-based clause minimization.
    void analyze(int confl, std::vector<int>& learnt, int& backjump_level) {
        learnt.assign(1, 0);
        int counter = 0;
        int p = -1;
        std::size_t index = trail_.size();
        for (;;) {
            const int* lits = arena_.data() + confl + 1;
            const int size = arena_[static_cast<std::size_t>(confl)];
            for (int k = 0; k < size; ++k) {
                const int q = lits[k];
                if (q == p) continue;
                const int v = lit_var(q);
                if (!seen_[static_cast<std::size_t>(v)] && level_[static_cast<std::size_t>(v)] > 0) {
                    seen_[static_cast<std::size_t>(v)] = 1;
                    if (level_[static_cast<std::size_t>(v)] == current_level_)
                        ++counter;
                    else
                        learnt.push_back(q);
                }
            }
            while (!seen_[static_cast<std::size_t>(lit_var(trail_[--index]))]) {}
            p = trail_[index];
            seen_[static_cast<std::size_t>(lit_var(p))] = 0;
            if (--counter == 0) break;
            confl = reason_[static_cast<std::size_t>(lit_var(p))];
        }
        learnt[0] = lit_neg(p);

        // Drop literals whose reason clause lies entirely inside the rest of
        // the learnt clause (or at level 0).
        std::size_t kept = 1;
        for (std::size_t i = 1; i < learnt.size(); ++i) {
            const int v = lit_var(learnt[i]);
            const int r = reason_[static_cast<std::size_t>(v)];
            bool redundant = r >= 0;
            if (redundant) {
                const int* lits = arena_.data() + r + 1;
                const int size = arena_[static_cast<std::size_t>(r)];
                for (int k = 0; k < size; ++k) {
                    const int uv = lit_var(lits[k]);
                    if (uv == v) continue;
                    if (!seen_[static_cast<std::size_t>(uv)] &&
                        level_[static_cast<std::size_t>(uv)] > 0) {
                        redundant = false;
                        break;
                    }
                }
            }
            if (!redundant) learnt[kept++] = learnt[i];
        }
        for (std::size_t i = kept; i < learnt.size(); ++i)
            seen_[static_cast<std::size_t>(lit_var(learnt[i]))] = 0;
        learnt.resize(kept);

        backjump_level = 0;
        if (learnt.size() > 1) {
            std::size_t max_i = 1;
            for (std::size_t i = 2; i < learnt.size(); ++i)
                if (level_[static_cast<std::size_t>(lit_var(learnt[i]))] >
                    level_[static_cast<std::size_t>(lit_var(learnt[max_i]))])
                    max_i = i;
            std::swap(learnt[1], learnt[max_i]);
            backjump_level = level_[static_cast<std::size_t>(lit_var(learnt[1]))];
        }
        for (std::size_t i = 0; i < learnt.size(); ++i)
            seen_[static_cast<std::size_t>(lit_var(learnt[i]))] = 0;
    }

    void backjump(int target_level) {
        while (!trail_.empty()) {
            const int v = lit_var(trail_.back());
            if (level_[static_cast<std::size_t>(v)] <= target_level) break;
            value_[static_cast<std::size_t>(v)] = 0;
            reason_[static_cast<std::size_t>(v)] = -1;
            if (v < next_var_) next_var_ = v;
            trail_.pop_back();
        }
        qhead_ = trail_.size();
        current_level_ = target_level;
    }

    bool out_of_time() {
        if (opts_.budget_ms <= 0) return false;
        return std::chrono::steady_clock::now() >= deadline_;
    }

    SolveStatus search() {
        std::vector<int> learnt;
        for (;;) {
            const int confl = propagate();
            if (confl >= 0) {
                if (current_level_ == 0) return SolveStatus::unsatisfiable;
                ++stats_.conflicts;
                int backjump_level = 0;
                analyze(confl, learnt, backjump_level);
                backjump(backjump_level);
                if (learnt.size() == 1) {
                    enqueue(learnt[0], -1);
                } else {
                    const int cref = add_clause(learnt);
                    enqueue(learnt[0], cref);
                }
                if ((stats_.conflicts & 1023) == 0 && out_of_time())
                    return SolveStatus::indeterminate;
            } else {
                while (next_var_ <= nv_ && value_[static_cast<std::size_t>(next_var_)] != 0)
                    ++next_var_;
                if (next_var_ > nv_) return SolveStatus::satisfiable;
                ++stats_.decisions;
                ++current_level_;
                enqueue(pos_lit(next_var_), -1);  // lowest index, true first
                if ((stats_.decisions & 8191) == 0 && out_of_time())
                    return SolveStatus::indeterminate;
            }
        }
    }

    const CnfFormula& formula_;
    SolverOptions opts_;
    int nv_ = 0;
    std::vector<int> arena_;  // [size, lits...] blocks, originals then learnt
    std::vector<std::vector<Watch>> watches_;
    std::vector<signed char> value_;
    std::vector<int> level_;
    std::vector<int> reason_;
    std::vector<char> seen_;
    std::vector<int> trail_;
    std::size_t qhead_ = 0;
    int current_level_ = 0;
    int next_var_ = 1;
    SolveStats stats_;
    std::chrono::steady_clock::time_point deadline_{};
};

}  // namespace

Verdict solve(const CnfFormula& f, const SolverOptions& options) {
    Engine engine(f, options);
    return engine.run();
}

}  // namespace trilab
