#include "trilab/cnf.hpp"

#include <charconv>
#include <sstream>
#include <stdexcept>

namespace trilab {

namespace {

const char* role_tag(VarRole r) {
    switch (r) {
        case VarRole::generator_sign: return "x";
        case VarRole::activity: return "a";
        case VarRole::counter_aux: return "counter";
    }
    return "x";
}

void append_role_comments(std::string& out, const CnfFormula& f) {
    if (f.roles.empty()) return;
    bool mixed = false;
    for (VarRole r : f.roles)
        if (r != VarRole::generator_sign) mixed = true;
    if (!mixed) return;
    // Emit maximal runs of equal role as `c roles <tag> <lo> <hi>`.
    int lo = 1;
    for (int v = 2; v <= f.num_variables + 1; ++v) {
        if (v > f.num_variables || f.role(v) != f.role(lo)) {
            out += "c roles ";
            out += role_tag(f.role(lo));
            out += ' ';
            out += std::to_string(lo);
            out += ' ';
            out += std::to_string(v - 1);
            out += '\n';
            lo = v;
        }
    }
}

void append_clauses(std::string& out, const std::vector<Clause>& clauses) {
    for (const Clause& c : clauses) {
        for (const Literal& l : c) {
            out += std::to_string(l.encoded());
            out += ' ';
        }
        out += "0\n";
    }
}

}  // namespace

std::string to_dimacs(const CnfFormula& f) {
    std::string out;
    append_role_comments(out, f);
    out += "p cnf " + std::to_string(f.num_variables) + " " + std::to_string(f.clauses.size()) +
           "\n";
    append_clauses(out, f.clauses);
    return out;
}

std::string to_dimacs(const NaeFormula& f) {
    std::string out = "c semantics nae\n";
    out += "p cnf " + std::to_string(f.num_variables) + " " + std::to_string(f.clauses.size()) +
           "\n";
    append_clauses(out, f.clauses);
    return out;
}

CnfFormula from_dimacs(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string line;
    CnfFormula f;
    long declared_clauses = -1;
    bool saw_header = false;
    std::vector<std::pair<std::string, std::pair<int, int>>> role_runs;

    // Header section: comments (incl. role records) until the p-line.
    while (std::getline(in, line)) {
        std::istringstream ls(line);
        std::string tok;
        if (!(ls >> tok)) continue;  // blank line
        if (tok == "c") {
            std::string kind;
            if (ls >> kind && kind == "roles") {
                std::string tag;
                int lo = 0, hi = 0;
                if (ls >> tag >> lo >> hi) role_runs.push_back({tag, {lo, hi}});
            }
            continue;
        }
        if (tok != "p") throw std::runtime_error("dimacs: expected 'p cnf' header");
        std::string fmt;
        long nv = -1;
        if (!(ls >> fmt >> nv >> declared_clauses) || fmt != "cnf" || nv < 0 ||
            declared_clauses < 0)
            throw std::runtime_error("dimacs: malformed 'p cnf' header");
        if (ls >> tok) throw std::runtime_error("dimacs: trailing tokens in header");
        f.num_variables = static_cast<int>(nv);
        saw_header = true;
        break;
    }
    if (!saw_header) throw std::runtime_error("dimacs: missing 'p cnf' header");

    // Body: whitespace-separated integers, clauses terminated by 0.
    Clause current;
    std::string tok;
    while (in >> tok) {
        if (tok == "c") {  // comment line inside body
            std::getline(in, line);
            continue;
        }
        int lit = 0;
        auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), lit);
        if (ec != std::errc() || ptr != tok.data() + tok.size())
            throw std::runtime_error("dimacs: invalid literal token '" + tok + "'");
        if (lit == 0) {
            if (current.empty()) throw std::runtime_error("dimacs: empty clause");
            f.clauses.push_back(std::move(current));
            current.clear();
            continue;
        }
        const int var = lit < 0 ? -lit : lit;
        if (var > f.num_variables)
            throw std::runtime_error("dimacs: literal exceeds declared variable count");
        current.push_back(Literal::from_encoded(lit));
    }
    if (!current.empty()) throw std::runtime_error("dimacs: clause missing 0 terminator");
    if (static_cast<long>(f.clauses.size()) != declared_clauses)
        throw std::runtime_error("dimacs: clause count does not match header");

    if (!role_runs.empty()) {
        f.roles.assign(static_cast<std::size_t>(f.num_variables), VarRole::generator_sign);
        for (const auto& [tag, range] : role_runs) {
            VarRole role = VarRole::generator_sign;
            if (tag == "a") role = VarRole::activity;
            else if (tag == "counter") role = VarRole::counter_aux;
            else if (tag != "x") continue;
            for (int v = range.first; v <= range.second; ++v) {
                if (v < 1 || v > f.num_variables)
                    throw std::runtime_error("dimacs: role range out of bounds");
                f.roles[static_cast<std::size_t>(v) - 1] = role;
            }
        }
    }
    return f;
}

}  // namespace trilab
