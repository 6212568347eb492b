#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace trilab {

/// A propositional literal. Convention: x^1 = x, x^-1 = not x.
struct Literal {
    int variable;  // >= 1
    bool negated;

    int encoded() const { return negated ? -variable : variable; }
    static Literal from_encoded(int lit) { return {lit < 0 ? -lit : lit, lit < 0}; }
    Literal complement() const { return {variable, !negated}; }
    friend bool operator==(const Literal&, const Literal&) = default;
    friend auto operator<=>(const Literal&, const Literal&) = default;
};

/// Nonempty list of literals; duplicates are permitted and preserved.
using Clause = std::vector<Literal>;

/// Role of a variable in an encoding; kept for DIMACS interchange.
enum class VarRole : std::uint8_t {
    generator_sign,  // x_i: sign of generator i in an induced assignment
    activity,        // a_i: generator i belongs to the active subset
    counter_aux,     // sequential-counter register
};

/// Plain CNF. An empty clause list denotes the true formula.
struct CnfFormula {
    int num_variables = 0;
    std::vector<Clause> clauses;
    std::vector<VarRole> roles;  // size num_variables; defaults to generator_sign

    VarRole role(int var) const {
        return roles.empty() ? VarRole::generator_sign
                             : roles[static_cast<std::size_t>(var) - 1];
    }
};

/// Conjunction of 3-literal clauses under not-all-equal semantics: each
/// clause must contain at least one true and at least one false literal.
struct NaeFormula {
    int num_variables = 0;
    std::vector<Clause> clauses;  // each of length exactly 3
};

/// Truth assignment indexed by variable id 1..num_variables.
struct Assignment {
    std::vector<std::uint8_t> values;

    bool value(int var) const { return values[static_cast<std::size_t>(var) - 1] != 0; }
    bool value(const Literal& l) const { return value(l.variable) != l.negated; }
    int num_variables() const { return static_cast<int>(values.size()); }
};

/// DIMACS CNF text: header `p cnf <vars> <clauses>`, one 0-terminated clause
/// per line, duplicate literals verbatim. Variable roles, when mixed, are
/// recorded as `c roles <tag> <lo> <hi>` comment lines before the header.
std::string to_dimacs(const CnfFormula& f);

/// Same clause layout with a `c semantics nae` marker comment.
std::string to_dimacs(const NaeFormula& f);

/// Parses DIMACS CNF. Rejects malformed headers, out-of-range literals,
/// empty clauses, missing terminators and clause-count mismatches.
CnfFormula from_dimacs(std::string_view text);

}  // namespace trilab
