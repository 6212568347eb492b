#pragma once

#include <utility>
#include <vector>

#include "trilab/cnf.hpp"
#include "trilab/words.hpp"

namespace trilab {

/// Literal read off a letter: x_i for s_i, not x_i for s_i^-1.
inline Literal letter_literal(SignedGenerator l) { return {l.index, l.sign < 0}; }

/// The two clauses of a relator: (x_i^e v x_j^e v x_k^e) and its literal-wise
/// complement. Duplicate literals from repeated letters are preserved.
std::pair<Clause, Clause> encode_relator(const Word3& r);

/// Conjunction of encode_relator over the relators supported on the subset,
/// in relator order. Variables are 1..n regardless of the subset.
CnfFormula encode_presentation(const Presentation& pres, const std::vector<int>& subset);

/// Full-subset obstruction formula (two clauses per relator).
CnfFormula encode_presentation(const Presentation& pres);

/// One 3-literal NAE clause per relator (the first clause of encode_relator).
NaeFormula encode_nae(const Presentation& pres);

/// Appends a sequential-counter encoding of "at most `bound` of `lits` are
/// true" (Sinz-style LTSeq). Registers are fresh variables allocated from
/// next_aux upward; next_aux is advanced past them.
void append_at_most(std::vector<Clause>& clauses, const std::vector<Literal>& lits, int bound,
                    int& next_aux);

/// Activity-guarded query: satisfiable iff some subset A with |A| >= k makes
/// the restricted obstruction formula satisfiable. Variables: x_i = i,
/// a_i = n+i, counter registers from 2n+1. Each relator contributes its two
/// clauses prefixed with the guards (not a_i v not a_j v not a_k); the
/// cardinality side is "at most n-k of the not-a_i are true".
CnfFormula encode_survivor_query(const Presentation& pres, int k);

}  // namespace trilab
