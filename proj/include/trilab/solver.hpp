#pragma once

#include <cstdint>
#include <optional>

#include "trilab/cnf.hpp"

namespace trilab {

enum class SolveStatus : std::uint8_t {
    satisfiable,
    unsatisfiable,
    indeterminate,  // per-instance budget exhausted; never a verdict
};

struct SolveStats {
    std::int64_t decisions = 0;
    std::int64_t propagations = 0;
    std::int64_t conflicts = 0;
    double elapsed_ms = 0.0;
};

struct Verdict {
    SolveStatus status = SolveStatus::indeterminate;
    std::optional<Assignment> model;  // present iff satisfiable
    SolveStats stats;
};

struct SolverOptions {
    std::int64_t budget_ms = 0;  // 0 = no limit
};

/// True iff every clause contains a literal true under the assignment.
bool evaluate(const CnfFormula& f, const Assignment& eta);

/// True iff every clause has at least one true and at least one false
/// literal under the assignment.
bool evaluate_nae(const NaeFormula& f, const Assignment& eta);

struct BruteForceResult {
    Verdict verdict;
    std::uint64_t model_count = 0;  // populated when count_models
};

/// Exhaustive scan over all assignments in ascending bit-mask order
/// (variable i <-> bit i-1). Requires num_variables <= 26. Returns the
/// first satisfying assignment; counts all of them when count_models.
BruteForceResult brute_force(const CnfFormula& f, bool count_models = true);

/// Exhaustive NAE-satisfiability witness search, same order and limit.
std::optional<Assignment> brute_force_nae(const NaeFormula& f);

/// Complete search: unit propagation over two watched literals, root-level
/// pure-literal elimination, conflict-driven clause learning with
/// backjumping, and the fixed branching rule "lowest-index unassigned
/// variable, true first". Deterministic: identical formulas yield identical
/// verdicts, models and decision counts. Any returned model is re-checked
/// with evaluate before it leaves the solver.
Verdict solve(const CnfFormula& f, const SolverOptions& options = {});

}  // namespace trilab
