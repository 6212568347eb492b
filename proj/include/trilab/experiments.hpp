#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "trilab/bounds.hpp"
#include "trilab/solver.hpp"
#include "trilab/words.hpp"

namespace trilab {

enum class SampleModel : std::uint8_t { binomial, uniform_m };

/// One Monte Carlo sweep: for each density point, `trials` independent
/// seeded trials (sample, encode, solve, tally). Densities are given either
/// as c values (p = c n^-2; uniform model draws m = ceil(8 c n) relators) or
/// as p values directly. Exactly one of c_values / p_values may be nonempty.
struct SweepConfig {
    int n = 0;
    std::vector<double> c_values;
    std::vector<double> p_values;
    int trials = 0;
    std::uint64_t master_seed = 0;
    SampleModel model = SampleModel::binomial;
    std::int64_t budget_ms = 0;  // per-instance solver budget; 0 = unlimited
};

/// One trial's outcome. Trial seeds derive from the master seed and the
/// (point, trial) indices only, so records never depend on the worker count.
/// elapsed_ms is captured only when timing capture is on; replay-stable runs
/// leave it null.
struct TrialRecord {
    std::string record_type = "trial";
    int n = 0;
    std::optional<double> c;
    std::optional<double> p;
    std::optional<std::int64_t> m;
    std::uint64_t seed = 0;
    int trial_index = 0;
    std::string status;  // sat | unsat | indeterminate | certified | refuted
    std::int64_t decisions = 0;
    std::optional<double> elapsed_ms;
};

struct SweepPoint {
    int n = 0;
    std::optional<double> c;
    std::optional<double> p;
    std::optional<std::int64_t> m;  // uniform: configured m; binomial: round(p |W_3|)
    int trials_completed = 0;
    int sat_count = 0;
    int unsat_count = 0;
    int indeterminate_count = 0;
    double estimate = 0.0;  // sat / (sat + unsat); indeterminates excluded
    double ci_low = 0.0;    // 95% Wilson interval
    double ci_high = 1.0;
    double union_bound_value = 1.0;  // union_bound(n, m)
};

struct SweepResult {
    std::vector<SweepPoint> points;
    std::vector<TrialRecord> trials;  // grouped by point, trial order inside
};

struct SweepOptions {
    int jobs = 1;
    bool capture_timing = false;
};

SweepResult sat_probability_sweep(const SweepConfig& cfg, const SweepOptions& opts = {});

/// Bisection on c for the empirical 0.5 crossing of the satisfiability
/// probability at fixed n. Requires estimate(c_lo) > 0.5 > estimate(c_hi);
/// halves the bracket until its width drops below 0.01 and returns the
/// midpoint. The trace records every evaluated point in order.
struct ThresholdResult {
    double estimate = 0.0;
    std::vector<SweepPoint> trace;
    std::vector<TrialRecord> trials;
};

ThresholdResult estimate_threshold(int n, double c_lo, double c_hi, int trials,
                                   std::uint64_t master_seed, std::int64_t budget_ms = 0,
                                   const SweepOptions& opts = {});

/// Samples |R| under the binomial model and reports how often it leaves the
/// Chebyshev interval (1 +- delta) p |W_3| with delta = (p |W_3|)^(-1/3).
/// The matching interval around 8 p n^3 is reported for comparison.
struct ConcentrationReport {
    int n = 0;
    double p = 0.0;
    int trials = 0;
    double expected_size = 0.0;  // p |W_3|
    double delta = 0.0;
    double lo = 0.0, hi = 0.0;
    double asymptotic_lo = 0.0, asymptotic_hi = 0.0;
    int deviations = 0;
    int asymptotic_deviations = 0;
    double deviation_frequency = 0.0;
    double chebyshev_bound = 0.0;  // delta: exact bound at every finite n
    double tolerance = 0.0;        // delta + 3 sqrt(delta (1-delta) / trials)
    bool pass = false;
};

ConcentrationReport concentration_check(int n, double p, int trials, std::uint64_t master_seed);

/// Fraction of m-draw samples that come out pairwise distinct.
double distinctness_frequency(int n, int m, int trials, std::uint64_t master_seed);

/// Fraction of sampled presentations with an untouched generator.
double survivor_frequency(int n, double p, int trials, std::uint64_t master_seed);

enum class CertStrategy : std::uint8_t { exhaustive, survivor_query, sampled_subsets };
enum class CertOutcome : std::uint8_t { certified, refuted, unresolved };

struct CertificateOptions {
    std::int64_t budget_ms = 0;
    std::uint64_t seed = 0;  // sampled_subsets only
    int samples = 200;       // sampled_subsets only
};

/// `certified` asserts that every subset A with |A| >= ceil((1-alpha) n)
/// yields an unsatisfiable restricted formula, so no left-orderable quotient
/// keeps that many generators alive. `refuted` carries a witness subset and
/// model. Satisfiability implies nothing about the group; only the certified
/// direction is meaningful. sampled_subsets can refute but never certify.
struct CertificateResult {
    CertOutcome outcome = CertOutcome::unresolved;
    int k = 0;
    std::vector<int> witness_subset;
    std::optional<Assignment> witness_model;  // over variables 1..n
    SolveStats stats;                         // summed over issued solves
    int indeterminate_solves = 0;             // budget-exhausted solves
};

CertificateResult quotient_certificate(const Presentation& pres, double alpha,
                                       CertStrategy strategy, const CertificateOptions& opts = {});

struct PaEmptinessResult {
    bool empty = true;
    std::int64_t pa_size = 0;  // |A|^2 (n - |A|)
};

/// True iff no relator is an all-positive word abc with a, b in A and c
/// outside A.
PaEmptinessResult pa_emptiness(const Presentation& pres, const std::vector<int>& subset);

/// Batch of survivor-query certificates over sampled presentations.
struct QuotientBatchResult {
    int certified = 0;
    int refuted = 0;
    int indeterminate = 0;
    double certified_fraction = 0.0;  // certified / trials
    std::vector<TrialRecord> trials;
};

QuotientBatchResult quotient_certificate_batch(int n, double p, double alpha, int trials,
                                               std::uint64_t master_seed, std::int64_t budget_ms,
                                               const SweepOptions& opts = {});

/// JSON Lines serialization (byte-stable; doubles use shortest round-trip).
std::string to_jsonl(const TrialRecord& r);
std::string to_jsonl(const SweepPoint& p);

/// trials.jsonl payload: per point, its trial records then its point record.
std::string sweep_jsonl(const SweepResult& result, int trials_per_point);

/// summary.csv payload (header + one row per point).
std::string sweep_csv(const std::vector<SweepPoint>& points);

/// Ceiling that snaps values a hair above an integer back down; used for
/// k = ceil((1-alpha) n) and m = ceil(8 c n) where the product is meant to
/// land exactly on an integer.
std::int64_t ceil_snapped(double x);

}  // namespace trilab
