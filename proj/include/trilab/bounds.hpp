#pragma once

#include <cstdint>

namespace trilab {

/// Number of words of W_3 whose obstruction clause pair is falsified by an
/// assignment with t true variables. The true-letter set picks exactly one
/// of each inverse pair, so all n^3 triples over it are cyclically reduced;
/// same for the false letters: the count is 2n^3, independent of t.
/// Validated against enumeration in the tests.
std::int64_t failing_word_count(int n, int t);

/// min(1, 2^n q^m) with q = max_t (1 - failing_word_count(n,t)/count_w3(n)):
/// an exact finite-n upper bound on the probability that m independent
/// uniform relators yield a satisfiable obstruction formula.
double union_bound(int n, std::int64_t m);

/// Best per-relator satisfaction probability q used by union_bound.
double union_bound_q(int n);

/// (1/8) log 2 / log(4/3): the density constant above which the obstruction
/// formula is asymptotically unsatisfiable.
double c_zero();

struct DistinctnessBound {
    double lower;  // max(0, 1 - m^2 / |W_3|), a lower bound on P(all distinct)
    double theta;  // 1/lower - 1 when lower > 0, else +infinity
};

/// Lower bound on the probability that m uniform draws are pairwise
/// distinct.
DistinctnessBound distinctness_lower(int n, std::int64_t m);

struct QuotientBounds {
    /// min(1, exp(exp(log n - p a^2 n^2)) - 1): upper bound on the
    /// probability that some subset of >= a*n generators dies in a
    /// non-trivial quotient.
    double star_failure;
    /// min(1, exp(n log 4 - p (1-a)^3 n^3)): tail bound on the probability
    /// that any large-support restricted formula stays satisfiable.
    double tail;
};

QuotientBounds quotient_bound(int n, double p, double alpha);

struct WilsonInterval {
    double low;
    double high;
};

/// 95% Wilson score interval for a binomial proportion.
WilsonInterval wilson_interval(std::int64_t successes, std::int64_t total);

}  // namespace trilab
