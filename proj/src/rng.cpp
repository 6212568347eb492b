#include "trilab/rng.hpp"

#include <cmath>
#include <stdexcept>

namespace trilab {

namespace {

// Chop-down inversion for moderate means. Requires (1-p)^n > 0 in long
// double, i.e. n*|log1p(-p)| < ~11300.
std::int64_t invert_binomial(std::int64_t n, double p, SplitMix64& rng) {
    const long double lp = static_cast<long double>(p);
    long double term = std::exp(static_cast<long double>(n) * std::log1p(-lp));
    if (term <= 0.0L)
        throw std::domain_error("sample_binomial_count: n*p too large for exact inversion");
    const long double ratio = lp / (1.0L - lp);
    long double u = static_cast<long double>(rng.next_double());
    std::int64_t k = 0;
    while (u >= term && k < n) {
        u -= term;
        term *= ratio * static_cast<long double>(n - k) / static_cast<long double>(k + 1);
        ++k;
        if (term <= 0.0L) break;  // tail mass below long double resolution
    }
    return k;
}

}  // namespace

std::int64_t sample_binomial_count(std::int64_t n, double p, SplitMix64& rng) {
    if (n < 0) throw std::invalid_argument("sample_binomial_count: n must be >= 0");
    if (!(p >= 0.0 && p <= 1.0))
        throw std::invalid_argument("sample_binomial_count: p must lie in [0, 1]");
    if (n == 0 || p == 0.0) return 0;
    if (p == 1.0) return n;
    // Split so each chunk's mean stays well inside the inversion envelope.
    std::int64_t total = 0;
    std::int64_t remaining = n;
    const double max_chunk_mean = 4000.0;
    while (static_cast<double>(remaining) * p > max_chunk_mean) {
        const auto chunk = static_cast<std::int64_t>(max_chunk_mean / p);
        total += invert_binomial(chunk, p, rng);
        remaining -= chunk;
    }
    total += invert_binomial(remaining, p, rng);
    return total;
}

}  // namespace trilab
