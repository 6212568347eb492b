#include "trilab/bounds.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "trilab/words.hpp"

namespace trilab {

std::int64_t failing_word_count(int n, int t) {
    if (n < 1) throw std::invalid_argument("failing_word_count: n must be >= 1");
    if (t < 0 || t > n) throw std::invalid_argument("failing_word_count: t must lie in [0, n]");
    const auto m = static_cast<std::int64_t>(n);
    return 2 * m * m * m;
}

double union_bound_q(int n) {
    const double total = static_cast<double>(count_w3(n));
    double q = 0.0;
    for (int t = 0; t <= n; ++t) {
        const double qt = 1.0 - static_cast<double>(failing_word_count(n, t)) / total;
        if (qt > q) q = qt;
    }
    return q;
}

double union_bound(int n, std::int64_t m) {
    if (m < 0) throw std::invalid_argument("union_bound: m must be >= 0");
    const double q = union_bound_q(n);
    const double log_bound = n * std::log(2.0) + static_cast<double>(m) * std::log(q);
    if (log_bound >= 0.0) return 1.0;
    return std::exp(log_bound);
}

double c_zero() { return 0.125 * std::log(2.0) / std::log(4.0 / 3.0); }

DistinctnessBound distinctness_lower(int n, std::int64_t m) {
    if (m < 1) throw std::invalid_argument("distinctness_lower: m must be >= 1");
    const double total = static_cast<double>(count_w3(n));
    const double lower =
        std::max(0.0, 1.0 - static_cast<double>(m) * static_cast<double>(m) / total);
    const double theta =
        lower > 0.0 ? 1.0 / lower - 1.0 : std::numeric_limits<double>::infinity();
    return {lower, theta};
}

QuotientBounds quotient_bound(int n, double p, double alpha) {
    if (n < 1) throw std::invalid_argument("quotient_bound: n must be >= 1");
    if (!(alpha > 0.0 && alpha < 1.0))
        throw std::invalid_argument("quotient_bound: alpha must lie in (0, 1)");
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("quotient_bound: p must lie in [0, 1]");
    const double nn = static_cast<double>(n);
    const double star_exp = std::log(nn) - p * alpha * alpha * nn * nn;
    // exp(exp(star_exp)) - 1 overflows fast; clamp through the exponent.
    double star = 1.0;
    if (star_exp < std::log(std::log(2.0)))  // exp(star_exp) < log 2 => result < 1
        star = std::expm1(std::exp(star_exp));
    const double one_minus = 1.0 - alpha;
    const double tail_exp = nn * std::log(4.0) - p * one_minus * one_minus * one_minus * nn * nn * nn;
    const double tail = tail_exp >= 0.0 ? 1.0 : std::exp(tail_exp);
    return {std::min(1.0, star), tail};
}

WilsonInterval wilson_interval(std::int64_t successes, std::int64_t total) {
    if (total < 0 || successes < 0 || successes > total)
        throw std::invalid_argument("wilson_interval: need 0 <= successes <= total");
    if (total == 0) return {0.0, 1.0};
    const double z = 1.959963984540054;  // 97.5% normal quantile
    const double nn = static_cast<double>(total);
    const double phat = static_cast<double>(successes) / nn;
    const double z2 = z * z;
    const double denom = 1.0 + z2 / nn;
    const double center = (phat + z2 / (2.0 * nn)) / denom;
    const double half =
        z * std::sqrt(phat * (1.0 - phat) / nn + z2 / (4.0 * nn * nn)) / denom;
    return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

}  // namespace trilab
