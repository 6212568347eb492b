#include "trilab/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "trilab/encode.hpp"
#include "trilab/rng.hpp"

namespace trilab {

namespace {

using ordered_json = nlohmann::ordered_json;

void parallel_for(int count, int jobs, const std::function<void(int)>& body) {
    if (jobs <= 1 || count <= 1) {
        for (int i = 0; i < count; ++i) body(i);
        return;
    }
    std::atomic<int> next{0};
    std::vector<std::thread> workers;
    const int width = std::min(jobs, count);
    workers.reserve(static_cast<std::size_t>(width));
    for (int w = 0; w < width; ++w) {
        workers.emplace_back([&] {
            for (;;) {
                const int i = next.fetch_add(1);
                if (i >= count) return;
                body(i);
            }
        });
    }
    for (auto& t : workers) t.join();
}

const char* status_string(SolveStatus s) {
    switch (s) {
        case SolveStatus::satisfiable: return "sat";
        case SolveStatus::unsatisfiable: return "unsat";
        case SolveStatus::indeterminate: return "indeterminate";
    }
    return "indeterminate";
}

struct PointSpec {
    std::optional<double> c;
    std::optional<double> p;           // binomial inclusion probability
    std::optional<std::int64_t> m;     // uniform draw count
};

PointSpec derive_point(const SweepConfig& cfg, double value, bool value_is_c) {
    PointSpec spec;
    const double nn = static_cast<double>(cfg.n);
    double c = value_is_c ? value : value * nn * nn;
    double p = value_is_c ? value / (nn * nn) : value;
    spec.c = c;
    if (cfg.model == SampleModel::binomial) {
        if (!(p >= 0.0 && p <= 1.0))
            throw std::invalid_argument("sweep: derived p outside [0, 1]");
        spec.p = p;
    } else {
        const std::int64_t m = ceil_snapped(8.0 * c * nn);
        if (m < 0) throw std::invalid_argument("sweep: negative relator count");
        spec.m = m;
    }
    return spec;
}

SweepPoint run_point(const SweepConfig& cfg, const PointSpec& spec, int point_index,
                     const SweepOptions& opts, std::vector<TrialRecord>& trials_out) {
    const std::uint64_t point_seed = derive_seed(cfg.master_seed, static_cast<std::uint64_t>(point_index));
    std::vector<TrialRecord> records(static_cast<std::size_t>(cfg.trials));

    parallel_for(cfg.trials, opts.jobs, [&](int t) {
        TrialRecord& rec = records[static_cast<std::size_t>(t)];
        rec.n = cfg.n;
        rec.c = spec.c;
        rec.p = spec.p;
        rec.trial_index = t;
        rec.seed = derive_seed(point_seed, static_cast<std::uint64_t>(t));

        Presentation pres;
        if (cfg.model == SampleModel::binomial) {
            pres = sample_binomial(cfg.n, *spec.p, rec.seed);
            rec.m = static_cast<std::int64_t>(pres.relators.size());
        } else {
            const SampleOutcome outcome =
                sample_uniform_m(cfg.n, static_cast<int>(*spec.m), rec.seed);
            pres = outcome_as_presentation(cfg.n, outcome);
            rec.m = *spec.m;
        }
        const CnfFormula f = encode_presentation(pres);
        const Verdict verdict = solve(f, {cfg.budget_ms});
        rec.status = status_string(verdict.status);
        rec.decisions = verdict.stats.decisions;
        if (opts.capture_timing) rec.elapsed_ms = verdict.stats.elapsed_ms;
    });

    SweepPoint point;
    point.n = cfg.n;
    point.c = spec.c;
    point.p = spec.p;
    point.trials_completed = cfg.trials;
    for (const TrialRecord& rec : records) {
        if (rec.status == "sat") ++point.sat_count;
        else if (rec.status == "unsat") ++point.unsat_count;
        else ++point.indeterminate_count;
    }
    const int decided = point.sat_count + point.unsat_count;
    point.estimate = decided > 0 ? static_cast<double>(point.sat_count) / decided : 0.0;
    const WilsonInterval ci = wilson_interval(point.sat_count, decided);
    point.ci_low = ci.low;
    point.ci_high = ci.high;

    std::int64_t m_for_bound;
    if (spec.m) {
        m_for_bound = *spec.m;
        point.m = *spec.m;
    } else {
        m_for_bound = std::llround(*spec.p * static_cast<double>(count_w3(cfg.n)));
        point.m = m_for_bound;
    }
    point.union_bound_value = union_bound(cfg.n, m_for_bound);

    trials_out.insert(trials_out.end(), records.begin(), records.end());
    return point;
}

void validate_sweep_config(const SweepConfig& cfg) {
    if (cfg.n < 1) throw std::invalid_argument("sweep: n must be >= 1");
    if (cfg.trials < 1) throw std::invalid_argument("sweep: trials must be >= 1");
    if (cfg.c_values.empty() == cfg.p_values.empty())
        throw std::invalid_argument("sweep: provide exactly one of c_values / p_values");
    for (double c : cfg.c_values)
        if (c < 0.0) throw std::invalid_argument("sweep: c must be >= 0");
    for (double p : cfg.p_values)
        if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("sweep: p must lie in [0, 1]");
}

}  // namespace

std::int64_t ceil_snapped(double x) {
    return static_cast<std::int64_t>(std::ceil(x - 1e-9));
}

SweepResult sat_probability_sweep(const SweepConfig& cfg, const SweepOptions& opts) {
    validate_sweep_config(cfg);
    const bool use_c = !cfg.c_values.empty();
    const std::vector<double>& values = use_c ? cfg.c_values : cfg.p_values;

    SweepResult result;
    for (std::size_t i = 0; i < values.size(); ++i) {
        const PointSpec spec = derive_point(cfg, values[i], use_c);
        result.points.push_back(
            run_point(cfg, spec, static_cast<int>(i), opts, result.trials));
    }
    return result;
}

ThresholdResult estimate_threshold(int n, double c_lo, double c_hi, int trials,
                                   std::uint64_t master_seed, std::int64_t budget_ms,
                                   const SweepOptions& opts) {
    if (!(c_lo >= 0.0 && c_hi > c_lo))
        throw std::invalid_argument("estimate_threshold: need 0 <= c_lo < c_hi");

    SweepConfig cfg;
    cfg.n = n;
    cfg.trials = trials;
    cfg.master_seed = master_seed;
    cfg.model = SampleModel::binomial;
    cfg.budget_ms = budget_ms;

    ThresholdResult result;
    int point_index = 0;
    auto eval = [&](double c) {
        cfg.c_values = {c};
        const PointSpec spec = derive_point(cfg, c, true);
        const SweepPoint point = run_point(cfg, spec, point_index++, opts, result.trials);
        result.trace.push_back(point);
        return point.estimate;
    };

    const double est_lo = eval(c_lo);
    const double est_hi = eval(c_hi);
    if (!(est_lo > 0.5) || !(est_hi < 0.5))
        throw std::runtime_error(
            "estimate_threshold: endpoints do not bracket the 0.5 crossing (estimates " +
            std::to_string(est_lo) + ", " + std::to_string(est_hi) + ")");

    double lo = c_lo, hi = c_hi;
    while (hi - lo >= 0.01) {
        const double mid = 0.5 * (lo + hi);
        const double est = eval(mid);
        if (est >= 0.5) lo = mid;
        else hi = mid;
    }
    result.estimate = 0.5 * (lo + hi);
    return result;
}

ConcentrationReport concentration_check(int n, double p, int trials, std::uint64_t master_seed) {
    if (trials < 1) throw std::invalid_argument("concentration_check: trials must be >= 1");
    if (!(p >= 0.0 && p <= 1.0))
        throw std::invalid_argument("concentration_check: p must lie in [0, 1]");
    const std::int64_t total = count_w3(n);
    const double expected = p * static_cast<double>(total);
    if (!(expected > 1.0))
        throw std::invalid_argument("concentration_check: requires p |W_3| > 1 so delta < 1");

    ConcentrationReport rep;
    rep.n = n;
    rep.p = p;
    rep.trials = trials;
    rep.expected_size = expected;
    rep.delta = std::pow(expected, -1.0 / 3.0);
    rep.lo = (1.0 - rep.delta) * expected;
    rep.hi = (1.0 + rep.delta) * expected;
    const double asym = 8.0 * p * std::pow(static_cast<double>(n), 3.0);
    rep.asymptotic_lo = (1.0 - rep.delta) * asym;
    rep.asymptotic_hi = (1.0 + rep.delta) * asym;

    for (int t = 0; t < trials; ++t) {
        SplitMix64 rng(derive_seed(master_seed, static_cast<std::uint64_t>(t)));
        const auto size = static_cast<double>(sample_binomial_count(total, p, rng));
        if (!(size > rep.lo && size < rep.hi)) ++rep.deviations;
        if (!(size > rep.asymptotic_lo && size < rep.asymptotic_hi)) ++rep.asymptotic_deviations;
    }
    rep.deviation_frequency = static_cast<double>(rep.deviations) / trials;
    rep.chebyshev_bound = rep.delta;
    rep.tolerance =
        rep.delta + 3.0 * std::sqrt(rep.delta * (1.0 - rep.delta) / static_cast<double>(trials));
    rep.pass = rep.deviation_frequency <= rep.tolerance;
    return rep;
}

double distinctness_frequency(int n, int m, int trials, std::uint64_t master_seed) {
    if (trials < 1) throw std::invalid_argument("distinctness_frequency: trials must be >= 1");
    int distinct = 0;
    for (int t = 0; t < trials; ++t)
        if (sample_uniform_m(n, m, derive_seed(master_seed, static_cast<std::uint64_t>(t)))
                .all_distinct)
            ++distinct;
    return static_cast<double>(distinct) / trials;
}

double survivor_frequency(int n, double p, int trials, std::uint64_t master_seed) {
    if (trials < 1) throw std::invalid_argument("survivor_frequency: trials must be >= 1");
    int survived = 0;
    for (int t = 0; t < trials; ++t) {
        const Presentation pres =
            sample_binomial(n, p, derive_seed(master_seed, static_cast<std::uint64_t>(t)));
        if (find_surviving_generator(pres)) ++survived;
    }
    return static_cast<double>(survived) / trials;
}

namespace {

void accumulate(SolveStats& into, const SolveStats& from) {
    into.decisions += from.decisions;
    into.propagations += from.propagations;
    into.conflicts += from.conflicts;
    into.elapsed_ms += from.elapsed_ms;
}

Assignment truncate_model(const Assignment& model, int n) {
    Assignment out;
    out.values.assign(model.values.begin(), model.values.begin() + n);
    return out;
}

CertificateResult certify_exhaustive(const Presentation& pres, int k,
                                     const CertificateOptions& opts) {
    // Adding generators only adds clauses, so satisfiability of any subset
    // of size >= k reduces to satisfiability of some subset of size exactly k.
    CertificateResult res;
    res.k = k;
    const int n = pres.n;
    std::vector<int> combo(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) combo[static_cast<std::size_t>(i)] = i + 1;
    bool any_indeterminate = false;
    for (;;) {
        const CnfFormula f = encode_presentation(pres, combo);
        const Verdict v = solve(f, {opts.budget_ms});
        accumulate(res.stats, v.stats);
        if (v.status == SolveStatus::satisfiable) {
            res.outcome = CertOutcome::refuted;
            res.witness_subset = combo;
            res.witness_model = *v.model;
            return res;
        }
        if (v.status == SolveStatus::indeterminate) {
            any_indeterminate = true;
            ++res.indeterminate_solves;
        }
        // next k-combination of [1, n] in lexicographic order
        int i = k - 1;
        while (i >= 0 && combo[static_cast<std::size_t>(i)] == n - (k - 1 - i)) --i;
        if (i < 0) break;
        ++combo[static_cast<std::size_t>(i)];
        for (int j = i + 1; j < k; ++j)
            combo[static_cast<std::size_t>(j)] = combo[static_cast<std::size_t>(j - 1)] + 1;
    }
    res.outcome = any_indeterminate ? CertOutcome::unresolved : CertOutcome::certified;
    return res;
}

CertificateResult certify_survivor_query(const Presentation& pres, int k,
                                         const CertificateOptions& opts) {
    CertificateResult res;
    res.k = k;
    const CnfFormula f = encode_survivor_query(pres, k);
    const Verdict v = solve(f, {opts.budget_ms});
    res.stats = v.stats;
    switch (v.status) {
        case SolveStatus::unsatisfiable: res.outcome = CertOutcome::certified; break;
        case SolveStatus::satisfiable: {
            res.outcome = CertOutcome::refuted;
            const int n = pres.n;
            for (int i = 1; i <= n; ++i)
                if (v.model->value(n + i)) res.witness_subset.push_back(i);
            res.witness_model = truncate_model(*v.model, n);
            break;
        }
        case SolveStatus::indeterminate:
            res.outcome = CertOutcome::unresolved;
            ++res.indeterminate_solves;
            break;
    }
    return res;
}

CertificateResult certify_sampled(const Presentation& pres, int k,
                                  const CertificateOptions& opts) {
    CertificateResult res;
    res.k = k;
    const int n = pres.n;
    SplitMix64 rng(opts.seed);
    std::vector<int> pool(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) pool[static_cast<std::size_t>(i)] = i + 1;
    for (int s = 0; s < opts.samples; ++s) {
        // Partial Fisher-Yates: the first k entries become a uniform subset.
        for (int i = 0; i < k; ++i) {
            const auto j =
                i + static_cast<int>(rng.next_below(static_cast<std::uint64_t>(n - i)));
            std::swap(pool[static_cast<std::size_t>(i)], pool[static_cast<std::size_t>(j)]);
        }
        std::vector<int> subset(pool.begin(), pool.begin() + k);
        std::sort(subset.begin(), subset.end());
        const CnfFormula f = encode_presentation(pres, subset);
        const Verdict v = solve(f, {opts.budget_ms});
        accumulate(res.stats, v.stats);
        if (v.status == SolveStatus::satisfiable) {
            res.outcome = CertOutcome::refuted;
            res.witness_subset = subset;
            res.witness_model = *v.model;
            return res;
        }
        if (v.status == SolveStatus::indeterminate) ++res.indeterminate_solves;
    }
    res.outcome = CertOutcome::unresolved;  // falsification-only mode
    return res;
}

}  // namespace

CertificateResult quotient_certificate(const Presentation& pres, double alpha,
                                       CertStrategy strategy, const CertificateOptions& opts) {
    if (!(alpha > 0.0 && alpha < 1.0))
        throw std::invalid_argument("quotient_certificate: alpha must lie in (0, 1)");
    const int k = static_cast<int>(ceil_snapped((1.0 - alpha) * pres.n));
    switch (strategy) {
        case CertStrategy::exhaustive:
            if (pres.n > 20)
                throw std::invalid_argument(
                    "quotient_certificate: exhaustive strategy requires n <= 20");
            return certify_exhaustive(pres, k, opts);
        case CertStrategy::survivor_query: return certify_survivor_query(pres, k, opts);
        case CertStrategy::sampled_subsets: return certify_sampled(pres, k, opts);
    }
    throw std::logic_error("quotient_certificate: unknown strategy");
}

PaEmptinessResult pa_emptiness(const Presentation& pres, const std::vector<int>& subset) {
    const std::vector<char> mask = subset_mask(pres.n, subset);
    std::int64_t size = 0;
    for (int i = 1; i <= pres.n; ++i) size += mask[static_cast<std::size_t>(i)] ? 1 : 0;
    if (size == 0 || size == pres.n)
        throw std::invalid_argument("pa_emptiness: subset must be proper and nonempty");

    PaEmptinessResult res;
    res.pa_size = size * size * (pres.n - size);
    for (const Word3& w : pres.relators) {
        const auto& l = w.letters;
        if (l[0].sign > 0 && l[1].sign > 0 && l[2].sign > 0 &&
            mask[static_cast<std::size_t>(l[0].index)] &&
            mask[static_cast<std::size_t>(l[1].index)] &&
            !mask[static_cast<std::size_t>(l[2].index)]) {
            res.empty = false;
            break;
        }
    }
    return res;
}

QuotientBatchResult quotient_certificate_batch(int n, double p, double alpha, int trials,
                                               std::uint64_t master_seed, std::int64_t budget_ms,
                                               const SweepOptions& opts) {
    if (trials < 1) throw std::invalid_argument("quotient batch: trials must be >= 1");
    QuotientBatchResult result;
    std::vector<TrialRecord> records(static_cast<std::size_t>(trials));

    parallel_for(trials, opts.jobs, [&](int t) {
        TrialRecord& rec = records[static_cast<std::size_t>(t)];
        rec.n = n;
        rec.p = p;
        rec.trial_index = t;
        rec.seed = derive_seed(master_seed, static_cast<std::uint64_t>(t));
        const Presentation pres = sample_binomial(n, p, rec.seed);
        rec.m = static_cast<std::int64_t>(pres.relators.size());
        CertificateOptions copts;
        copts.budget_ms = budget_ms;
        const CertificateResult cert =
            quotient_certificate(pres, alpha, CertStrategy::survivor_query, copts);
        switch (cert.outcome) {
            case CertOutcome::certified: rec.status = "certified"; break;
            case CertOutcome::refuted: rec.status = "refuted"; break;
            case CertOutcome::unresolved: rec.status = "indeterminate"; break;
        }
        rec.decisions = cert.stats.decisions;
        if (opts.capture_timing) rec.elapsed_ms = cert.stats.elapsed_ms;
    });

    for (const TrialRecord& rec : records) {
        if (rec.status == "certified") ++result.certified;
        else if (rec.status == "refuted") ++result.refuted;
        else ++result.indeterminate;
    }
    result.certified_fraction = static_cast<double>(result.certified) / trials;
    result.trials = std::move(records);
    return result;
}

namespace {

ordered_json json_or_null(const std::optional<double>& v) {
    return v ? ordered_json(*v) : ordered_json(nullptr);
}

ordered_json json_or_null(const std::optional<std::int64_t>& v) {
    return v ? ordered_json(*v) : ordered_json(nullptr);
}

}  // namespace

std::string to_jsonl(const TrialRecord& r) {
    ordered_json j;
    j["record_type"] = r.record_type;
    j["n"] = r.n;
    j["c"] = json_or_null(r.c);
    j["p"] = json_or_null(r.p);
    j["m"] = json_or_null(r.m);
    j["seed"] = r.seed;
    j["trial_index"] = r.trial_index;
    j["status"] = r.status;
    j["decisions"] = r.decisions;
    j["elapsed_ms"] = json_or_null(r.elapsed_ms);
    return j.dump() + "\n";
}

std::string to_jsonl(const SweepPoint& p) {
    ordered_json j;
    j["record_type"] = "sweep_point";
    j["n"] = p.n;
    j["c"] = json_or_null(p.c);
    j["p"] = json_or_null(p.p);
    j["m"] = json_or_null(p.m);
    j["trials"] = p.trials_completed;
    j["sat"] = p.sat_count;
    j["unsat"] = p.unsat_count;
    j["indeterminate"] = p.indeterminate_count;
    j["estimate"] = p.estimate;
    j["ci_low"] = p.ci_low;
    j["ci_high"] = p.ci_high;
    j["union_bound"] = p.union_bound_value;
    return j.dump() + "\n";
}

std::string sweep_jsonl(const SweepResult& result, int trials_per_point) {
    std::string out;
    std::size_t trial_at = 0;
    for (const SweepPoint& point : result.points) {
        for (int t = 0; t < trials_per_point && trial_at < result.trials.size(); ++t)
            out += to_jsonl(result.trials[trial_at++]);
        out += to_jsonl(point);
    }
    return out;
}

namespace {

std::string format_double(const char* fmt, double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), fmt, v);
    return buf;
}

}  // namespace

std::string sweep_csv(const std::vector<SweepPoint>& points) {
    std::string out = "n,c,p,trials,sat,unsat,indeterminate,estimate,ci_low,ci_high,union_bound\n";
    for (const SweepPoint& p : points) {
        out += std::to_string(p.n);
        out += ',';
        if (p.c) out += format_double("%.10g", *p.c);
        out += ',';
        if (p.p) out += format_double("%.10g", *p.p);
        out += ',';
        out += std::to_string(p.trials_completed);
        out += ',';
        out += std::to_string(p.sat_count);
        out += ',';
        out += std::to_string(p.unsat_count);
        out += ',';
        out += std::to_string(p.indeterminate_count);
        out += ',';
        out += format_double("%.6f", p.estimate);
        out += ',';
        out += format_double("%.6f", p.ci_low);
        out += ',';
        out += format_double("%.6f", p.ci_high);
        out += ',';
        out += format_double("%.6g", p.union_bound_value);
        out += '\n';
    }
    return out;
}

}  // namespace trilab
