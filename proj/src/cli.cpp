#include "trilab/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "trilab/encode.hpp"
#include "trilab/experiments.hpp"
#include "trilab/presentation_io.hpp"
#include "trilab/solver.hpp"

namespace trilab {

namespace {

namespace fs = std::filesystem;
using ordered_json = nlohmann::ordered_json;

constexpr const char* kToolVersion = "0.1.0";

std::string join_invocation(const std::vector<std::string>& args) {
    std::string out = "trilab";
    for (const std::string& a : args) {
        out += ' ';
        out += a;
    }
    return out;
}

std::vector<int> parse_subset_flag(const std::string& spec, int n) {
    std::vector<int> subset;
    if (spec == "all") {
        subset.resize(static_cast<std::size_t>(n));
        for (int i = 1; i <= n; ++i) subset[static_cast<std::size_t>(i) - 1] = i;
        return subset;
    }
    std::istringstream ss(spec);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok.empty()) throw std::runtime_error("empty entry in subset list");
        subset.push_back(std::stoi(tok));
    }
    if (subset.empty()) throw std::runtime_error("empty subset list");
    return subset;
}

std::string format_g(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.10g", v);
    return buf;
}

void print_model_line(std::ostream& os, const Assignment& model) {
    os << "v";
    for (int v = 1; v <= model.num_variables(); ++v)
        os << ' ' << (model.value(v) ? v : -v);
    os << " 0\n";
}

void print_point(std::ostream& os, const SweepPoint& pt) {
    os << "c point c=" << format_g(pt.c.value_or(0.0)) << " estimate=" << format_g(pt.estimate)
       << " ci=[" << format_g(pt.ci_low) << "," << format_g(pt.ci_high) << "]"
       << " sat=" << pt.sat_count << " unsat=" << pt.unsat_count
       << " indeterminate=" << pt.indeterminate_count << "\n";
}

int run_sample(const std::vector<std::string>& args, int n, std::optional<double> p,
               std::optional<double> c, const std::string& model, std::optional<int> m,
               std::uint64_t seed, const std::string& out_path) {
    Presentation pres;
    std::vector<std::string> comments;
    comments.push_back("invocation: " + join_invocation(args));
    comments.push_back("seed: " + std::to_string(seed));
    if (model == "uniform-m") {
        if (!m) throw std::runtime_error("--model uniform-m requires --m");
        if (p || c) throw std::runtime_error("--model uniform-m takes --m, not --p/--c");
        const SampleOutcome outcome = sample_uniform_m(n, *m, seed);
        pres = outcome_as_presentation(n, outcome);
        comments.push_back("model: uniform-m");
        comments.push_back("m: " + std::to_string(*m));
        comments.push_back(std::string("all_distinct: ") + (outcome.all_distinct ? "true" : "false"));
    } else {
        if (p.has_value() == c.has_value())
            throw std::runtime_error("binomial model requires exactly one of --p / --c");
        const double prob = p ? *p : *c / (static_cast<double>(n) * n);
        pres = sample_binomial(n, prob, seed);
        comments.push_back("model: binomial");
        comments.push_back("p: " + format_g(prob));
    }
    comments.push_back("relators: " + std::to_string(pres.relators.size()));
    comments.push_back("euler_characteristic: " + std::to_string(euler_characteristic(pres)));
    const auto survivor = find_surviving_generator(pres);
    comments.push_back("surviving_generator: " +
                       (survivor ? std::to_string(*survivor) : std::string("none")));
    write_text_file(out_path, print_presentation(pres, comments));
    std::cout << "wrote " << out_path << " (" << pres.relators.size() << " relators)\n";
    return 0;
}

int run_encode(const std::vector<std::string>& args, const std::string& in_path,
               const std::string& subset_spec, bool nae, const std::string& out_path) {
    const Presentation pres = load_presentation_file(in_path);
    std::string payload;
    if (nae) {
        if (subset_spec != "all")
            throw std::runtime_error("--nae applies to the full relator set; drop --subset");
        payload = to_dimacs(encode_nae(pres));
    } else {
        payload = to_dimacs(encode_presentation(pres, parse_subset_flag(subset_spec, pres.n)));
    }
    std::string out = "c invocation: " + join_invocation(args) + "\n";
    out += payload;
    write_text_file(out_path, out);
    std::cout << "wrote " << out_path << "\n";
    return 0;
}

int run_solve(const std::vector<std::string>& args, const std::string& in_path,
              const std::string& dimacs_path, std::int64_t budget_ms) {
    if (in_path.empty() == dimacs_path.empty())
        throw std::runtime_error("provide exactly one of --in / --dimacs");
    CnfFormula f;
    if (!in_path.empty()) {
        f = encode_presentation(load_presentation_file(in_path));
    } else {
        f = from_dimacs(read_text_file(dimacs_path));
    }
    std::cout << "c invocation: " << join_invocation(args) << "\n";
    std::cout << "c formula: vars=" << f.num_variables << " clauses=" << f.clauses.size() << "\n";
    const Verdict verdict = solve(f, {budget_ms});
    switch (verdict.status) {
        case SolveStatus::satisfiable: std::cout << "s SATISFIABLE\n"; break;
        case SolveStatus::unsatisfiable: std::cout << "s UNSATISFIABLE\n"; break;
        case SolveStatus::indeterminate: std::cout << "s INDETERMINATE\n"; break;
    }
    if (verdict.model) print_model_line(std::cout, *verdict.model);
    std::cout << "c stats: decisions=" << verdict.stats.decisions
              << " propagations=" << verdict.stats.propagations
              << " conflicts=" << verdict.stats.conflicts
              << " elapsed_ms=" << format_g(verdict.stats.elapsed_ms) << "\n";
    return verdict.status == SolveStatus::indeterminate ? 2 : 0;
}

int run_sweep(const std::vector<std::string>& args, int n, double c_min, double c_max,
              double c_step, int trials, std::uint64_t seed, const std::string& model,
              std::int64_t budget_ms, int jobs, bool allow_timeouts, bool timings,
              const std::string& out_dir) {
    if (c_step <= 0.0) throw std::runtime_error("--c-step must be positive");
    SweepConfig cfg;
    cfg.n = n;
    cfg.trials = trials;
    cfg.master_seed = seed;
    cfg.model = model == "uniform-m" ? SampleModel::uniform_m : SampleModel::binomial;
    cfg.budget_ms = budget_ms;
    for (int i = 0;; ++i) {
        const double c = c_min + i * c_step;
        if (c > c_max + c_step * 1e-9) break;
        cfg.c_values.push_back(c);
    }
    if (cfg.c_values.empty()) throw std::runtime_error("empty c grid");

    SweepOptions opts;
    opts.jobs = jobs;
    opts.capture_timing = timings;
    const SweepResult result = sat_probability_sweep(cfg, opts);

    ordered_json config;
    config["tool"] = "trilab";
    config["version"] = kToolVersion;
    config["command"] = "sweep";
    config["invocation"] = join_invocation(args);
    config["n"] = n;
    config["c_min"] = c_min;
    config["c_max"] = c_max;
    config["c_step"] = c_step;
    config["trials"] = trials;
    config["master_seed"] = seed;
    config["model"] = model;
    config["budget_ms"] = budget_ms;
    config["jobs"] = jobs;
    config["allow_timeouts"] = allow_timeouts;
    config["timings"] = timings;

    fs::create_directories(out_dir);
    write_text_file((fs::path(out_dir) / "config.json").string(), config.dump(2) + "\n");
    write_text_file((fs::path(out_dir) / "trials.jsonl").string(),
                    sweep_jsonl(result, cfg.trials));
    write_text_file((fs::path(out_dir) / "summary.csv").string(), sweep_csv(result.points));

    int indeterminate = 0;
    for (const SweepPoint& pt : result.points) {
        print_point(std::cout, pt);
        indeterminate += pt.indeterminate_count;
    }
    std::cout << "wrote " << out_dir << "/{config.json,trials.jsonl,summary.csv}\n";
    if (indeterminate > 0) {
        std::cerr << "warning: " << indeterminate
                  << " indeterminate trials (per-instance budget exhausted)\n";
        return allow_timeouts ? 0 : 2;
    }
    return 0;
}

int run_threshold(const std::vector<std::string>& args, int n, double c_lo, double c_hi,
                  int trials, std::uint64_t seed, std::int64_t budget_ms, int jobs) {
    std::cout << "c invocation: " << join_invocation(args) << "\n";
    SweepOptions opts;
    opts.jobs = jobs;
    const ThresholdResult result = estimate_threshold(n, c_lo, c_hi, trials, seed, budget_ms, opts);
    int indeterminate = 0;
    for (const SweepPoint& pt : result.trace) {
        print_point(std::cout, pt);
        indeterminate += pt.indeterminate_count;
    }
    std::cout << "threshold " << format_g(result.estimate) << "\n";
    return indeterminate > 0 ? 2 : 0;
}

int run_quotient(const std::vector<std::string>& args, const std::string& in_path, double alpha,
                 const std::string& strategy_name, std::uint64_t seed, int samples,
                 std::int64_t budget_ms) {
    const Presentation pres = load_presentation_file(in_path);
    CertStrategy strategy;
    if (strategy_name == "exhaustive") strategy = CertStrategy::exhaustive;
    else if (strategy_name == "survivor") strategy = CertStrategy::survivor_query;
    else if (strategy_name == "sampled") strategy = CertStrategy::sampled_subsets;
    else throw std::runtime_error("unknown strategy: " + strategy_name);

    CertificateOptions opts;
    opts.budget_ms = budget_ms;
    opts.seed = seed;
    opts.samples = samples;

    std::cout << "c invocation: " << join_invocation(args) << "\n";
    const CertificateResult res = quotient_certificate(pres, alpha, strategy, opts);
    std::cout << "c k: " << res.k << " (certifying over subsets of size >= " << res.k << ")\n";
    std::cout << "c stats: decisions=" << res.stats.decisions
              << " conflicts=" << res.stats.conflicts
              << " elapsed_ms=" << format_g(res.stats.elapsed_ms) << "\n";
    switch (res.outcome) {
        case CertOutcome::certified:
            std::cout << "verdict certified\n";
            std::cout << "c no subset of >= " << res.k
                      << " generators admits a satisfying sign assignment\n";
            break;
        case CertOutcome::refuted: {
            std::cout << "verdict refuted\n";
            std::cout << "witness_subset ";
            for (std::size_t i = 0; i < res.witness_subset.size(); ++i)
                std::cout << (i ? "," : "") << res.witness_subset[i];
            std::cout << "\n";
            std::cout << "witness_model ";
            print_model_line(std::cout, *res.witness_model);
            break;
        }
        case CertOutcome::unresolved: std::cout << "verdict unresolved\n"; break;
    }
    return res.indeterminate_solves > 0 ? 2 : 0;
}

int run_bounds(const std::vector<std::string>& args, int n, std::optional<std::int64_t> m,
               std::optional<double> p, std::optional<double> alpha) {
    if (m.has_value() == p.has_value())
        throw std::runtime_error("provide exactly one of --m / --p");
    const double total = static_cast<double>(count_w3(n));
    const double p_eff = p ? *p : static_cast<double>(*m) / total;
    const std::int64_t m_eff = m ? *m : std::llround(*p * total);

    std::cout << "c invocation: " << join_invocation(args) << "\n";
    std::cout << "n " << n << "\n";
    std::cout << "m " << m_eff << "\n";
    std::cout << "p " << format_g(p_eff) << "\n";
    std::cout << "count_w3 " << static_cast<std::int64_t>(total) << "\n";
    std::cout << "c_zero " << format_g(c_zero()) << "\n";
    std::cout << "q " << format_g(union_bound_q(n)) << "\n";
    std::cout << "union_bound " << format_g(union_bound(n, m_eff)) << "\n";
    const double expected = p_eff * total;
    if (expected > 1.0) {
        const double delta = std::pow(expected, -1.0 / 3.0);
        std::cout << "delta " << format_g(delta) << "\n";
    }
    if (m_eff >= 1) {
        const DistinctnessBound db = distinctness_lower(n, m_eff);
        std::cout << "distinctness_lower " << format_g(db.lower) << "\n";
        std::cout << "theta " << format_g(db.theta) << "\n";
    }
    std::optional<double> alpha_eff = alpha;
    if (!alpha_eff && n >= 2) {
        // Default: smallest alpha with alpha^2 (1 + eps) > 1, where eps is
        // read off p = (1 + eps) (log n) n^-2.
        const double eps = p_eff * n * static_cast<double>(n) / std::log(static_cast<double>(n)) - 1.0;
        if (eps > 0.0)
            alpha_eff = std::min(1.0 - 1e-9, std::sqrt(1.0 / (1.0 + eps)) + 1e-6);
    }
    if (alpha_eff) {
        const QuotientBounds qb = quotient_bound(n, p_eff, *alpha_eff);
        std::cout << "alpha " << format_g(*alpha_eff) << "\n";
        std::cout << "quotient_star_bound " << format_g(qb.star_failure) << "\n";
        std::cout << "quotient_tail_bound " << format_g(qb.tail) << "\n";
    }
    return 0;
}

int run_report(const std::string& in_dir, const std::string& format) {
    if (format != "csv" && format != "tsv") throw std::runtime_error("--format must be csv or tsv");
    std::vector<fs::path> files;
    if (!fs::exists(in_dir)) throw std::runtime_error("no such directory: " + in_dir);
    for (const auto& entry : fs::recursive_directory_iterator(in_dir))
        if (entry.is_regular_file() && entry.path().filename() == "summary.csv")
            files.push_back(entry.path());
    std::sort(files.begin(), files.end());
    if (files.empty()) throw std::runtime_error("no summary.csv files under " + in_dir);

    struct Row {
        int n;
        double c;
        double p;
        std::string text;
    };
    std::vector<Row> rows;
    std::string header;
    for (const fs::path& file : files) {
        std::istringstream in(read_text_file(file.string()));
        std::string line;
        bool first = true;
        while (std::getline(in, line)) {
            if (line.empty()) continue;
            if (first) {
                first = false;
                if (header.empty()) header = line;
                else if (header != line)
                    throw std::runtime_error("inconsistent summary headers under " + in_dir);
                continue;
            }
            std::istringstream ls(line);
            std::string n_tok, c_tok, p_tok;
            std::getline(ls, n_tok, ',');
            std::getline(ls, c_tok, ',');
            std::getline(ls, p_tok, ',');
            Row row;
            row.n = std::stoi(n_tok);
            row.c = c_tok.empty() ? std::numeric_limits<double>::infinity() : std::stod(c_tok);
            row.p = p_tok.empty() ? std::numeric_limits<double>::infinity() : std::stod(p_tok);
            row.text = line;
            rows.push_back(std::move(row));
        }
    }
    std::stable_sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) {
        if (a.n != b.n) return a.n < b.n;
        if (a.c != b.c) return a.c < b.c;
        return a.p < b.p;
    });
    auto emit = [&](const std::string& line) {
        if (format == "csv") {
            std::cout << line << "\n";
        } else {
            std::string t = line;
            std::replace(t.begin(), t.end(), ',', '\t');
            std::cout << t << "\n";
        }
    };
    emit(header);
    for (const Row& row : rows) emit(row.text);
    return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args) {
    CLI::App app{"random triangular presentations, CNF obstructions, and Monte Carlo sweeps"};
    app.require_subcommand(1);

    // sample
    auto* sample = app.add_subcommand("sample", "sample a presentation and write it to a file");
    int s_n = 0;
    std::optional<double> s_p, s_c;
    std::string s_model = "binomial";
    std::optional<int> s_m;
    std::uint64_t s_seed = 0;
    std::string s_out;
    sample->add_option("--n", s_n, "generator count")->required();
    sample->add_option("--p", s_p, "inclusion probability");
    sample->add_option("--c", s_c, "density constant; p = c/n^2");
    sample->add_option("--model", s_model, "binomial|uniform-m")
        ->check(CLI::IsMember({"binomial", "uniform-m"}));
    sample->add_option("--m", s_m, "draw count for uniform-m");
    sample->add_option("--seed", s_seed, "master seed")->required();
    sample->add_option("--out", s_out, "output path")->required();

    // encode
    auto* encode = app.add_subcommand("encode", "encode a presentation as DIMACS CNF");
    std::string e_in, e_subset = "all", e_out;
    bool e_nae = false;
    encode->add_option("--in", e_in, "presentation file")->required();
    encode->add_option("--subset", e_subset, "all or comma-separated generator indices");
    encode->add_flag("--nae", e_nae, "emit the one-clause-per-relator NAE form");
    encode->add_option("--out", e_out, "output DIMACS path")->required();

    // solve
    auto* slv = app.add_subcommand("solve", "decide satisfiability");
    std::string v_in, v_dimacs;
    std::int64_t v_budget = 0;
    slv->add_option("--in", v_in, "presentation file (encoded, then solved)");
    slv->add_option("--dimacs", v_dimacs, "DIMACS CNF file");
    slv->add_option("--budget-ms", v_budget, "per-instance budget in ms (0 = none)");

    // sweep
    auto* sweep = app.add_subcommand("sweep", "Monte Carlo satisfiability sweep over c");
    int w_n = 0, w_trials = 0, w_jobs = 1;
    double w_cmin = 0, w_cmax = 0, w_cstep = 0;
    std::uint64_t w_seed = 0;
    std::string w_model = "binomial", w_out;
    std::int64_t w_budget = 10000;
    bool w_allow = false, w_timings = false;
    sweep->add_option("--n", w_n, "generator count")->required();
    sweep->add_option("--c-min", w_cmin)->required();
    sweep->add_option("--c-max", w_cmax)->required();
    sweep->add_option("--c-step", w_cstep)->required();
    sweep->add_option("--trials", w_trials, "trials per point")->required();
    sweep->add_option("--seed", w_seed, "master seed")->required();
    sweep->add_option("--model", w_model, "binomial|uniform-m")
        ->check(CLI::IsMember({"binomial", "uniform-m"}));
    sweep->add_option("--budget-ms", w_budget, "per-instance budget in ms (0 = none)");
    sweep->add_option("--jobs", w_jobs, "worker threads (output is jobs-independent)");
    sweep->add_flag("--allow-timeouts", w_allow, "exit 0 even with indeterminate trials");
    sweep->add_flag("--timings", w_timings,
                    "record per-trial elapsed_ms (breaks byte-for-byte replay)");
    sweep->add_option("--out", w_out, "output directory")->required();

    // threshold
    auto* thr = app.add_subcommand("threshold", "bisect the empirical 0.5 crossing in c");
    int t_n = 0, t_trials = 0, t_jobs = 1;
    double t_clo = 0, t_chi = 0;
    std::uint64_t t_seed = 0;
    std::int64_t t_budget = 10000;
    thr->add_option("--n", t_n)->required();
    thr->add_option("--c-lo", t_clo)->required();
    thr->add_option("--c-hi", t_chi)->required();
    thr->add_option("--trials", t_trials)->required();
    thr->add_option("--seed", t_seed)->required();
    thr->add_option("--budget-ms", t_budget);
    thr->add_option("--jobs", t_jobs);

    // quotient
    auto* quo = app.add_subcommand("quotient", "certify or refute large-support satisfiability");
    std::string q_in, q_strategy;
    double q_alpha = 0;
    std::uint64_t q_seed = 0;
    int q_samples = 200;
    std::int64_t q_budget = 0;
    quo->add_option("--in", q_in, "presentation file")->required();
    quo->add_option("--alpha", q_alpha, "dead-generator fraction in (0,1)")->required();
    quo->add_option("--strategy", q_strategy, "exhaustive|survivor|sampled")->required();
    quo->add_option("--seed", q_seed, "seed (sampled strategy)");
    quo->add_option("--samples", q_samples, "subset samples (sampled strategy)");
    quo->add_option("--budget-ms", q_budget, "per-solve budget in ms (0 = none)");

    // bounds
    auto* bnd = app.add_subcommand("bounds", "print the analytic bound report");
    int b_n = 0;
    std::optional<std::int64_t> b_m;
    std::optional<double> b_p, b_alpha;
    bnd->add_option("--n", b_n)->required();
    bnd->add_option("--m", b_m, "relator count");
    bnd->add_option("--p", b_p, "inclusion probability");
    bnd->add_option("--alpha", b_alpha, "dead-generator fraction in (0,1)");

    // report
    auto* rep = app.add_subcommand("report", "aggregate sweep summaries under a directory");
    std::string r_in, r_format = "csv";
    rep->add_option("--in", r_in, "directory to scan")->required();
    rep->add_option("--format", r_format, "csv|tsv");

    std::vector<const char*> argv;
    argv.push_back("trilab");
    for (const std::string& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        if (sample->parsed())
            return run_sample(args, s_n, s_p, s_c, s_model, s_m, s_seed, s_out);
        if (encode->parsed()) return run_encode(args, e_in, e_subset, e_nae, e_out);
        if (slv->parsed()) return run_solve(args, v_in, v_dimacs, v_budget);
        if (sweep->parsed())
            return run_sweep(args, w_n, w_cmin, w_cmax, w_cstep, w_trials, w_seed, w_model,
                             w_budget, w_jobs, w_allow, w_timings, w_out);
        if (thr->parsed())
            return run_threshold(args, t_n, t_clo, t_chi, t_trials, t_seed, t_budget, t_jobs);
        if (quo->parsed())
            return run_quotient(args, q_in, q_alpha, q_strategy, q_seed, q_samples, q_budget);
        if (bnd->parsed()) return run_bounds(args, b_n, b_m, b_p, b_alpha);
        if (rep->parsed()) return run_report(r_in, r_format);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

}  // namespace trilab
