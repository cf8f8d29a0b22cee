#include "cauchycorr/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "cauchycorr/distributions.hpp"
#include "cauchycorr/gof.hpp"
#include "cauchycorr/io.hpp"
#include "cauchycorr/manifest.hpp"
#include "cauchycorr/montecarlo.hpp"
#include "cauchycorr/svg_plot.hpp"
#include "cauchycorr/verify.hpp"

namespace cauchycorr::cli {

namespace fs = std::filesystem;

namespace {

/// Bad flags or flag combinations; maps to kExitUsage.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

constexpr const char* kSeedEnv = "CAUCHY_CORR_SEED";

std::uint64_t parse_seed(const std::string& text, const std::string& origin) {
    std::uint64_t v = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (text.empty() || ec != std::errc() || ptr != text.data() + text.size()) {
        throw UsageError(origin + ": seed must be an unsigned 64-bit integer, got '" + text + "'");
    }
    return v;
}

/// Flag, then environment, then the built-in default.
std::uint64_t resolve_seed(const std::optional<std::string>& flag) {
    if (flag) return parse_seed(*flag, "--seed");
    if (const char* env = std::getenv(kSeedEnv)) return parse_seed(env, kSeedEnv);
    return mc::kDefaultSeed;
}

struct Grid {
    double lo, hi, step;
};

Grid parse_grid(const std::string& text) {
    std::vector<double> parts;
    std::string piece;
    std::istringstream ss(text);
    while (std::getline(ss, piece, ':')) {
        try {
            parts.push_back(io::parse_double(piece));
        } catch (const std::exception&) {
            throw UsageError("--grid: bad number '" + piece + "'");
        }
    }
    if (parts.size() != 3) throw UsageError("--grid expects lo:hi:step");
    const Grid g{parts[0], parts[1], parts[2]};
    if (!std::isfinite(g.lo) || !std::isfinite(g.hi) || !(g.step > 0.0) || g.hi < g.lo) {
        throw UsageError("--grid needs finite lo <= hi and step > 0");
    }
    return g;
}

std::vector<double> grid_points(const Grid& g) {
    const auto count = static_cast<long long>(std::floor((g.hi - g.lo) / g.step + 1e-9)) + 1;
    if (count > 10'000'000) throw UsageError("--grid has more than 1e7 points");
    std::vector<double> xs;
    xs.reserve(static_cast<std::size_t>(count));
    for (long long i = 0; i < count; ++i) xs.push_back(g.lo + static_cast<double>(i) * g.step);
    return xs;
}

mc::Binning parse_binning(const std::string& text) {
    try {
        return mc::Binning::parse(text);
    } catch (const std::exception& e) {
        throw UsageError(std::string("--bins: ") + e.what());
    }
}

/// AsymptoticRc takes either a or n; every other model takes neither.
dist::DistributionModel build_model(dist::ModelId id, std::optional<long long> n,
                                    std::optional<double> a) {
    if (n && a) throw UsageError("give at most one of --n and --a");
    if (id != dist::ModelId::AsymptoticRc) {
        if (n || a) throw UsageError("--n/--a only apply to AsymptoticRc");
        return dist::DistributionModel(id);
    }
    try {
        if (a) return dist::DistributionModel::asymptotic_rc(*a);
        return dist::DistributionModel::asymptotic_rc_for_n(n.value_or(400));
    } catch (const std::exception& e) {
        throw UsageError(e.what());
    }
}

bool cf_is_complex(dist::ModelId id) {
    return id == dist::ModelId::CauchySquared || id == dist::ModelId::LimitW ||
           id == dist::ModelId::HalfNormalU;
}

/// Opens `path` for writing, or returns the fallback stream for an empty path.
class Sink {
public:
    Sink(const std::string& path, std::ostream& fallback) : stream_(&fallback) {
        if (path.empty()) return;
        file_.open(path, std::ios::binary);
        if (!file_) throw std::runtime_error("cannot write " + path);
        stream_ = &file_;
    }
    std::ostream& get() { return *stream_; }

private:
    std::ofstream file_;
    std::ostream* stream_;
};

std::string command_line(int argc, const char* const* argv) {
    std::string s;
    for (int i = 0; i < argc; ++i) {
        if (i) s += ' ';
        s += argv[i];
    }
    return s;
}

// CLI11 reads "--bins -4:4:0.25" as two flags; glue such values on with '='.
std::vector<std::string> normalize_args(int argc, const char* const* argv) {
    static const std::vector<std::string> kValued{"--grid", "--bins", "--a"};
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) {
        std::string arg = argv[i];
        const bool valued = std::find(kValued.begin(), kValued.end(), arg) != kValued.end();
        if (valued && i + 1 < argc && argv[i + 1][0] == '-' && argv[i + 1][1] != '-') {
            arg += '=';
            arg += argv[++i];
        }
        args.push_back(std::move(arg));
    }
    return args;
}

// ---- eval -----------------------------------------------------------------

struct EvalArgs {
    std::string model;
    std::string fn = "pdf";
    std::string grid;
    std::optional<long long> n;
    std::optional<double> a;
    std::string out;
};

int cmd_eval(const EvalArgs& args, std::ostream& out) {
    dist::ModelId id;
    try {
        id = dist::parse_model_id(args.model);
    } catch (const std::exception& e) {
        throw UsageError(e.what());
    }
    const auto model = build_model(id, args.n, args.a);
    if (args.fn == "cdf" && !model.has_cdf()) {
        throw UsageError("cdf not available for " + std::string(model.name()));
    }
    const auto xs = grid_points(parse_grid(args.grid));

    std::ostringstream csv;
    const bool with_im = args.fn == "cf" && cf_is_complex(id);
    csv << (with_im ? "x,value,im_value\n" : "x,value\n");
    for (double x : xs) {
        csv << io::format_double(x) << ',';
        if (args.fn == "pdf") {
            const auto d = model.pdf(x);
            csv << (d.is_singular() ? std::string("SINGULAR") : io::format_double(d.value()));
        } else if (args.fn == "cdf") {
            csv << io::format_double(model.cdf(x));
        } else {
            const auto c = model.cf(x);
            csv << io::format_double(c.real());
            if (with_im) csv << ',' << io::format_double(c.imag());
        }
        csv << '\n';
    }
    Sink sink(args.out, out);
    sink.get() << csv.str();
    return kExitOk;
}

// ---- simulate -------------------------------------------------------------

struct SimulateArgs {
    long long n = 400;
    long long reps = 100000;
    std::optional<std::string> seed;
    std::string bins = "-4:4:0.25";
    std::string statistic = "scaled-rc";
    std::string out_dir;
    unsigned workers = 0;
    bool raw = false;
    std::size_t spill_threshold = 10'000'000;
    std::string from_manifest;
};

int run_simulate(const mc::SimulationConfig& cfg, bool keep_raw, const SimulateArgs& args,
                 const std::string& command, std::ostream& out) {
    const fs::path dir = args.out_dir;
    fs::create_directories(dir);
    io::RunManifest manifest;
    manifest.command = command;
    manifest.master_seed = cfg.master_seed;
    manifest.started_at = io::utc_timestamp();

    mc::RunOptions ro;
    ro.workers = args.workers;
    ro.spill_threshold = args.spill_threshold;
    ro.spill_dir = dir;
    const auto run = mc::run_simulation(cfg, ro);

    {
        std::ofstream csv(dir / "histogram.csv", std::ios::binary);
        if (!csv) throw std::runtime_error("cannot write " + (dir / "histogram.csv").string());
        io::write_histogram_csv(csv, run.histogram);
    }
    std::vector<std::string> files{"histogram.csv"};

    // KS needs at least 10 values.
    if (mc::reference_model(cfg) && cfg.replications >= 10) {
        const auto report = mc::score_run(cfg, run);
        std::ofstream g(dir / "gof.json", std::ios::binary);
        g << io::to_json(report).dump(2) << '\n';
        files.push_back("gof.json");
        out << "KS = " << io::format_double(report.ks.statistic) << ", chi2/dof = "
            << io::format_double(report.chi2.statistic / std::max(1, report.chi2.dof)) << '\n';
    }

    // A spilled run has already written raw.f64; otherwise write it on request.
    const bool raw_written = run.raw.is_spilled();
    if (keep_raw && !raw_written) {
        mc::write_raw_values(dir / "raw.f64", run.raw.load(), false);
    } else if (!keep_raw && raw_written) {
        fs::remove(dir / "raw.f64");
    }
    if (keep_raw) files.push_back("raw.f64");

    manifest.config = io::to_json(cfg);
    manifest.config["raw"] = keep_raw;
    if (keep_raw) manifest.config["raw_count"] = run.raw.size();
    for (const auto& f : files) manifest.add_output(dir, f);
    manifest.finished_at = io::utc_timestamp();
    manifest.save(dir / "manifest.json");

    out << "wrote " << run.histogram.total() << " replications to " << dir.string() << '\n';
    return kExitOk;
}

int cmd_simulate(const SimulateArgs& args, const std::string& command, std::ostream& out) {
    if (args.out_dir.empty()) throw UsageError("simulate needs --out");
    mc::SimulationConfig cfg;
    bool keep_raw = args.raw;
    if (!args.from_manifest.empty()) {
        const auto m = io::RunManifest::load(args.from_manifest);
        try {
            cfg = io::simulation_config_from_json(m.config);
        } catch (const std::exception& e) {
            throw UsageError(std::string("manifest config: ") + e.what());
        }
        keep_raw = m.config.value("raw", false);
    } else {
        cfg.n = args.n;
        cfg.replications = args.reps;
        cfg.master_seed = resolve_seed(args.seed);
        cfg.binning = parse_binning(args.bins);
        try {
            cfg.statistic = mc::parse_statistic(args.statistic);
            cfg.validate();
        } catch (const std::exception& e) {
            throw UsageError(e.what());
        }
    }
    return run_simulate(cfg, keep_raw, args, command, out);
}

// ---- verify ---------------------------------------------------------------

struct VerifyArgs {
    std::string level = "fast";
    std::optional<std::string> seed;
    unsigned workers = 0;
    std::string out;
};

int cmd_verify(const VerifyArgs& args, std::ostream& out) {
    verify::Options opt;
    opt.level = args.level == "full" ? verify::Level::Full : verify::Level::Fast;
    opt.seed = resolve_seed(args.seed);
    opt.workers = args.workers;

    const auto results = verify::run_all(opt);
    bool all = true;
    nlohmann::json checks = nlohmann::json::array();
    for (const auto& r : results) {
        out << verify::describe(r) << '\n';
        checks.push_back(verify::to_json(r));
        all = all && r.passed();
    }
    out << (all ? "all checks passed" : "some checks FAILED") << '\n';
    if (!args.out.empty()) {
        const nlohmann::json report{{"tool_version", io::kToolVersion},
                                    {"level", args.level},
                                    {"master_seed", opt.seed},
                                    {"passed", all},
                                    {"checks", checks}};
        std::ofstream f(args.out, std::ios::binary);
        if (!f) throw std::runtime_error("cannot write " + args.out);
        f << report.dump(2) << '\n';
    }
    return all ? kExitOk : kExitCheckFailed;
}

// ---- plot -----------------------------------------------------------------

struct PlotArgs {
    std::string hist;
    std::optional<long long> n;
    std::optional<double> a;
    std::optional<std::string> bins;
    std::string out;
};

int cmd_plot(const PlotArgs& args, std::ostream& out) {
    if (args.n && args.a) throw UsageError("give at most one of --n and --a");
    std::ifstream in(args.hist, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + args.hist);
    const mc::Histogram hist = io::read_histogram_csv(in);
    if (args.bins && !(parse_binning(*args.bins) == hist.binning())) {
        throw std::runtime_error("plot: --bins " + *args.bins +
                                 " does not match the histogram's binning");
    }
    if (hist.total() == 0) throw std::runtime_error("plot: histogram is empty");

    io::PlotOptions opts;
    try {
        if (args.a) {
            opts.a = dist::DistributionModel::asymptotic_rc(*args.a).params().at(0);
        } else {
            const long long n = args.n.value_or(400);
            opts.a = dist::correction_a(n).a;
            opts.n = n;
        }
    } catch (const std::exception& e) {
        throw UsageError(e.what());
    }
    const std::string svg = io::render_histogram_svg(hist, opts);
    Sink sink(args.out, out);
    sink.get() << svg;
    return kExitOk;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Cauchy correlation toolkit: model evaluation, Monte Carlo, verification", "cauchy_corr"};
    app.require_subcommand(1);
    app.set_version_flag("--version", io::kToolVersion);

    EvalArgs eval;
    auto* e = app.add_subcommand("eval", "Evaluate a model's pdf, cdf or cf on a grid (CSV)");
    e->add_option("--model", eval.model, "CauchyStd, CauchySquared, LimitW, HalfNormalU, "
                                         "ProductS or AsymptoticRc")
        ->required();
    e->add_option("--fn", eval.fn, "pdf, cdf or cf")
        ->check(CLI::IsMember({"pdf", "cdf", "cf"}))
        ->capture_default_str();
    e->add_option("--grid", eval.grid, "lo:hi:step")->required();
    e->add_option("--n", eval.n, "sample size fixing a = 1 - ln(pi)/ln(n) (AsymptoticRc)");
    e->add_option("--a", eval.a, "correction factor in (0, 1] (AsymptoticRc)");
    e->add_option("--out", eval.out, "output file (default stdout)");

    SimulateArgs sim;
    auto* s = app.add_subcommand("simulate", "Monte Carlo run: histogram, GOF report, manifest");
    s->add_option("--n", sim.n, "sample size per replication")->capture_default_str();
    s->add_option("--reps", sim.reps, "replications")->capture_default_str();
    s->add_option("--seed", sim.seed, "master seed (default: $CAUCHY_CORR_SEED or 20180915)");
    s->add_option("--bins", sim.bins, "lo:hi:width")->capture_default_str();
    s->add_option("--statistic", sim.statistic, "scaled-rc, sumsq or product-triple")
        ->capture_default_str();
    s->add_option("--out", sim.out_dir, "run directory");
    s->add_option("--workers", sim.workers, "worker threads (0 = all cores)");
    s->add_flag("--raw", sim.raw, "keep raw values as raw.f64");
    s->add_option("--spill-threshold", sim.spill_threshold,
                  "samples larger than this stream to disk")
        ->capture_default_str();
    s->add_option("--from-manifest", sim.from_manifest, "re-run the config of a manifest.json");

    VerifyArgs ver;
    auto* v = app.add_subcommand("verify", "Run the verification suite");
    v->add_option("--level", ver.level, "fast or full")
        ->check(CLI::IsMember({"fast", "full"}))
        ->capture_default_str();
    v->add_option("--seed", ver.seed, "master seed for the Monte Carlo checks");
    v->add_option("--workers", ver.workers, "worker threads (0 = all cores)");
    v->add_option("--out", ver.out, "JSON report file");

    PlotArgs plot;
    auto* p = app.add_subcommand("plot", "Histogram vs. approximate pdf (SVG)");
    p->add_option("--hist", plot.hist, "histogram.csv from simulate")->required();
    p->add_option("--n", plot.n, "sample size behind the histogram (default 400)");
    p->add_option("--a", plot.a, "explicit correction factor");
    p->add_option("--bins", plot.bins, "expected binning lo:hi:width");
    p->add_option("--out", plot.out, "output SVG (default stdout)");

    std::vector<std::string> args = normalize_args(argc, argv);
    std::reverse(args.begin(), args.end());
    try {
        app.parse(args);
    } catch (const CLI::CallForHelp& ex) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForVersion&) {
        out << io::kToolVersion << '\n';
        return kExitOk;
    } catch (const CLI::ParseError& ex) {
        if (ex.get_exit_code() == 0) {
            out << app.help();
            return kExitOk;
        }
        err << "error: " << ex.what() << '\n';
        return kExitUsage;
    }

    try {
        if (*e) return cmd_eval(eval, out);
        if (*s) return cmd_simulate(sim, command_line(argc, argv), out);
        if (*v) return cmd_verify(ver, out);
        if (*p) return cmd_plot(plot, out);
    } catch (const UsageError& ex) {
        err << "usage error: " << ex.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& ex) {
        err << "error: " << ex.what() << '\n';
        return kExitUsage;
    }
    return kExitUsage;
}

}  // namespace cauchycorr::cli
