#include <catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "cauchycorr/cli.hpp"
#include "cauchycorr/distributions.hpp"
#include "cauchycorr/io.hpp"
#include "cauchycorr/manifest.hpp"

using namespace cauchycorr;
using Catch::Approx;
namespace fs = std::filesystem;

namespace {

struct Run {
    int code;
    std::string out, err;
};

Run run(std::vector<std::string> args) {
    args.insert(args.begin(), "cauchy_corr");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = cli::run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::vector<std::vector<std::string>> csv_rows(const std::string& text) {
    std::vector<std::vector<std::string>> rows;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        std::vector<std::string> f;
        std::istringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ',')) f.push_back(cell);
        rows.push_back(f);
    }
    return rows;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

fs::path fresh_dir(const std::string& name) {
    const fs::path d = fs::temp_directory_path() / ("cauchycorr_cli_" + name);
    fs::remove_all(d);
    return d;
}

}  // namespace

TEST_CASE("eval AsymptoticRc pdf on the paper grid", "[cli][eval]") {
    const auto r = run({"eval", "--model", "AsymptoticRc", "--fn", "pdf", "--grid", "0.25:4:0.25", "--n", "400"});
    REQUIRE(r.code == 0);
    const auto rows = csv_rows(r.out);
    REQUIRE(rows.size() == 17);
    CHECK(rows[0] == std::vector<std::string>{"x", "value"});
    const double a = dist::correction_a(400).a;
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const double x = std::stod(rows[i][0]);
        CHECK(x == Approx(0.25 * i));
        CHECK(io::parse_double(rows[i][1]) == dist::rc_pdf(x, a).value());
    }
}

TEST_CASE("eval single points and singular rows", "[cli][eval]") {
    auto cf = run({"eval", "--model", "CauchyStd", "--fn", "cf", "--grid", "0:0:1"});
    REQUIRE(cf.code == 0);
    CHECK(cf.out == "x,value\n0,1\n");

    auto s = run({"eval", "--model", "ProductS", "--grid", "1:1:1"});
    REQUIRE(s.code == 0);
    CHECK(io::parse_double(csv_rows(s.out)[1][1]) == Approx(1.0 / (M_PI * M_PI)).epsilon(1e-15));

    auto sing = run({"eval", "--model", "ProductS", "--grid", "-1:1:0.5"});
    REQUIRE(sing.code == 0);
    CHECK(sing.out.find("\n0,SINGULAR\n") != std::string::npos);

    auto complex_cf = run({"eval", "--model", "LimitW", "--fn", "cf", "--grid", "0:1:0.5"});
    REQUIRE(complex_cf.code == 0);
    CHECK(csv_rows(complex_cf.out)[0] == std::vector<std::string>{"x", "value", "im_value"});
    CHECK(csv_rows(complex_cf.out).size() == 4);
}

TEST_CASE("eval errors are usage errors", "[cli][eval]") {
    const auto no_cdf = run({"eval", "--model", "ProductS", "--fn", "cdf", "--grid", "0:1:1"});
    CHECK(no_cdf.code == cli::kExitUsage);
    CHECK(no_cdf.err.find("not available") != std::string::npos);
    CHECK(run({"eval", "--model", "Gauss", "--grid", "0:1:1"}).code == cli::kExitUsage);
    CHECK(run({"eval", "--model", "CauchyStd", "--grid", "1:0:1"}).code == cli::kExitUsage);
    CHECK(run({"eval", "--model", "CauchyStd", "--grid", "0:1"}).code == cli::kExitUsage);
    CHECK(run({"eval", "--model", "CauchyStd", "--fn", "mgf", "--grid", "0:1:1"}).code == cli::kExitUsage);
    CHECK(run({"eval", "--model", "CauchyStd", "--n", "400", "--grid", "0:1:1"}).code == cli::kExitUsage);
    CHECK(run({"eval", "--model", "AsymptoticRc", "--a", "1.5", "--grid", "0:1:1"}).code == cli::kExitUsage);
    CHECK(run({}).code == cli::kExitUsage);
    CHECK(run({"frobnicate"}).code == cli::kExitUsage);
    CHECK(run({"--help"}).code == 0);
}

TEST_CASE("negative grid and bin bounds parse", "[cli]") {
    const auto r = run({"eval", "--model", "CauchyStd", "--grid", "-1:1:1"});
    REQUIRE(r.code == 0);
    CHECK(csv_rows(r.out).size() == 4);
    const auto dir = fresh_dir("negbins");
    const auto s = run({"simulate", "--n", "20", "--reps", "50", "--bins", "-2:2:0.5", "--out", dir.string()});
    REQUIRE(s.code == 0);
    CHECK(slurp(dir / "histogram.csv").rfind("bin_lo,bin_hi,count\n-inf,-2,", 0) == 0);
    fs::remove_all(dir);
}

TEST_CASE("simulate writes histogram, report and manifest", "[cli][simulate]") {
    const auto dir = fresh_dir("sim");
    const auto r = run({"simulate", "--n", "400", "--reps", "2000", "--seed", "99", "--out", dir.string(),
                        "--raw", "--workers", "2"});
    REQUIRE(r.code == 0);
    for (const char* f : {"histogram.csv", "gof.json", "raw.f64", "manifest.json"}) {
        CHECK(fs::exists(dir / f));
    }
    CHECK(fs::file_size(dir / "raw.f64") == 2000 * 8);
    const auto m = io::RunManifest::load(dir / "manifest.json");
    CHECK(m.master_seed == 99);
    CHECK(m.config.at("n") == 400);
    CHECK(m.config.at("raw_count") == 2000);
    REQUIRE(m.outputs.size() == 3);
    for (const auto& e : m.outputs) CHECK(e.sha256 == io::sha256_file(dir / e.file));
    const auto gof = nlohmann::json::parse(slurp(dir / "gof.json"));
    CHECK(gof.at("model") == "AsymptoticRc");
    CHECK(gof.at("ks_sample_size") == 2000);

    // Re-running from the manifest reproduces every checksum.
    const auto again = fresh_dir("sim_again");
    const auto r2 = run({"simulate", "--from-manifest", (dir / "manifest.json").string(), "--out",
                         again.string(), "--workers", "1"});
    REQUIRE(r2.code == 0);
    const auto m2 = io::RunManifest::load(again / "manifest.json");
    REQUIRE(m2.outputs.size() == m.outputs.size());
    for (std::size_t i = 0; i < m.outputs.size(); ++i) {
        CHECK(m2.outputs[i].file == m.outputs[i].file);
        CHECK(m2.outputs[i].sha256 == m.outputs[i].sha256);
    }
    fs::remove_all(dir);
    fs::remove_all(again);
}

TEST_CASE("simulate: one replication, determinism, bad flags", "[cli][simulate]") {
    const auto one = fresh_dir("one");
    REQUIRE(run({"simulate", "--reps", "1", "--n", "30", "--out", one.string()}).code == 0);
    std::istringstream in(slurp(one / "histogram.csv"));
    CHECK(io::read_histogram_csv(in).total() == 1);
    CHECK_FALSE(fs::exists(one / "gof.json"));  // too few values to score
    CHECK_FALSE(fs::exists(one / "raw.f64"));

    const auto a = fresh_dir("det_a"), b = fresh_dir("det_b");
    REQUIRE(run({"simulate", "--reps", "3000", "--n", "50", "--seed", "5", "--out", a.string()}).code == 0);
    REQUIRE(run({"simulate", "--reps", "3000", "--n", "50", "--seed", "5", "--out", b.string(), "--workers", "3"}).code == 0);
    CHECK(slurp(a / "histogram.csv") == slurp(b / "histogram.csv"));
    CHECK(slurp(a / "gof.json") == slurp(b / "gof.json"));

    CHECK(run({"simulate", "--bins", "-4:4:0.3", "--out", a.string()}).code == cli::kExitUsage);
    CHECK(run({"simulate", "--n", "1", "--out", a.string()}).code == cli::kExitUsage);
    CHECK(run({"simulate", "--statistic", "median", "--out", a.string()}).code == cli::kExitUsage);
    CHECK(run({"simulate", "--seed", "-3", "--out", a.string()}).code == cli::kExitUsage);
    CHECK(run({"simulate", "--reps", "10"}).code == cli::kExitUsage);
    for (const auto& d : {one, a, b}) fs::remove_all(d);
}

TEST_CASE("seed: flag beats environment beats default", "[cli][simulate]") {
    const auto d = fresh_dir("seed");
    ::setenv("CAUCHY_CORR_SEED", "31337", 1);
    REQUIRE(run({"simulate", "--reps", "5", "--n", "10", "--out", d.string()}).code == 0);
    CHECK(io::RunManifest::load(d / "manifest.json").master_seed == 31337);
    REQUIRE(run({"simulate", "--reps", "5", "--n", "10", "--seed", "8", "--out", d.string()}).code == 0);
    CHECK(io::RunManifest::load(d / "manifest.json").master_seed == 8);
    ::setenv("CAUCHY_CORR_SEED", "not-a-seed", 1);
    CHECK(run({"simulate", "--reps", "5", "--n", "10", "--out", d.string()}).code == cli::kExitUsage);
    ::unsetenv("CAUCHY_CORR_SEED");
    REQUIRE(run({"simulate", "--reps", "5", "--n", "10", "--out", d.string()}).code == 0);
    CHECK(io::RunManifest::load(d / "manifest.json").master_seed == 20180915);
    fs::remove_all(d);
}

TEST_CASE("verify fast is green and writes a report", "[cli][verify]") {
    const auto d = fresh_dir("verify");
    fs::create_directories(d);
    const auto r = run({"verify", "--level", "fast", "--out", (d / "report.json").string()});
    INFO(r.out);
    CHECK(r.code == 0);
    CHECK(r.out.find("FAIL") == std::string::npos);
    const auto j = nlohmann::json::parse(slurp(d / "report.json"));
    CHECK(j.at("passed") == true);
    CHECK(j.at("checks").size() == 6);
    for (const auto& c : j.at("checks")) {
        CHECK(c.contains("measured"));
        CHECK(c.contains("threshold"));
    }
    CHECK(run({"verify", "--level", "medium"}).code == cli::kExitUsage);
    fs::remove_all(d);
}

TEST_CASE("plot renders an SVG and refuses bad input", "[cli][plot]") {
    const auto d = fresh_dir("plot");
    REQUIRE(run({"simulate", "--reps", "500", "--out", d.string()}).code == 0);
    const auto svg_path = d / "fig.svg";
    REQUIRE(run({"plot", "--hist", (d / "histogram.csv").string(), "--n", "400", "--out", svg_path.string()}).code == 0);
    const std::string svg = slurp(svg_path);
    CHECK(svg.find("<svg") != std::string::npos);
    CHECK(svg.find("a = 0.80894 (n = 400)") != std::string::npos);

    CHECK(run({"plot", "--hist", (d / "histogram.csv").string(), "--bins", "-2:2:0.25"}).code == cli::kExitUsage);

    // Empty histogram: error and no file.
    {
        std::ofstream f(d / "empty.csv", std::ios::binary);
        io::write_histogram_csv(f, mc::Histogram(mc::Binning{}));
    }
    const auto empty_svg = d / "empty.svg";
    CHECK(run({"plot", "--hist", (d / "empty.csv").string(), "--out", empty_svg.string()}).code == cli::kExitUsage);
    CHECK_FALSE(fs::exists(empty_svg));
    CHECK(run({"plot", "--hist", (d / "nope.csv").string()}).code == cli::kExitUsage);
    fs::remove_all(d);
}

TEST_CASE("installed tool exit codes", "[cli][binary]") {
    const char* tool = std::getenv("CAUCHY_CORR_TOOL");
    if (!tool) SKIP("CAUCHY_CORR_TOOL not set");
    const std::string t = tool;
    auto status = [](const std::string& cmd) {
        const int raw = std::system((cmd + " > /dev/null 2>&1").c_str());
        return WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    };
    CHECK(status(t + " eval --model CauchyStd --grid 0:1:0.5") == 0);
    CHECK(status(t + " eval --model ProductS --fn cdf --grid 0:1:0.5") == 2);
    CHECK(status(t + " --version") == 0);
    CHECK(status(t) == 2);
}
