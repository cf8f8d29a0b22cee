#include "cauchycorr/io.hpp"

#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace cauchycorr::io {

namespace {

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> out;
    std::string field;
    std::istringstream ss(line);
    while (std::getline(ss, field, ',')) out.push_back(field);
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}

std::uint64_t parse_count(const std::string& s) {
    std::uint64_t v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size()) {
        throw std::runtime_error("histogram csv: bad count '" + s + "'");
    }
    return v;
}

}  // namespace

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
    if (ec != std::errc()) throw std::runtime_error("format_double failed");
    return std::string(buf, ptr);
}

double parse_double(const std::string& s) {
    if (s == "inf" || s == "+inf") return HUGE_VAL;
    if (s == "-inf") return -HUGE_VAL;
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size()) {
        throw std::runtime_error("cannot parse number '" + s + "'");
    }
    return v;
}

void write_histogram_csv(std::ostream& out, const mc::Histogram& hist) {
    const mc::Binning& b = hist.binning();
    out << "bin_lo,bin_hi,count\n";
    out << "-inf," << format_double(b.lo) << ',' << std::to_string(hist.underflow()) << '\n';
    for (std::size_t i = 0; i < b.bin_count(); ++i) {
        out << format_double(b.edge(i)) << ',' << format_double(b.edge(i + 1)) << ','
            << std::to_string(hist.counts()[i]) << '\n';
    }
    out << format_double(b.hi) << ",inf," << std::to_string(hist.overflow()) << '\n';
}

mc::Histogram read_histogram_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) || line != "bin_lo,bin_hi,count") {
        throw std::runtime_error("histogram csv: missing 'bin_lo,bin_hi,count' header");
    }
    struct Row {
        double lo, hi;
        std::uint64_t count;
    };
    std::vector<Row> rows;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto f = split_fields(line);
        if (f.size() != 3) throw std::runtime_error("histogram csv: expected 3 fields: " + line);
        rows.push_back({parse_double(f[0]), parse_double(f[1]), parse_count(f[2])});
    }
    if (rows.size() < 3 || !std::isinf(rows.front().lo) || !std::isinf(rows.back().hi)) {
        throw std::runtime_error("histogram csv: underflow/overflow rows missing");
    }
    const double lo = rows[1].lo;
    const double hi = rows[rows.size() - 2].hi;
    const double width = rows[1].hi - rows[1].lo;
    mc::Binning binning{lo, hi, width};
    try {
        binning.validate();
    } catch (const std::invalid_argument& e) {
        throw std::runtime_error(std::string("histogram csv: ") + e.what());
    }
    if (binning.bin_count() != rows.size() - 2) {
        throw std::runtime_error("histogram csv: bin rows do not match the binning they imply");
    }
    std::vector<std::uint64_t> counts;
    for (std::size_t i = 1; i + 1 < rows.size(); ++i) {
        const std::size_t bin = i - 1;
        const double tol = 1e-12 * std::max(1.0, std::abs(binning.edge(bin)));
        if (std::abs(rows[i].lo - binning.edge(bin)) > tol ||
            std::abs(rows[i].hi - binning.edge(bin + 1)) > tol) {
            throw std::runtime_error("histogram csv: bins are not contiguous and equal-width");
        }
        counts.push_back(rows[i].count);
    }
    if (rows.front().hi != lo || rows.back().lo != hi) {
        throw std::runtime_error("histogram csv: tail rows disagree with the bin range");
    }
    return mc::Histogram::from_counts(binning, std::move(counts), rows.front().count,
                                      rows.back().count);
}

nlohmann::json to_json(const mc::SimulationConfig& cfg) {
    return {{"n", cfg.n},
            {"replications", cfg.replications},
            {"master_seed", cfg.master_seed},
            {"statistic", std::string(mc::to_string(cfg.statistic))},
            {"binning", {{"lo", cfg.binning.lo}, {"hi", cfg.binning.hi}, {"width", cfg.binning.width}}}};
}

mc::SimulationConfig simulation_config_from_json(const nlohmann::json& j) {
    mc::SimulationConfig cfg;
    cfg.n = j.at("n").get<long long>();
    cfg.replications = j.at("replications").get<long long>();
    cfg.master_seed = j.at("master_seed").get<std::uint64_t>();
    cfg.statistic = mc::parse_statistic(j.at("statistic").get<std::string>());
    const auto& b = j.at("binning");
    cfg.binning = {b.at("lo").get<double>(), b.at("hi").get<double>(), b.at("width").get<double>()};
    cfg.validate();
    return cfg;
}

nlohmann::json to_json(const mc::GofReport& report) {
    return {{"model", report.model},
            {"model_params", report.model_params},
            {"ks_statistic", report.ks.statistic},
            {"ks_sample_size", report.ks.sample_size},
            {"chi2_statistic", report.chi2.statistic},
            {"chi2_dof", report.chi2.dof},
            {"chi2_per_dof", report.chi2.statistic / report.chi2.dof},
            {"outside_observed", report.chi2.outside_observed},
            {"outside_expected", report.chi2.outside_expected},
            {"config", to_json(report.config)}};
}

nlohmann::json to_json(const mc::IndependenceReport& report) {
    return {{"n", report.n},
            {"replications", report.replications},
            {"spearman_abs_t_u1", report.rho_abs_t_u1},
            {"spearman_abs_t_u2", report.rho_abs_t_u2},
            {"spearman_u1_u2", report.rho_u1_u2},
            {"large_n", report.large_n}};
}

}  // namespace cauchycorr::io
