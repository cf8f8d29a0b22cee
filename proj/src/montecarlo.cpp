#include "cauchycorr/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <functional>
#include <numbers>
#include <numeric>
#include <string>
#include <thread>

namespace cauchycorr::mc {

namespace {

constexpr std::size_t kBlock = 1024;

unsigned resolve_workers(unsigned requested) {
    if (requested > 0) return requested;
    return std::max(1U, std::thread::hardware_concurrency());
}

// Runs body(worker, begin, end) over [0, count) in blocks claimed from a
// shared counter. Which worker handles which block is unspecified.
void parallel_blocks(std::size_t count, unsigned workers,
                     const std::function<void(unsigned, std::size_t, std::size_t)>& body) {
    if (workers <= 1 || count <= kBlock) {
        body(0, 0, count);
        return;
    }
    std::atomic<std::size_t> next{0};
    auto loop = [&](unsigned w) {
        for (;;) {
            const std::size_t begin = next.fetch_add(kBlock);
            if (begin >= count) return;
            body(w, begin, std::min(count, begin + kBlock));
        }
    };
    std::vector<std::jthread> pool;
    pool.reserve(workers - 1);
    for (unsigned w = 1; w < workers; ++w) pool.emplace_back(loop, w);
    loop(0);
}

std::uint64_t to_little_endian(std::uint64_t v) {
    if constexpr (std::endian::native == std::endian::little) {
        return v;
    } else {
        std::uint64_t r = 0;
        for (int i = 0; i < 8; ++i) r |= ((v >> (8 * i)) & 0xFFU) << (8 * (7 - i));
        return r;
    }
}

double sum_squares(std::span<const double> v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return s;
}

std::vector<double> average_ranks(std::span<const double> v) {
    std::vector<std::size_t> order(v.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
    std::vector<double> ranks(v.size());
    std::size_t i = 0;
    while (i < order.size()) {
        std::size_t j = i + 1;
        while (j < order.size() && v[order[j]] == v[order[i]]) ++j;
        const double r = 0.5 * static_cast<double>(i + j + 1);  // mean of ranks i+1..j
        for (std::size_t k = i; k < j; ++k) ranks[order[k]] = r;
        i = j;
    }
    return ranks;
}

struct Draws {
    std::vector<double> x;
    std::vector<double> y;
};

// The X draws come first, then the Y draws, from one replication stream.
Draws& draw_pair(std::uint64_t seed, std::uint64_t replication, long long n) {
    thread_local Draws d;
    StreamRng rng(seed, replication);
    const auto count = static_cast<std::size_t>(n);
    d.x.resize(count);
    d.y.resize(count);
    for (double& v : d.x) v = cauchy_from_uniform(rng.uniform_open());
    for (double& v : d.y) v = cauchy_from_uniform(rng.uniform_open());
    return d;
}

}  // namespace

std::string_view to_string(Statistic s) {
    switch (s) {
        case Statistic::ScaledRc: return "ScaledRc";
        case Statistic::SumSqOverN2: return "SumSqOverN2";
        case Statistic::SingleProductTriple: return "SingleProductTriple";
    }
    return "?";
}

Statistic parse_statistic(std::string_view name) {
    if (name == "ScaledRc" || name == "scaled-rc") return Statistic::ScaledRc;
    if (name == "SumSqOverN2" || name == "sumsq") return Statistic::SumSqOverN2;
    if (name == "SingleProductTriple" || name == "product-triple") {
        return Statistic::SingleProductTriple;
    }
    throw std::invalid_argument("unknown statistic '" + std::string(name) + "'");
}

void SimulationConfig::validate() const {
    if (n < 2) throw std::invalid_argument("simulation: n must be >= 2");
    if (replications < 1) throw std::invalid_argument("simulation: replications must be >= 1");
    binning.validate();
}

StreamRng::StreamRng(std::uint64_t master_seed, std::uint64_t stream_id) {
    std::seed_seq seq{static_cast<std::uint32_t>(master_seed),
                      static_cast<std::uint32_t>(master_seed >> 32),
                      static_cast<std::uint32_t>(stream_id),
                      static_cast<std::uint32_t>(stream_id >> 32)};
    engine_.seed(seq);
}

double StreamRng::uniform_open() {
    const std::uint64_t k = engine_() >> 11;
    return (static_cast<double>(k) + 0.5) * 0x1.0p-53;
}

double cauchy_from_uniform(double u) { return std::tan(std::numbers::pi * (u - 0.5)); }

std::vector<double> sample_cauchy(std::size_t count, StreamRng& rng) {
    if (count < 1) throw std::invalid_argument("sample_cauchy: count must be >= 1");
    std::vector<double> out(count);
    for (double& v : out) v = cauchy_from_uniform(rng.uniform_open());
    return out;
}

double centralized_r(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) throw std::domain_error("centralized_r: length mismatch");
    if (x.empty()) throw std::domain_error("centralized_r: empty input");
    double sxy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) sxy += x[i] * y[i];
    const double sxx = sum_squares(x);
    const double syy = sum_squares(y);
    if (sxx == 0.0 || syy == 0.0) throw std::domain_error("centralized_r: zero-norm input");
    const double r = sxy / (std::sqrt(sxx) * std::sqrt(syy));
    return std::clamp(r, -1.0, 1.0);
}

double scaled_rc(std::span<const double> x, std::span<const double> y) {
    if (x.size() < 2) throw std::domain_error("scaled_rc: n must be >= 2");
    const auto n = static_cast<double>(x.size());
    return n / std::log(n) * centralized_r(x, y);
}

double compute_statistic(Statistic s, std::span<const double> x, std::span<const double> y) {
    const auto n = static_cast<double>(x.size());
    switch (s) {
        case Statistic::ScaledRc: return scaled_rc(x, y);
        case Statistic::SumSqOverN2: return sum_squares(x) / (n * n);
        case Statistic::SingleProductTriple:
            if (x.empty() || x.size() != y.size()) {
                throw std::domain_error("compute_statistic: length mismatch");
            }
            return x[0] * y[0] * (n / std::sqrt(sum_squares(x))) * (n / std::sqrt(sum_squares(y)));
    }
    throw std::logic_error("unreachable");
}

double simulate_replication(const SimulationConfig& cfg, std::uint64_t replication) {
    const Draws& d = draw_pair(cfg.master_seed, replication, cfg.n);
    return compute_statistic(cfg.statistic, d.x, d.y);
}

RawSample RawSample::in_memory(std::vector<double> values) {
    RawSample r;
    r.count_ = values.size();
    r.values_ = std::move(values);
    return r;
}

RawSample RawSample::spilled(std::filesystem::path file, std::size_t count) {
    RawSample r;
    r.file_ = std::move(file);
    r.count_ = count;
    return r;
}

std::vector<double> RawSample::load() const {
    if (!is_spilled()) return values_;
    std::vector<double> v = read_raw_values(file_);
    if (v.size() != count_) {
        throw std::runtime_error("raw sample file " + file_.string() + " holds " +
                                 std::to_string(v.size()) + " values, expected " +
                                 std::to_string(count_));
    }
    return v;
}

void write_raw_values(const std::filesystem::path& file, std::span<const double> values,
                      bool append) {
    std::ofstream out(file, std::ios::binary | (append ? std::ios::app : std::ios::trunc));
    if (!out) throw std::runtime_error("cannot open " + file.string() + " for writing");
    std::vector<char> bytes(values.size() * 8);
    for (std::size_t i = 0; i < values.size(); ++i) {
        const std::uint64_t le = to_little_endian(std::bit_cast<std::uint64_t>(values[i]));
        std::memcpy(bytes.data() + 8 * i, &le, 8);
    }
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw std::runtime_error("write to " + file.string() + " failed");
}

std::vector<double> read_raw_values(const std::filesystem::path& file) {
    std::ifstream in(file, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + file.string());
    std::vector<char> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    if (bytes.size() % 8 != 0) {
        throw std::runtime_error(file.string() + ": size is not a multiple of 8 bytes");
    }
    std::vector<double> values(bytes.size() / 8);
    for (std::size_t i = 0; i < values.size(); ++i) {
        std::uint64_t le = 0;
        std::memcpy(&le, bytes.data() + 8 * i, 8);
        values[i] = std::bit_cast<double>(to_little_endian(le));
    }
    return values;
}

SimulationResult run_simulation(const SimulationConfig& cfg, const RunOptions& options) {
    cfg.validate();
    const unsigned workers = resolve_workers(options.workers);
    const auto reps = static_cast<std::size_t>(cfg.replications);
    const bool spill = reps > options.spill_threshold;
    if (spill && options.spill_dir.empty()) {
        throw std::invalid_argument("simulation: sample exceeds the spill threshold but no spill "
                                    "directory was given");
    }
    const std::filesystem::path raw_file = spill ? options.spill_dir / "raw.f64" : "";
    const std::size_t wave = spill ? std::max<std::size_t>(1, options.spill_threshold) : reps;

    std::vector<Histogram> partial(workers, Histogram(cfg.binning));
    std::vector<double> buffer;
    std::size_t done = 0;
    while (done < reps) {
        const std::size_t len = std::min(wave, reps - done);
        try {
            buffer.resize(len);
        } catch (const std::bad_alloc&) {
            throw SimulationError("simulation: out of memory after " + std::to_string(done) +
                                      " replications",
                                  static_cast<long long>(done));
        }
        parallel_blocks(len, workers, [&](unsigned w, std::size_t begin, std::size_t end) {
            for (std::size_t i = begin; i < end; ++i) {
                buffer[i] = simulate_replication(cfg, done + i);
                partial[w].add(buffer[i]);
            }
        });
        if (spill) {
            try {
                write_raw_values(raw_file, std::span<const double>(buffer.data(), len), done > 0);
            } catch (const std::exception& e) {
                throw SimulationError(std::string("simulation: spill failed: ") + e.what(),
                                      static_cast<long long>(done));
            }
        }
        done += len;
    }

    Histogram hist(cfg.binning);
    for (const Histogram& h : partial) hist.merge(h);
    RawSample raw = spill ? RawSample::spilled(raw_file, reps) : RawSample::in_memory(std::move(buffer));
    return {std::move(hist), std::move(raw)};
}

IndependenceReport independence_diagnostic(const SimulationConfig& cfg,
                                           const RunOptions& options) {
    cfg.validate();
    const auto reps = static_cast<std::size_t>(cfg.replications);
    const auto n = static_cast<double>(cfg.n);
    std::vector<double> abs_t(reps);
    std::vector<double> u1(reps);
    std::vector<double> u2(reps);
    parallel_blocks(reps, resolve_workers(options.workers),
                    [&](unsigned, std::size_t begin, std::size_t end) {
                        for (std::size_t k = begin; k < end; ++k) {
                            const Draws& d = draw_pair(cfg.master_seed, k, cfg.n);
                            double sxy = 0.0;
                            for (std::size_t i = 0; i < d.x.size(); ++i) sxy += d.x[i] * d.y[i];
                            abs_t[k] = std::abs(sxy) / (n * std::log(n));
                            u1[k] = n / std::sqrt(sum_squares(d.x));
                            u2[k] = n / std::sqrt(sum_squares(d.y));
                        }
                    });
    IndependenceReport r;
    r.n = cfg.n;
    r.replications = cfg.replications;
    r.rho_abs_t_u1 = spearman(abs_t, u1);
    r.rho_abs_t_u2 = spearman(abs_t, u2);
    r.rho_u1_u2 = spearman(u1, u2);
    r.large_n = cfg.n >= 30;
    return r;
}

double spearman(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size() || x.size() < 2) {
        throw std::invalid_argument("spearman: need two equal-length samples of size >= 2");
    }
    const std::vector<double> rx = average_ranks(x);
    const std::vector<double> ry = average_ranks(y);
    const double mean = 0.5 * static_cast<double>(x.size() + 1);
    double sxy = 0.0;
    double sxx = 0.0;
    double syy = 0.0;
    for (std::size_t i = 0; i < rx.size(); ++i) {
        const double dx = rx[i] - mean;
        const double dy = ry[i] - mean;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if (sxx == 0.0 || syy == 0.0) return 0.0;
    return sxy / std::sqrt(sxx * syy);
}

}  // namespace cauchycorr::mc
