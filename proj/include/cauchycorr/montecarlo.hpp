// Reproducible Monte Carlo engine for the centralized correlation of Cauchy
// samples.
//
// Every replication k draws from its own stream, derived from the master
// seed and k alone, so results do not depend on how replications are
// spread over worker threads.

#pragma once

#include <cstdint>
#include <filesystem>
#include <random>
#include <span>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "cauchycorr/histogram.hpp"

namespace cauchycorr::mc {

inline constexpr std::uint64_t kDefaultSeed = 20180915;

enum class Statistic {
    ScaledRc,             ///< n r_c / ln n
    SumSqOverN2,          ///< sum X_i^2 / n^2
    SingleProductTriple,  ///< X_1 Y_1 (n / |X|) (n / |Y|)
};

std::string_view to_string(Statistic s);
/// Accepts the enum spelling or the CLI spellings scaled-rc, sumsq, product-triple.
Statistic parse_statistic(std::string_view name);

struct SimulationConfig {
    long long n = 400;
    long long replications = 100000;
    std::uint64_t master_seed = kDefaultSeed;
    Statistic statistic = Statistic::ScaledRc;
    Binning binning{};

    /// Throws std::invalid_argument on n < 2, replications < 1 or bad binning.
    void validate() const;
};

/// Independent stream for replication `stream_id`: a 64-bit Mersenne
/// Twister seeded through seed_seq from the four 32-bit halves of
/// (master_seed, stream_id).
class StreamRng {
public:
    StreamRng(std::uint64_t master_seed, std::uint64_t stream_id);

    /// Uniform on the open interval (0, 1): (k + 1/2) 2^-53 for a 53-bit k.
    double uniform_open();

private:
    std::mt19937_64 engine_;
};

/// Inverse CDF of the standard Cauchy law, tan(pi (u - 1/2)).
double cauchy_from_uniform(double u);

/// count i.i.d. standard Cauchy draws; count >= 1.
std::vector<double> sample_cauchy(std::size_t count, StreamRng& rng);

/// sum x_i y_i / (|x| |y|). Throws std::domain_error on length mismatch,
/// empty input or an all-zero sequence.
double centralized_r(std::span<const double> x, std::span<const double> y);

/// (n / ln n) centralized_r(x, y); n = x.size() >= 2.
double scaled_rc(std::span<const double> x, std::span<const double> y);

double compute_statistic(Statistic s, std::span<const double> x, std::span<const double> y);

/// Values of one replication's statistic from its stream.
double simulate_replication(const SimulationConfig& cfg, std::uint64_t replication);

/// Raw statistic values, held in memory or spilled to a flat file of
/// little-endian float64 values.
class RawSample {
public:
    static RawSample in_memory(std::vector<double> values);
    static RawSample spilled(std::filesystem::path file, std::size_t count);

    std::size_t size() const noexcept { return count_; }
    bool is_spilled() const noexcept { return !file_.empty(); }
    const std::filesystem::path& file() const noexcept { return file_; }
    /// Reads the values back when spilled.
    std::vector<double> load() const;

private:
    std::vector<double> values_;
    std::filesystem::path file_;
    std::size_t count_ = 0;
};

/// Appends values to `file` as little-endian float64.
void write_raw_values(const std::filesystem::path& file, std::span<const double> values,
                      bool append);
std::vector<double> read_raw_values(const std::filesystem::path& file);

struct RunOptions {
    /// 0 picks std::thread::hardware_concurrency().
    unsigned workers = 0;
    /// Samples larger than this go to spill_dir instead of memory.
    std::size_t spill_threshold = 10'000'000;
    /// Required when spilling; the raw file is spill_dir / "raw.f64".
    std::filesystem::path spill_dir;
};

struct SimulationResult {
    Histogram histogram;
    RawSample raw;
};

/// Raised when a run cannot complete (allocation or spill I/O failure).
class SimulationError : public std::runtime_error {
public:
    SimulationError(const std::string& what, long long completed)
        : std::runtime_error(what), completed_(completed) {}
    long long completed_replications() const noexcept { return completed_; }

private:
    long long completed_;
};

SimulationResult run_simulation(const SimulationConfig& cfg, const RunOptions& options = {});

/// Rank correlations between the numerator T = sum X_i Y_i / (n ln n) and
/// the two normalizers U1 = n / |X|, U2 = n / |Y|, replication by
/// replication. Ranks rather than moments: T has none.
struct IndependenceReport {
    long long n = 0;
    long long replications = 0;
    double rho_abs_t_u1 = 0.0;
    double rho_abs_t_u2 = 0.0;
    double rho_u1_u2 = 0.0;
    /// The asymptotic argument only makes sense for n >= 30.
    bool large_n = false;
};

IndependenceReport independence_diagnostic(const SimulationConfig& cfg,
                                           const RunOptions& options = {});

/// Spearman rank correlation with average ranks for ties.
double spearman(std::span<const double> x, std::span<const double> y);

}  // namespace cauchycorr::mc
