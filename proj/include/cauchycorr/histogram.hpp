#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

namespace cauchycorr::mc {

/// Fixed-width binning [lo, hi) split into (hi - lo) / width bins.
/// Bin i covers [edge(i), edge(i+1)); edge(bin_count()) is hi exactly.
struct Binning {
    double lo = -4.0;
    double hi = 4.0;
    double width = 0.25;

    /// Throws std::invalid_argument unless lo < hi, width > 0 and width
    /// divides hi - lo up to rounding.
    void validate() const;
    std::size_t bin_count() const;
    double edge(std::size_t i) const;

    /// Parses "lo:hi:width".
    static Binning parse(std::string_view text);

    friend bool operator==(const Binning&, const Binning&) = default;
};

class Histogram {
public:
    explicit Histogram(Binning binning);

    /// Throws std::invalid_argument for NaN.
    void add(double x);
    /// Count-wise addition; binnings must be identical.
    void merge(const Histogram& other);

    const Binning& binning() const noexcept { return binning_; }
    const std::vector<std::uint64_t>& counts() const noexcept { return counts_; }
    std::uint64_t underflow() const noexcept { return underflow_; }
    std::uint64_t overflow() const noexcept { return overflow_; }
    std::uint64_t total() const noexcept { return total_; }

    /// Index of the bin holding x, or -1 / bin_count() for under/overflow.
    std::ptrdiff_t bin_index(double x) const;

    /// Rebuilds a histogram from stored counts (CSV readers).
    static Histogram from_counts(Binning binning, std::vector<std::uint64_t> counts,
                                 std::uint64_t underflow, std::uint64_t overflow);

    friend bool operator==(const Histogram&, const Histogram&) = default;

private:
    Binning binning_;
    std::vector<std::uint64_t> counts_;
    std::uint64_t underflow_ = 0;
    std::uint64_t overflow_ = 0;
    std::uint64_t total_ = 0;
};

}  // namespace cauchycorr::mc
