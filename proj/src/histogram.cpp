#include "cauchycorr/histogram.hpp"

#include <cfloat>
#include <charconv>
#include <cmath>
#include <stdexcept>
#include <string>

namespace cauchycorr::mc {

namespace {

double parse_double(std::string_view s, std::string_view what) {
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size()) {
        throw std::invalid_argument("cannot parse " + std::string(what) + " from '" +
                                    std::string(s) + "'");
    }
    return v;
}

}  // namespace

void Binning::validate() const {
    if (!std::isfinite(lo) || !std::isfinite(hi) || !std::isfinite(width)) {
        throw std::invalid_argument("binning: bounds and width must be finite");
    }
    if (!(lo < hi)) throw std::invalid_argument("binning: lo must be < hi");
    if (!(width > 0.0)) throw std::invalid_argument("binning: width must be > 0");
    const double bins = (hi - lo) / width;
    const double rounded = std::round(bins);
    if (rounded < 1.0 || std::abs(bins - rounded) > 16.0 * DBL_EPSILON * rounded) {
        throw std::invalid_argument("binning: width does not divide hi - lo");
    }
}

std::size_t Binning::bin_count() const {
    return static_cast<std::size_t>(std::round((hi - lo) / width));
}

double Binning::edge(std::size_t i) const {
    if (i >= bin_count()) return hi;
    return lo + static_cast<double>(i) * width;
}

Binning Binning::parse(std::string_view text) {
    const auto first = text.find(':');
    const auto second = first == std::string_view::npos ? first : text.find(':', first + 1);
    if (second == std::string_view::npos || text.find(':', second + 1) != std::string_view::npos) {
        throw std::invalid_argument("binning must look like lo:hi:width, got '" +
                                    std::string(text) + "'");
    }
    Binning b{parse_double(text.substr(0, first), "lo"),
              parse_double(text.substr(first + 1, second - first - 1), "hi"),
              parse_double(text.substr(second + 1), "width")};
    b.validate();
    return b;
}

Histogram::Histogram(Binning binning) : binning_(binning) {
    binning_.validate();
    counts_.assign(binning_.bin_count(), 0);
}

std::ptrdiff_t Histogram::bin_index(double x) const {
    if (std::isnan(x)) throw std::invalid_argument("histogram: NaN value");
    const auto nbins = static_cast<std::ptrdiff_t>(counts_.size());
    if (x < binning_.lo) return -1;
    if (x >= binning_.hi) return nbins;
    auto i = static_cast<std::ptrdiff_t>(std::floor((x - binning_.lo) / binning_.width));
    if (i < 0) i = 0;
    if (i >= nbins) i = nbins - 1;
    // Settle rounding at the edges so that edge(i) <= x < edge(i+1) holds exactly.
    while (i > 0 && x < binning_.edge(static_cast<std::size_t>(i))) --i;
    while (i + 1 < nbins && x >= binning_.edge(static_cast<std::size_t>(i + 1))) ++i;
    return i;
}

void Histogram::add(double x) {
    const std::ptrdiff_t i = bin_index(x);
    if (i < 0) {
        ++underflow_;
    } else if (i >= static_cast<std::ptrdiff_t>(counts_.size())) {
        ++overflow_;
    } else {
        ++counts_[static_cast<std::size_t>(i)];
    }
    ++total_;
}

void Histogram::merge(const Histogram& other) {
    if (!(binning_ == other.binning_)) {
        throw std::invalid_argument("histogram merge: binnings differ");
    }
    for (std::size_t i = 0; i < counts_.size(); ++i) counts_[i] += other.counts_[i];
    underflow_ += other.underflow_;
    overflow_ += other.overflow_;
    total_ += other.total_;
}

Histogram Histogram::from_counts(Binning binning, std::vector<std::uint64_t> counts,
                                 std::uint64_t underflow, std::uint64_t overflow) {
    Histogram h(binning);
    if (counts.size() != h.counts_.size()) {
        throw std::invalid_argument("histogram: " + std::to_string(counts.size()) +
                                    " counts for " + std::to_string(h.counts_.size()) + " bins");
    }
    h.counts_ = std::move(counts);
    h.underflow_ = underflow;
    h.overflow_ = overflow;
    h.total_ = underflow + overflow;
    for (auto c : h.counts_) h.total_ += c;
    return h;
}

}  // namespace cauchycorr::mc
