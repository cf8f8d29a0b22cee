#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cauchycorr/histogram.hpp"

namespace cauchycorr::io {

struct PlotOptions {
    double a = 1.0;                 ///< correction factor of the overlaid density
    std::optional<long long> n;     ///< sample size, annotated when known
    int width = 800;
    int height = 500;
};

/// Standalone SVG 1.1 figure: histogram bars scaled to density,
/// count / (total * width), with the AsymptoticRc density overlaid.
/// Throws std::invalid_argument for an empty histogram.
std::string render_histogram_svg(const mc::Histogram& hist, const PlotOptions& options);

/// Bar heights used by render_histogram_svg, one per in-range bin.
std::vector<double> density_heights(const mc::Histogram& hist);

}  // namespace cauchycorr::io
