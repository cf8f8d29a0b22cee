#include "cauchycorr/svg_plot.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <locale>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "cauchycorr/distributions.hpp"

namespace cauchycorr::io {

namespace {

std::string fixed(double v, int digits = 2) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::fixed, digits);
    if (ec != std::errc()) return "0";
    return std::string(buf, ptr);
}

// Round step for about `target` ticks over span.
double nice_step(double span, int target) {
    const double raw = span / target;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    for (double m : {1.0, 2.0, 2.5, 5.0, 10.0}) {
        if (m * mag >= raw) return m * mag;
    }
    return 10.0 * mag;
}

}  // namespace

std::vector<double> density_heights(const mc::Histogram& hist) {
    if (hist.total() == 0) throw std::invalid_argument("plot: empty histogram");
    const double scale = 1.0 / (static_cast<double>(hist.total()) * hist.binning().width);
    std::vector<double> h;
    h.reserve(hist.counts().size());
    for (auto c : hist.counts()) h.push_back(static_cast<double>(c) * scale);
    return h;
}

std::string render_histogram_svg(const mc::Histogram& hist, const PlotOptions& options) {
    const std::vector<double> heights = density_heights(hist);
    const mc::Binning& b = hist.binning();

    constexpr double kLeft = 70.0;
    constexpr double kRight = 20.0;
    constexpr double kTop = 40.0;
    constexpr double kBottom = 60.0;
    const double w = options.width;
    const double h = options.height;
    const double plot_w = w - kLeft - kRight;
    const double plot_h = h - kTop - kBottom;

    const double tallest = *std::max_element(heights.begin(), heights.end());
    const double y_max = std::max(tallest, 0.05) * 1.25;
    auto sx = [&](double x) { return kLeft + (x - b.lo) / (b.hi - b.lo) * plot_w; };
    auto sy = [&](double y) { return kTop + plot_h - std::min(y, y_max) / y_max * plot_h; };

    std::ostringstream svg;
    svg.imbue(std::locale::classic());
    svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << options.width
        << "\" height=\"" << options.height << "\" viewBox=\"0 0 " << options.width << ' '
        << options.height << "\">\n"
        << "<defs><clipPath id=\"plot\"><rect x=\"" << fixed(kLeft) << "\" y=\"" << fixed(kTop)
        << "\" width=\"" << fixed(plot_w) << "\" height=\"" << fixed(plot_h)
        << "\"/></clipPath></defs>\n"
        << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
        << "<text x=\"" << fixed(w / 2) << "\" y=\"24\" text-anchor=\"middle\" "
        << "font-family=\"sans-serif\" font-size=\"16\">Histogram vs. approximate PDF</text>\n";

    svg << "<g fill=\"#9ecae1\" stroke=\"#3182bd\" stroke-width=\"0.5\">\n";
    for (std::size_t i = 0; i < heights.size(); ++i) {
        const double x0 = sx(b.edge(i));
        const double x1 = sx(b.edge(i + 1));
        const double y0 = sy(heights[i]);
        svg << "<rect x=\"" << fixed(x0) << "\" y=\"" << fixed(y0) << "\" width=\""
            << fixed(x1 - x0) << "\" height=\"" << fixed(kTop + plot_h - y0) << "\"/>\n";
    }
    svg << "</g>\n";

    // Density curve; the pdf is singular at 0, so the grid straddles it.
    constexpr int kSamples = 800;
    svg << "<path clip-path=\"url(#plot)\" fill=\"none\" stroke=\"#d62728\" stroke-width=\"2\" d=\"";
    char cmd = 'M';
    for (int i = 0; i <= kSamples; ++i) {
        const double x = b.lo + (b.hi - b.lo) * (i + 0.5) / (kSamples + 1);
        const double y = dist::rc_pdf(x, options.a).value_or(y_max);
        svg << cmd << fixed(sx(x)) << ',' << fixed(sy(y)) << ' ';
        cmd = 'L';
    }
    svg << "\"/>\n";

    // Axes, ticks and labels.
    svg << "<g stroke=\"black\" stroke-width=\"1\">\n"
        << "<line x1=\"" << fixed(kLeft) << "\" y1=\"" << fixed(kTop + plot_h) << "\" x2=\""
        << fixed(kLeft + plot_w) << "\" y2=\"" << fixed(kTop + plot_h) << "\"/>\n"
        << "<line x1=\"" << fixed(kLeft) << "\" y1=\"" << fixed(kTop) << "\" x2=\"" << fixed(kLeft)
        << "\" y2=\"" << fixed(kTop + plot_h) << "\"/>\n</g>\n";
    svg << "<g font-family=\"sans-serif\" font-size=\"12\">\n";
    const double x_step = nice_step(b.hi - b.lo, 8);
    for (double t = std::ceil(b.lo / x_step) * x_step; t <= b.hi + 1e-9 * x_step; t += x_step) {
        svg << "<line x1=\"" << fixed(sx(t)) << "\" y1=\"" << fixed(kTop + plot_h) << "\" x2=\""
            << fixed(sx(t)) << "\" y2=\"" << fixed(kTop + plot_h + 5) << "\" stroke=\"black\"/>"
            << "<text x=\"" << fixed(sx(t)) << "\" y=\"" << fixed(kTop + plot_h + 20)
            << "\" text-anchor=\"middle\">" << fixed(t, 2) << "</text>\n";
    }
    const double y_step = nice_step(y_max, 5);
    for (double t = 0.0; t <= y_max + 1e-12; t += y_step) {
        svg << "<line x1=\"" << fixed(kLeft - 5) << "\" y1=\"" << fixed(sy(t)) << "\" x2=\""
            << fixed(kLeft) << "\" y2=\"" << fixed(sy(t)) << "\" stroke=\"black\"/>"
            << "<text x=\"" << fixed(kLeft - 8) << "\" y=\"" << fixed(sy(t) + 4)
            << "\" text-anchor=\"end\">" << fixed(t, 3) << "</text>\n";
    }
    svg << "<text x=\"" << fixed(kLeft + plot_w / 2) << "\" y=\"" << fixed(h - 15)
        << "\" text-anchor=\"middle\">n r_c / ln n</text>\n"
        << "<text x=\"18\" y=\"" << fixed(kTop + plot_h / 2)
        << "\" text-anchor=\"middle\" transform=\"rotate(-90 18 " << fixed(kTop + plot_h / 2)
        << ")\">density</text>\n";
    svg << "<text x=\"" << fixed(kLeft + plot_w - 10) << "\" y=\"" << fixed(kTop + 20)
        << "\" text-anchor=\"end\">a = " << fixed(options.a, 5);
    if (options.n) svg << " (n = " << *options.n << ")";
    svg << ", N = " << hist.total() << "</text>\n";
    svg << "</g>\n</svg>\n";
    return svg.str();
}

}  // namespace cauchycorr::io
