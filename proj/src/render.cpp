#include "ciu/render.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <sstream>

namespace ciu {

void PlotSpec::validate() const {
    if (width <= 0 || height <= 0 || margin < 0)
        throw DataError("plot dimensions must be positive");
    if (2 * margin >= width || 2 * margin >= height)
        throw DataError("margins leave no plot area");
    if (band.empty()) throw DataError("color band is empty");
    double prev = 0.0;
    for (const auto& [upper, color] : band) {
        if (!(upper > prev)) throw DataError("band bounds must be strictly increasing");
        if (color.empty()) throw DataError("band color is empty");
        prev = upper;
    }
    if (band.back().first != 1.0) throw DataError("last band bound must be 1.0");
    if (curve_samples < 2) throw DataError("curve_samples must be >= 2");
}

namespace {

std::string px(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

std::string xml_escape(const std::string& s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

struct Frame {
    double xmin, xmax, ymin, ymax;
    double left, right, top, bottom;  // pixel edges of the plot area

    double to_px(double x) const {
        return left + (x - xmin) / (xmax - xmin) * (right - left);
    }
    double to_py(double y) const {
        return bottom - (y - ymin) / (ymax - ymin) * (bottom - top);
    }
};

void open_svg(std::ostringstream& os, const PlotSpec& spec, const Frame& f) {
    os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
       << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << spec.width
       << "\" height=\"" << spec.height << "\" viewBox=\"0 0 " << spec.width
       << " " << spec.height << "\">\n"
       << "<!-- data to pixel: px = " << px(f.left) << " + (x - " << px(f.xmin)
       << ") / " << px(f.xmax - f.xmin) << " * " << px(f.right - f.left)
       << "; py = " << px(f.bottom) << " - (y - " << px(f.ymin) << ") / "
       << px(f.ymax - f.ymin) << " * " << px(f.bottom - f.top) << " -->\n";
}

void draw_axes(std::ostringstream& os, const Frame& f, const std::string& xlabel,
               const std::string& ylabel) {
    os << "<rect class=\"plot-area\" x=\"" << px(f.left) << "\" y=\"" << px(f.top)
       << "\" width=\"" << px(f.right - f.left) << "\" height=\""
       << px(f.bottom - f.top) << "\" fill=\"none\" stroke=\"#333\"/>\n"
       << "<text class=\"axis-label\" x=\"" << px((f.left + f.right) / 2)
       << "\" y=\"" << px(f.bottom + 36) << "\" text-anchor=\"middle\">"
       << xml_escape(xlabel) << "</text>\n"
       << "<text class=\"axis-label\" x=\"" << px(f.left - 36) << "\" y=\""
       << px((f.top + f.bottom) / 2) << "\" text-anchor=\"middle\" transform=\"rotate(-90 "
       << px(f.left - 36) << " " << px((f.top + f.bottom) / 2) << ")\">"
       << xml_escape(ylabel) << "</text>\n";
}

}  // namespace

std::string plot_response_curve(const Model& model, const Context& ctx,
                                std::size_t feature, std::size_t output,
                                const PlotSpec& spec) {
    spec.validate();
    const auto& d = model.descriptor();
    if (feature >= d.features.size()) throw RangeViolation("feature index out of range");
    if (output >= d.outputs.size()) throw RangeViolation("output index out of range");
    const auto& f = d.features[feature];
    const auto& o = d.outputs[output];

    SamplePlan plan;
    plan.strategy = SampleStrategy::grid;
    plan.points_per_dim = static_cast<std::size_t>(spec.curve_samples);
    const auto range = estimate_range_grid(model, ctx, VariedSet::single(feature), plan);
    const double cmin = range.cmin[output];
    const double cmax = range.cmax[output];
    const double y = range.y[output];
    const bool degenerate = (cmax == cmin);

    Frame frame{f.min, f.max, o.absmin, o.absmax,
                static_cast<double>(spec.margin),
                static_cast<double>(spec.width - spec.margin),
                static_cast<double>(spec.margin),
                static_cast<double>(spec.height - spec.margin)};

    std::ostringstream os;
    open_svg(os, spec, frame);
    draw_axes(os, frame, f.name, o.name);

    if (!degenerate) {
        // Vertical band next to the y axis, partitioned at the CU bucket
        // bounds of the observed [cmin, cmax] range.
        double lower = 0.0;
        for (const auto& [upper, color] : spec.band) {
            const double y0 = cmin + lower * (cmax - cmin);
            const double y1 = cmin + upper * (cmax - cmin);
            os << "<rect class=\"band\" x=\"" << px(frame.left - 14) << "\" y=\""
               << px(frame.to_py(y1)) << "\" width=\"10\" height=\""
               << px(frame.to_py(y0) - frame.to_py(y1)) << "\" fill=\"" << color
               << "\"/>\n";
            lower = upper;
        }
        for (double level : {cmin, cmax})
            os << "<line class=\"range\" x1=\"" << px(frame.left) << "\" y1=\""
               << px(frame.to_py(level)) << "\" x2=\"" << px(frame.right)
               << "\" y2=\"" << px(frame.to_py(level))
               << "\" stroke=\"#888\" stroke-dasharray=\"4 3\"/>\n";
    }

    os << "<polyline class=\"curve\" fill=\"none\" stroke=\"#1f78b4\" points=\"";
    Context sweep = ctx;
    for (int i = 0; i < spec.curve_samples; ++i) {
        const double t = static_cast<double>(i) / (spec.curve_samples - 1);
        sweep.values[feature] = f.min + t * (f.max - f.min);
        const double v = model.predict(sweep).values[output];
        if (i) os << " ";
        os << px(frame.to_px(sweep.values[feature])) << "," << px(frame.to_py(v));
    }
    os << "\"/>\n";

    const double mx = frame.to_px(ctx.values[feature]);
    const double my = frame.to_py(y);
    os << "<path class=\"marker\" stroke=\"#e31a1c\" stroke-width=\"2\" d=\"M "
       << px(mx - 5) << " " << px(my - 5) << " L " << px(mx + 5) << " "
       << px(my + 5) << " M " << px(mx - 5) << " " << px(my + 5) << " L "
       << px(mx + 5) << " " << px(my - 5) << "\"/>\n";

    if (degenerate)
        os << "<text class=\"note\" x=\"" << px((frame.left + frame.right) / 2)
           << "\" y=\"" << px(frame.top + 16)
           << "\" text-anchor=\"middle\">no effect</text>\n";

    os << "</svg>\n";
    return os.str();
}

std::string bar_chart_ciu(const InstanceCiu& instance, std::size_t output,
                          const PlotSpec& spec) {
    spec.validate();
    if (output >= instance.output_count())
        throw RangeViolation("output index out of range");

    std::vector<std::size_t> order(instance.feature_count());
    std::iota(order.begin(), order.end(), std::size_t{0});
    if (spec.sort_by_ci) {
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            const auto& ra = instance.at(a, output);
            const auto& rb = instance.at(b, output);
            if (ra.ci != rb.ci) return ra.ci > rb.ci;
            if (ra.cu != rb.cu) return ra.cu > rb.cu;
            return a < b;
        });
    }

    Frame frame{0, 1, 0, 1,
                static_cast<double>(spec.margin) + 100.0,
                static_cast<double>(spec.width - spec.margin),
                static_cast<double>(spec.margin),
                static_cast<double>(spec.height - spec.margin)};
    std::ostringstream os;
    open_svg(os, spec, frame);
    os << "<text class=\"title\" x=\"" << px((frame.left + frame.right) / 2)
       << "\" y=\"" << px(frame.top - 12) << "\" text-anchor=\"middle\">CI and CU for "
       << xml_escape(instance.output_names[output]) << "</text>\n";

    const double row_h = (frame.bottom - frame.top) / instance.feature_count();
    const double bar_h = std::min(14.0, row_h / 3.0);
    const double full = frame.right - frame.left;
    for (std::size_t row = 0; row < order.size(); ++row) {
        const std::size_t fidx = order[row];
        const auto& r = instance.at(fidx, output);
        const double top = frame.top + row * row_h;
        os << "<text class=\"feature-label\" x=\"" << px(frame.left - 8) << "\" y=\""
           << px(top + row_h / 2) << "\" text-anchor=\"end\">"
           << xml_escape(instance.feature_names[fidx]) << "</text>\n";
        os << "<rect class=\"bar-ci\" x=\"" << px(frame.left) << "\" y=\""
           << px(top + row_h / 2 - bar_h - 1) << "\" width=\"" << px(full * r.ci)
           << "\" height=\"" << px(bar_h) << "\" fill=\"#2b8cbe\"/>\n";
        os << "<rect class=\"bar-cu\" x=\"" << px(frame.left) << "\" y=\""
           << px(top + row_h / 2 + 1) << "\" width=\"" << px(full * r.cu)
           << "\" height=\"" << px(bar_h) << "\" fill=\"#fdae61\"/>\n";
        os << "<text class=\"value-label\" x=\"" << px(frame.left + 4) << "\" y=\""
           << px(top + row_h / 2 - bar_h / 2) << "\" font-size=\"10\">CI="
           << display_percent(r.ci) << "%</text>\n";
        os << "<text class=\"value-label\" x=\"" << px(frame.left + 4) << "\" y=\""
           << px(top + row_h / 2 + bar_h / 2 + 4) << "\" font-size=\"10\">CU="
           << display_percent(r.cu) << "%</text>\n";
    }
    os << "</svg>\n";
    return os.str();
}

std::string bar_chart_contrast(const InstanceComparison& cmp, const PlotSpec& spec) {
    spec.validate();
    if (cmp.rows.empty()) throw DataError("comparison has no feature rows");

    Frame frame{0, 1, 0, 1,
                static_cast<double>(spec.margin) + 100.0,
                static_cast<double>(spec.width - spec.margin),
                static_cast<double>(spec.margin),
                static_cast<double>(spec.height - spec.margin)};
    std::ostringstream os;
    open_svg(os, spec, frame);
    os << "<text class=\"legend\" x=\"" << px(frame.left) << "\" y=\""
       << px(frame.top - 12) << "\">" << xml_escape(cmp.name_a)
       << " (blue) vs " << xml_escape(cmp.name_b) << " (orange), "
       << xml_escape(cmp.output_name) << "</text>\n";

    const double row_h = (frame.bottom - frame.top) / cmp.rows.size();
    const double bar_h = std::min(9.0, row_h / 5.0);
    const double full = frame.right - frame.left;
    for (std::size_t row = 0; row < cmp.rows.size(); ++row) {
        const auto& r = cmp.rows[row];
        const double top = frame.top + row * row_h;
        os << "<text class=\"feature-label\" x=\"" << px(frame.left - 8) << "\" y=\""
           << px(top + row_h / 2) << "\" text-anchor=\"end\">"
           << xml_escape(r.feature) << "</text>\n";
        struct Bar { const char* cls; double value; const char* fill; };
        const Bar bars[] = {{"bar-ci-a", r.ci_a, "#2b8cbe"},
                            {"bar-cu-a", r.cu_a, "#a6bddb"},
                            {"bar-ci-b", r.ci_b, "#e6550d"},
                            {"bar-cu-b", r.cu_b, "#fdae6b"}};
        for (std::size_t i = 0; i < 4; ++i)
            os << "<rect class=\"" << bars[i].cls << "\" x=\"" << px(frame.left)
               << "\" y=\"" << px(top + row_h / 2 - 2 * bar_h - 2 + i * (bar_h + 1))
               << "\" width=\"" << px(full * bars[i].value) << "\" height=\""
               << px(bar_h) << "\" fill=\"" << bars[i].fill << "\"/>\n";
    }
    os << "</svg>\n";
    return os.str();
}

}  // namespace ciu
