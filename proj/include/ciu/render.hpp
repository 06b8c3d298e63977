#pragma once

#include <string>
#include <utility>
#include <vector>

#include "ciu/ciu.hpp"
#include "ciu/explain.hpp"

namespace ciu {

/// Geometry and palette for the SVG emitters. The color band maps CU
/// buckets to colors and must share its bounds with the active Vocabulary.
struct PlotSpec {
    int width = 640;
    int height = 480;
    int margin = 56;
    // (upper_bound, fill color); defaults align with the four Table-style
    // buckets, red -> green.
    std::vector<std::pair<double, std::string>> band = {{0.25, "#d7301f"},
                                                        {0.5, "#fc8d59"},
                                                        {0.75, "#a6d96a"},
                                                        {1.0, "#1a9641"}};
    int curve_samples = 100;
    bool sort_by_ci = false;  // bar_chart_ciu only

    void validate() const;
};

/// Response of one output to one feature swept across its range, the other
/// inputs fixed at the context. Draws the curve, a cross marker at the
/// context's (value, y), dashed gridlines at Cmin/Cmax, and a vertical
/// color band splitting [Cmin, Cmax] at the CU bucket bounds. A degenerate
/// range renders a flat line with a "no effect" note and no band.
std::string plot_response_curve(const Model& model, const Context& ctx,
                                std::size_t feature, std::size_t output,
                                const PlotSpec& spec);

/// One (CI, CU) bar pair per feature for one output, labeled with display
/// percents. With sort_by_ci, bars are ordered by the biggest-contributor
/// rule (CI desc, CU desc, index asc).
std::string bar_chart_ciu(const InstanceCiu& instance, std::size_t output,
                          const PlotSpec& spec);

/// Grouped per-feature bars for both instances of a pairwise comparison.
std::string bar_chart_contrast(const InstanceComparison& cmp, const PlotSpec& spec);

}  // namespace ciu
