#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "ciu/render.hpp"
#include "helpers.hpp"
#include "xml_check.hpp"

using namespace ciu;
using namespace ciu::testing;

namespace {

InstanceCiu small_instance() {
    SamplePlan plan;
    plan.strategy = SampleStrategy::grid;
    plan.points_per_dim = 11;
    std::mt19937_64 rng(6);
    const auto m = random_mlp(rng);
    return explain_instance(*m, Context{{0.2, 0.8, 0.5, 0.5}}, plan);
}

}  // namespace

TEST_CASE("response curve of the identity model") {
    const auto m = identity_scorer();
    const auto svg = plot_response_curve(m, Context{{0.3}}, 0, 0, PlotSpec{});
    std::string err;
    CHECK_MESSAGE(xml_well_formed(svg, &err), err);
    CHECK(count_occurrences(svg, "class=\"marker\"") == 1);
    CHECK(count_occurrences(svg, "class=\"curve\"") == 1);
    CHECK(count_occurrences(svg, "class=\"band\"") == 4);

    // Marker position: context 0.3 on the diagonal -> data point (0.3, 0.3).
    // With the default frame (margins 56 on a 640x480 canvas) the documented
    // transform puts it at x = 56 + 0.3*528 = 214.4, y = 424 - 0.3*368 = 313.6.
    CHECK(svg.find("M 209.40 308.60") != std::string::npos);
}

TEST_CASE("constant model renders a flat line with a no-effect note") {
    LinearScorer m(simple_descriptor(1), {0.0});
    const auto svg = plot_response_curve(m, Context{{0.3}}, 0, 0, PlotSpec{});
    std::string err;
    CHECK_MESSAGE(xml_well_formed(svg, &err), err);
    CHECK(svg.find("no effect") != std::string::npos);
    CHECK(count_occurrences(svg, "class=\"band\"") == 0);
}

TEST_CASE("mlp response curve has one marker and four band segments") {
    std::mt19937_64 rng(6);
    const auto m = random_mlp(rng);
    for (std::size_t f = 0; f < 4; ++f) {
        const auto svg =
            plot_response_curve(*m, Context{{0.2, 0.8, 0.5, 0.5}}, f, 0, PlotSpec{});
        std::string err;
        CHECK_MESSAGE(xml_well_formed(svg, &err), err);
        CHECK(count_occurrences(svg, "class=\"marker\"") == 1);
        CHECK(count_occurrences(svg, "class=\"band\"") == 4);
    }
}

TEST_CASE("rendering is byte-identical for identical inputs") {
    const auto ins = small_instance();
    CHECK(bar_chart_ciu(ins, 0, PlotSpec{}) == bar_chart_ciu(ins, 0, PlotSpec{}));
    const auto m = identity_scorer();
    CHECK(plot_response_curve(m, Context{{0.4}}, 0, 0, PlotSpec{}) ==
          plot_response_curve(m, Context{{0.4}}, 0, 0, PlotSpec{}));
}

TEST_CASE("bar chart has one CI and one CU bar per feature") {
    const auto ins = small_instance();
    const auto svg = bar_chart_ciu(ins, 1, PlotSpec{});
    std::string err;
    CHECK_MESSAGE(xml_well_formed(svg, &err), err);
    CHECK(count_occurrences(svg, "class=\"bar-ci\"") == 4);
    CHECK(count_occurrences(svg, "class=\"bar-cu\"") == 4);
}

TEST_CASE("zero-CI feature still gets a labeled bar") {
    InstanceCiu ins;
    ins.feature_names = {"dead", "live"};
    ins.output_names = {"y"};
    ins.prediction.values = {0.5};
    ins.context.values = {0.0, 0.0};
    for (std::size_t f = 0; f < 2; ++f) {
        CiuResult r;
        r.varied = VariedSet::single(f);
        r.ci = f == 0 ? 0.0 : 0.8;
        r.cu = 0.5;
        ins.feature_results.push_back(r);
    }
    const auto svg = bar_chart_ciu(ins, 0, PlotSpec{});
    CHECK(svg.find(">dead</text>") != std::string::npos);
    CHECK(svg.find("width=\"0.00\"") != std::string::npos);
}

TEST_CASE("sorted bar chart leads with the biggest contributor") {
    const auto ins = small_instance();
    PlotSpec spec;
    spec.sort_by_ci = true;
    const auto svg = bar_chart_ciu(ins, 0, spec);
    const auto top = biggest_contributor(ins, 0);
    const auto first_label = svg.find("class=\"feature-label\"");
    REQUIRE(first_label != std::string::npos);
    const auto seg = svg.substr(first_label, svg.find("</text>", first_label) - first_label);
    CHECK(seg.find(">" + ins.feature_names[top]) != std::string::npos);
}

TEST_CASE("contrast chart draws grouped bars for both instances") {
    const auto ins = small_instance();
    const auto cmp = compare_instances(ins, ins, 0, "left", "right");
    const auto svg = bar_chart_contrast(cmp, PlotSpec{});
    std::string err;
    CHECK_MESSAGE(xml_well_formed(svg, &err), err);
    CHECK(count_occurrences(svg, "class=\"bar-ci-a\"") == 4);
    CHECK(count_occurrences(svg, "class=\"bar-ci-b\"") == 4);
    CHECK(count_occurrences(svg, "class=\"bar-cu-a\"") == 4);
    CHECK(count_occurrences(svg, "class=\"bar-cu-b\"") == 4);
    CHECK(svg.find("left") != std::string::npos);
    CHECK(svg.find("right") != std::string::npos);
}

TEST_CASE("plot spec validation") {
    PlotSpec spec;
    spec.width = -1;
    CHECK_THROWS_AS(spec.validate(), DataError);
    spec = PlotSpec{};
    spec.band.back().first = 0.9;
    CHECK_THROWS_AS(spec.validate(), DataError);
}
