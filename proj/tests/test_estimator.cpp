#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "ciu/estimator.hpp"
#include "helpers.hpp"

using namespace ciu;
using namespace ciu::testing;

namespace {

SamplePlan mc_plan(std::size_t samples, std::uint64_t seed = 0) {
    SamplePlan p;
    p.strategy = SampleStrategy::monte_carlo;
    p.sample_count = samples;
    p.seed = seed;
    return p;
}

SamplePlan grid_plan(std::size_t points) {
    SamplePlan p;
    p.strategy = SampleStrategy::grid;
    p.points_per_dim = points;
    return p;
}

CallbackModel product_model() {
    ModelDescriptor d = simple_descriptor(2);
    d.kind = ModelKind::external;
    return CallbackModel(std::move(d), [](std::span<const double> x) {
        return std::vector<double>{x[0] * x[1]};
    });
}

}  // namespace

TEST_CASE("constant model collapses to cmin = cmax = y") {
    LinearScorer m(simple_descriptor(2), {0.0, 0.0});
    const Context ctx{{0.4, 0.7}};
    for (const auto& plan : {mc_plan(50), grid_plan(5)}) {
        const auto est = estimate_range(m, ctx, VariedSet::all(2), plan);
        CHECK(est.cmin[0] == est.y[0]);
        CHECK(est.cmax[0] == est.y[0]);
    }
}

TEST_CASE("mc on the identity model covers nearly the whole range") {
    const auto m = identity_scorer();
    const auto est =
        estimate_range_mc(m, Context{{0.3}}, VariedSet::single(0), mc_plan(1000, 5));
    // Extremes of 1000 uniforms sit within ~1/1001 of the bounds on average.
    CHECK(est.cmin[0] <= 0.01);
    CHECK(est.cmax[0] >= 0.99);
    CHECK(est.y[0] == doctest::Approx(0.3));
    CHECK(est.samples_used == 1001);
}

TEST_CASE("mc on the product model, varying x1 only") {
    const auto m = product_model();
    const auto est = estimate_range_mc(m, Context{{0.5, 0.5}}, VariedSet::single(0),
                                       mc_plan(2000, 9));
    // Grid oracle over x1 gives the exact range [0, 0.5].
    CHECK(est.cmin[0] <= 0.01);
    CHECK(std::abs(est.cmax[0] - 0.5) <= 0.01);
    CHECK(est.y[0] == doctest::Approx(0.25));
    const auto oracle = estimate_range_grid(m, Context{{0.5, 0.5}},
                                            VariedSet::single(0), grid_plan(1001));
    CHECK(oracle.cmin[0] == 0.0);
    CHECK(oracle.cmax[0] == 0.5);
}

TEST_CASE("grid attains exact extremes of monotone and corner cases") {
    SUBCASE("identity") {
        const auto m = identity_scorer();
        const auto est =
            estimate_range_grid(m, Context{{0.3}}, VariedSet::single(0), grid_plan(11));
        CHECK(est.cmin[0] == 0.0);
        CHECK(est.cmax[0] == 1.0);
    }
    SUBCASE("product over both features") {
        const auto m = product_model();
        const auto est = estimate_range_grid(m, Context{{0.2, 0.9}},
                                             VariedSet::all(2), grid_plan(11));
        CHECK(est.cmin[0] == 0.0);
        CHECK(est.cmax[0] == 1.0);
    }
}

TEST_CASE("grid finds the interior maximum of sin(pi x)") {
    ModelDescriptor d = simple_descriptor(1);
    d.kind = ModelKind::external;
    CallbackModel m(std::move(d), [](std::span<const double> x) {
        return std::vector<double>{std::sin(std::numbers::pi * x[0])};
    });
    const auto est =
        estimate_range_grid(m, Context{{0.1}}, VariedSet::single(0), grid_plan(101));
    CHECK(std::abs(est.cmax[0] - 1.0) <= 5e-4);
}

TEST_CASE("grid refuses when the budget is exceeded") {
    std::mt19937_64 rng(2);
    const auto m = random_linear_scorer(rng, 5, 5);
    SamplePlan plan = grid_plan(101);
    plan.grid_budget = 1000;
    const auto ctx = random_context(m->descriptor(), rng);
    CHECK_THROWS_AS(estimate_range_grid(*m, ctx, VariedSet::all(5), plan),
                    ComputationError);
}

TEST_CASE("varied set validation") {
    const auto m = identity_scorer();
    CHECK_THROWS_AS(estimate_range_mc(m, Context{{0.5}}, VariedSet{{}}, mc_plan(10)),
                    DataError);
    CHECK_THROWS_AS(estimate_range_mc(m, Context{{0.5}}, VariedSet{{3}}, mc_plan(10)),
                    RangeViolation);
    CHECK_THROWS_AS(estimate_range_mc(m, Context{{0.5}}, VariedSet{{0, 0}}, mc_plan(10)),
                    DataError);
}

TEST_CASE("property: context inclusion holds for random models and seeds") {
    std::mt19937_64 rng(123);
    for (int trial = 0; trial < 60; ++trial) {
        const auto m = random_linear_scorer(rng, 2, 6);
        const auto ctx = random_context(m->descriptor(), rng);
        const auto plan = trial % 2 == 0
                              ? mc_plan(20 + trial, rng())
                              : grid_plan(3 + static_cast<std::size_t>(trial % 5));
        const auto est = estimate_range(*m, ctx, VariedSet::single(trial % 2), plan);
        for (std::size_t j = 0; j < est.y.size(); ++j) {
            CHECK(est.cmin[j] <= est.y[j]);
            CHECK(est.y[j] <= est.cmax[j]);
        }
    }
}

TEST_CASE("property: mc prefix stability never narrows the range") {
    std::mt19937_64 rng(77);
    for (int trial = 0; trial < 20; ++trial) {
        const auto m = random_linear_scorer(rng, 2, 5);
        const auto ctx = random_context(m->descriptor(), rng);
        const std::uint64_t seed = rng();
        const auto small = estimate_range_mc(*m, ctx, VariedSet::single(0),
                                             mc_plan(50, seed));
        const auto large = estimate_range_mc(*m, ctx, VariedSet::single(0),
                                             mc_plan(500, seed));
        CHECK(large.cmin[0] <= small.cmin[0]);
        CHECK(large.cmax[0] >= small.cmax[0]);
    }
}

TEST_CASE("property: grid subset monotonicity over nested varied sets") {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 20; ++trial) {
        const auto m = random_linear_scorer(rng, 3, 6);
        const auto ctx = random_context(m->descriptor(), rng);
        const auto plan = grid_plan(5);
        const VariedSet sub{{0, 1}};
        const VariedSet super{{0, 1, 2}};
        const auto a = estimate_range_grid(*m, ctx, sub, plan);
        const auto b = estimate_range_grid(*m, ctx, super, plan);
        CHECK(b.cmin[0] <= a.cmin[0]);
        CHECK(b.cmax[0] >= a.cmax[0]);
    }
}

TEST_CASE("mc to grid convergence on linear models, many seeds") {
    std::mt19937_64 rng(55);
    for (int seed_trial = 0; seed_trial < 22; ++seed_trial) {
        const auto m = random_linear_scorer(rng, 2, 6);
        const auto ctx = random_context(m->descriptor(), rng);
        const double width = m->descriptor().outputs[0].width();
        for (std::size_t k = 0; k < m->descriptor().features.size(); ++k) {
            const auto mc = estimate_range_mc(*m, ctx, VariedSet::single(k),
                                              mc_plan(1000, seed_trial));
            const auto grid = estimate_range_grid(*m, ctx, VariedSet::single(k),
                                                  grid_plan(11));
            CHECK(std::abs(mc.cmin[0] - grid.cmin[0]) <= 0.02 * width);
            CHECK(std::abs(mc.cmax[0] - grid.cmax[0]) <= 0.02 * width);
        }
    }
}

TEST_CASE("estimation is deterministic given the seed") {
    std::mt19937_64 rng(8);
    const auto m = random_mlp(rng);
    const auto ctx = random_context(m->descriptor(), rng);
    const auto a = estimate_range_mc(*m, ctx, VariedSet::all(4), mc_plan(150, 99));
    const auto b = estimate_range_mc(*m, ctx, VariedSet::all(4), mc_plan(150, 99));
    CHECK(a.cmin == b.cmin);
    CHECK(a.cmax == b.cmax);
    CHECK(a.y == b.y);
}
