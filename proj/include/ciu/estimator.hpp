#pragma once

#include <cstdint>
#include <vector>

#include "ciu/model.hpp"

namespace ciu {

/// The feature subset being varied (all other inputs stay fixed at the
/// context). Indices are kept sorted and unique.
struct VariedSet {
    std::vector<std::size_t> indices;

    static VariedSet single(std::size_t index) { return VariedSet{{index}}; }
    static VariedSet all(std::size_t feature_count);

    void validate(const ModelDescriptor& d) const;
};

enum class SampleStrategy { monte_carlo, grid };

struct SamplePlan {
    SampleStrategy strategy = SampleStrategy::monte_carlo;
    std::size_t sample_count = 150;   // Monte-Carlo draws
    std::size_t points_per_dim = 11;  // grid resolution, endpoints included
    std::uint64_t seed = 0;
    std::size_t grid_budget = 1'000'000;
};

/// Observed output extremes while varying a feature subset, per output,
/// plus the context's own prediction. cmin <= y <= cmax always (the context
/// point is always among the evaluated samples).
struct RangeEstimate {
    std::vector<double> cmin;
    std::vector<double> cmax;
    std::vector<double> y;
    std::size_t samples_used = 0;
};

/// Seeded Monte-Carlo estimate: sample_count vectors with the varied
/// features drawn independently uniform over their ranges, plus the context
/// itself. Draws are generated sequentially up front so results are
/// prefix-stable in sample_count for a fixed seed.
RangeEstimate estimate_range_mc(const Model& model, const Context& ctx,
                                const VariedSet& varied, const SamplePlan& plan);

/// Exhaustive-grid oracle: full Cartesian product over the varied features.
/// Each dimension uses points_per_dim equally spaced values (endpoints
/// included) with the context's own coordinate merged in, so the context
/// point is on the grid and grid estimates over nested varied sets are
/// exactly monotone. Refuses when the grid would exceed plan.grid_budget.
RangeEstimate estimate_range_grid(const Model& model, const Context& ctx,
                                  const VariedSet& varied, const SamplePlan& plan);

RangeEstimate estimate_range(const Model& model, const Context& ctx,
                             const VariedSet& varied, const SamplePlan& plan);

}  // namespace ciu
