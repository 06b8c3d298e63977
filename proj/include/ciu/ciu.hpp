#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ciu/estimator.hpp"
#include "ciu/model.hpp"

namespace ciu {

/// CI/CU of one (varied feature subset, output) pair, with the range
/// estimate it was computed from. Values are raw fractions in [0, 1];
/// display scaling (integer percent for CI) happens in the explanation and
/// rendering layers.
struct CiuResult {
    VariedSet varied;
    std::size_t output_index = 0;
    double cmin = 0.0;
    double cmax = 0.0;
    double y = 0.0;
    double ci = 0.0;
    double cu = 0.0;
    bool degenerate = false;  // cmax == cmin; cu is the neutral 0.5
};

/// All CIU records for one explained instance.
struct InstanceCiu {
    Context context;
    Prediction prediction;
    std::vector<std::string> feature_names;
    std::vector<std::string> output_names;
    // feature-major: results[f * output_count + j]
    std::vector<CiuResult> feature_results;
    std::vector<CiuResult> subset_results;

    std::size_t output_count() const { return output_names.size(); }
    std::size_t feature_count() const { return feature_names.size(); }
    const CiuResult& at(std::size_t feature, std::size_t output) const;
};

/// Eq. of contextual importance: (cmax - cmin) / (absmax - absmin) for one
/// output. Throws InternalError on a corrupt estimate (cmax < cmin).
double contextual_importance(const RangeEstimate& range, std::size_t output_index,
                             const OutputSpec& output);

/// Contextual utility: (y - cmin) / (cmax - cmin); 0.5 when the range is
/// degenerate. Throws InternalError if y lies outside [cmin, cmax], which
/// means context inclusion was bypassed upstream.
double contextual_utility(const RangeEstimate& range, std::size_t output_index);

CiuResult make_ciu_result(const RangeEstimate& range, const VariedSet& varied,
                          std::size_t output_index, const OutputSpec& output);

/// Runs the estimator for every single feature (and each requested subset)
/// and fills CiuResult for every output. Deterministic given plan.seed.
InstanceCiu explain_instance(const Model& model, const Context& ctx,
                             const SamplePlan& plan,
                             const std::vector<VariedSet>& subsets = {});

/// Display helpers shared by explain/render: CI as integer percent
/// (half-up) and CU rounded half-up to two decimals.
int display_percent(double fraction);
double display_cu(double cu);

}  // namespace ciu
