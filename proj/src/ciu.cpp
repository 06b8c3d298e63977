#include "ciu/ciu.hpp"

#include <cmath>
#include <sstream>

namespace ciu {

const CiuResult& InstanceCiu::at(std::size_t feature, std::size_t output) const {
    if (feature >= feature_count() || output >= output_count())
        throw RangeViolation("CIU record index out of range");
    return feature_results[feature * output_count() + output];
}

double contextual_importance(const RangeEstimate& range, std::size_t output_index,
                             const OutputSpec& output) {
    const double cmin = range.cmin.at(output_index);
    const double cmax = range.cmax.at(output_index);
    if (cmax < cmin) {
        std::ostringstream os;
        os << "corrupt range estimate: cmax " << cmax << " < cmin " << cmin;
        throw InternalError(os.str());
    }
    return (cmax - cmin) / output.width();
}

double contextual_utility(const RangeEstimate& range, std::size_t output_index) {
    const double cmin = range.cmin.at(output_index);
    const double cmax = range.cmax.at(output_index);
    const double y = range.y.at(output_index);
    if (cmax == cmin) return 0.5;
    if (y < cmin || y > cmax) {
        std::ostringstream os;
        os << "y " << y << " outside observed range [" << cmin << ", " << cmax
           << "]; context inclusion was bypassed";
        throw InternalError(os.str());
    }
    return (y - cmin) / (cmax - cmin);
}

CiuResult make_ciu_result(const RangeEstimate& range, const VariedSet& varied,
                          std::size_t output_index, const OutputSpec& output) {
    CiuResult r;
    r.varied = varied;
    r.output_index = output_index;
    r.cmin = range.cmin.at(output_index);
    r.cmax = range.cmax.at(output_index);
    r.y = range.y.at(output_index);
    r.degenerate = (r.cmax == r.cmin);
    r.ci = contextual_importance(range, output_index, output);
    r.cu = contextual_utility(range, output_index);
    return r;
}

InstanceCiu explain_instance(const Model& model, const Context& ctx,
                             const SamplePlan& plan,
                             const std::vector<VariedSet>& subsets) {
    const auto& d = model.descriptor();
    InstanceCiu out;
    out.context = ctx;
    out.prediction = model.predict(ctx);
    for (const auto& f : d.features) out.feature_names.push_back(f.name);
    for (const auto& o : d.outputs) out.output_names.push_back(o.name);

    out.feature_results.reserve(d.features.size() * d.outputs.size());
    for (std::size_t k = 0; k < d.features.size(); ++k) {
        const auto varied = VariedSet::single(k);
        const auto range = estimate_range(model, ctx, varied, plan);
        for (std::size_t j = 0; j < d.outputs.size(); ++j)
            out.feature_results.push_back(
                make_ciu_result(range, varied, j, d.outputs[j]));
    }
    for (const auto& varied : subsets) {
        const auto range = estimate_range(model, ctx, varied, plan);
        for (std::size_t j = 0; j < d.outputs.size(); ++j)
            out.subset_results.push_back(
                make_ciu_result(range, varied, j, d.outputs[j]));
    }
    return out;
}

int display_percent(double fraction) {
    return static_cast<int>(std::floor(fraction * 100.0 + 0.5));
}

double display_cu(double cu) {
    return std::floor(cu * 100.0 + 0.5) / 100.0;
}

}  // namespace ciu
