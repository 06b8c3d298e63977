#include "ciu/estimator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <sstream>

namespace ciu {

VariedSet VariedSet::all(std::size_t feature_count) {
    VariedSet v;
    v.indices.resize(feature_count);
    std::iota(v.indices.begin(), v.indices.end(), std::size_t{0});
    return v;
}

void VariedSet::validate(const ModelDescriptor& d) const {
    if (indices.empty()) throw DataError("varied set is empty");
    for (std::size_t i : indices)
        if (i >= d.features.size())
            throw RangeViolation("varied feature index " + std::to_string(i) +
                                 " out of range");
    for (std::size_t i = 1; i < indices.size(); ++i)
        if (indices[i] <= indices[i - 1])
            throw DataError("varied set indices must be sorted and unique");
}

namespace {

struct Accumulator {
    std::vector<double> cmin, cmax;

    explicit Accumulator(std::size_t outputs)
        : cmin(outputs, std::numeric_limits<double>::infinity()),
          cmax(outputs, -std::numeric_limits<double>::infinity()) {}

    void observe(const std::vector<double>& out) {
        for (std::size_t j = 0; j < out.size(); ++j) {
            cmin[j] = std::min(cmin[j], out[j]);
            cmax[j] = std::max(cmax[j], out[j]);
        }
    }
};

std::string describe_sample(const Context& sample) {
    std::ostringstream os;
    os << "[";
    for (std::size_t k = 0; k < sample.values.size(); ++k)
        os << (k ? ", " : "") << sample.values[k];
    os << "]";
    return os.str();
}

}  // namespace

RangeEstimate estimate_range_mc(const Model& model, const Context& ctx,
                                const VariedSet& varied, const SamplePlan& plan) {
    model.validate_context(ctx);
    varied.validate(model.descriptor());
    if (plan.sample_count < 1) throw DataError("sample_count must be >= 1");

    const auto& feats = model.descriptor().features;
    const std::size_t outputs = model.descriptor().outputs.size();

    // All draws come out of the generator sequentially before any evaluation;
    // a longer run with the same seed replays this run as a prefix.
    std::mt19937_64 rng(plan.seed);
    std::vector<Context> samples(plan.sample_count, ctx);
    for (auto& sample : samples)
        for (std::size_t k : varied.indices) {
            std::uniform_real_distribution<double> u(feats[k].min, feats[k].max);
            sample.values[k] = u(rng);
        }

    Accumulator acc(outputs);
    RangeEstimate est;
    est.y = model.predict(ctx).values;
    acc.observe(est.y);
    for (const auto& sample : samples) {
        try {
            acc.observe(model.predict(sample).values);
        } catch (const ComputationError& e) {
            throw ComputationError(std::string(e.what()) + " at sample " +
                                   describe_sample(sample));
        }
    }
    est.cmin = std::move(acc.cmin);
    est.cmax = std::move(acc.cmax);
    est.samples_used = plan.sample_count + 1;
    return est;
}

RangeEstimate estimate_range_grid(const Model& model, const Context& ctx,
                                  const VariedSet& varied, const SamplePlan& plan) {
    model.validate_context(ctx);
    varied.validate(model.descriptor());
    if (plan.points_per_dim < 2) throw DataError("points_per_dim must be >= 2");

    const auto& feats = model.descriptor().features;
    const std::size_t dims = varied.indices.size();

    // Per-dimension point set: equally spaced values including both endpoints,
    // with the context's coordinate merged in so the context point itself is
    // a grid point and nested varied sets explore nested grids.
    std::vector<std::vector<double>> axes(dims);
    double total = 1.0;
    for (std::size_t d = 0; d < dims; ++d) {
        const auto& f = feats[varied.indices[d]];
        auto& axis = axes[d];
        for (std::size_t i = 0; i < plan.points_per_dim; ++i) {
            const double t = static_cast<double>(i) /
                             static_cast<double>(plan.points_per_dim - 1);
            axis.push_back(f.min + t * (f.max - f.min));
        }
        axis.push_back(ctx.values[varied.indices[d]]);
        std::sort(axis.begin(), axis.end());
        axis.erase(std::unique(axis.begin(), axis.end()), axis.end());
        total *= static_cast<double>(axis.size());
    }
    if (total > static_cast<double>(plan.grid_budget)) {
        std::ostringstream os;
        os << "grid of " << total << " points exceeds budget " << plan.grid_budget
           << "; raise the budget or reduce points_per_dim / varied-set size";
        throw ComputationError(os.str());
    }

    Accumulator acc(model.descriptor().outputs.size());
    RangeEstimate est;
    est.y = model.predict(ctx).values;
    acc.observe(est.y);
    est.samples_used = 1;

    Context sample = ctx;
    std::vector<std::size_t> idx(dims, 0);
    for (;;) {
        for (std::size_t d = 0; d < dims; ++d)
            sample.values[varied.indices[d]] = axes[d][idx[d]];
        acc.observe(model.predict(sample).values);
        ++est.samples_used;

        std::size_t d = 0;
        while (d < dims && ++idx[d] == axes[d].size()) idx[d++] = 0;
        if (d == dims) break;
    }
    est.cmin = std::move(acc.cmin);
    est.cmax = std::move(acc.cmax);
    return est;
}

RangeEstimate estimate_range(const Model& model, const Context& ctx,
                             const VariedSet& varied, const SamplePlan& plan) {
    return plan.strategy == SampleStrategy::grid
               ? estimate_range_grid(model, ctx, varied, plan)
               : estimate_range_mc(model, ctx, varied, plan);
}

}  // namespace ciu
