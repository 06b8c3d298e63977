#pragma once

#include <memory>
#include <random>
#include <span>
#include <vector>

#include "ciu/model.hpp"

namespace ciu::testing {

inline ModelDescriptor simple_descriptor(std::size_t features, double absmin = 0.0,
                                         double absmax = 1.0) {
    ModelDescriptor d;
    d.kind = ModelKind::linear_scorer;
    for (std::size_t k = 0; k < features; ++k)
        d.features.push_back({"f" + std::to_string(k), 0.0, 1.0});
    d.outputs.push_back({"y", absmin, absmax});
    return d;
}

// Identity scorer: one feature on [0,1], weight 1, output range [0,1].
inline LinearScorer identity_scorer() {
    return LinearScorer(simple_descriptor(1), {1.0});
}

// Random LinearScorer with nonnegative weights, shifted-identity transforms
// and an output range wide enough to contain every attainable value, so
// closed-form CI is w_k * (max_k - min_k) / width.
inline std::shared_ptr<LinearScorer> random_linear_scorer(std::mt19937_64& rng,
                                                          std::size_t min_features = 2,
                                                          std::size_t max_features = 13) {
    std::uniform_int_distribution<std::size_t> nf(min_features, max_features);
    std::uniform_real_distribution<double> wdist(0.0, 1.0);
    std::uniform_real_distribution<double> lodist(-5.0, 5.0);
    std::uniform_real_distribution<double> spandist(0.5, 10.0);

    const std::size_t n = nf(rng);
    ModelDescriptor d;
    d.kind = ModelKind::linear_scorer;
    std::vector<double> weights;
    std::vector<PiecewiseLinear> transforms;
    double reach = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        const double lo = lodist(rng);
        const double hi = lo + spandist(rng);
        d.features.push_back({"f" + std::to_string(k), lo, hi});
        const double w = wdist(rng);
        weights.push_back(w);
        transforms.push_back(PiecewiseLinear::shifted_identity(lo, hi));
        reach += w * (hi - lo);
    }
    d.outputs.push_back({"y", 0.0, reach + 1.0});
    return std::make_shared<LinearScorer>(std::move(d), std::move(weights),
                                          std::move(transforms));
}

inline Context random_context(const ModelDescriptor& d, std::mt19937_64& rng) {
    Context ctx;
    for (const auto& f : d.features) {
        std::uniform_real_distribution<double> u(f.min, f.max);
        ctx.values.push_back(u(rng));
    }
    return ctx;
}

inline std::shared_ptr<MlpClassifier> random_mlp(std::mt19937_64& rng,
                                                 std::size_t features = 4,
                                                 std::size_t classes = 3,
                                                 std::size_t hidden = 5) {
    ModelDescriptor d;
    d.kind = ModelKind::mlp_classifier;
    for (std::size_t k = 0; k < features; ++k)
        d.features.push_back({"f" + std::to_string(k), 0.0, 1.0});
    for (std::size_t j = 0; j < classes; ++j)
        d.outputs.push_back({"class" + std::to_string(j), 0.0, 1.0});

    std::uniform_real_distribution<double> w(-2.0, 2.0);
    MlpClassifier::Parameters p;
    p.hidden_size = hidden;
    p.w1.assign(hidden, std::vector<double>(features));
    p.b1.assign(hidden, 0.0);
    p.w2.assign(classes, std::vector<double>(hidden));
    p.b2.assign(classes, 0.0);
    for (auto& row : p.w1)
        for (double& v : row) v = w(rng);
    for (double& v : p.b1) v = w(rng);
    for (auto& row : p.w2)
        for (double& v : row) v = w(rng);
    for (double& v : p.b2) v = w(rng);
    return std::make_shared<MlpClassifier>(std::move(d), std::move(p));
}

}  // namespace ciu::testing
