#include "ciu/model.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>
#include <unordered_set>

namespace ciu {

std::string to_string(ModelKind kind) {
    switch (kind) {
        case ModelKind::linear_scorer: return "linear-scorer";
        case ModelKind::mlp_classifier: return "mlp-classifier";
        case ModelKind::external: return "external";
    }
    throw InternalError("unknown ModelKind");
}

ModelKind model_kind_from_string(const std::string& s) {
    if (s == "linear-scorer") return ModelKind::linear_scorer;
    if (s == "mlp-classifier") return ModelKind::mlp_classifier;
    if (s == "external") return ModelKind::external;
    throw DataError("unknown model kind '" + s + "'");
}

void ModelDescriptor::validate() const {
    if (features.empty()) throw DataError("model descriptor has no features");
    if (outputs.empty()) throw DataError("model descriptor has no outputs");
    std::unordered_set<std::string> seen;
    for (const auto& f : features) {
        if (f.name.empty()) throw DataError("feature with empty name");
        if (!seen.insert(f.name).second)
            throw DataError("duplicate feature name '" + f.name + "'");
        if (!(f.min < f.max))
            throw DataError("feature '" + f.name + "' has min >= max");
    }
    for (const auto& o : outputs) {
        if (!(o.absmin < o.absmax))
            throw DataError("output '" + o.name + "' has absmin >= absmax");
    }
}

Model::Model(ModelDescriptor descriptor) : descriptor_(std::move(descriptor)) {
    descriptor_.validate();
}

void Model::validate_context(const Context& ctx) const {
    const auto& feats = descriptor_.features;
    if (ctx.values.size() != feats.size()) {
        std::ostringstream os;
        os << "context has " << ctx.values.size() << " values, model expects "
           << feats.size();
        throw RangeViolation(os.str());
    }
    for (std::size_t k = 0; k < feats.size(); ++k) {
        const double v = ctx.values[k];
        if (!std::isfinite(v) || v < feats[k].min || v > feats[k].max) {
            std::ostringstream os;
            os << "feature '" << feats[k].name << "' value " << v
               << " outside declared range [" << feats[k].min << ", "
               << feats[k].max << "]";
            throw RangeViolation(os.str());
        }
    }
}

Prediction Model::predict(const Context& ctx) const {
    validate_context(ctx);
    auto out = eval(ctx.values);
    if (out.size() != descriptor_.outputs.size())
        throw InternalError("model produced wrong output count");
    if (descriptor_.kind == ModelKind::external) {
        constexpr double tol = 1e-9;
        for (std::size_t j = 0; j < out.size(); ++j) {
            const auto& spec = descriptor_.outputs[j];
            if (!std::isfinite(out[j]) || out[j] < spec.absmin - tol ||
                out[j] > spec.absmax + tol) {
                std::ostringstream os;
                os << "external model output '" << spec.name << "' = " << out[j]
                   << " violates declared range [" << spec.absmin << ", "
                   << spec.absmax << "]";
                throw ComputationError(os.str());
            }
        }
    }
    return Prediction{std::move(out)};
}

PiecewiseLinear::PiecewiseLinear(std::vector<std::pair<double, double>> points)
    : points_(std::move(points)) {
    if (points_.size() < 2) throw DataError("piecewise-linear map needs >= 2 points");
    int dir = 0;
    for (std::size_t i = 1; i < points_.size(); ++i) {
        if (!(points_[i - 1].first < points_[i].first))
            throw DataError("piecewise-linear x values must be strictly increasing");
        const double dy = points_[i].second - points_[i - 1].second;
        if (dy > 0) {
            if (dir < 0) throw DataError("piecewise-linear map is not monotone");
            dir = 1;
        } else if (dy < 0) {
            if (dir > 0) throw DataError("piecewise-linear map is not monotone");
            dir = -1;
        }
    }
}

PiecewiseLinear PiecewiseLinear::normalized(double lo, double hi) {
    return PiecewiseLinear({{lo, 0.0}, {hi, 1.0}});
}

PiecewiseLinear PiecewiseLinear::shifted_identity(double lo, double hi) {
    return PiecewiseLinear({{lo, 0.0}, {hi, hi - lo}});
}

PiecewiseLinear PiecewiseLinear::normalized_decreasing(double lo, double hi) {
    return PiecewiseLinear({{lo, 1.0}, {hi, 0.0}});
}

double PiecewiseLinear::operator()(double x) const {
    if (x <= points_.front().first) return points_.front().second;
    if (x >= points_.back().first) return points_.back().second;
    auto it = std::upper_bound(points_.begin(), points_.end(), x,
                               [](double v, const auto& p) { return v < p.first; });
    const auto& [x1, y1] = *it;
    const auto& [x0, y0] = *(it - 1);
    return y0 + (y1 - y0) * (x - x0) / (x1 - x0);
}

LinearScorer::LinearScorer(ModelDescriptor descriptor, std::vector<double> weights,
                           std::vector<PiecewiseLinear> transforms)
    : Model(std::move(descriptor)),
      weights_(std::move(weights)),
      transforms_(std::move(transforms)) {
    if (descriptor_.outputs.size() != 1)
        throw DataError("LinearScorer has exactly one output");
    if (weights_.size() != descriptor_.features.size())
        throw DataError("LinearScorer weight count does not match feature count");
    if (transforms_.size() != descriptor_.features.size())
        throw DataError("LinearScorer transform count does not match feature count");
}

static std::vector<PiecewiseLinear> default_transforms(const ModelDescriptor& d) {
    std::vector<PiecewiseLinear> out;
    out.reserve(d.features.size());
    for (const auto& f : d.features)
        out.push_back(PiecewiseLinear::normalized(f.min, f.max));
    return out;
}

LinearScorer::LinearScorer(ModelDescriptor descriptor, std::vector<double> weights)
    : LinearScorer(descriptor, std::move(weights), default_transforms(descriptor)) {}

std::vector<double> LinearScorer::eval(std::span<const double> x) const {
    double sum = descriptor_.outputs[0].absmin;
    for (std::size_t k = 0; k < weights_.size(); ++k)
        sum += weights_[k] * transforms_[k](x[k]);
    return {sum};
}

double linear_closed_form_ci(const LinearScorer& model, std::size_t feature_index) {
    const auto& d = model.descriptor();
    if (feature_index >= d.features.size())
        throw RangeViolation("feature index out of range");
    const auto& f = d.features[feature_index];
    const auto& t = model.transforms()[feature_index];
    const double span = std::abs(t(f.max) - t(f.min));
    return std::abs(model.weights()[feature_index]) * span / d.outputs[0].width();
}

MlpClassifier::MlpClassifier(ModelDescriptor descriptor, Parameters params)
    : Model(std::move(descriptor)), params_(std::move(params)) {
    const std::size_t in = descriptor_.features.size();
    const std::size_t out = descriptor_.outputs.size();
    const std::size_t h = params_.hidden_size;
    if (params_.w1.size() != h || params_.b1.size() != h ||
        params_.w2.size() != out || params_.b2.size() != out)
        throw DataError("MLP parameter shapes inconsistent with descriptor");
    for (const auto& row : params_.w1)
        if (row.size() != in) throw DataError("MLP w1 row length != input count");
    for (const auto& row : params_.w2)
        if (row.size() != h) throw DataError("MLP w2 row length != hidden size");
}

static double sigmoid(double z) { return 1.0 / (1.0 + std::exp(-z)); }

static void softmax_inplace(std::vector<double>& z) {
    const double m = *std::max_element(z.begin(), z.end());
    double sum = 0.0;
    for (double& v : z) {
        v = std::exp(v - m);
        sum += v;
    }
    for (double& v : z) v /= sum;
}

std::vector<double> MlpClassifier::eval(std::span<const double> x) const {
    const auto& feats = descriptor_.features;
    std::vector<double> scaled(x.size());
    for (std::size_t k = 0; k < x.size(); ++k)
        scaled[k] = (x[k] - feats[k].min) / (feats[k].max - feats[k].min);

    const std::size_t h = params_.hidden_size;
    std::vector<double> hidden(h);
    for (std::size_t i = 0; i < h; ++i) {
        double z = params_.b1[i];
        for (std::size_t k = 0; k < scaled.size(); ++k)
            z += params_.w1[i][k] * scaled[k];
        hidden[i] = sigmoid(z);
    }
    std::vector<double> out(descriptor_.outputs.size());
    for (std::size_t j = 0; j < out.size(); ++j) {
        double z = params_.b2[j];
        for (std::size_t i = 0; i < h; ++i) z += params_.w2[j][i] * hidden[i];
        out[j] = z;
    }
    softmax_inplace(out);
    return out;
}

CallbackModel::CallbackModel(ModelDescriptor descriptor, Fn fn)
    : Model(std::move(descriptor)), fn_(std::move(fn)) {}

std::vector<double> CallbackModel::eval(std::span<const double> x) const {
    return fn_(x);
}

std::size_t argmax_index(std::span<const double> values) {
    if (values.empty()) throw InternalError("argmax of empty vector");
    std::size_t best = 0;
    for (std::size_t i = 1; i < values.size(); ++i)
        if (values[i] > values[best]) best = i;  // ties -> lowest index
    return best;
}

TrainResult train_mlp(const ModelDescriptor& descriptor,
                      const std::vector<std::vector<double>>& instances,
                      const std::vector<std::size_t>& labels,
                      std::size_t hidden_size, std::size_t epochs,
                      double learning_rate, std::uint64_t seed) {
    descriptor.validate();
    if (instances.empty()) throw DataError("training dataset is empty");
    if (labels.size() != instances.size())
        throw DataError("label count does not match instance count");
    const std::size_t n = instances.size();
    const std::size_t in = descriptor.features.size();
    const std::size_t out = descriptor.outputs.size();
    if (hidden_size == 0) throw DataError("hidden_size must be >= 1");

    for (std::size_t r = 0; r < n; ++r) {
        if (instances[r].size() != in)
            throw DataError("training row " + std::to_string(r) + " has wrong width");
        if (labels[r] >= out)
            throw DataError("training row " + std::to_string(r) +
                            " has label outside the class set");
        for (std::size_t k = 0; k < in; ++k) {
            const auto& f = descriptor.features[k];
            if (instances[r][k] < f.min || instances[r][k] > f.max)
                throw RangeViolation("training row " + std::to_string(r) +
                                     " feature '" + f.name + "' out of range");
        }
    }

    // Pre-scale once; MlpClassifier::eval applies the same scaling at predict.
    std::vector<std::vector<double>> x(n, std::vector<double>(in));
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t k = 0; k < in; ++k) {
            const auto& f = descriptor.features[k];
            x[r][k] = (instances[r][k] - f.min) / (f.max - f.min);
        }

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> init(-0.5, 0.5);
    MlpClassifier::Parameters p;
    p.hidden_size = hidden_size;
    p.w1.assign(hidden_size, std::vector<double>(in));
    p.b1.assign(hidden_size, 0.0);
    p.w2.assign(out, std::vector<double>(hidden_size));
    p.b2.assign(out, 0.0);
    for (auto& row : p.w1)
        for (double& w : row) w = init(rng);
    for (double& b : p.b1) b = init(rng);
    for (auto& row : p.w2)
        for (double& w : row) w = init(rng);
    for (double& b : p.b2) b = init(rng);

    std::vector<std::vector<double>> hidden(n, std::vector<double>(hidden_size));
    std::vector<std::vector<double>> probs(n, std::vector<double>(out));
    double loss = 0.0;

    auto forward = [&]() {
        loss = 0.0;
        for (std::size_t r = 0; r < n; ++r) {
            for (std::size_t i = 0; i < hidden_size; ++i) {
                double z = p.b1[i];
                for (std::size_t k = 0; k < in; ++k) z += p.w1[i][k] * x[r][k];
                hidden[r][i] = sigmoid(z);
            }
            for (std::size_t j = 0; j < out; ++j) {
                double z = p.b2[j];
                for (std::size_t i = 0; i < hidden_size; ++i)
                    z += p.w2[j][i] * hidden[r][i];
                probs[r][j] = z;
            }
            softmax_inplace(probs[r]);
            loss -= std::log(std::max(probs[r][labels[r]], 1e-300));
        }
        loss /= static_cast<double>(n);
    };

    std::vector<std::vector<double>> gw1(hidden_size, std::vector<double>(in));
    std::vector<double> gb1(hidden_size);
    std::vector<std::vector<double>> gw2(out, std::vector<double>(hidden_size));
    std::vector<double> gb2(out);

    for (std::size_t e = 0; e < epochs; ++e) {
        forward();
        if (!std::isfinite(loss))
            throw ComputationError("training diverged: non-finite loss at epoch " +
                                   std::to_string(e));
        for (auto& row : gw1) std::fill(row.begin(), row.end(), 0.0);
        std::fill(gb1.begin(), gb1.end(), 0.0);
        for (auto& row : gw2) std::fill(row.begin(), row.end(), 0.0);
        std::fill(gb2.begin(), gb2.end(), 0.0);

        std::vector<double> dh(hidden_size);
        for (std::size_t r = 0; r < n; ++r) {
            // d(loss)/d(logit_j) = p_j - 1{j == label}
            std::fill(dh.begin(), dh.end(), 0.0);
            for (std::size_t j = 0; j < out; ++j) {
                const double dz = probs[r][j] - (j == labels[r] ? 1.0 : 0.0);
                gb2[j] += dz;
                for (std::size_t i = 0; i < hidden_size; ++i) {
                    gw2[j][i] += dz * hidden[r][i];
                    dh[i] += dz * p.w2[j][i];
                }
            }
            for (std::size_t i = 0; i < hidden_size; ++i) {
                const double hv = hidden[r][i];
                const double dz = dh[i] * hv * (1.0 - hv);
                gb1[i] += dz;
                for (std::size_t k = 0; k < in; ++k) gw1[i][k] += dz * x[r][k];
            }
        }

        const double step = learning_rate / static_cast<double>(n);
        for (std::size_t i = 0; i < hidden_size; ++i) {
            p.b1[i] -= step * gb1[i];
            for (std::size_t k = 0; k < in; ++k) p.w1[i][k] -= step * gw1[i][k];
        }
        for (std::size_t j = 0; j < out; ++j) {
            p.b2[j] -= step * gb2[j];
            for (std::size_t i = 0; i < hidden_size; ++i)
                p.w2[j][i] -= step * gw2[j][i];
        }
    }

    forward();
    std::size_t correct = 0;
    for (std::size_t r = 0; r < n; ++r)
        if (argmax_index(probs[r]) == labels[r]) ++correct;

    TrainResult result;
    result.model = std::make_shared<MlpClassifier>(descriptor, std::move(p));
    result.accuracy = static_cast<double>(correct) / static_cast<double>(n);
    result.final_loss = loss;
    return result;
}

}  // namespace ciu
