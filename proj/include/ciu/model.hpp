#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ciu/errors.hpp"

namespace ciu {

/// Declared valid range of one input feature.
struct FeatureSpec {
    std::string name;
    double min = 0.0;
    double max = 1.0;
};

/// Declared global value range [absmin, absmax] of one output.
struct OutputSpec {
    std::string name;
    double absmin = 0.0;
    double absmax = 1.0;

    double width() const { return absmax - absmin; }
};

enum class ModelKind { linear_scorer, mlp_classifier, external };

std::string to_string(ModelKind kind);
ModelKind model_kind_from_string(const std::string& s);

struct ModelDescriptor {
    std::vector<FeatureSpec> features;
    std::vector<OutputSpec> outputs;
    ModelKind kind = ModelKind::external;

    // Throws DataError on empty/duplicate names or inverted ranges.
    void validate() const;
};

/// A concrete input vector whose prediction is being explained.
struct Context {
    std::vector<double> values;
};

struct Prediction {
    std::vector<double> values;
};

/// Black-box model: anything mapping a feature vector to an output vector
/// with declared ranges. Immutable after construction; predict() is safe to
/// call concurrently.
class Model {
public:
    virtual ~Model() = default;

    const ModelDescriptor& descriptor() const { return descriptor_; }

    // Validates the context (length, per-feature range; the offending
    // feature is named in the error) and, for external models, that the
    // outputs respect their declared ranges.
    Prediction predict(const Context& ctx) const;

    void validate_context(const Context& ctx) const;

protected:
    explicit Model(ModelDescriptor descriptor);

    virtual std::vector<double> eval(std::span<const double> x) const = 0;

    ModelDescriptor descriptor_;
};

/// Monotone piecewise-linear map, used as a per-feature utility transform.
/// Breakpoint x values are strictly increasing; y values must be monotone
/// (either direction). Inputs outside the breakpoint span are clamped.
class PiecewiseLinear {
public:
    explicit PiecewiseLinear(std::vector<std::pair<double, double>> points);

    // (lo, 0) -> (hi, 1)
    static PiecewiseLinear normalized(double lo, double hi);
    // (lo, 0) -> (hi, hi - lo); keeps raw units, anchored at zero.
    static PiecewiseLinear shifted_identity(double lo, double hi);
    // (lo, 1) -> (hi, 0), for lower-is-better criteria.
    static PiecewiseLinear normalized_decreasing(double lo, double hi);

    double operator()(double x) const;

    const std::vector<std::pair<double, double>>& points() const { return points_; }

private:
    std::vector<std::pair<double, double>> points_;
};

/// Weighted-sum MCDM scorer: output = absmin + sum_k w_k * t_k(x_k) with a
/// single output. Transforms default to PiecewiseLinear::normalized over
/// each feature's range.
class LinearScorer : public Model {
public:
    LinearScorer(ModelDescriptor descriptor, std::vector<double> weights,
                 std::vector<PiecewiseLinear> transforms);
    LinearScorer(ModelDescriptor descriptor, std::vector<double> weights);

    const std::vector<double>& weights() const { return weights_; }
    const std::vector<PiecewiseLinear>& transforms() const { return transforms_; }

protected:
    std::vector<double> eval(std::span<const double> x) const override;

private:
    std::vector<double> weights_;
    std::vector<PiecewiseLinear> transforms_;
};

/// Exact CI of one feature of a LinearScorer: |w_k| * |t_k(max) - t_k(min)|
/// divided by the output range width. Context-independent; serves as the
/// analytic oracle for the sampling-based estimators.
double linear_closed_form_ci(const LinearScorer& model, std::size_t feature_index);

/// One-hidden-layer classifier: input scaling to [0,1] by feature range,
/// sigmoid hidden units, softmax output. Outputs sum to 1.
class MlpClassifier : public Model {
public:
    struct Parameters {
        std::size_t hidden_size = 0;
        std::vector<std::vector<double>> w1;  // hidden x inputs
        std::vector<double> b1;
        std::vector<std::vector<double>> w2;  // outputs x hidden
        std::vector<double> b2;
    };

    MlpClassifier(ModelDescriptor descriptor, Parameters params);

    const Parameters& parameters() const { return params_; }

protected:
    std::vector<double> eval(std::span<const double> x) const override;

private:
    Parameters params_;
};

/// Wraps an arbitrary callable as an external black-box model.
class CallbackModel : public Model {
public:
    using Fn = std::function<std::vector<double>(std::span<const double>)>;

    CallbackModel(ModelDescriptor descriptor, Fn fn);

protected:
    std::vector<double> eval(std::span<const double> x) const override;

private:
    Fn fn_;
};

struct TrainResult {
    std::shared_ptr<MlpClassifier> model;
    double accuracy = 0.0;
    double final_loss = 0.0;
};

/// Full-batch gradient descent with mean cross-entropy loss; weight init
/// uniform in [-0.5, 0.5] from the seed. Deterministic given the seed.
/// Throws ComputationError if the loss goes non-finite.
TrainResult train_mlp(const ModelDescriptor& descriptor,
                      const std::vector<std::vector<double>>& instances,
                      const std::vector<std::size_t>& labels,
                      std::size_t hidden_size, std::size_t epochs,
                      double learning_rate, std::uint64_t seed);

std::size_t argmax_index(std::span<const double> values);

}  // namespace ciu
