#pragma once

#include <memory>
#include <optional>
#include <string>

#include <json.hpp>

#include "ciu/ciu.hpp"
#include "ciu/explain.hpp"
#include "ciu/model.hpp"

namespace ciu {

struct TrainingMeta {
    std::uint64_t seed = 0;
    std::size_t epochs = 0;
    double learning_rate = 0.0;
    double accuracy = 0.0;
};

struct LoadedModel {
    std::shared_ptr<Model> model;
    std::optional<TrainingMeta> meta;
};

nlohmann::json descriptor_to_json(const ModelDescriptor& d);
ModelDescriptor descriptor_from_json(const nlohmann::json& j);

nlohmann::json model_to_json(const LinearScorer& model);
nlohmann::json model_to_json(const MlpClassifier& model,
                             const std::optional<TrainingMeta>& meta = std::nullopt);
LoadedModel model_from_json(const nlohmann::json& j);

void save_model_file(const std::string& path, const nlohmann::json& j);
LoadedModel load_model_file(const std::string& path);

nlohmann::json range_estimate_to_json(const RangeEstimate& est,
                                      const VariedSet& varied);

nlohmann::json instance_ciu_to_json(const InstanceCiu& instance);
InstanceCiu instance_ciu_from_json(const nlohmann::json& j);

nlohmann::json explanation_to_json(const Explanation& e);
nlohmann::json comparison_to_json(const InstanceComparison& cmp);

nlohmann::json vocabulary_to_json(const Vocabulary& v);
Vocabulary vocabulary_from_json(const nlohmann::json& j);
Vocabulary load_vocabulary_file(const std::string& path);

}  // namespace ciu
