#include "ciu/io.hpp"

#include <fstream>
#include <sstream>

namespace ciu {

using nlohmann::json;

namespace {

json parse_json(const std::string& text, const std::string& origin) {
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded()) throw DataError(origin + ": invalid JSON");
    return j;
}

template <typename T>
T get_field(const json& j, const char* key) {
    if (!j.contains(key)) throw DataError(std::string("missing JSON key '") + key + "'");
    try {
        return j.at(key).get<T>();
    } catch (const json::exception& e) {
        throw DataError(std::string("bad JSON value for '") + key + "': " + e.what());
    }
}

}  // namespace

json descriptor_to_json(const ModelDescriptor& d) {
    json feats = json::array();
    for (const auto& f : d.features)
        feats.push_back({{"name", f.name}, {"min", f.min}, {"max", f.max}});
    json outs = json::array();
    for (const auto& o : d.outputs)
        outs.push_back({{"name", o.name}, {"absmin", o.absmin}, {"absmax", o.absmax}});
    return {{"kind", to_string(d.kind)}, {"features", feats}, {"outputs", outs}};
}

ModelDescriptor descriptor_from_json(const json& j) {
    ModelDescriptor d;
    d.kind = model_kind_from_string(get_field<std::string>(j, "kind"));
    for (const auto& f : get_field<json>(j, "features"))
        d.features.push_back({get_field<std::string>(f, "name"),
                              get_field<double>(f, "min"),
                              get_field<double>(f, "max")});
    for (const auto& o : get_field<json>(j, "outputs"))
        d.outputs.push_back({get_field<std::string>(o, "name"),
                             get_field<double>(o, "absmin"),
                             get_field<double>(o, "absmax")});
    d.validate();
    return d;
}

json model_to_json(const LinearScorer& model) {
    json transforms = json::array();
    for (const auto& t : model.transforms()) {
        json pts = json::array();
        for (const auto& [x, y] : t.points()) pts.push_back({x, y});
        transforms.push_back(pts);
    }
    return {{"descriptor", descriptor_to_json(model.descriptor())},
            {"linear", {{"weights", model.weights()}, {"transforms", transforms}}}};
}

json model_to_json(const MlpClassifier& model, const std::optional<TrainingMeta>& meta) {
    const auto& p = model.parameters();
    json j = {{"descriptor", descriptor_to_json(model.descriptor())},
              {"mlp",
               {{"hidden_size", p.hidden_size},
                {"w1", p.w1},
                {"b1", p.b1},
                {"w2", p.w2},
                {"b2", p.b2}}}};
    if (meta)
        j["metadata"] = {{"seed", meta->seed},
                         {"epochs", meta->epochs},
                         {"learning_rate", meta->learning_rate},
                         {"accuracy", meta->accuracy}};
    return j;
}

LoadedModel model_from_json(const json& j) {
    LoadedModel out;
    auto d = descriptor_from_json(get_field<json>(j, "descriptor"));
    if (j.contains("linear")) {
        const auto& lin = j.at("linear");
        auto weights = get_field<std::vector<double>>(lin, "weights");
        std::vector<PiecewiseLinear> transforms;
        for (const auto& pts : get_field<json>(lin, "transforms")) {
            std::vector<std::pair<double, double>> points;
            for (const auto& p : pts)
                points.emplace_back(p.at(0).get<double>(), p.at(1).get<double>());
            transforms.emplace_back(std::move(points));
        }
        out.model = std::make_shared<LinearScorer>(std::move(d), std::move(weights),
                                                   std::move(transforms));
    } else if (j.contains("mlp")) {
        const auto& m = j.at("mlp");
        MlpClassifier::Parameters p;
        p.hidden_size = get_field<std::size_t>(m, "hidden_size");
        p.w1 = get_field<std::vector<std::vector<double>>>(m, "w1");
        p.b1 = get_field<std::vector<double>>(m, "b1");
        p.w2 = get_field<std::vector<std::vector<double>>>(m, "w2");
        p.b2 = get_field<std::vector<double>>(m, "b2");
        out.model = std::make_shared<MlpClassifier>(std::move(d), std::move(p));
    } else {
        throw DataError("model JSON has neither 'linear' nor 'mlp' parameters");
    }
    if (j.contains("metadata")) {
        const auto& md = j.at("metadata");
        TrainingMeta meta;
        meta.seed = get_field<std::uint64_t>(md, "seed");
        meta.epochs = get_field<std::size_t>(md, "epochs");
        meta.learning_rate = get_field<double>(md, "learning_rate");
        meta.accuracy = get_field<double>(md, "accuracy");
        out.meta = meta;
    }
    return out;
}

void save_model_file(const std::string& path, const json& j) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write model file '" + path + "'");
    out << j.dump(2) << "\n";
}

LoadedModel load_model_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open model file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return model_from_json(parse_json(buf.str(), path));
}

json range_estimate_to_json(const RangeEstimate& est, const VariedSet& varied) {
    return {{"varied", varied.indices},
            {"cmin", est.cmin},
            {"cmax", est.cmax},
            {"y", est.y},
            {"samples_used", est.samples_used}};
}

namespace {

json ciu_result_to_json(const CiuResult& r) {
    return {{"varied", r.varied.indices},
            {"output", r.output_index},
            {"cmin", r.cmin},
            {"cmax", r.cmax},
            {"y", r.y},
            {"ci", r.ci},
            {"cu", r.cu},
            {"degenerate", r.degenerate}};
}

CiuResult ciu_result_from_json(const json& j) {
    CiuResult r;
    r.varied.indices = get_field<std::vector<std::size_t>>(j, "varied");
    r.output_index = get_field<std::size_t>(j, "output");
    r.cmin = get_field<double>(j, "cmin");
    r.cmax = get_field<double>(j, "cmax");
    r.y = get_field<double>(j, "y");
    r.ci = get_field<double>(j, "ci");
    r.cu = get_field<double>(j, "cu");
    r.degenerate = get_field<bool>(j, "degenerate");
    return r;
}

}  // namespace

json instance_ciu_to_json(const InstanceCiu& instance) {
    json results = json::array();
    for (const auto& r : instance.feature_results) results.push_back(ciu_result_to_json(r));
    json subsets = json::array();
    for (const auto& r : instance.subset_results) subsets.push_back(ciu_result_to_json(r));
    return {{"context", instance.context.values},
            {"prediction", instance.prediction.values},
            {"features", instance.feature_names},
            {"outputs", instance.output_names},
            {"results", results},
            {"subsets", subsets}};
}

InstanceCiu instance_ciu_from_json(const json& j) {
    InstanceCiu out;
    out.context.values = get_field<std::vector<double>>(j, "context");
    out.prediction.values = get_field<std::vector<double>>(j, "prediction");
    out.feature_names = get_field<std::vector<std::string>>(j, "features");
    out.output_names = get_field<std::vector<std::string>>(j, "outputs");
    for (const auto& r : get_field<json>(j, "results"))
        out.feature_results.push_back(ciu_result_from_json(r));
    for (const auto& r : get_field<json>(j, "subsets"))
        out.subset_results.push_back(ciu_result_from_json(r));
    if (out.feature_results.size() != out.feature_names.size() * out.output_names.size())
        throw DataError("CIU JSON has wrong number of per-feature results");
    return out;
}

json explanation_to_json(const Explanation& e) {
    json phrases = json::array();
    for (const auto& p : e.phrases)
        phrases.push_back({{"subject", p.subject},
                           {"importance_word", p.importance_word},
                           {"ci_percent", p.ci_percent},
                           {"utility_word", p.utility_word},
                           {"cu", p.cu},
                           {"degenerate", p.degenerate},
                           {"text", p.text}});
    json j = {{"headline", e.headline}, {"phrases", phrases}, {"summary", e.summary}};
    if (e.top_feature) j["top_feature"] = *e.top_feature;
    return j;
}

json comparison_to_json(const InstanceComparison& cmp) {
    json rows = json::array();
    for (const auto& r : cmp.rows)
        rows.push_back({{"feature", r.feature},
                        {"ci_a", r.ci_a},
                        {"cu_a", r.cu_a},
                        {"ci_b", r.ci_b},
                        {"cu_b", r.cu_b},
                        {"verdict", r.verdict}});
    return {{"name_a", cmp.name_a},
            {"name_b", cmp.name_b},
            {"output", cmp.output_index},
            {"output_name", cmp.output_name},
            {"rows", rows},
            {"score_a", cmp.score_a},
            {"score_b", cmp.score_b},
            {"preferred", cmp.preferred},
            {"summary", cmp.summary}};
}

json vocabulary_to_json(const Vocabulary& v) {
    auto axis = [](const std::vector<VocabEntry>& entries) {
        json a = json::array();
        for (const auto& e : entries)
            a.push_back({{"upper", e.upper}, {"phrase", e.phrase}});
        return a;
    };
    return {{"kind", v.kind},
            {"importance", axis(v.importance)},
            {"utility", axis(v.utility)}};
}

Vocabulary vocabulary_from_json(const json& j) {
    Vocabulary v;
    v.kind = get_field<std::string>(j, "kind");
    auto axis = [](const json& a) {
        std::vector<VocabEntry> entries;
        for (const auto& e : a)
            entries.push_back({get_field<double>(e, "upper"),
                               get_field<std::string>(e, "phrase")});
        return entries;
    };
    v.importance = axis(get_field<json>(j, "importance"));
    v.utility = axis(get_field<json>(j, "utility"));
    v.validate();
    return v;
}

Vocabulary load_vocabulary_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open vocabulary file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return vocabulary_from_json(parse_json(buf.str(), path));
}

}  // namespace ciu
