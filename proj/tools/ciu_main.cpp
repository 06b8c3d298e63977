// ciu: model-agnostic explanations of individual predictions via
// contextual importance (CI) and contextual utility (CU).
//
// Exit codes: 0 success, 2 usage error, 3 data error (bad file / schema /
// out-of-range instance), 4 computation error.

#include <algorithm>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ciu/ciu.hpp"
#include "ciu/dataset.hpp"
#include "ciu/explain.hpp"
#include "ciu/io.hpp"
#include "ciu/render.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitData = 3;
constexpr int kExitComputation = 4;

struct CommonArgs {
    std::string model_path;
    std::string dataset_path;
    std::vector<std::string> instances;  // inline "a,b,c" strings
    std::vector<long long> rows;         // 0-based dataset row indices
    std::size_t samples = 150;
    std::size_t points = 11;
    std::uint64_t seed = 42;
    std::string strategy = "mc";
    std::string format = "text";
    std::string vocabulary_path;
    std::string out_path;
};

ciu::SamplePlan make_plan(const CommonArgs& a) {
    ciu::SamplePlan plan;
    plan.strategy = a.strategy == "grid" ? ciu::SampleStrategy::grid
                                         : ciu::SampleStrategy::monte_carlo;
    plan.sample_count = a.samples;
    plan.points_per_dim = a.points;
    plan.seed = a.seed;
    return plan;
}

std::vector<double> parse_inline_instance(const std::string& s) {
    std::vector<double> values;
    std::stringstream ss(s);
    std::string field;
    while (std::getline(ss, field, ',')) {
        try {
            std::size_t pos = 0;
            values.push_back(std::stod(field, &pos));
            if (pos != field.size()) throw std::invalid_argument(field);
        } catch (const std::exception&) {
            throw ciu::DataError("cannot parse instance value '" + field + "'");
        }
    }
    if (values.empty()) throw ciu::DataError("empty instance");
    return values;
}

// Instances come either inline or as dataset row indices; feature order is
// the model's declared feature order (see --help of each command).
std::vector<ciu::Context> gather_instances(const CommonArgs& a, std::size_t expected) {
    std::vector<ciu::Context> out;
    for (const auto& s : a.instances) out.push_back({parse_inline_instance(s)});
    if (!a.rows.empty()) {
        if (a.dataset_path.empty())
            throw ciu::DataError("--row requires --dataset");
        const auto ds = ciu::load_csv(a.dataset_path);
        for (long long r : a.rows) {
            if (r < 0) throw ciu::DataError("row index must be >= 0");
            out.push_back({ds.row(static_cast<std::size_t>(r))});
        }
    }
    if (out.size() != expected) {
        std::ostringstream os;
        os << "expected " << expected << " instance(s) (via --instance/--row), got "
           << out.size();
        throw ciu::DataError(os.str());
    }
    return out;
}

ciu::Vocabulary pick_vocabulary(const CommonArgs& a, const ciu::Model& model) {
    if (!a.vocabulary_path.empty()) return ciu::load_vocabulary_file(a.vocabulary_path);
    return model.descriptor().kind == ciu::ModelKind::linear_scorer
               ? ciu::Vocabulary::preference()
               : ciu::Vocabulary::classification();
}

std::size_t pick_output(const ciu::Model& model, const ciu::Context& ctx,
                        std::optional<std::size_t> requested) {
    if (requested) {
        if (*requested >= model.descriptor().outputs.size())
            throw ciu::DataError("output index out of range");
        return *requested;
    }
    const auto pred = model.predict(ctx);
    return ciu::argmax_index(pred.values);
}

std::size_t resolve_feature(const ciu::Model& model, const std::string& name_or_index) {
    const auto& feats = model.descriptor().features;
    for (std::size_t k = 0; k < feats.size(); ++k)
        if (feats[k].name == name_or_index) return k;
    try {
        std::size_t pos = 0;
        const auto idx = std::stoul(name_or_index, &pos);
        if (pos == name_or_index.size() && idx < feats.size()) return idx;
    } catch (const std::exception&) {
    }
    throw ciu::DataError("unknown feature '" + name_or_index + "'");
}

void emit(const CommonArgs& a, const std::string& content) {
    if (a.out_path.empty()) {
        std::cout << content;
        return;
    }
    std::ofstream out(a.out_path, std::ios::binary);
    if (!out) throw ciu::DataError("cannot write output file '" + a.out_path + "'");
    out << content;
}

void add_instance_options(CLI::App* cmd, CommonArgs& a, bool multiple = false) {
    cmd->add_option("--instance", a.instances,
                    "Inline instance as comma-separated reals, in the model's "
                    "declared feature order (run with --format json and check "
                    "the model file's 'features' list; the Iris order here is "
                    "sepal length, sepal width, petal length, petal width)")
        ->expected(multiple ? -1 : 1);
    cmd->add_option("--row", a.rows, "0-based data row index into --dataset")
        ->expected(multiple ? -1 : 1);
    cmd->add_option("--dataset", a.dataset_path, "CSV dataset for --row lookups");
}

void add_plan_options(CLI::App* cmd, CommonArgs& a) {
    cmd->add_option("--samples", a.samples, "Monte-Carlo sample count")
        ->default_val(150);
    cmd->add_option("--points", a.points, "grid points per varied dimension")
        ->default_val(11);
    cmd->add_option("--seed", a.seed, "random seed")->default_val(42);
    cmd->add_option("--strategy", a.strategy, "range estimation strategy")
        ->check(CLI::IsMember({"mc", "grid"}))
        ->default_val("mc");
}

int cmd_train(const CommonArgs& a, std::size_t hidden, std::size_t epochs, double lr) {
    const auto ds = ciu::load_csv(a.dataset_path);
    ciu::ModelDescriptor d;
    d.kind = ciu::ModelKind::mlp_classifier;
    d.features = ds.observed_feature_specs();
    for (const auto& cls : ds.class_names()) d.outputs.push_back({cls, 0.0, 1.0});
    d.validate();

    const auto result =
        ciu::train_mlp(d, ds.rows, ds.class_labels(), hidden, epochs, lr, a.seed);
    ciu::TrainingMeta meta{a.seed, epochs, lr, result.accuracy};
    ciu::save_model_file(a.model_path, ciu::model_to_json(*result.model, meta));
    std::cout << "seed=" << a.seed << " epochs=" << epochs
              << " accuracy=" << result.accuracy << " model=" << a.model_path
              << "\n";
    return kExitOk;
}

int cmd_explain(const CommonArgs& a, std::optional<std::size_t> output_index) {
    const auto loaded = ciu::load_model_file(a.model_path);
    const auto ctx = gather_instances(a, 1).front();
    const auto target = pick_output(*loaded.model, ctx, output_index);
    const auto instance = ciu::explain_instance(*loaded.model, ctx, make_plan(a));
    const auto vocab = pick_vocabulary(a, *loaded.model);
    const auto explanation = ciu::complete_explanation(instance, target, vocab);

    if (a.format == "json") {
        nlohmann::json j = {{"ciu", ciu::instance_ciu_to_json(instance)},
                            {"explanation", ciu::explanation_to_json(explanation)}};
        emit(a, j.dump(2) + "\n");
    } else if (a.format == "svg") {
        ciu::PlotSpec spec;
        spec.sort_by_ci = true;
        emit(a, ciu::bar_chart_ciu(instance, target, spec));
    } else {
        emit(a, explanation.to_text());
    }
    return kExitOk;
}

int cmd_contrast(const CommonArgs& a) {
    const auto loaded = ciu::load_model_file(a.model_path);
    const auto ctx = gather_instances(a, 1).front();
    const auto instance = ciu::explain_instance(*loaded.model, ctx, make_plan(a));
    const auto predicted = ciu::argmax_index(instance.prediction.values);
    const auto vocab = pick_vocabulary(a, *loaded.model);
    const auto blocks = ciu::contrastive_explanation(instance, predicted, vocab);

    if (a.format == "json") {
        nlohmann::json j = nlohmann::json::array();
        for (const auto& b : blocks) j.push_back(ciu::explanation_to_json(b));
        emit(a, j.dump(2) + "\n");
    } else {
        std::string text;
        for (const auto& b : blocks) text += b.to_text();
        emit(a, text);
    }
    return kExitOk;
}

int cmd_compare(const CommonArgs& a, std::vector<std::string> names,
                std::optional<std::size_t> output_index) {
    const auto loaded = ciu::load_model_file(a.model_path);
    const auto contexts = gather_instances(a, 2);
    while (names.size() < 2) names.push_back(names.empty() ? "A" : "B");
    const auto plan = make_plan(a);
    const auto target = pick_output(*loaded.model, contexts[0], output_index);
    const auto ciu_a = ciu::explain_instance(*loaded.model, contexts[0], plan);
    const auto ciu_b = ciu::explain_instance(*loaded.model, contexts[1], plan);
    const auto cmp = ciu::compare_instances(ciu_a, ciu_b, target, names[0], names[1]);

    if (a.format == "json") {
        emit(a, ciu::comparison_to_json(cmp).dump(2) + "\n");
    } else if (a.format == "svg") {
        emit(a, ciu::bar_chart_contrast(cmp, ciu::PlotSpec{}));
    } else {
        emit(a, cmp.to_text());
    }
    return kExitOk;
}

int cmd_plot(const CommonArgs& a, const std::string& feature,
             std::optional<std::size_t> output_index, ciu::PlotSpec spec) {
    const auto loaded = ciu::load_model_file(a.model_path);
    const auto ctx = gather_instances(a, 1).front();
    const auto fidx = resolve_feature(*loaded.model, feature);
    const auto target = pick_output(*loaded.model, ctx, output_index);
    emit(a, ciu::plot_response_curve(*loaded.model, ctx, fidx, target, spec));
    return kExitOk;
}

int cmd_estimate(const CommonArgs& a, const std::vector<std::string>& vary) {
    const auto loaded = ciu::load_model_file(a.model_path);
    const auto ctx = gather_instances(a, 1).front();
    ciu::VariedSet varied;
    if (vary.empty()) {
        varied = ciu::VariedSet::all(loaded.model->descriptor().features.size());
    } else {
        for (const auto& f : vary)
            varied.indices.push_back(resolve_feature(*loaded.model, f));
        std::sort(varied.indices.begin(), varied.indices.end());
    }
    const auto est = ciu::estimate_range(*loaded.model, ctx, varied, make_plan(a));
    emit(a, ciu::range_estimate_to_json(est, varied).dump(2) + "\n");
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Contextual importance/utility explanations for black-box models"};
    app.require_subcommand(1);

    CommonArgs a;
    std::size_t hidden = 8, epochs = 3000;
    double lr = 0.5;
    std::optional<std::size_t> output_index;
    std::vector<std::string> names;
    std::vector<std::string> vary;
    std::string feature;
    ciu::PlotSpec plot_spec;

    auto* train = app.add_subcommand("train", "Train an MLP classifier on a CSV dataset");
    train->add_option("--dataset", a.dataset_path, "CSV: feature columns then a class column")
        ->required();
    train->add_option("--model", a.model_path, "output model JSON path")->required();
    train->add_option("--hidden", hidden, "hidden layer size")->default_val(8);
    train->add_option("--epochs", epochs, "training epochs")->default_val(3000);
    train->add_option("--lr", lr, "learning rate")->default_val(0.5);
    train->add_option("--seed", a.seed, "weight init seed")->default_val(42);

    auto setup_output = [&](CLI::App* cmd, std::vector<std::string> formats,
                            const std::string& def = "text") {
        // The option variable is shared across subcommands, so each
        // subcommand re-applies its own default just before parsing.
        cmd->preparse_callback([&a, def](std::size_t) { a.format = def; });
        cmd->add_option("--format", a.format, "output format")
            ->check(CLI::IsMember(formats))
            ->default_str(def);
        cmd->add_option("--out", a.out_path, "write to file instead of stdout");
        cmd->add_option("--vocabulary", a.vocabulary_path, "vocabulary JSON file");
    };

    auto* explain = app.add_subcommand("explain", "Complete explanation for one instance");
    explain->add_option("--model", a.model_path)->required();
    add_instance_options(explain, a);
    add_plan_options(explain, a);
    explain->add_option("--output-index", output_index,
                        "explained output (default: argmax of the prediction)");
    setup_output(explain, {"text", "json", "svg"});

    auto* contrast = app.add_subcommand(
        "contrast", "Contrastive explanations against all non-predicted classes");
    contrast->add_option("--model", a.model_path)->required();
    add_instance_options(contrast, a);
    add_plan_options(contrast, a);
    setup_output(contrast, {"text", "json"});

    auto* compare = app.add_subcommand("compare", "Compare exactly two instances");
    compare->add_option("--model", a.model_path)->required();
    add_instance_options(compare, a, /*multiple=*/true);
    add_plan_options(compare, a);
    compare->add_option("--name", names, "instance display names (two)");
    compare->add_option("--output-index", output_index);
    setup_output(compare, {"text", "json", "svg"});

    auto* plot = app.add_subcommand("plot", "Response-curve SVG for one feature");
    plot->add_option("--model", a.model_path)->required();
    add_instance_options(plot, a);
    plot->add_option("--feature", feature, "feature name or index")->required();
    plot->add_option("--output-index", output_index);
    plot->add_option("--width", plot_spec.width)->default_val(640);
    plot->add_option("--height", plot_spec.height)->default_val(480);
    plot->add_option("--curve-samples", plot_spec.curve_samples)->default_val(100);
    setup_output(plot, {"svg"}, "svg");

    auto* estimate = app.add_subcommand("estimate", "Cmin/Cmax range estimate as JSON");
    estimate->add_option("--model", a.model_path)->required();
    add_instance_options(estimate, a);
    add_plan_options(estimate, a);
    estimate->add_option("--vary", vary,
                         "features to vary (names or indices; default: all)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (train->parsed()) return cmd_train(a, hidden, epochs, lr);
        if (explain->parsed()) return cmd_explain(a, output_index);
        if (contrast->parsed()) return cmd_contrast(a);
        if (compare->parsed()) return cmd_compare(a, names, output_index);
        if (plot->parsed()) return cmd_plot(a, feature, output_index, plot_spec);
        if (estimate->parsed()) return cmd_estimate(a, vary);
    } catch (const ciu::DataError& e) {
        std::cerr << "data error: " << e.what() << "\n";
        return kExitData;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitComputation;
    }
    return kExitUsage;
}
