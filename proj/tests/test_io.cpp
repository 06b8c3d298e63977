#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <filesystem>

#include "ciu/dataset.hpp"
#include "ciu/explain.hpp"
#include "ciu/io.hpp"
#include "helpers.hpp"

using namespace ciu;
using namespace ciu::testing;

TEST_CASE("csv parsing with line-numbered diagnostics") {
    const auto ds = parse_csv("a,b,label\n1,2,x\n3,4,y\n", "test");
    CHECK(ds.feature_names == std::vector<std::string>{"a", "b"});
    CHECK(ds.target_name == "label");
    CHECK(ds.size() == 2);
    CHECK(ds.class_names() == std::vector<std::string>{"x", "y"});
    CHECK(ds.class_labels() == std::vector<std::size_t>{0, 1});

    CHECK_THROWS_AS(parse_csv("", "t"), DataError);
    CHECK_THROWS_AS(parse_csv("a,b,label\n", "t"), DataError);
    try {
        parse_csv("a,b,label\n1,2,x\n1,oops,x\n", "t");
        FAIL("expected DataError");
    } catch (const DataError& e) {
        CHECK(std::string(e.what()).find("t:3") != std::string::npos);
    }
    try {
        parse_csv("a,b,label\n1,2\n", "t");
        FAIL("expected DataError");
    } catch (const DataError& e) {
        CHECK(std::string(e.what()).find(":2") != std::string::npos);
    }
}

TEST_CASE("observed feature specs come from column extremes") {
    const auto ds = parse_csv("a,b,label\n1,5,x\n3,4,y\n2,6,x\n", "t");
    const auto specs = ds.observed_feature_specs();
    CHECK(specs[0].min == 1.0);
    CHECK(specs[0].max == 3.0);
    CHECK(specs[1].min == 4.0);
    CHECK(specs[1].max == 6.0);
    CHECK_THROWS_AS(parse_csv("a,label\n2,x\n2,y\n", "t").observed_feature_specs(),
                    DataError);
}

TEST_CASE("linear scorer JSON round-trip preserves predictions bitwise") {
    std::mt19937_64 rng(12);
    const auto m = random_linear_scorer(rng);
    const auto j = model_to_json(*m);
    const auto loaded = model_from_json(j);
    const auto ctx = random_context(m->descriptor(), rng);
    CHECK(loaded.model->predict(ctx).values == m->predict(ctx).values);
    CHECK(loaded.model->descriptor().kind == ModelKind::linear_scorer);
}

TEST_CASE("mlp JSON round-trip preserves parameters and metadata") {
    std::mt19937_64 rng(13);
    const auto m = random_mlp(rng);
    TrainingMeta meta{99, 1000, 0.5, 0.97};
    const auto j = model_to_json(*m, meta);
    const auto loaded = model_from_json(j);
    REQUIRE(loaded.meta.has_value());
    CHECK(loaded.meta->seed == 99);
    CHECK(loaded.meta->accuracy == 0.97);
    const auto ctx = random_context(m->descriptor(), rng);
    CHECK(loaded.model->predict(ctx).values == m->predict(ctx).values);
}

TEST_CASE("model JSON rejects garbage") {
    CHECK_THROWS_AS(model_from_json(nlohmann::json{{"descriptor", 1}}), DataError);
    CHECK_THROWS_AS(
        model_from_json(nlohmann::json{
            {"descriptor",
             {{"kind", "external"},
              {"features", nlohmann::json::array({{{"name", "a"}, {"min", 0.0}, {"max", 1.0}}})},
              {"outputs", nlohmann::json::array({{{"name", "y"}, {"absmin", 0.0}, {"absmax", 1.0}}})}}}}),
        DataError);
}

TEST_CASE("instance CIU JSON round-trip") {
    std::mt19937_64 rng(14);
    const auto m = random_mlp(rng);
    SamplePlan plan;
    plan.seed = 3;
    const auto ins = explain_instance(*m, Context{{0.5, 0.5, 0.5, 0.5}}, plan,
                                      {VariedSet{{0, 1}}});
    const auto j = instance_ciu_to_json(ins);
    const auto back = instance_ciu_from_json(j);
    REQUIRE(back.feature_results.size() == ins.feature_results.size());
    for (std::size_t i = 0; i < ins.feature_results.size(); ++i) {
        CHECK(back.feature_results[i].ci == ins.feature_results[i].ci);
        CHECK(back.feature_results[i].cu == ins.feature_results[i].cu);
        CHECK(back.feature_results[i].cmin == ins.feature_results[i].cmin);
    }
    CHECK(back.subset_results.size() == ins.output_names.size());
    CHECK(back.feature_names == ins.feature_names);

    // Numbers printed in an explanation built from the JSON copy equal the
    // originals after display rounding.
    const auto e_orig = complete_explanation(ins, 0, Vocabulary::classification());
    const auto e_back = complete_explanation(back, 0, Vocabulary::classification());
    for (std::size_t p = 0; p < e_orig.phrases.size(); ++p) {
        CHECK(e_back.phrases[p].ci_percent == e_orig.phrases[p].ci_percent);
        CHECK(e_back.phrases[p].cu == e_orig.phrases[p].cu);
        CHECK(e_back.phrases[p].text == e_orig.phrases[p].text);
    }
}

TEST_CASE("vocabulary JSON round-trip and validation") {
    const auto v = Vocabulary::preference();
    const auto back = vocabulary_from_json(vocabulary_to_json(v));
    CHECK(back.kind == "preference");
    CHECK(back.utility.back().phrase == v.utility.back().phrase);

    auto j = vocabulary_to_json(v);
    j["utility"][3]["upper"] = 0.8;
    CHECK_THROWS_AS(vocabulary_from_json(j), DataError);
}

TEST_CASE("model files survive a disk round-trip") {
    std::mt19937_64 rng(15);
    const auto m = random_mlp(rng);
    const auto path = std::filesystem::temp_directory_path() / "ciu_test_model.json";
    save_model_file(path.string(), model_to_json(*m));
    const auto loaded = load_model_file(path.string());
    const auto ctx = random_context(m->descriptor(), rng);
    CHECK(loaded.model->predict(ctx).values == m->predict(ctx).values);
    std::filesystem::remove(path);

    CHECK_THROWS_AS(load_model_file("/nonexistent/model.json"), DataError);
}
