#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ciu/ciu.hpp"

namespace ciu {

enum class Axis { importance, utility };

struct VocabEntry {
    double upper = 1.0;  // bucket is (previous upper, upper]
    std::string phrase;
};

/// Ordered threshold-to-phrase mapping for CI and CU degrees. A degree d
/// falls in the first bucket whose upper bound is >= d; d = 0 lands in the
/// lowest bucket.
struct Vocabulary {
    std::string kind;  // "classification" or "preference"
    std::vector<VocabEntry> importance;
    std::vector<VocabEntry> utility;

    void validate() const;

    static Vocabulary classification();
    static Vocabulary preference();
};

std::string symbolize(double d, const Vocabulary& vocab, Axis axis);

struct ExplanationPhrase {
    std::string subject;  // feature or subset name
    std::string importance_word;
    int ci_percent = 0;
    std::string utility_word;
    double cu = 0.0;  // display-rounded
    bool degenerate = false;
    std::string text;
};

struct Explanation {
    std::string headline;
    std::vector<ExplanationPhrase> phrases;  // model feature order
    std::string summary;
    std::optional<std::size_t> top_feature;  // absent if every feature degenerate

    std::string to_text() const;
};

/// Per-feature account of one prediction in Table 3 wording. The biggest
/// contributor is the max-CI feature, ties broken by higher CU, then lower
/// feature index.
Explanation complete_explanation(const InstanceCiu& instance, std::size_t target_output,
                                 const Vocabulary& vocab);

std::size_t biggest_contributor(const InstanceCiu& instance, std::size_t target_output);

/// One explanation per non-predicted class, each using that class's own
/// CI/CU records. Requires the model to have >= 2 outputs.
std::vector<Explanation> contrastive_explanation(const InstanceCiu& instance,
                                                 std::size_t predicted,
                                                 const Vocabulary& vocab);

struct FeatureComparison {
    std::string feature;
    double ci_a = 0.0, cu_a = 0.0;
    double ci_b = 0.0, cu_b = 0.0;
    std::string verdict;
};

struct InstanceComparison {
    std::string name_a, name_b;
    std::size_t output_index = 0;
    std::string output_name;
    std::vector<FeatureComparison> rows;
    double score_a = 0.0, score_b = 0.0;  // sum of CI x CU
    int preferred = -1;                   // 0 = a, 1 = b, -1 = neither
    std::string summary;

    std::string to_text() const;
};

/// Instance-versus-instance comparison for one output. The verdict per
/// feature favors the higher CU; the summary favors the instance with the
/// larger sum of CI x CU, citing its top CI x CU-advantage feature.
InstanceComparison compare_instances(const InstanceCiu& a, const InstanceCiu& b,
                                     std::size_t target_output,
                                     const std::string& name_a = "A",
                                     const std::string& name_b = "B");

}  // namespace ciu
