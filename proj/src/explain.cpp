#include "ciu/explain.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

namespace ciu {

void Vocabulary::validate() const {
    for (const auto* axis : {&importance, &utility}) {
        if (axis->empty()) throw DataError("vocabulary axis is empty");
        double prev = 0.0;
        for (const auto& e : *axis) {
            if (!(e.upper > prev))
                throw DataError("vocabulary upper bounds must be strictly increasing");
            if (e.phrase.empty()) throw DataError("vocabulary phrase is empty");
            prev = e.upper;
        }
        if (axis->back().upper != 1.0)
            throw DataError("last vocabulary upper bound must be 1.0");
    }
}

Vocabulary Vocabulary::classification() {
    Vocabulary v;
    v.kind = "classification";
    v.importance = {{0.25, "Not important"},
                    {0.5, "Important"},
                    {0.75, "Rather important"},
                    {1.0, "Highly important"}};
    v.utility = {{0.25, "Not typical"},
                 {0.5, "Unlikely"},
                 {0.75, "Typical"},
                 {1.0, "Very typical"}};
    return v;
}

Vocabulary Vocabulary::preference() {
    Vocabulary v;
    v.kind = "preference";
    v.importance = {{0.25, "Not important"},
                    {0.5, "Important"},
                    {0.75, "Rather important"},
                    {1.0, "Highly important"}};
    v.utility = {{0.25, "Not good"},
                 {0.5, "Passable"},
                 {0.75, "Good"},
                 {1.0, "Very good"}};
    return v;
}

std::string symbolize(double d, const Vocabulary& vocab, Axis axis) {
    if (!(d >= 0.0) || d > 1.0) {
        std::ostringstream os;
        os << "degree " << d << " outside [0, 1]";
        throw RangeViolation(os.str());
    }
    const auto& entries = axis == Axis::importance ? vocab.importance : vocab.utility;
    for (const auto& e : entries)
        if (d <= e.upper) return e.phrase;
    return entries.back().phrase;  // unreachable when last upper == 1.0
}

namespace {

std::string lowercase_first(std::string s) {
    if (!s.empty()) s[0] = static_cast<char>(std::tolower(s[0]));
    return s;
}

// Shortest decimal form of a display-rounded value: 1 -> "1", 0.69 -> "0.69".
std::string format_cu(double cu) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", cu);
    std::string s(buf);
    while (s.back() == '0') s.pop_back();
    if (s.back() == '.') s.pop_back();
    return s;
}

std::string format_value(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%g", v);
    return buf;
}

ExplanationPhrase make_phrase(const CiuResult& r, const std::string& subject,
                              const Vocabulary& vocab) {
    ExplanationPhrase p;
    p.subject = subject;
    p.ci_percent = display_percent(r.ci);
    p.cu = display_cu(r.cu);
    p.degenerate = r.degenerate;
    if (r.degenerate) {
        p.text = "The " + subject + " has no effect on this output.";
        return p;
    }
    p.importance_word = symbolize(r.ci, vocab, Axis::importance);
    p.utility_word = symbolize(r.cu, vocab, Axis::utility);
    std::ostringstream os;
    os << "The " << subject << " which is a " << lowercase_first(p.importance_word)
       << " (CI=" << p.ci_percent << "%) feature has a "
       << lowercase_first(p.utility_word) << " (CU=" << format_cu(p.cu)
       << ") value.";
    p.text = os.str();
    return p;
}

}  // namespace

std::string Explanation::to_text() const {
    std::ostringstream os;
    os << headline << "\n";
    for (const auto& p : phrases) os << p.text << "\n";
    if (!summary.empty()) os << summary << "\n";
    return os.str();
}

std::size_t biggest_contributor(const InstanceCiu& instance, std::size_t target_output) {
    if (instance.feature_count() == 0) throw DataError("instance has no features");
    std::size_t best = 0;
    for (std::size_t f = 1; f < instance.feature_count(); ++f) {
        const auto& cand = instance.at(f, target_output);
        const auto& cur = instance.at(best, target_output);
        if (cand.ci > cur.ci || (cand.ci == cur.ci && cand.cu > cur.cu)) best = f;
    }
    return best;
}

Explanation complete_explanation(const InstanceCiu& instance, std::size_t target_output,
                                 const Vocabulary& vocab) {
    vocab.validate();
    if (target_output >= instance.output_count())
        throw RangeViolation("target output index out of range");

    Explanation e;
    const double y = instance.prediction.values[target_output];
    std::ostringstream head;
    if (vocab.kind == "classification") {
        head << "The model's prediction is " << display_percent(y) << "% "
             << instance.output_names[target_output] << ". Because;";
    } else {
        head << "The predicted " << instance.output_names[target_output] << " is "
             << format_value(y) << ". Because;";
    }
    e.headline = head.str();

    bool all_degenerate = true;
    for (std::size_t f = 0; f < instance.feature_count(); ++f) {
        const auto& r = instance.at(f, target_output);
        e.phrases.push_back(make_phrase(r, instance.feature_names[f], vocab));
        all_degenerate = all_degenerate && r.degenerate;
    }
    if (all_degenerate) {
        e.summary = "No feature has any effect on this prediction.";
    } else {
        e.top_feature = biggest_contributor(instance, target_output);
        e.summary = "And the biggest contributing feature is the " +
                    instance.feature_names[*e.top_feature] + ".";
    }
    return e;
}

std::vector<Explanation> contrastive_explanation(const InstanceCiu& instance,
                                                 std::size_t predicted,
                                                 const Vocabulary& vocab) {
    vocab.validate();
    if (instance.output_count() < 2)
        throw UnsupportedOperation(
            "contrastive explanation needs >= 2 outputs; use compare_instances "
            "for single-output models");
    if (predicted != argmax_index(instance.prediction.values))
        throw DataError("predicted index is not the argmax of the prediction");

    std::vector<Explanation> blocks;
    for (std::size_t c = 0; c < instance.output_count(); ++c) {
        if (c == predicted) continue;
        Explanation e;
        std::ostringstream head;
        head << "It is not " << instance.output_names[c] << "("
             << display_percent(instance.prediction.values[c]) << "%), because;";
        e.headline = head.str();
        for (std::size_t f = 0; f < instance.feature_count(); ++f)
            e.phrases.push_back(
                make_phrase(instance.at(f, c), instance.feature_names[f], vocab));
        blocks.push_back(std::move(e));
    }
    return blocks;
}

std::string InstanceComparison::to_text() const {
    std::ostringstream os;
    os << "Comparing " << name_a << " with " << name_b << " on " << output_name
       << ":\n";
    for (const auto& row : rows) os << row.verdict << "\n";
    os << summary << "\n";
    return os.str();
}

InstanceComparison compare_instances(const InstanceCiu& a, const InstanceCiu& b,
                                     std::size_t target_output,
                                     const std::string& name_a,
                                     const std::string& name_b) {
    if (a.feature_names != b.feature_names || a.output_names != b.output_names)
        throw DataError("instances were explained against different models");
    if (target_output >= a.output_count())
        throw RangeViolation("target output index out of range");

    InstanceComparison cmp;
    cmp.name_a = name_a;
    cmp.name_b = name_b;
    cmp.output_index = target_output;
    cmp.output_name = a.output_names[target_output];

    for (std::size_t f = 0; f < a.feature_count(); ++f) {
        const auto& ra = a.at(f, target_output);
        const auto& rb = b.at(f, target_output);
        FeatureComparison row;
        row.feature = a.feature_names[f];
        row.ci_a = ra.ci;
        row.cu_a = ra.cu;
        row.ci_b = rb.ci;
        row.cu_b = rb.cu;
        std::ostringstream os;
        constexpr double tie_tol = 1e-9;
        if (std::abs(ra.cu - rb.cu) <= tie_tol) {
            os << row.feature << ": equal (CU=" << format_cu(display_cu(ra.cu))
               << " for both).";
        } else {
            const bool a_wins = ra.cu > rb.cu;
            os << row.feature << ": " << (a_wins ? name_a : name_b)
               << " has the better value (CU=" << format_cu(display_cu(ra.cu))
               << " vs CU=" << format_cu(display_cu(rb.cu)) << ").";
        }
        row.verdict = os.str();
        cmp.rows.push_back(std::move(row));
        cmp.score_a += ra.ci * ra.cu;
        cmp.score_b += rb.ci * rb.cu;
    }

    if (std::abs(cmp.score_a - cmp.score_b) <= 1e-9) {
        cmp.preferred = -1;
        cmp.summary = "Neither instance is preferred; importance-weighted "
                      "utilities are equal.";
        return cmp;
    }
    cmp.preferred = cmp.score_a > cmp.score_b ? 0 : 1;
    const bool a_pref = cmp.preferred == 0;
    std::size_t top = 0;
    double top_adv = -std::numeric_limits<double>::infinity();
    for (std::size_t f = 0; f < cmp.rows.size(); ++f) {
        const auto& row = cmp.rows[f];
        const double adv = a_pref ? row.ci_a * row.cu_a - row.ci_b * row.cu_b
                                  : row.ci_b * row.cu_b - row.ci_a * row.cu_a;
        if (adv > top_adv) {
            top_adv = adv;
            top = f;
        }
    }
    cmp.summary = (a_pref ? name_a : name_b) + " is better because of the " +
                  cmp.rows[top].feature + ".";
    return cmp;
}

}  // namespace ciu
