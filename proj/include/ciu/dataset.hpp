#pragma once

#include <string>
#include <vector>

#include "ciu/model.hpp"

namespace ciu {

/// A loaded CSV table: feature columns plus one trailing label/score
/// column. Numeric parsing uses '.' as the decimal point regardless of
/// locale.
struct Dataset {
    std::vector<std::string> feature_names;
    std::string target_name;
    std::vector<std::vector<double>> rows;  // feature values, row-major
    std::vector<std::string> target;        // raw text of the last column

    std::size_t size() const { return rows.size(); }

    // Distinct target strings in order of first appearance.
    std::vector<std::string> class_names() const;
    // Per-row index into class_names().
    std::vector<std::size_t> class_labels() const;
    // Targets parsed as reals; throws DataError on non-numeric targets.
    std::vector<double> numeric_targets() const;

    // Observed column min/max as FeatureSpecs; throws if a column is
    // constant (min == max would make the range invalid).
    std::vector<FeatureSpec> observed_feature_specs() const;

    const std::vector<double>& row(std::size_t r) const;
};

/// Parses a CSV document with a header row. Errors carry 1-based line
/// numbers. Throws DataError on malformed input.
Dataset load_csv(const std::string& path);
Dataset parse_csv(const std::string& text, const std::string& origin);

}  // namespace ciu
