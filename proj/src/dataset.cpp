#include "ciu/dataset.hpp"

#include <algorithm>
#include <cerrno>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <sstream>

namespace ciu {

namespace {

std::vector<std::string> split_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    for (char c : line) {
        if (c == ',') {
            fields.push_back(field);
            field.clear();
        } else if (c != '\r') {
            field += c;
        }
    }
    fields.push_back(field);
    for (auto& f : fields) {
        const auto a = f.find_first_not_of(" \t");
        const auto b = f.find_last_not_of(" \t");
        f = a == std::string::npos ? "" : f.substr(a, b - a + 1);
    }
    return fields;
}

double parse_real(const std::string& s, const std::string& origin, std::size_t line,
                  const std::string& column) {
    errno = 0;
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (s.empty() || end != s.c_str() + s.size() || errno == ERANGE) {
        std::ostringstream os;
        os << origin << ":" << line << ": column '" << column
           << "': cannot parse '" << s << "' as a number";
        throw DataError(os.str());
    }
    return v;
}

}  // namespace

Dataset parse_csv(const std::string& text, const std::string& origin) {
    std::istringstream in(text);
    std::string line;
    std::size_t lineno = 0;

    Dataset ds;
    if (!std::getline(in, line))
        throw DataError(origin + ": empty file, expected a header row");
    ++lineno;
    auto header = split_line(line);
    if (header.size() < 2)
        throw DataError(origin + ":1: header needs at least one feature column "
                        "and a target column");
    ds.target_name = header.back();
    header.pop_back();
    ds.feature_names = std::move(header);

    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line == "\r") continue;
        auto fields = split_line(line);
        if (fields.size() != ds.feature_names.size() + 1) {
            std::ostringstream os;
            os << origin << ":" << lineno << ": expected "
               << ds.feature_names.size() + 1 << " fields, got " << fields.size();
            throw DataError(os.str());
        }
        std::vector<double> row(ds.feature_names.size());
        for (std::size_t k = 0; k < row.size(); ++k)
            row[k] = parse_real(fields[k], origin, lineno, ds.feature_names[k]);
        ds.rows.push_back(std::move(row));
        ds.target.push_back(fields.back());
    }
    if (ds.rows.empty())
        throw DataError(origin + ": no data rows after the header");
    return ds;
}

Dataset load_csv(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open dataset file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_csv(buf.str(), path);
}

std::vector<std::string> Dataset::class_names() const {
    std::vector<std::string> names;
    for (const auto& t : target)
        if (std::find(names.begin(), names.end(), t) == names.end())
            names.push_back(t);
    return names;
}

std::vector<std::size_t> Dataset::class_labels() const {
    const auto names = class_names();
    std::vector<std::size_t> labels;
    labels.reserve(target.size());
    for (const auto& t : target)
        labels.push_back(static_cast<std::size_t>(
            std::find(names.begin(), names.end(), t) - names.begin()));
    return labels;
}

std::vector<double> Dataset::numeric_targets() const {
    std::vector<double> out;
    out.reserve(target.size());
    for (std::size_t r = 0; r < target.size(); ++r)
        out.push_back(parse_real(target[r], "target", r + 2, target_name));
    return out;
}

std::vector<FeatureSpec> Dataset::observed_feature_specs() const {
    std::vector<FeatureSpec> specs;
    for (std::size_t k = 0; k < feature_names.size(); ++k) {
        double lo = std::numeric_limits<double>::infinity();
        double hi = -lo;
        for (const auto& row : rows) {
            lo = std::min(lo, row[k]);
            hi = std::max(hi, row[k]);
        }
        if (!(lo < hi))
            throw DataError("column '" + feature_names[k] +
                            "' is constant; cannot derive a feature range");
        specs.push_back({feature_names[k], lo, hi});
    }
    return specs;
}

const std::vector<double>& Dataset::row(std::size_t r) const {
    if (r >= rows.size())
        throw DataError("row index " + std::to_string(r) + " out of range (" +
                        std::to_string(rows.size()) + " rows)");
    return rows[r];
}

}  // namespace ciu
