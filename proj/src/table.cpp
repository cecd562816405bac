#include "ringmod/table.hpp"

#include "ringmod/errors.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>

namespace ringmod {

LogLogTable::LogLogTable(std::vector<double> radii, std::vector<double> values)
    : radii_(std::move(radii)), values_(std::move(values)) {
    if (radii_.size() != values_.size()) {
        throw ValidationError("table", "radius and value columns differ in length");
    }
    if (radii_.size() < 2) throw ValidationError("table", "needs at least 2 rows");
    for (std::size_t i = 0; i < radii_.size(); ++i) {
        if (!(std::isfinite(radii_[i]) && radii_[i] > 0.0)) {
            throw ValidationError("table", "radii must be finite and > 0 (row " + std::to_string(i) + ")");
        }
        if (i > 0 && !(radii_[i] > radii_[i - 1])) {
            throw ValidationError("table", "radii must be strictly increasing (row " + std::to_string(i) + ")");
        }
        if (!(std::isfinite(values_[i]) && values_[i] >= 0.0)) {
            throw ValidationError("table", "values must be finite and >= 0 (row " + std::to_string(i) + ")");
        }
    }
}

double LogLogTable::operator()(double r) const {
    if (!(r >= radii_.front() && r <= radii_.back())) {
        throw DomainError("radius " + std::to_string(r) + " outside table range [" +
                          std::to_string(radii_.front()) + ", " + std::to_string(radii_.back()) + "]");
    }
    auto it = std::upper_bound(radii_.begin(), radii_.end(), r);
    if (it == radii_.end()) return values_.back();
    const auto j = static_cast<std::size_t>(it - radii_.begin());
    const std::size_t i = j - 1;
    if (r == radii_[i]) return values_[i];
    const double v0 = values_[i];
    const double v1 = values_[j];
    if (v0 == 0.0 || v1 == 0.0) {
        const double t = (r - radii_[i]) / (radii_[j] - radii_[i]);
        return v0 + t * (v1 - v0);
    }
    const double t = std::log(r / radii_[i]) / std::log(radii_[j] / radii_[i]);
    return v0 * std::exp(t * std::log(v1 / v0));
}

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '"')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r' || s.back() == '"'))
        s.remove_suffix(1);
    return s;
}

std::optional<double> parse_number(std::string_view s) {
    s = trim(s);
    if (s.empty()) return std::nullopt;
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
    return v;
}

} // namespace

LogLogTable read_table_csv(std::istream& in) {
    std::vector<double> radii;
    std::vector<double> values;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        const auto comma = line.find(',');
        if (comma == std::string::npos) {
            throw ValidationError("table", "line " + std::to_string(line_no) + ": expected two columns");
        }
        const std::string_view view(line);
        auto r = parse_number(view.substr(0, comma));
        auto v = parse_number(view.substr(comma + 1));
        if (!r || !v) {
            if (radii.empty() && line_no == 1) continue; // header
            throw ValidationError("table", "line " + std::to_string(line_no) + ": non-numeric entry");
        }
        radii.push_back(*r);
        values.push_back(*v);
    }
    return LogLogTable(std::move(radii), std::move(values));
}

LogLogTable load_table_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("table", "cannot open " + path.string());
    return read_table_csv(in);
}

} // namespace ringmod
