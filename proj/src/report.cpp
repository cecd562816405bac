#include "ringmod/report.hpp"

#include "ringmod/errors.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <ostream>

namespace ringmod {

nlohmann::json to_json(const BoundParams& bp) {
    return {{"n", bp.n}, {"p", bp.p}, {"q0", bp.q0}, {"alpha", bp.alpha}, {"domain_radius", bp.domain_radius}};
}

nlohmann::json to_json(const BoundReport& report) {
    nlohmann::json j;
    j["kind"] = std::string(to_string(report.kind));
    j["params"] = to_json(report.params);
    j["map"] = report.map_description;
    j["radii"] = report.radii;
    j["bound"] = report.bound_values;
    j["observed"] = report.observed_values;
    j["margin"] = report.margins;
    j["verdict"] = report.passed ? "pass" : "fail";
    j["conclusive"] = report.conclusive;
    if (report.kind == BoundKind::volume) {
        j["min_relative_margin"] = report.observed_summary;
    } else {
        j["max_ratio"] = report.observed_summary;
        j["note"] = "max_ratio is a finite-grid estimate of the limsup; a fail verdict is advisory";
    }
    return j;
}

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    (void)ec;
    return std::string(buf, ptr);
}

std::string csv_field(std::string_view field) {
    if (field.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(field);
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

std::string csv_row(const std::vector<std::string>& fields) {
    std::string row;
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i > 0) row += ',';
        row += csv_field(fields[i]);
    }
    row += "\r\n";
    return row;
}

void write_csv_header(std::ostream& out) {
    out << csv_row({"kind", "r", "bound", "observed", "margin", "relative_margin"});
}

void write_csv_rows(std::ostream& out, const BoundReport& report) {
    for (std::size_t i = 0; i < report.radii.size(); ++i) {
        out << csv_row({std::string(to_string(report.kind)), format_double(report.radii[i]),
                        format_double(report.bound_values[i]), format_double(report.observed_values[i]),
                        format_double(report.margins[i]),
                        format_double(report.margins[i] / report.bound_values[i])});
    }
}

void write_file_atomically(const std::filesystem::path& path, std::string_view content) {
    auto tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw Error("cannot open " + tmp.string() + " for writing");
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        out.flush();
        if (!out) throw Error("failed writing " + tmp.string());
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::filesystem::remove(tmp);
        throw Error("cannot rename " + tmp.string() + " to " + path.string() + ": " + ec.message());
    }
}

} // namespace ringmod
