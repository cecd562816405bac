#pragma once

#include "ringmod/bounds.hpp"

#include <json.hpp>

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace ringmod {

nlohmann::json to_json(const BoundParams& bp);
nlohmann::json to_json(const BoundReport& report);

/// Header: kind,r,bound,observed,margin,relative_margin
void write_csv_header(std::ostream& out);
void write_csv_rows(std::ostream& out, const BoundReport& report);

/// RFC-4180 field quoting: quotes when the field holds a comma, quote, CR or LF.
std::string csv_field(std::string_view field);
std::string csv_row(const std::vector<std::string>& fields);

/// Shortest decimal form that parses back to the same double.
std::string format_double(double v);

/// Writes through a sibling temporary file and renames it into place.
void write_file_atomically(const std::filesystem::path& path, std::string_view content);

} // namespace ringmod
