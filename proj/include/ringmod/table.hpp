#pragma once

#include <filesystem>
#include <iosfwd>
#include <vector>

namespace ringmod {

/// Tabulated radial function interpolated linearly in (log r, log v).
///
/// Radii are strictly increasing and positive. A bracket with a zero value
/// falls back to linear interpolation in r, since log 0 is undefined.
/// Queries outside [radii.front(), radii.back()] raise DomainError.
class LogLogTable {
public:
    LogLogTable(std::vector<double> radii, std::vector<double> values);

    double operator()(double r) const;

    const std::vector<double>& radii() const noexcept { return radii_; }
    const std::vector<double>& values() const noexcept { return values_; }
    double lo() const noexcept { return radii_.front(); }
    double hi() const noexcept { return radii_.back(); }

private:
    std::vector<double> radii_;
    std::vector<double> values_;
};

/// Two-column CSV (radius, value). A non-numeric first row is taken as a header.
LogLogTable read_table_csv(std::istream& in);
LogLogTable load_table_csv(const std::filesystem::path& path);

} // namespace ringmod
