#pragma once

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "aeinterp/series.hpp"

namespace aeinterp {

/// Shortest decimal that round-trips to the same double.
std::string format_double(double value);

/// Reads a `Time,Message` CSV. Lines starting with '#' and blank lines are
/// skipped. Malformed or non-finite fields raise Error{Parse} with the
/// 1-based line number as index; series invariants are then enforced by
/// TimeSeries itself.
TimeSeries read_series_csv(std::istream& in);
TimeSeries read_series_csv(const std::filesystem::path& path);

/// Writes a two-column CSV with the given header names. Each entry in
/// `comments` becomes a leading "# ..." line.
void write_columns_csv(std::ostream& out, std::string_view first_name,
                       std::span<const double> first,
                       std::string_view second_name,
                       std::span<const double> second,
                       std::span<const std::string> comments = {});

void write_series_csv(std::ostream& out, const TimeSeries& series);

}  // namespace aeinterp
