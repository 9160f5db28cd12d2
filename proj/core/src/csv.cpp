#include "aeinterp/csv.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>

#include "aeinterp/error.hpp"

namespace aeinterp {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double parse_field(std::string_view field, std::size_t line) {
  field = trim(field);
  if (!field.empty() && field.front() == '+') field.remove_prefix(1);
  double value = 0.0;
  const auto* end = field.data() + field.size();
  const auto [ptr, ec] = std::from_chars(field.data(), end, value);
  if (field.empty() || ec != std::errc() || ptr != end) {
    throw Error(ErrorCode::kParse,
                "line " + std::to_string(line) + ": cannot parse number '" +
                    std::string(field) + "'",
                line);
  }
  if (!std::isfinite(value)) {
    throw Error(ErrorCode::kParse,
                "line " + std::to_string(line) + ": non-finite number", line);
  }
  return value;
}

}  // namespace

std::string format_double(double value) {
  std::array<char, 32> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  return std::string(buf.data(), ptr);
}

TimeSeries read_series_csv(std::istream& in) {
  std::vector<double> times;
  std::vector<double> values;
  std::string raw;
  std::size_t line = 0;
  bool have_header = false;
  while (std::getline(in, raw)) {
    ++line;
    const auto row = trim(raw);
    if (row.empty() || row.front() == '#') continue;
    if (!have_header) {
      if (row != "Time,Message") {
        throw Error(ErrorCode::kParse,
                    "line " + std::to_string(line) +
                        ": expected header 'Time,Message'",
                    line);
      }
      have_header = true;
      continue;
    }
    const auto comma = row.find(',');
    if (comma == std::string_view::npos ||
        row.find(',', comma + 1) != std::string_view::npos) {
      throw Error(ErrorCode::kParse,
                  "line " + std::to_string(line) + ": expected two fields",
                  line);
    }
    times.push_back(parse_field(row.substr(0, comma), line));
    values.push_back(parse_field(row.substr(comma + 1), line));
  }
  if (!have_header) {
    throw Error(ErrorCode::kParse, "missing 'Time,Message' header");
  }
  return TimeSeries(std::move(times), std::move(values));
}

TimeSeries read_series_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw Error(ErrorCode::kIo, "cannot open " + path.string());
  }
  return read_series_csv(in);
}

void write_columns_csv(std::ostream& out, std::string_view first_name,
                       std::span<const double> first,
                       std::string_view second_name,
                       std::span<const double> second,
                       std::span<const std::string> comments) {
  if (first.size() != second.size()) {
    throw Error(ErrorCode::kLengthMismatch, "CSV columns differ in length");
  }
  for (const auto& c : comments) out << "# " << c << '\n';
  out << first_name << ',' << second_name << '\n';
  for (std::size_t i = 0; i < first.size(); ++i) {
    out << format_double(first[i]) << ',' << format_double(second[i]) << '\n';
  }
}

void write_series_csv(std::ostream& out, const TimeSeries& series) {
  write_columns_csv(out, "Time", series.times(), "Message", series.values());
}

}  // namespace aeinterp
