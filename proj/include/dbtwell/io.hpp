#pragma once

#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace dbtwell::io {

/// Shortest decimal that parses back to the same double ("nan", "inf", "-inf"
/// for non-finite values).
std::string format_number(double v);

/// Inverse of format_number. Throws std::invalid_argument on malformed text.
double parse_number(std::string_view text);

struct Column {
  std::string name;
  std::vector<double> values;
};

/// Comma-separated, '\n' line endings, header row first and '#' footer lines last.
void write_csv(std::ostream& os, std::span<const Column> columns,
               std::span<const std::string> footer = {});

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
  std::vector<std::string> comments;  // without the leading '#'

  /// Values of the named column; throws std::out_of_range when absent.
  std::vector<double> column(std::string_view name) const;
};

CsvTable read_csv(std::istream& is);

/// Single polyline in a fixed 800x600 viewport, autoscaled to the data.
std::string render_svg_polyline(std::span<const double> xs, std::span<const double> ys,
                                std::string_view x_label, std::string_view y_label);

/// key=value lines; blank lines and '#' comments ignored, whitespace trimmed.
/// Throws std::runtime_error on unreadable files or lines without '='.
std::map<std::string, std::string> read_config_file(const std::string& path);

}  // namespace dbtwell::io
