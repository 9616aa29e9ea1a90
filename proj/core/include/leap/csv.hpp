#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace leap {

// Streaming reader for comma-separated files with one header row.  Field
// views point into an internal line buffer and are invalidated by the next
// call to next().  Handles CRLF endings and double-quoted fields; a ragged
// row raises DataError naming the file and line.
class CsvReader {
 public:
  explicit CsvReader(const std::filesystem::path& path);

  const std::vector<std::string>& header() const { return header_; }

  // Index of a required column; DataError if the header lacks it.
  std::size_t column(std::string_view name) const;
  std::optional<std::size_t> find_column(std::string_view name) const;

  bool next(std::vector<std::string_view>& fields);

  std::size_t line_number() const { return line_number_; }
  const std::filesystem::path& path() const { return path_; }

 private:
  bool read_line();
  void split_fields(std::vector<std::string_view>& fields);

  std::filesystem::path path_;
  std::ifstream stream_;
  std::string line_;
  std::string unquote_buffer_;
  std::vector<std::string> header_;
  std::size_t line_number_ = 0;
};

// Missing markers: OULAD uses "?" for absent values; empty cells also count.
bool csv_field_missing(std::string_view field);

// Strict integer / real parsers for CSV cells.  DataError on garbage.
long long parse_int_field(std::string_view field, const std::filesystem::path& file,
                          std::size_t line, std::string_view column);
double parse_real_field(std::string_view field, const std::filesystem::path& file,
                        std::size_t line, std::string_view column);

// Reader-bound conveniences that pull file and line from the reader's cursor.
std::int32_t parse_int_field(const CsvReader& reader, std::string_view field,
                             std::string_view column);
double parse_real_field(const CsvReader& reader, std::string_view field,
                        std::string_view column);

class CsvWriter {
 public:
  explicit CsvWriter(const std::filesystem::path& path);

  void write_row(const std::vector<std::string>& fields);

 private:
  std::ofstream stream_;
  std::filesystem::path path_;
};

}  // namespace leap
