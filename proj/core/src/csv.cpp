#include "leap/csv.hpp"

#include <algorithm>
#include <charconv>
#include <limits>

#include "leap/error.hpp"

namespace leap {

namespace {

std::string location(const std::filesystem::path& file, std::size_t line) {
  return file.filename().string() + ":" + std::to_string(line);
}

}  // namespace

CsvReader::CsvReader(const std::filesystem::path& path) : path_(path), stream_(path) {
  if (!stream_) {
    throw DataError("missing or unreadable file: " + path.string());
  }
  if (!read_line()) {
    throw DataError("empty file (no header row): " + path.string());
  }
  std::vector<std::string_view> fields;
  split_fields(fields);
  header_.reserve(fields.size());
  for (const auto f : fields) header_.emplace_back(f);
}

std::size_t CsvReader::column(std::string_view name) const {
  const auto idx = find_column(name);
  if (!idx) {
    throw DataError(path_.filename().string() + ": header lacks required column '" +
                    std::string(name) + "'");
  }
  return *idx;
}

std::optional<std::size_t> CsvReader::find_column(std::string_view name) const {
  for (std::size_t i = 0; i < header_.size(); ++i) {
    if (header_[i] == name) return i;
  }
  return std::nullopt;
}

bool CsvReader::read_line() {
  if (!std::getline(stream_, line_)) return false;
  ++line_number_;
  if (!line_.empty() && line_.back() == '\r') line_.pop_back();
  return true;
}

void CsvReader::split_fields(std::vector<std::string_view>& fields) {
  fields.clear();
  unquote_buffer_.clear();
  // Views may point into the side buffer, so it must never reallocate while
  // a line is being split; unescaped content is never longer than the line.
  unquote_buffer_.reserve(line_.size());
  const char* data = line_.data();
  const std::size_t n = line_.size();
  std::size_t i = 0;
  std::size_t field_start = 0;
  while (true) {
    if (i < n && data[i] == '"') {
      // Quoted field: copy unescaped content into the side buffer and point
      // the view there.  Rare in this corpus, so the copy is acceptable.
      const std::size_t buf_start = unquote_buffer_.size();
      ++i;
      while (i < n) {
        if (data[i] == '"') {
          if (i + 1 < n && data[i + 1] == '"') {
            unquote_buffer_.push_back('"');
            i += 2;
          } else {
            ++i;
            break;
          }
        } else {
          unquote_buffer_.push_back(data[i]);
          ++i;
        }
      }
      fields.emplace_back(unquote_buffer_.data() + buf_start,
                          unquote_buffer_.size() - buf_start);
      if (i < n && data[i] == ',') {
        ++i;
        field_start = i;
        continue;
      }
      break;
    }
    const std::size_t comma = line_.find(',', i);
    if (comma == std::string::npos) {
      fields.emplace_back(data + field_start, n - field_start);
      break;
    }
    fields.emplace_back(data + field_start, comma - field_start);
    i = comma + 1;
    field_start = i;
  }
}

bool CsvReader::next(std::vector<std::string_view>& fields) {
  while (read_line()) {
    if (line_.empty()) continue;  // tolerate a trailing blank line
    split_fields(fields);
    if (fields.size() != header_.size()) {
      throw DataError(location(path_, line_number_) + ": expected " +
                      std::to_string(header_.size()) + " columns, got " +
                      std::to_string(fields.size()));
    }
    return true;
  }
  return false;
}

bool csv_field_missing(std::string_view field) {
  return field.empty() || field == "?";
}

long long parse_int_field(std::string_view field, const std::filesystem::path& file,
                          std::size_t line, std::string_view column) {
  long long value = 0;
  const char* begin = field.data();
  const char* end = begin + field.size();
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc{} || ptr != end) {
    throw DataError(location(file, line) + ": column '" + std::string(column) +
                    "' is not an integer: '" + std::string(field) + "'");
  }
  return value;
}

double parse_real_field(std::string_view field, const std::filesystem::path& file,
                        std::size_t line, std::string_view column) {
  double value = 0.0;
  const char* begin = field.data();
  const char* end = begin + field.size();
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc{} || ptr != end) {
    throw DataError(location(file, line) + ": column '" + std::string(column) +
                    "' is not a number: '" + std::string(field) + "'");
  }
  return value;
}

std::int32_t parse_int_field(const CsvReader& reader, std::string_view field,
                             std::string_view column) {
  const long long value = parse_int_field(field, reader.path(), reader.line_number(), column);
  if (value < std::numeric_limits<std::int32_t>::min() ||
      value > std::numeric_limits<std::int32_t>::max()) {
    throw DataError(location(reader.path(), reader.line_number()) + ": column '" +
                    std::string(column) + "' out of range: " + std::to_string(value));
  }
  return static_cast<std::int32_t>(value);
}

double parse_real_field(const CsvReader& reader, std::string_view field,
                        std::string_view column) {
  return parse_real_field(field, reader.path(), reader.line_number(), column);
}

CsvWriter::CsvWriter(const std::filesystem::path& path) : stream_(path), path_(path) {
  if (!stream_) {
    throw DataError("cannot open for writing: " + path.string());
  }
}

void CsvWriter::write_row(const std::vector<std::string>& fields) {
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i > 0) stream_ << ',';
    const std::string& f = fields[i];
    if (f.find_first_of(",\"\n") != std::string::npos) {
      stream_ << '"';
      for (const char c : f) {
        if (c == '"') stream_ << '"';
        stream_ << c;
      }
      stream_ << '"';
    } else {
      stream_ << f;
    }
  }
  stream_ << '\n';
  if (!stream_) {
    throw DataError("write failed: " + path_.string());
  }
}

}  // namespace leap
