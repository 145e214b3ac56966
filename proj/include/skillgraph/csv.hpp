#pragma once

#include <cstddef>
#include <istream>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "skillgraph/error.hpp"

namespace skillgraph::csv {

using Row = std::vector<std::string>;

/// Comma-delimited reader with double-quote escaping. Quoted fields may span
/// lines. CRLF and LF are both accepted.
class Reader {
 public:
  explicit Reader(std::istream& in) : in_(in) {}

  /// Reads the next record. Returns false at end of input. Blank lines are
  /// skipped.
  bool next(Row& row) {
    row.clear();
    std::string line;
    while (true) {
      if (!std::getline(in_, line)) return false;
      ++line_;
      record_line_ = line_;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (!line.empty()) break;
    }

    std::string field;
    bool quoted = false;
    bool was_quoted = false;
    std::size_t i = 0;
    while (true) {
      if (i == line.size()) {
        if (quoted) {
          // Embedded newline inside a quoted field.
          std::string more;
          if (!std::getline(in_, more))
            throw Error(ErrorKind::ParseFailure, "unterminated quoted field",
                        record_line_);
          ++line_;
          if (!more.empty() && more.back() == '\r') more.pop_back();
          field += '\n';
          line = std::move(more);
          i = 0;
          continue;
        }
        row.push_back(std::move(field));
        return true;
      }
      char c = line[i++];
      if (quoted) {
        if (c == '"') {
          if (i < line.size() && line[i] == '"') {
            field += '"';
            ++i;
          } else {
            quoted = false;
          }
        } else {
          field += c;
        }
      } else if (c == ',') {
        row.push_back(std::move(field));
        field.clear();
        was_quoted = false;
      } else if (c == '"' && field.empty() && !was_quoted) {
        quoted = true;
        was_quoted = true;
      } else {
        field += c;
      }
    }
  }

  /// 1-based line on which the most recent record started.
  std::size_t line() const noexcept { return record_line_; }

 private:
  std::istream& in_;
  std::size_t line_ = 0;
  std::size_t record_line_ = 0;
};

/// Resolves named columns from a header row.
class Header {
 public:
  explicit Header(const Row& header) {
    for (std::size_t i = 0; i < header.size(); ++i) {
      std::string_view name = header[i];
      // UTF-8 byte order mark on the first column.
      if (i == 0 && name.starts_with("\xEF\xBB\xBF")) name.remove_prefix(3);
      index_.emplace(std::string(name), i);
    }
  }

  std::optional<std::size_t> find(std::string_view name) const {
    auto it = index_.find(std::string(name));
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  std::size_t require(std::string_view name) const {
    if (auto idx = find(name)) return *idx;
    throw Error(ErrorKind::ParseFailure,
                "missing required column '" + std::string(name) + "'", 1);
  }

 private:
  std::unordered_map<std::string, std::size_t> index_;
};

inline void write_field(std::ostream& out, std::string_view field) {
  bool needs_quotes = field.find_first_of(",\"\r\n") != std::string_view::npos;
  if (!needs_quotes) {
    out << field;
    return;
  }
  out << '"';
  for (char c : field) {
    if (c == '"') out << '"';
    out << c;
  }
  out << '"';
}

/// Writes one LF-terminated record.
inline void write_row(std::ostream& out, std::initializer_list<std::string_view> fields) {
  bool first = true;
  for (auto f : fields) {
    if (!first) out << ',';
    first = false;
    write_field(out, f);
  }
  out << '\n';
}

inline void write_row(std::ostream& out, const Row& fields) {
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i != 0) out << ',';
    write_field(out, fields[i]);
  }
  out << '\n';
}

}  // namespace skillgraph::csv
