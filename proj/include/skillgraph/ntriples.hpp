#pragma once

// Line-oriented reader for the N-Triples subset used by classifier dumps:
// IRIs in angle brackets, blank nodes, quoted literals with an optional
// language tag or datatype, one triple per line.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "skillgraph/error.hpp"

namespace skillgraph::ntriples {

enum class TermKind { Iri, BlankNode, Literal };

struct Term {
  TermKind kind = TermKind::Iri;
  std::string value;     // unescaped IRI, blank label or lexical form
  std::string language;  // literals only, lowercase
  std::string datatype;  // literals only
};

struct Triple {
  Term subject;
  Term predicate;
  Term object;
};

namespace detail {

inline void append_utf8(std::string& out, std::uint32_t cp) {
  if (cp < 0x80) {
    out += static_cast<char>(cp);
  } else if (cp < 0x800) {
    out += static_cast<char>(0xC0 | (cp >> 6));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  } else if (cp < 0x10000) {
    out += static_cast<char>(0xE0 | (cp >> 12));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  } else {
    out += static_cast<char>(0xF0 | (cp >> 18));
    out += static_cast<char>(0x80 | ((cp >> 12) & 0x3F));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  }
}

class LineScanner {
 public:
  LineScanner(std::string_view line, std::size_t lineno)
      : s_(line), lineno_(lineno) {}

  void skip_ws() {
    while (pos_ < s_.size() && (s_[pos_] == ' ' || s_[pos_] == '\t')) ++pos_;
  }

  bool at_end() const { return pos_ >= s_.size(); }
  char peek() const { return at_end() ? '\0' : s_[pos_]; }

  [[noreturn]] void fail(const std::string& what) const {
    throw Error(ErrorKind::MalformedTriple,
                what + " (column " + std::to_string(pos_ + 1) + ")", lineno_);
  }

  Term term(bool allow_literal, bool allow_blank) {
    skip_ws();
    char c = peek();
    if (c == '<') return iri();
    if (c == '_' && allow_blank) return blank();
    if (c == '"' && allow_literal) return literal();
    fail(at_end() ? "unexpected end of line" : std::string("unexpected character '") + c + "'");
  }

  void expect_terminator() {
    skip_ws();
    if (peek() != '.') fail("missing terminating '.'");
    ++pos_;
    skip_ws();
    if (!at_end() && peek() != '#') fail("trailing characters after '.'");
  }

 private:
  Term iri() {
    ++pos_;  // '<'
    Term t;
    t.kind = TermKind::Iri;
    while (true) {
      if (at_end()) fail("unterminated IRI");
      char c = s_[pos_++];
      if (c == '>') break;
      if (c == ' ' || c == '<' || c == '"') fail("invalid character in IRI");
      if (c == '\\') {
        escape(t.value, /*iri=*/true);
        continue;
      }
      t.value += c;
    }
    if (t.value.empty()) fail("empty IRI");
    return t;
  }

  Term blank() {
    if (s_.substr(pos_, 2) != "_:") fail("malformed blank node");
    pos_ += 2;
    Term t;
    t.kind = TermKind::BlankNode;
    while (!at_end() && s_[pos_] != ' ' && s_[pos_] != '\t' && s_[pos_] != '.')
      t.value += s_[pos_++];
    if (t.value.empty()) fail("empty blank node label");
    return t;
  }

  Term literal() {
    ++pos_;  // opening quote
    Term t;
    t.kind = TermKind::Literal;
    while (true) {
      if (at_end()) fail("unterminated literal");
      char c = s_[pos_++];
      if (c == '"') break;
      if (c == '\\') {
        escape(t.value, /*iri=*/false);
        continue;
      }
      t.value += c;
    }
    if (peek() == '@') {
      ++pos_;
      while (!at_end()) {
        char c = s_[pos_];
        bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
                  (c >= '0' && c <= '9') || c == '-';
        if (!ok) break;
        t.language += static_cast<char>((c >= 'A' && c <= 'Z') ? c - 'A' + 'a' : c);
        ++pos_;
      }
      if (t.language.empty()) fail("empty language tag");
    } else if (s_.substr(pos_, 2) == "^^") {
      pos_ += 2;
      if (peek() != '<') fail("datatype must be an IRI");
      t.datatype = iri().value;
    }
    return t;
  }

  void escape(std::string& out, bool iri) {
    if (at_end()) fail("dangling escape");
    char c = s_[pos_++];
    if (c == 'u' || c == 'U') {
      std::size_t width = c == 'u' ? 4 : 8;
      if (pos_ + width > s_.size()) fail("truncated unicode escape");
      std::uint32_t cp = 0;
      for (std::size_t i = 0; i < width; ++i) {
        char h = s_[pos_++];
        cp <<= 4;
        if (h >= '0' && h <= '9') cp |= static_cast<std::uint32_t>(h - '0');
        else if (h >= 'a' && h <= 'f') cp |= static_cast<std::uint32_t>(h - 'a' + 10);
        else if (h >= 'A' && h <= 'F') cp |= static_cast<std::uint32_t>(h - 'A' + 10);
        else fail("bad hex digit in unicode escape");
      }
      if (cp > 0x10FFFF) fail("code point out of range");
      append_utf8(out, cp);
      return;
    }
    if (iri) fail("only unicode escapes are allowed in IRIs");
    switch (c) {
      case 't': out += '\t'; break;
      case 'b': out += '\b'; break;
      case 'n': out += '\n'; break;
      case 'r': out += '\r'; break;
      case 'f': out += '\f'; break;
      case '"': out += '"'; break;
      case '\'': out += '\''; break;
      case '\\': out += '\\'; break;
      default: fail(std::string("unknown escape '\\") + c + "'");
    }
  }

  std::string_view s_;
  std::size_t pos_ = 0;
  std::size_t lineno_;
};

}  // namespace detail

/// Parses one line. Returns nullopt for blank and `#` comment lines.
/// Throws Error(MalformedTriple) with the line number otherwise.
inline std::optional<Triple> parse_line(std::string_view line, std::size_t lineno) {
  if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
  std::size_t first = line.find_first_not_of(" \t");
  if (first == std::string_view::npos || line[first] == '#') return std::nullopt;

  detail::LineScanner scan(line, lineno);
  Triple t;
  t.subject = scan.term(/*allow_literal=*/false, /*allow_blank=*/true);
  t.predicate = scan.term(false, false);
  t.object = scan.term(true, true);
  scan.expect_terminator();
  return t;
}

/// N-Triples escaping for literal lexical forms.
inline std::string escape_literal(std::string_view s) {
  std::string out;
  out.reserve(s.size() + 2);
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace skillgraph::ntriples
