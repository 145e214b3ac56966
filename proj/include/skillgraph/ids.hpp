#pragma once

#include <compare>
#include <cstddef>
#include <functional>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>

namespace skillgraph {

/// A string wrapped in a tag type. Occupation ids, skill ids and the
/// classifier codes are distinct types. Construction does not validate; the
/// code types below go through their `parse` factories instead.
template <typename Tag>
class StrongString {
 public:
  StrongString() = default;
  explicit StrongString(std::string value) : value_(std::move(value)) {}

  const std::string& str() const noexcept { return value_; }
  bool empty() const noexcept { return value_.empty(); }

  friend auto operator<=>(const StrongString&, const StrongString&) = default;
  friend bool operator==(const StrongString&, const StrongString&) = default;

  friend std::ostream& operator<<(std::ostream& os, const StrongString& s) {
    return os << s.value_;
  }

 private:
  std::string value_;
};

struct OccupationTag {};
struct SkillTag {};
struct IscoTag {};
struct SocTag {};

using OccupationId = StrongString<OccupationTag>;
using SkillId = StrongString<SkillTag>;
using Isco4Code = StrongString<IscoTag>;
using SocCode = StrongString<SocTag>;

namespace detail {

constexpr bool is_digit(char c) noexcept { return c >= '0' && c <= '9'; }

constexpr std::string_view trim(std::string_view s) noexcept {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
    s.remove_suffix(1);
  return s;
}

}  // namespace detail

/// `^[0-9]{4}$`
inline std::optional<Isco4Code> parse_isco4(std::string_view token) {
  token = detail::trim(token);
  if (token.size() != 4) return std::nullopt;
  for (char c : token)
    if (!detail::is_digit(c)) return std::nullopt;
  return Isco4Code(std::string(token));
}

/// ISCO major group (level 1): the first digit.
inline char isco_major_group(const Isco4Code& code) { return code.str().front(); }

/// Strips an O*NET-SOC detail suffix (".00", ".01", ...) and surrounding
/// blanks. Idempotent. Does not validate.
inline std::string normalize_soc(std::string_view token) {
  token = detail::trim(token);
  if (auto dot = token.find('.'); dot != std::string_view::npos)
    token = token.substr(0, dot);
  return std::string(token);
}

/// Normalizes, then checks `^[0-9]{2}-[0-9]{4}$`.
inline std::optional<SocCode> parse_soc(std::string_view token) {
  std::string s = normalize_soc(token);
  if (s.size() != 7 || s[2] != '-') return std::nullopt;
  for (std::size_t i = 0; i < s.size(); ++i)
    if (i != 2 && !detail::is_digit(s[i])) return std::nullopt;
  return SocCode(std::move(s));
}

}  // namespace skillgraph

template <typename Tag>
struct std::hash<skillgraph::StrongString<Tag>> {
  std::size_t operator()(const skillgraph::StrongString<Tag>& s) const noexcept {
    return std::hash<std::string>{}(s.str());
  }
};
