#include "deadzone/angle.hpp"

#include <charconv>
#include <string>

#include "deadzone/errors.hpp"

namespace deadzone {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

double parse_number(std::string_view s, std::string_view whole) {
  s = trim(s);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) {
    throw ParseError("malformed angle '" + std::string(whole) + "'");
  }
  return v;
}

}  // namespace

double parse_angle(std::string_view text) {
  const std::string_view whole = text;
  text = trim(text);
  auto pos = text.find("pi");
  if (pos == std::string_view::npos) return parse_number(text, whole);

  std::string_view coef = trim(text.substr(0, pos));
  std::string_view rest = trim(text.substr(pos + 2));
  if (!coef.empty() && coef.back() == '*') coef = trim(coef.substr(0, coef.size() - 1));

  double c = 1.0;
  if (coef == "-") {
    c = -1.0;
  } else if (coef == "+" || coef.empty()) {
    c = 1.0;
  } else {
    c = parse_number(coef, whole);
  }

  double den = 1.0;
  if (!rest.empty()) {
    if (rest.front() != '/') throw ParseError("malformed angle '" + std::string(whole) + "'");
    den = parse_number(rest.substr(1), whole);
    if (den == 0.0) throw ParseError("zero denominator in angle '" + std::string(whole) + "'");
  }
  return c * kPi / den;
}

}  // namespace deadzone
