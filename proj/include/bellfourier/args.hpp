#pragma once

#include <cctype>
#include <stdexcept>
#include <string>
#include <vector>

#include "bellfourier/core.hpp"

namespace bellfourier::args {

namespace detail {

inline std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

inline double parse_number(const std::string& s, const std::string& context) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw std::invalid_argument("cannot parse angle \"" + context + "\"");
  }
}

}  // namespace detail

/// Accepts raw radians ("0.3927") or multiples of pi ("0.125pi", "pi/8",
/// "-pi/4", "3pi/8").
inline double parse_angle(const std::string& text) {
  const std::string s = detail::trim(text);
  if (s.empty()) throw std::invalid_argument("empty angle");
  const auto p = s.find("pi");
  double value;
  if (p == std::string::npos) {
    value = detail::parse_number(s, text);
  } else {
    std::string coef = s.substr(0, p);
    if (!coef.empty() && coef.back() == '*') coef.pop_back();
    double factor = 1.0;
    if (coef == "-") factor = -1.0;
    else if (coef == "+") factor = 1.0;
    else if (!coef.empty()) factor = detail::parse_number(coef, text);
    const std::string rest = s.substr(p + 2);
    double denom = 1.0;
    if (!rest.empty()) {
      if (rest[0] != '/') throw std::invalid_argument("cannot parse angle \"" + text + "\"");
      denom = detail::parse_number(rest.substr(1), text);
      if (denom == 0.0) throw std::invalid_argument("zero denominator in angle \"" + text + "\"");
    }
    value = factor * pi / denom;
  }
  if (!std::isfinite(value)) throw std::invalid_argument("angle \"" + text + "\" is not finite");
  return value;
}

inline std::vector<double> parse_angle_list(const std::string& text) {
  std::vector<double> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto comma = text.find(',', start);
    const auto piece = text.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
    out.push_back(parse_angle(piece));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

/// One grid axis: "uN" for N uniform points k*pi/N on [0, pi), else a comma
/// list of angles.
inline std::vector<double> parse_axis(const std::string& text) {
  const std::string s = detail::trim(text);
  if (s.size() > 1 && s[0] == 'u' && std::isdigit(static_cast<unsigned char>(s[1]))) {
    std::size_t used = 0;
    long n = 0;
    try {
      n = std::stol(s.substr(1), &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != s.size() - 1 || n < 1 || n > 1'000'000) {
      throw std::invalid_argument("bad uniform grid \"" + text + "\"");
    }
    std::vector<double> out;
    for (long k = 0; k < n; ++k) out.push_back(k * pi / n);
    return out;
  }
  return parse_angle_list(s);
}

struct Grid {
  std::vector<double> alphas;
  std::vector<double> betas;
};

/// "ALPHAS:BETAS"; a single axis without ':' is used for both.
inline Grid parse_grid(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) {
    auto axis = parse_axis(text);
    return {axis, axis};
  }
  return {parse_axis(text.substr(0, colon)), parse_axis(text.substr(colon + 1))};
}

}  // namespace bellfourier::args
