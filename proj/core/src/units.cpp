#include "patchladder/units.hpp"

#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <system_error>

#include "patchladder/error.hpp"

namespace patchladder {

namespace {

struct Suffix {
  char symbol;
  int exponent;
};

constexpr std::array<Suffix, 8> kSuffixes{{
    {'f', -15}, {'p', -12}, {'n', -9}, {'u', -6},
    {'m', -3}, {'k', 3}, {'M', 6}, {'G', 9},
}};

// Decimal digits and exponent of the shortest round-trip representation:
// value == 0.d1d2d3... * 10^(exponent + 1), i.e. d1.d2d3... * 10^exponent.
struct Decimal {
  bool negative = false;
  std::string digits;
  int exponent = 0;
};

Decimal decompose(double value) {
  std::array<char, 64> buf{};
  auto res = std::to_chars(buf.data(), buf.data() + buf.size(), value,
                           std::chars_format::scientific);
  std::string_view s(buf.data(), static_cast<std::size_t>(res.ptr - buf.data()));
  Decimal d;
  if (!s.empty() && s.front() == '-') {
    d.negative = true;
    s.remove_prefix(1);
  }
  const auto e = s.find('e');
  for (char c : s.substr(0, e)) {
    if (c != '.') d.digits.push_back(c);
  }
  std::from_chars(s.data() + e + 1 + (s[e + 1] == '+' ? 1 : 0), s.data() + s.size(),
                  d.exponent);
  return d;
}

// Renders digits with the decimal point after `int_digits` digits.
std::string place_point(const std::string& digits, int int_digits) {
  std::string out;
  if (int_digits <= 0) {
    out = "0.";
    out.append(static_cast<std::size_t>(-int_digits), '0');
    out += digits;
    return out;
  }
  if (static_cast<std::size_t>(int_digits) >= digits.size()) {
    out = digits;
    out.append(static_cast<std::size_t>(int_digits) - digits.size(), '0');
    return out;
  }
  out = digits.substr(0, static_cast<std::size_t>(int_digits));
  out += '.';
  out += digits.substr(static_cast<std::size_t>(int_digits));
  return out;
}

int floor_div3(int e) { return e >= 0 ? (e / 3) * 3 : -(((-e) + 2) / 3) * 3; }

}  // namespace

double parse_si(std::string_view text) {
  text = text::trim(text);
  if (text.empty()) throw Error(ErrorCode::BadValueSuffix, std::string(text), 0, "empty value");
  std::string number(text);
  const char last = text.back();
  if (std::isalpha(static_cast<unsigned char>(last)) && last != 'e' && last != 'E') {
    const Suffix* found = nullptr;
    for (const auto& s : kSuffixes) {
      if (s.symbol == last) found = &s;
    }
    if (found == nullptr) throw Error(ErrorCode::BadValueSuffix, std::string(text));
    number.pop_back();
    if (number.find_first_of("eE") != std::string::npos) {
      throw Error(ErrorCode::BadValueSuffix, std::string(text), 0,
                  "exponent and suffix are exclusive");
    }
    number += "e" + std::to_string(found->exponent);
  }
  double value = 0.0;
  if (!text::parse_double(number, value)) throw Error(ErrorCode::BadValueSuffix, std::string(text));
  return value;
}

std::string format_si(double value) {
  if (value == 0.0 || !std::isfinite(value)) return format_shortest(value);
  const Decimal d = decompose(value);
  const int group = floor_div3(d.exponent);
  std::string out = d.negative ? "-" : "";
  if (group == 0) {
    out += place_point(d.digits, d.exponent + 1);
    return out;
  }
  for (const auto& s : kSuffixes) {
    if (s.exponent == group) {
      out += place_point(d.digits, d.exponent - group + 1);
      out += s.symbol;
      return out;
    }
  }
  return format_shortest(value);
}

std::string format_shortest(double value) {
  std::array<char, 64> buf{};
  auto res = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  return std::string(buf.data(), res.ptr);
}

std::string format_general(double value, int significant_digits) {
  std::array<char, 64> buf{};
  const int n = std::snprintf(buf.data(), buf.size(), "%.*g", significant_digits, value);
  return std::string(buf.data(), static_cast<std::size_t>(n));
}

std::string format_scientific(double value, int significant_digits) {
  std::array<char, 64> buf{};
  const int n = std::snprintf(buf.data(), buf.size(), "%.*e", significant_digits - 1, value);
  return std::string(buf.data(), static_cast<std::size_t>(n));
}

namespace text {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::string_view strip_comment(std::string_view s, char marker) {
  const auto pos = s.find(marker);
  return pos == std::string_view::npos ? s : s.substr(0, pos);
}

bool parse_double(std::string_view s, double& out) {
  s = trim(s);
  if (s.empty()) return false;
  if (s.front() == '+') s.remove_prefix(1);
  const auto res = std::from_chars(s.data(), s.data() + s.size(), out);
  return res.ec == std::errc{} && res.ptr == s.data() + s.size() && std::isfinite(out);
}

}  // namespace text

}  // namespace patchladder
