#pragma once

#include <numbers>
#include <string>
#include <string_view>

namespace patchladder {

inline constexpr double kSpeedOfLight = 299'792'458.0;           // m/s
inline constexpr double kVacuumPermittivity = 8.85e-12;         // F/m, as used in the element formulas
inline constexpr double kVacuumPermeability = 4.0e-7 * std::numbers::pi;  // H/m

enum class UnitKind { ohms, henries, farads, meters, dimensionless };

struct ElementValue {
  double magnitude = 0.0;
  UnitKind unit = UnitKind::dimensionless;

  friend bool operator==(const ElementValue&, const ElementValue&) = default;
};

/// Parses "2.39n", "50", "4.2p", "1e-3". Suffixes are case-sensitive:
/// f p n u m k M G. The suffix is substituted as a decimal exponent before
/// conversion, so "2.39n" yields exactly the double nearest 2.39e-9.
/// Throws Error(BadValueSuffix) on an unknown suffix or unparsable number.
double parse_si(std::string_view text);

/// Engineering notation with the shortest mantissa that round-trips through
/// parse_si, 1 <= |mantissa| < 1000. Values outside the suffix range
/// (or zero) are written without a suffix.
std::string format_si(double value);

/// Shortest decimal text that round-trips to the same double.
std::string format_shortest(double value);

/// printf-style "%.*g" / "%.*e" without locale surprises.
std::string format_general(double value, int significant_digits);
std::string format_scientific(double value, int significant_digits);

namespace text {

std::string_view trim(std::string_view s);
/// Strips a trailing comment starting at `marker`.
std::string_view strip_comment(std::string_view s, char marker);
/// Parses a whole token as a finite double; false on trailing garbage.
bool parse_double(std::string_view s, double& out);

}  // namespace text

}  // namespace patchladder
