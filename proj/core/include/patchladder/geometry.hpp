#pragma once

#include <array>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "patchladder/units.hpp"

namespace patchladder {

/// Dielectric slab under the patch. Vacuum constants are fixed in units.hpp.
class Substrate {
 public:
  /// Throws Error(NonPositiveValue) unless er > 1 and thickness > 0.
  Substrate(double relative_permittivity, double thickness);

  double relative_permittivity() const noexcept { return er_; }
  double thickness() const noexcept { return thickness_; }
  static constexpr double vacuum_permittivity() noexcept { return kVacuumPermittivity; }
  static constexpr double vacuum_permeability() noexcept { return kVacuumPermeability; }

  friend bool operator==(const Substrate&, const Substrate&) = default;

 private:
  double er_;
  double thickness_;
};

/// One rectangular resonator block of the patch.
struct Cavity {
  int index = 0;
  double width = 0.0;      // m
  double length = 0.0;     // m
  double thickness = 0.0;  // m
  int block_factor = 1;

  /// Throws Error(NonPositiveDimension) on a non-positive length or n < 1.
  void validate() const;

  friend bool operator==(const Cavity&, const Cavity&) = default;
};

/// Names of every required geometry dimension, in table order.
inline constexpr std::array<std::string_view, 26> kDimensionNames{
    "L1", "L2", "L3", "L4", "L5", "L6", "Lt", "W1", "W2",
    "W3", "W4", "Wp", "We", "Wt", "a",  "b",  "c",  "d1",
    "e",  "f",  "g",  "i",  "j",  "k",  "Wa", "m"};

/// Physical description of the antenna. Every dimension is in meters.
struct AntennaGeometry {
  std::map<std::string, double, std::less<>> dimensions;
  Substrate substrate{4.4, 1.7e-3};
  std::vector<Cavity> cavities;

  double dimension(std::string_view name) const;
  /// Throws MissingDimension / NonPositiveValue / UnknownKey.
  void validate() const;

  friend bool operator==(const AntennaGeometry&, const AntennaGeometry&) = default;
};

AntennaGeometry canonical_geometry();

/// Six blocks from feed (0) to the widest patch section (5), n = 1 for all.
std::vector<Cavity> canonical_cavities();

/// Parses the `name = value unit` geometry format. Cavity lines override
/// entries of the canonical table by index (or append at the next index).
AntennaGeometry load_geometry(std::string_view text);
std::string serialize_geometry(const AntennaGeometry& geometry);

}  // namespace patchladder
