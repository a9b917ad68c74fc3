#pragma once

#include <optional>
#include <span>
#include <vector>

#include "patchladder/geometry.hpp"

namespace patchladder {

/// R/L/C of one cavity. The feed block (cavity 0) carries a capacitance
/// only; its inductance and resistance are absent.
struct LumpedElements {
  double capacitance = 0.0;                // F
  std::optional<double> inductance;        // H
  std::optional<double> resistance;        // ohm
  int source_cavity_index = 0;

  friend bool operator==(const LumpedElements&, const LumpedElements&) = default;
};

enum class MicrostripBranch { narrow, wide };

struct MicrostripResult {
  double effective_permittivity = 1.0;
  double characteristic_impedance = 0.0;  // ohm
  double width_to_height = 0.0;
  MicrostripBranch branch = MicrostripBranch::wide;
};

// Capacitance of a block, approximate form n*e0*er*W*h/(50*d^2). The
// numeric value with lengths in meters is taken as farads.
double cap_eq_approx(const Cavity& cavity, const Substrate& substrate);

// Logarithmic (parallel-plate with fringing) form. Scale invariant in
// (W, d, h) as written, so it cannot carry units of farads; kept for study.
double cap_eq_full(const Cavity& cavity, const Substrate& substrate);

double ind_eq(const Cavity& cavity, const Substrate& substrate);

/// (n/10) * sqrt(L/C) * |1 - L*C*omega^2|
double res_eq(double inductance, double capacitance, int n, double angular_frequency);

// Hammerstad-style microstrip closed forms. Narrow strips (W/h < 1) carry
// the extra 0.04*(1 - W/h)^2 permittivity term and the logarithmic Z0.
double eps_eff_narrow(double width, double height, double relative_permittivity);
double eps_eff_wide(double width, double height, double relative_permittivity);
double z0_narrow(double width, double height, double relative_permittivity);
double z0_wide(double width, double height, double relative_permittivity);

double eps_eff(double width, double height, double relative_permittivity);
double z0_microstrip(double width, double height, double relative_permittivity);
MicrostripResult microstrip(double width, double height, double relative_permittivity);

/// Free-space-scaled half wavelength c / (2 f sqrt(eps_eff)).
double half_wavelength(double frequency, double effective_permittivity);

/// One row per cavity, in input order. Resistance uses omega = 2*pi*f at
/// `evaluation_frequency`.
std::vector<LumpedElements> extract_all(std::span<const Cavity> cavities,
                                        const Substrate& substrate,
                                        double evaluation_frequency = 2.5e9);

}  // namespace patchladder
