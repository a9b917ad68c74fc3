#include "patchladder/elements.hpp"

#include <cmath>
#include <numbers>

#include "patchladder/error.hpp"

namespace patchladder {

namespace {

void require_positive_strip(double width, double height, double er) {
  if (!(width > 0.0)) throw Error(ErrorCode::NonPositiveDimension, "width");
  if (!(height > 0.0)) throw Error(ErrorCode::NonPositiveDimension, "height");
  if (!(er > 1.0)) throw Error(ErrorCode::NonPositiveDimension, "er", 0, "relative permittivity must exceed 1");
}

double eps_eff_common(double u, double er) {
  return (er + 1.0) / 2.0 + (er - 1.0) / 2.0 / std::sqrt(1.0 + 12.0 / u);
}

}  // namespace

double cap_eq_approx(const Cavity& cavity, const Substrate& substrate) {
  cavity.validate();
  const double w = cavity.width;
  const double d = cavity.length;
  const double h = cavity.thickness;
  return cavity.block_factor * kVacuumPermittivity * substrate.relative_permittivity() * w * h /
         (50.0 * d * d);
}

double cap_eq_full(const Cavity& cavity, const Substrate& substrate) {
  cavity.validate();
  const double w = cavity.width;
  const double d = cavity.length;
  const double h = cavity.thickness;
  const double num = 2.0 * d * (w + h) + 2.0 * h * w;
  const double logs = std::log(num / (2.0 * h * d)) + std::log(num / (2.0 * h * w));
  return w * kVacuumPermittivity * substrate.relative_permittivity() / (d * logs);
}

double ind_eq(const Cavity& cavity, const Substrate&) {
  cavity.validate();
  const double w = cavity.width;
  const double d = cavity.length;
  const double h = cavity.thickness;
  return kVacuumPermeability * d / (10.5 * w) *
         (d * std::log((w + d) / d) + w * std::log((w + d) * (w + d) / (h * w)));
}

double res_eq(double inductance, double capacitance, int n, double angular_frequency) {
  if (!(inductance > 0.0)) throw Error(ErrorCode::NonPositiveElement, "L");
  if (!(capacitance > 0.0)) throw Error(ErrorCode::NonPositiveElement, "C");
  if (n < 1) throw Error(ErrorCode::NonPositiveElement, "n");
  if (!(angular_frequency >= 0.0)) throw Error(ErrorCode::NonPositiveElement, "omega");
  const double lc = inductance * capacitance;
  return n / 10.0 * std::sqrt(inductance / capacitance) *
         std::abs(1.0 - lc * angular_frequency * angular_frequency);
}

double eps_eff_narrow(double width, double height, double er) {
  require_positive_strip(width, height, er);
  const double u = width / height;
  return eps_eff_common(u, er) + (er - 1.0) / 2.0 * 0.04 * (1.0 - u) * (1.0 - u);
}

double eps_eff_wide(double width, double height, double er) {
  require_positive_strip(width, height, er);
  return eps_eff_common(width / height, er);
}

double z0_narrow(double width, double height, double er) {
  const double e = eps_eff_narrow(width, height, er);
  const double u = width / height;
  return 60.0 / std::sqrt(e) * std::log(8.0 / u + 0.25 * u);
}

double z0_wide(double width, double height, double er) {
  const double e = eps_eff_wide(width, height, er);
  const double u = width / height;
  return 120.0 * std::numbers::pi /
         (std::sqrt(e) * (u + 1.393 + 2.0 / 3.0 * std::log(u + 1.444)));
}

double eps_eff(double width, double height, double er) {
  return microstrip(width, height, er).effective_permittivity;
}

double z0_microstrip(double width, double height, double er) {
  return microstrip(width, height, er).characteristic_impedance;
}

MicrostripResult microstrip(double width, double height, double er) {
  require_positive_strip(width, height, er);
  MicrostripResult r;
  r.width_to_height = width / height;
  if (r.width_to_height < 1.0) {
    r.branch = MicrostripBranch::narrow;
    r.effective_permittivity = eps_eff_narrow(width, height, er);
    r.characteristic_impedance = z0_narrow(width, height, er);
  } else {
    r.branch = MicrostripBranch::wide;
    r.effective_permittivity = eps_eff_wide(width, height, er);
    r.characteristic_impedance = z0_wide(width, height, er);
  }
  return r;
}

double half_wavelength(double frequency, double effective_permittivity) {
  if (!(frequency > 0.0)) throw Error(ErrorCode::NonPositiveFrequency, "f");
  if (!(effective_permittivity >= 1.0)) {
    throw Error(ErrorCode::NonPositiveDimension, "eps_eff", 0, "must be >= 1");
  }
  return kSpeedOfLight / (2.0 * frequency * std::sqrt(effective_permittivity));
}

std::vector<LumpedElements> extract_all(std::span<const Cavity> cavities,
                                        const Substrate& substrate,
                                        double evaluation_frequency) {
  if (cavities.empty()) throw Error(ErrorCode::NonPositiveDimension, "cavities", 0, "empty cavity list");
  if (!(evaluation_frequency > 0.0)) throw Error(ErrorCode::NonPositiveFrequency, "f");
  const double omega = 2.0 * std::numbers::pi * evaluation_frequency;
  std::vector<LumpedElements> rows;
  rows.reserve(cavities.size());
  for (const auto& cavity : cavities) {
    LumpedElements row;
    row.source_cavity_index = cavity.index;
    row.capacitance = cap_eq_approx(cavity, substrate);
    if (cavity.index != 0) {
      row.inductance = ind_eq(cavity, substrate);
      row.resistance = res_eq(*row.inductance, row.capacitance, cavity.block_factor, omega);
    }
    rows.push_back(row);
  }
  return rows;
}

}  // namespace patchladder
