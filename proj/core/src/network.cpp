#include "patchladder/network.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "patchladder/error.hpp"

namespace patchladder {

namespace {

constexpr Complex kJ{0.0, 1.0};

// Series impedance of the R, L, C present in a section.
Complex series_rlc_impedance(const Section& s, double omega) {
  Complex z = s.get_or(Param::R, 0.0);
  if (const auto l = s.get(Param::L)) z += kJ * omega * *l;
  if (const auto c = s.get(Param::C)) z += 1.0 / (kJ * omega * *c);
  return z;
}

Complex parallel_rlc_admittance(const Section& s, double omega) {
  Complex y = 0.0;
  if (const auto r = s.get(Param::R)) y += 1.0 / *r;
  if (const auto l = s.get(Param::L)) y += 1.0 / (kJ * omega * *l);
  if (const auto c = s.get(Param::C)) y += kJ * omega * *c;
  return y;
}

}  // namespace

void SweepGrid::validate() const {
  if (!(start > 0.0) || !(stop > start) || !std::isfinite(stop)) {
    throw Error(ErrorCode::InvalidGrid, "range", 0, "need 0 < start < stop");
  }
  if (points < 2) throw Error(ErrorCode::InvalidGrid, "points", 0, "need at least 2 points");
}

std::vector<double> SweepGrid::frequencies() const {
  validate();
  std::vector<double> f(static_cast<std::size_t>(points));
  const double step = (stop - start) / (points - 1);
  for (int i = 0; i < points; ++i) f[static_cast<std::size_t>(i)] = start + step * i;
  f.back() = stop;
  return f;
}

void SParameterTrace::validate() const {
  const auto n = frequencies.size();
  if (s11.size() != n) throw Error(ErrorCode::InvalidTrace, "s11", 0, "length mismatch");
  for (const auto* v : {&s21, &s12, &s22}) {
    if (!v->empty() && v->size() != n) throw Error(ErrorCode::InvalidTrace, "s21/s12/s22", 0, "length mismatch");
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!(frequencies[i] > 0.0) || !std::isfinite(frequencies[i])) {
      throw Error(ErrorCode::InvalidTrace, "frequency", 0, "frequencies must be positive");
    }
    if (i > 0 && !(frequencies[i] > frequencies[i - 1])) {
      throw Error(ErrorCode::InvalidTrace, "frequency", 0, "frequencies must be strictly increasing");
    }
  }
  if (!(z01 > 0.0) || !(z02 > 0.0)) throw Error(ErrorCode::InvalidTrace, "reference impedance");
}

std::vector<double> SParameterTrace::s11_db() const {
  std::vector<double> out;
  out.reserve(s11.size());
  for (const auto& s : s11) out.push_back(magnitude_db(s));
  return out;
}

double magnitude_db(Complex s) noexcept {
  const double mag = std::abs(s);
  if (mag == 0.0) return kDbFloor;
  return std::max(20.0 * std::log10(mag), kDbFloor);
}

AbcdMatrix section_abcd(const Section& section, double frequency) {
  if (!(frequency > 0.0)) throw Error(ErrorCode::NonPositiveFrequency, "f");
  const double omega = 2.0 * std::numbers::pi * frequency;
  switch (section.topology()) {
    case Topology::series_rlc:
      return AbcdMatrix::series(series_rlc_impedance(section, omega));
    case Topology::shunt_series_rlc:
      return AbcdMatrix::shunt(1.0 / series_rlc_impedance(section, omega));
    case Topology::shunt_parallel_rlc:
      return AbcdMatrix::shunt(parallel_rlc_admittance(section, omega));
    case Topology::series_rl_shunt_c: {
      const Complex z = section.get_or(Param::R, 0.0) + kJ * omega * *section.get(Param::L);
      const Complex y = kJ * omega * *section.get(Param::C);
      return AbcdMatrix::series(z) * AbcdMatrix::shunt(y);
    }
    case Topology::tline: {
      const double z0 = *section.get(Param::z0);
      const double theta = omega * std::sqrt(*section.get(Param::eps_eff)) *
                           *section.get(Param::len) / kSpeedOfLight;
      const double c = std::cos(theta);
      const double s = std::sin(theta);
      return {c, kJ * z0 * s, kJ * s / z0, c};
    }
  }
  throw Error(ErrorCode::UnknownTopology, std::string(to_string(section.topology())));
}

AbcdMatrix cascade(std::span<const AbcdMatrix> matrices) {
  if (matrices.empty()) throw Error(ErrorCode::EmptyCascade, "");
  AbcdMatrix m = matrices.front();
  for (std::size_t i = 1; i < matrices.size(); ++i) m = m * matrices[i];
  return m;
}

AbcdMatrix netlist_abcd(const Netlist& netlist, double frequency) {
  if (!(frequency > 0.0)) throw Error(ErrorCode::NonPositiveFrequency, "f");
  AbcdMatrix m;
  for (const auto& s : netlist.sections()) m = m * section_abcd(s, frequency);
  return m;
}

Complex input_impedance(const AbcdMatrix& m, Complex load) {
  const Complex den = m.c * load + m.d;
  if (den == 0.0 || !std::isfinite(std::abs(den))) throw Error(ErrorCode::SingularTermination, "");
  return (m.a * load + m.b) / den;
}

Complex reflection(Complex z_in, double z_ref) {
  if (!(z_ref > 0.0)) throw Error(ErrorCode::DegenerateDenominator, "z_ref", 0, "reference must be positive");
  const Complex den = z_in + z_ref;
  if (den == 0.0) throw Error(ErrorCode::DegenerateDenominator, "z_in + z_ref");
  return (z_in - z_ref) / den;
}

SParameters abcd_to_s(const AbcdMatrix& m, double z01, double z02) {
  return abcd_to_s(m, z01, z02, m.determinant());
}

SParameters abcd_to_s(const AbcdMatrix& m, double z01, double z02, Complex determinant) {
  if (!(z01 > 0.0) || !(z02 > 0.0)) {
    throw Error(ErrorCode::DegenerateDenominator, "reference", 0, "reference impedances must be positive");
  }
  const Complex az = m.a * z02;
  const Complex czz = m.c * z01 * z02;
  const Complex dz = m.d * z01;
  const Complex den = az + m.b + czz + dz;
  if (den == 0.0) throw Error(ErrorCode::DegenerateDenominator, "A*Z02 + B + C*Z01*Z02 + D*Z01");
  const double root = 2.0 * std::sqrt(z01 * z02);
  return {
      (az + m.b - czz - dz) / den,
      root * determinant / den,
      root / den,
      (-az + m.b - czz + dz) / den,
  };
}

double vswr(double s11_magnitude) {
  if (!(s11_magnitude >= 0.0) || !(s11_magnitude < 1.0)) {
    throw Error(ErrorCode::OutOfRange, "|s11|", 0, "VSWR needs 0 <= |s11| < 1");
  }
  return (1.0 + s11_magnitude) / (1.0 - s11_magnitude);
}

SParameterTrace sweep(const Netlist& netlist, const SweepGrid& grid) {
  SParameterTrace t;
  t.frequencies = grid.frequencies();
  t.z01 = netlist.input_port_impedance();
  t.z02 = netlist.output_port_impedance();
  const auto n = t.frequencies.size();
  t.s11.resize(n);
  t.s21.resize(n);
  t.s12.resize(n);
  t.s22.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    AbcdMatrix m;
    Complex det = 1.0;
    for (const auto& section : netlist.sections()) {
      const AbcdMatrix part = section_abcd(section, t.frequencies[i]);
      m = m * part;
      det *= part.determinant();
    }
    t.s11[i] = reflection(input_impedance(m, t.z02), t.z01);
    const SParameters s = abcd_to_s(m, t.z01, t.z02, det);
    t.s21[i] = s.s21;
    t.s12[i] = s.s12;
    t.s22[i] = s.s22;
  }
  return t;
}

}  // namespace patchladder
