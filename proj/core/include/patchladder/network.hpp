#pragma once

#include <complex>
#include <span>
#include <vector>

#include "patchladder/netlist.hpp"

namespace patchladder {

using Complex = std::complex<double>;

/// Chain (transmission) matrix of a two-port: [V1; I1] = [a b; c d] [V2; I2].
struct AbcdMatrix {
  Complex a{1.0, 0.0};
  Complex b{0.0, 0.0};  // ohm
  Complex c{0.0, 0.0};  // S
  Complex d{1.0, 0.0};

  static AbcdMatrix identity() noexcept { return {}; }
  static AbcdMatrix series(Complex impedance) noexcept { return {1.0, impedance, 0.0, 1.0}; }
  static AbcdMatrix shunt(Complex admittance) noexcept { return {1.0, 0.0, admittance, 1.0}; }

  Complex determinant() const noexcept { return a * d - b * c; }

  friend AbcdMatrix operator*(const AbcdMatrix& l, const AbcdMatrix& r) noexcept {
    return {l.a * r.a + l.b * r.c, l.a * r.b + l.b * r.d,
            l.c * r.a + l.d * r.c, l.c * r.b + l.d * r.d};
  }
};

struct SParameters {
  Complex s11, s12, s21, s22;
};

/// Linearly spaced frequency grid, both ends included.
struct SweepGrid {
  double start = 0.0;  // Hz
  double stop = 0.0;   // Hz
  int points = 2;

  /// Throws Error(InvalidGrid) unless 0 < start < stop and points >= 2.
  void validate() const;
  std::vector<double> frequencies() const;
};

/// Sampled reflection (and optionally full two-port) data. s21/s12/s22 are
/// either empty or the same length as s11.
struct SParameterTrace {
  std::vector<double> frequencies;  // Hz, strictly increasing
  std::vector<Complex> s11;
  std::vector<Complex> s21;
  std::vector<Complex> s12;
  std::vector<Complex> s22;
  double z01 = 50.0;
  double z02 = 50.0;

  std::size_t size() const noexcept { return frequencies.size(); }
  bool has_two_port() const noexcept { return !s21.empty(); }
  /// Throws Error(InvalidTrace) on length mismatch or bad frequency axis.
  void validate() const;
  std::vector<double> s11_db() const;
};

/// dB of a reflection magnitude; exact zero clamps to -300 dB.
inline constexpr double kDbFloor = -300.0;
double magnitude_db(Complex s) noexcept;

AbcdMatrix section_abcd(const Section& section, double frequency);
AbcdMatrix cascade(std::span<const AbcdMatrix> matrices);
AbcdMatrix netlist_abcd(const Netlist& netlist, double frequency);

Complex input_impedance(const AbcdMatrix& m, Complex load);
Complex reflection(Complex z_in, double z_ref);
SParameters abcd_to_s(const AbcdMatrix& m, double z01, double z02);
/// Same conversion with det(m) supplied by the caller, e.g. the product of
/// the per-section determinants of a cascade.
SParameters abcd_to_s(const AbcdMatrix& m, double z01, double z02, Complex determinant);
double vswr(double s11_magnitude);

/// s11 from the terminated-ladder path, s21/s12/s22 from abcd_to_s.
/// Output is in grid order.
SParameterTrace sweep(const Netlist& netlist, const SweepGrid& grid);

}  // namespace patchladder
