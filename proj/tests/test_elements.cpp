#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "patchladder/elements.hpp"
#include "patchladder/error.hpp"

using namespace patchladder;

namespace {

const Substrate kFr4{4.4, 1.7e-3};

Cavity block(double w_mm, double d_mm, int n = 1) { return {1, w_mm * 1e-3, d_mm * 1e-3, 1.7e-3, n}; }

double rel(double a, double b) { return std::abs(a / b - 1.0); }

}  // namespace

// Expected values below were evaluated independently (double-precision
// Python, same closed forms) and frozen.

TEST_CASE("approximate capacitance") {
  CHECK(rel(cap_eq_approx(block(3.2, 60), kFr4), 1.1768533e-15) < 1e-6);
  CHECK(rel(cap_eq_approx(block(18, 7), kFr4), 4.8635265e-13) < 1e-6);
  // Deviation from the published element table, n = 1.
  CHECK(cap_eq_approx(block(3.2, 60), kFr4) / 0.0014e-12 - 1.0 == doctest::Approx(-0.1594).epsilon(1e-3));
  CHECK(cap_eq_approx(block(18, 7), kFr4) / 0.417e-12 - 1.0 == doctest::Approx(0.1663).epsilon(1e-3));

  const double base = cap_eq_approx(block(18, 7), kFr4);
  CHECK(rel(cap_eq_approx(block(36, 7), kFr4), 2.0 * base) < 1e-14);
  CHECK(rel(cap_eq_approx(block(18, 14), kFr4), base / 4.0) < 1e-14);
  CHECK(rel(cap_eq_approx(block(18, 7, 3), kFr4), 3.0 * base) < 1e-14);
  Cavity thick = block(18, 7);
  thick.thickness *= 2.0;
  CHECK(rel(cap_eq_approx(thick, kFr4), 2.0 * base) < 1e-14);
}

TEST_CASE("logarithmic capacitance form") {
  CHECK(rel(cap_eq_full(block(18, 7), kFr4), 2.2985255e-11) < 1e-6);
  Cavity c = block(18, 7);
  const double base = cap_eq_full(c, kFr4);
  for (double s : {0.5, 3.0, 1000.0}) {
    Cavity scaled{c.index, c.width * s, c.length * s, c.thickness * s, 1};
    CHECK(rel(cap_eq_full(scaled, kFr4), base) < 1e-12);
  }
  for (double w : {0.1, 1.0, 50.0}) {
    for (double d : {0.2, 7.0, 90.0}) CHECK(cap_eq_full(block(w, d), kFr4) > 0.0);
  }
}

TEST_CASE("inductance") {
  CHECK(rel(ind_eq(block(27, 7.5), kFr4), 3.3025841e-9) < 1e-6);
  CHECK(rel(ind_eq(block(51, 10.5), kFr4), 5.2019130e-9) < 1e-6);
  CHECK(rel(ind_eq(block(62, 24), kFr4), 1.3629072e-8) < 1e-6);
  CHECK(rel(ind_eq(block(27, 7.5), kFr4), 3.28e-9) < 0.01);
  CHECK(rel(ind_eq(block(51, 10.5), kFr4), 5.15e-9) < 0.011);
}

TEST_CASE("element formulas reject degenerate blocks") {
  for (auto bad : {block(0, 7), block(18, -1), block(18, 7, 0)}) {
    CHECK_THROWS_AS(cap_eq_approx(bad, kFr4), Error);
    CHECK_THROWS_AS(cap_eq_full(bad, kFr4), Error);
    CHECK_THROWS_AS(ind_eq(bad, kFr4), Error);
  }
  try {
    ind_eq(block(0, 7), kFr4);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NonPositiveDimension);
  }
}

TEST_CASE("resistance from the resonance bracket") {
  const double L = 2.39e-9;
  const double C = 0.417e-12;
  const double r0 = 0.1 * std::sqrt(L / C);
  CHECK(res_eq(L, C, 1, 1.0 / std::sqrt(L * C)) <= 1e-14 * r0);
  CHECK(res_eq(L, C, 1, 0.0) == doctest::Approx(7.5706).epsilon(1e-4));
  CHECK(res_eq(L, C, 1, 2.0 * std::numbers::pi * 3.786454e9) == doctest::Approx(3.30).epsilon(1e-4));
  for (int n : {2, 5}) {
    CHECK(res_eq(L, C, n, 1e9) == doctest::Approx(n * res_eq(L, C, 1, 1e9)).epsilon(1e-14));
  }
  CHECK_THROWS_AS(res_eq(0.0, C, 1, 1.0), Error);
  CHECK_THROWS_AS(res_eq(L, -C, 1, 1.0), Error);
  CHECK_THROWS_AS(res_eq(L, C, 0, 1.0), Error);
  CHECK_THROWS_AS(res_eq(L, C, 1, -1.0), Error);
}

TEST_CASE("microstrip closed forms") {
  const double h = 1.7e-3;
  CHECK(eps_eff(62e-3, h, 4.4) == doctest::Approx(4.174624).epsilon(1e-6));
  CHECK(z0_microstrip(62e-3, h, 4.4) == doctest::Approx(4.579900).epsilon(1e-6));
  CHECK(eps_eff(3.2e-3, h, 4.4) == doctest::Approx(3.325991).epsilon(1e-6));
  CHECK(z0_microstrip(3.2e-3, h, 4.4) == doctest::Approx(50.70749).epsilon(1e-6));
  CHECK(eps_eff(1.0e-3, h, 4.4) == doctest::Approx(3.079016).epsilon(1e-6));
  CHECK(z0_microstrip(1.0e-3, h, 4.4) == doctest::Approx(89.61552).epsilon(1e-6));

  // Both permittivity branches meet at W = h.
  CHECK(eps_eff_narrow(h, h, 4.4) == eps_eff_wide(h, h, 4.4));
  CHECK(eps_eff(h, h, 4.4) == doctest::Approx(3.171495).epsilon(1e-6));
  CHECK(z0_narrow(h, h, 4.4) == doctest::Approx(71.09606).epsilon(1e-6));
  CHECK(z0_wide(h, h, 4.4) == doctest::Approx(70.82856).epsilon(1e-6));
  CHECK(std::abs(z0_narrow(h, h, 4.4) / z0_wide(h, h, 4.4) - 1.0) < 0.01);

  const auto r = microstrip(62e-3, h, 4.4);
  CHECK(r.branch == MicrostripBranch::wide);
  CHECK(r.width_to_height == doctest::Approx(62.0 / 1.7));
  CHECK(microstrip(1e-3, h, 4.4).branch == MicrostripBranch::narrow);

  CHECK_THROWS_AS(eps_eff(0.0, h, 4.4), Error);
  CHECK_THROWS_AS(z0_microstrip(1e-3, 0.0, 4.4), Error);
  CHECK_THROWS_AS(z0_microstrip(1e-3, h, 1.0), Error);
}

TEST_CASE("microstrip properties over a width grid") {
  for (double er : {2.2, 4.4, 10.2}) {
    double prev_narrow = INFINITY;
    double prev_wide = INFINITY;
    for (int k = 0; k <= 400; ++k) {
      const double u = 0.05 * std::pow(1000.0, k / 400.0);  // 0.05 .. 50
      const auto r = microstrip(u * 1e-3, 1e-3, er);
      CAPTURE(u);
      CHECK((r.branch == MicrostripBranch::narrow) == (r.width_to_height < 1.0));
      CHECK(r.effective_permittivity > 1.0);
      CHECK(r.effective_permittivity < er);
      CHECK(r.characteristic_impedance > 0.0);
      double& prev = r.branch == MicrostripBranch::narrow ? prev_narrow : prev_wide;
      CHECK(r.characteristic_impedance < prev);
      prev = r.characteristic_impedance;
    }
  }
}

TEST_CASE("half wavelength") {
  CHECK(half_wavelength(2.5e9, 1.0) == doctest::Approx(0.0599584916).epsilon(1e-9));
  CHECK(half_wavelength(2.5e9, 4.174624) == doctest::Approx(0.02934554).epsilon(1e-6));
  CHECK(half_wavelength(5e9, 3.0) == doctest::Approx(half_wavelength(2.5e9, 3.0) / 2.0).epsilon(1e-15));
  CHECK_THROWS_AS(half_wavelength(0.0, 1.0), Error);
  CHECK_THROWS_AS(half_wavelength(1e9, 0.5), Error);
}

TEST_CASE("extract_all over the reference cavities") {
  const auto cavities = canonical_cavities();
  const auto rows = extract_all(cavities, kFr4, 2.5e9);
  REQUIRE(rows.size() == 6);
  CHECK_FALSE(rows[0].inductance.has_value());
  CHECK_FALSE(rows[0].resistance.has_value());
  CHECK(rows[0].capacitance > 0.0);
  for (std::size_t i = 1; i < rows.size(); ++i) {
    CAPTURE(i);
    CHECK(rows[i].source_cavity_index == static_cast<int>(i));
    REQUIRE(rows[i].inductance.has_value());
    CHECK(*rows[i].inductance > 0.0);
    CHECK(rows[i].capacitance > 0.0);
    CHECK(*rows[i].resistance >= 0.0);
    const double omega = 2.0 * std::numbers::pi * 2.5e9;
    CHECK(*rows[i].resistance == res_eq(*rows[i].inductance, rows[i].capacitance, 1, omega));
  }
  CHECK(extract_all(std::span(cavities).subspan(2, 3), kFr4).size() == 3);
  CHECK_THROWS_AS(extract_all({}, kFr4), Error);
  CHECK_THROWS_AS(extract_all(cavities, kFr4, 0.0), Error);
}
