#include <doctest.h>

#include <cmath>
#include <random>

#include "patchladder/error.hpp"
#include "patchladder/units.hpp"

using namespace patchladder;

TEST_CASE("si suffixes parse to the nearest double of the decimal value") {
  CHECK(parse_si("2.39n") == 2.39e-9);
  CHECK(parse_si("4.2p") == 4.2e-12);
  CHECK(parse_si("0.417p") == 0.417e-12);
  CHECK(parse_si("50") == 50.0);
  CHECK(parse_si("4.5") == 4.5);
  CHECK(parse_si("1M") == 1e6);
  CHECK(parse_si("1m") == 1e-3);
  CHECK(parse_si("3G") == 3e9);
  CHECK(parse_si("-2k") == -2000.0);
  CHECK(parse_si("1e-3") == 1e-3);
}

TEST_CASE("si suffixes are case-sensitive and strict") {
  for (const char* bad : {"2.39N", "1MEG", "1x", "", "abc", "1.2.3n", "5e3k", "1 k"}) {
    CAPTURE(bad);
    try {
      parse_si(bad);
      FAIL("accepted");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::BadValueSuffix);
    }
  }
}

TEST_CASE("format_si normalizes the mantissa") {
  CHECK(format_si(2.39e-9) == "2.39n");
  CHECK(format_si(4.2e-12) == "4.2p");
  CHECK(format_si(0.417e-12) == "417f");
  CHECK(format_si(50.0) == "50");
  CHECK(format_si(4.5) == "4.5");
  CHECK(format_si(1000.0) == "1k");
  CHECK(format_si(0.06) == "60m");
  CHECK(format_si(0.0) == "0");
  CHECK(format_si(-3.3) == "-3.3");
  CHECK(format_si(1e-18) == "1e-18");
}

TEST_CASE("format_si round-trips bit-exactly") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> exponent(-17.0, 11.0);
  for (int i = 0; i < 20000; ++i) {
    const double v = std::pow(10.0, exponent(rng));
    const auto s = format_si(v);
    CAPTURE(s);
    REQUIRE(parse_si(s) == v);
    if (v >= 1e-15 && v < 1e12) {
      const auto digits_end = s.find_first_not_of("0123456789.");
      const double mantissa = std::stod(s.substr(0, digits_end));
      CHECK(mantissa >= 1.0);
      CHECK(mantissa < 1000.0);
    }
  }
}

TEST_CASE("text helpers") {
  double v = 0.0;
  CHECK(text::parse_double(" 1.5 ", v));
  CHECK(v == 1.5);
  CHECK(text::parse_double("+2", v));
  CHECK_FALSE(text::parse_double("1.5x", v));
  CHECK_FALSE(text::parse_double("nan", v));
  CHECK(text::trim("  a b \t") == "a b");
  CHECK(text::strip_comment("x = 1 # c", '#') == "x = 1 ");
}
