// Acceptance gate: one PASS/FAIL line per criterion, non-zero exit on any failure.

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "patchladder/patchladder.hpp"
#include "support/random_netlist.hpp"
#include "support/recovery.hpp"
#include "support/traces.hpp"

using namespace patchladder;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

int g_failures = 0;

void report(int id, const char* title, const std::function<Outcome()>& check) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = check();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  if (!o.pass) ++g_failures;
  std::printf("%s criterion %2d: %s [%s] (%.0f ms)\n", o.pass ? "PASS" : "FAIL", id, title, o.detail.c_str(), ms);
  std::fflush(stdout);
}

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0, double d = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c, d);
  return buf;
}

double rel(double value, double reference) { return std::abs(value / reference - 1.0); }
double signed_rel(double value, double reference) { return value / reference - 1.0; }

Cavity cavity_mm(int index, double w_mm, double d_mm) { return {index, w_mm / 1000.0, d_mm / 1000.0, 1.7e-3, 1}; }

const Substrate kFr4(4.4, 1.7e-3);

Outcome microstrip_formulas() {
  const double e = eps_eff(62e-3, 1.7e-3, 4.4);
  const double z = z0_microstrip(62e-3, 1.7e-3, 4.4);
  const bool ok = std::abs(e - 4.1747) <= 1e-3 && rel(e, 4.2) <= 0.007 && std::abs(z - 4.580) <= 1e-2 &&
                  rel(z, 4.5) <= 0.02;
  return {ok, fmt("eps_eff=%.6f (%.2f%% from 4.2), z0=%.4f ohm (%.2f%% from 4.5)", e, 100 * rel(e, 4.2), z,
                  100 * rel(z, 4.5))};
}

Outcome feed_line() {
  const double z = z0_microstrip(3.2e-3, 1.7e-3, 4.4);
  return {std::abs(z - 50.71) <= 0.1 && rel(z, 50.0) <= 0.02, fmt("z0=%.4f ohm (%.2f%% from 50)", z, 100 * rel(z, 50.0))};
}

Outcome table_inductances() {
  struct Row {
    int index;
    double w, d, l_nh;
  };
  const Row rows[] = {{1, 18, 7, 2.39}, {2, 27, 7.5, 3.28}, {3, 36, 8.5, 3.9}, {4, 51, 10.5, 5.15}, {5, 62, 24, 10}};
  std::vector<double> dev;
  for (const auto& r : rows) dev.push_back(signed_rel(ind_eq(cavity_mm(r.index, r.w, r.d), kFr4), r.l_nh * 1e-9));
  const bool ok = std::abs(dev[1]) <= 0.02 && std::abs(dev[2]) <= 0.02 && std::abs(dev[3]) <= 0.02 &&
                  std::abs(std::abs(dev[0]) - 0.23) <= 0.03 && std::abs(std::abs(dev[4]) - 0.36) <= 0.03;
  std::string detail = "deviation";
  for (std::size_t k = 0; k < dev.size(); ++k) detail += fmt(" c%.0f=%+.2f%%", rows[k].index, 100 * dev[k]);
  return {ok, detail};
}

Outcome table_capacitances() {
  struct Row {
    int index;
    double w, d, c_pf;
  };
  const Row rows[] = {{0, 3.2, 60, 0.0014}, {1, 18, 7, 0.417}, {2, 27, 7.5, 1.09},
                      {3, 36, 8.5, 1.69},   {4, 51, 10.5, 2.1}, {5, 62, 24, 4.2}};
  std::vector<double> dev;
  for (const auto& r : rows) dev.push_back(signed_rel(cap_eq_approx(cavity_mm(r.index, r.w, r.d), kFr4), r.c_pf * 1e-12));
  const bool ok = std::abs(dev[0]) <= 0.20 && std::abs(dev[1]) <= 0.20;
  std::string detail = "deviation";
  for (std::size_t k = 0; k < dev.size(); ++k) {
    detail += fmt(" c%.0f=%+.1f%%", rows[k].index, 100 * dev[k]);
    if (k == 1) detail += " | reported only:";
  }
  return {ok, detail};
}

Outcome resonance() {
  const double f = resonant_frequency(10e-9, 4.2e-12);
  return {rel(f, 776.6e6) <= 1e-3 && rel(f, 780e6) <= 0.01,
          fmt("f0=%.4f MHz (%.3f%% from 780 MHz)", f / 1e6, 100 * rel(f, 780e6))};
}

Outcome network_properties() {
  constexpr int kNetlists = 1000;
  std::mt19937_64 rng(20240601);
  double passivity = 0.0;
  double reciprocity = 0.0;
  double unitarity = 0.0;
  double agreement = 0.0;
  int lossless_count = 0;
  for (int k = 0; k < kNetlists; ++k) {
    const bool lossless = k % 2 == 1;
    const auto net = testing::random_netlist(rng, lossless, 1, 8);
    const auto t = sweep(net, {0.1e9, 6e9, 201});
    lossless_count += lossless ? 1 : 0;
    for (std::size_t i = 0; i < t.size(); ++i) {
      const auto s = abcd_to_s(netlist_abcd(net, t.frequencies[i]), net.input_port_impedance(),
                               net.output_port_impedance());
      passivity = std::max(passivity, std::abs(t.s11[i]) - 1.0);
      reciprocity = std::max(reciprocity, std::abs(t.s12[i] - t.s21[i]));
      agreement = std::max(agreement, std::abs(s.s11 - t.s11[i]));
      if (lossless) {
        const double p = std::norm(t.s11[i]) + std::norm(t.s21[i]);
        unitarity = std::max(unitarity, std::abs(p - 1.0));
      }
    }
  }
  const bool ok = passivity <= 1e-9 && reciprocity <= 1e-12 && unitarity <= 1e-9 && agreement <= 1e-12;
  return {ok, fmt("%.0f netlists, worst |s11|-1=%.2e, |s12-s21|=%.2e, lossless power error=%.2e", kNetlists,
                  passivity, reciprocity, unitarity) +
                  fmt(", path agreement=%.2e, %.0f lossless", agreement, lossless_count)};
}

Outcome analytic_vectors() {
  Section::Values v;
  v[static_cast<std::size_t>(Param::R)] = 50.0;
  const Netlist series(50.0, 50.0, {Section("r", Topology::series_rlc, v)});
  const auto t = sweep(series, {1e9, 2e9, 3});
  double e11 = 0.0;
  double e21 = 0.0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    e11 = std::max(e11, std::abs(t.s11[i] - 1.0 / 3.0));
    e21 = std::max(e21, std::abs(t.s21[i] - 2.0 / 3.0));
  }
  const auto step = abcd_to_s(AbcdMatrix::identity(), 50.0, 4.5);
  const auto ports_only = sweep(Netlist(50.0, 4.5, {}), {1e9, 2e9, 3});
  double step_err = 0.0;
  for (const auto& s : ports_only.s11) step_err = std::max(step_err, std::abs(s - step.s11));
  const double v3 = vswr(1.0 / 3.0);
  const double v10 = vswr(std::pow(10.0, -10.0 / 20.0));
  const bool ok = e11 <= 1e-12 && e21 <= 1e-12 && std::abs(step.s11.real() + 0.8349) <= 1e-4 &&
                  std::abs(step.s11.imag()) <= 1e-12 && step_err <= 1e-15 &&
                  std::abs(v3 - 2.0) <= 1e-15 && std::abs(v10 - 1.9250) <= 1e-4;
  return {ok, fmt("series s11 err=%.1e s21 err=%.1e, step s11=%.6f, VSWR(1/3)-2=%.1e", e11, e21, step.s11.real(), v3 - 2.0) +
                  fmt(", VSWR(-10 dB)=%.6f", v10)};
}

Outcome band_oracle() {
  const auto v = testing::trace_from_db({0.5e9, 4.5e9, 41},
                                        [](double f) { return std::abs(f - 2.5e9) * 8e-9 - 20.0; });
  const auto bands = find_bands(v, -10.0);
  const bool edges = bands.size() == 1 && rel(bands[0].low, 1.25e9) <= 1e-6 && rel(bands[0].high, 3.75e9) <= 1e-6;
  const auto flat = testing::flat_trace(-15.0);
  const double eff = mismatch_efficiency(flat, {0.5e9, 4.5e9});
  return {edges && std::abs(eff - 96.84) <= 0.01,
          fmt("band=(%.9f, %.9f) GHz, flat -15 dB efficiency=%.4f%%", bands.empty() ? 0.0 : bands[0].low / 1e9,
              bands.empty() ? 0.0 : bands[0].high / 1e9, eff)};
}

// Band edges of the canonical ladder, frozen from the first accepted run.
constexpr double kSnapshotLow = 1.0e8;
constexpr double kSnapshotHigh = 1.336135220e8;

Outcome pipeline() {
  const auto dir = std::filesystem::temp_directory_path() / "patchladder_acceptance";
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  const auto p = [&](const char* f) { return (dir / f).string(); };
  std::ostringstream out;
  std::ostringstream err;
  const int c1 = cli::run({"extract", "--out", p("elements.csv")}, out, err);
  const int c2 = cli::run({"build", "--elements", p("elements.csv"), "--ports", "50,4.5", "--out", p("ladder.net")},
                          out, err);
  const int c3 = cli::run({"simulate", "--netlist", p("ladder.net"), "--fstart", "0.1e9", "--fstop", "6e9", "--points",
                           "1201", "--out", p("ladder.s2p")},
                          out, err);
  if (c1 != 0 || c2 != 0 || c3 != 0) return {false, "command failed: " + err.str()};

  const auto text = read_file(p("ladder.s2p"));
  const auto trace = read_touchstone(text);
  const auto reference = sweep(parse_netlist(read_file(p("ladder.net"))), {0.1e9, 6e9, 1201});
  double worst = 0.0;
  for (std::size_t i = 0; i < reference.size(); ++i) worst = std::max(worst, std::abs(trace.s11[i] - reference.s11[i]));
  const bool round_trip = trace.size() == 1201 && worst <= 1e-9 && write_touchstone(trace) == text;

  const auto rep = band_report(trace, -10.0);
  std::filesystem::remove_all(dir);
  const bool snapshot = rep.bands.size() == 1 && rel(rep.bands[0].low, kSnapshotLow) <= 1e-6 &&
                        rel(rep.bands[0].high, kSnapshotHigh) <= 1e-6;
  std::string detail = fmt("1201 points, round-trip err=%.1e, %.0f band(s)", worst, static_cast<double>(rep.bands.size()));
  for (const auto& b : rep.bands) detail += fmt(" [%.6f, %.6f] GHz", b.low / 1e9, b.high / 1e9);
  if (!snapshot) detail += fmt(" snapshot mismatch: low=%.9e high=%.9e", rep.bands.empty() ? 0.0 : rep.bands[0].low,
                               rep.bands.empty() ? 0.0 : rep.bands[0].high);
  return {round_trip && snapshot, detail};
}

Outcome fit_recovery() {
  const auto t0 = std::chrono::steady_clock::now();
  int recovered = 0;
  double worst = 0.0;
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    const auto o = testing::run_recovery_trial(testing::make_recovery_trial(seed));
    recovered += o.recovered ? 1 : 0;
    if (o.recovered) worst = std::max(worst, o.worst_relative_error);
  }
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return {recovered >= 45 && seconds < 60.0,
          fmt("%.0f/50 recovered within 5%%, worst recovered error=%.2e, %.1f s", recovered, worst, seconds)};
}

template <typename F>
bool rejects(F&& parse, ErrorCode code, std::size_t line) {
  try {
    parse();
  } catch (const Error& e) {
    return e.code() == code && e.line() == line;
  }
  return false;
}

Outcome format_stability() {
  const auto elements = extract_all(canonical_cavities(), kFr4);
  const auto net = from_elements(elements, std::nullopt);
  const auto trace = sweep(net, {0.1e9, 6e9, 301});
  const auto rep = band_report(trace, -10.0);
  const bool stable = write_touchstone(trace) == write_touchstone(sweep(net, {0.1e9, 6e9, 301})) &&
                      write_trace_csv(trace) == write_trace_csv(sweep(net, {0.1e9, 6e9, 301})) &&
                      write_elements_csv(elements, canonical_cavities()) ==
                          write_elements_csv(extract_all(canonical_cavities(), kFr4), canonical_cavities()) &&
                      band_report_csv(rep) == band_report_csv(band_report(trace, -10.0)) &&
                      serialize_netlist(net) == serialize_netlist(parse_netlist(serialize_netlist(net)));

  struct Case {
    const char* name;
    std::function<void()> parse;
    ErrorCode code;
    std::size_t line;
  };
  const std::string ports = "port in z0=50\nport out z0=4.5\n";
  const std::vector<Case> cases = {
      {"geometry unknown key", [] { load_geometry("er = 4.4\nbogus = 1 mm\n"); }, ErrorCode::UnknownKey, 2},
      {"geometry non-positive", [] { load_geometry("W1 = -1 mm\n"); }, ErrorCode::NonPositiveValue, 1},
      {"geometry malformed", [] { load_geometry("# c\nW 12\n"); }, ErrorCode::MalformedLine, 2},
      {"netlist topology", [&] { parse_netlist(ports + "section a topology=foo R=1\n"); }, ErrorCode::UnknownTopology, 3},
      {"netlist suffix", [&] { parse_netlist(ports + "section a topology=series_rlc R=1x\n"); }, ErrorCode::BadValueSuffix, 3},
      {"netlist duplicate port", [] { parse_netlist("port in z0=50\nport in z0=50\n"); }, ErrorCode::DuplicatePort, 2},
      {"netlist duplicate section",
       [&] { parse_netlist(ports + "section a topology=series_rlc R=1\nsection a topology=series_rlc R=2\n"); },
       ErrorCode::DuplicateSectionName, 4},
      {"netlist forbidden", [&] { parse_netlist(ports + "section a topology=series_rlc z0=50\n"); },
       ErrorCode::ForbiddenParameter, 3},
      {"netlist missing", [&] { parse_netlist(ports + "section a topology=series_rl_shunt_c L=1n\n"); },
       ErrorCode::MissingRequiredParameter, 3},
      {"netlist invalid", [&] { parse_netlist(ports + "section a topology=series_rlc L=-1n\n"); },
       ErrorCode::InvalidParameterValue, 3},
      {"touchstone option", [] { read_touchstone("# GHz Z RI R 50\n1 0 0\n"); }, ErrorCode::BadOptionLine, 1},
      {"touchstone monotone", [] { read_touchstone("# GHz S RI R 50\n2 0 0\n1 0 0\n"); },
       ErrorCode::NonMonotoneFrequency, 3},
      {"touchstone row", [] { read_touchstone("# GHz S RI R 50\n1 0 0\n2 0\n"); }, ErrorCode::MalformedRow, 3},
      {"elements row", [] { read_elements_csv("cavity,W_m,d_m,n,C_F,L_H,R_ohm\n0,1,1\n"); }, ErrorCode::MalformedRow, 2},
  };
  int rejected = 0;
  std::string missed;
  for (const auto& c : cases) {
    if (rejects(c.parse, c.code, c.line)) ++rejected;
    else missed += std::string(" ") + c.name;
  }
  const bool ok = stable && rejected == static_cast<int>(cases.size());
  return {ok, std::string(stable ? "writers byte-stable" : "writers NOT byte-stable") +
                  fmt(", %.0f/%.0f malformed inputs rejected with code and line", rejected,
                      static_cast<double>(cases.size())) +
                  missed};
}

}  // namespace

int main() {
  std::printf("patchladder %s acceptance\n", std::string(kVersion).c_str());
  report(1, "microstrip formulas", microstrip_formulas);
  report(2, "feed-line impedance", feed_line);
  report(3, "cavity inductances", table_inductances);
  report(4, "cavity capacitances", table_capacitances);
  report(5, "resonance and band start", resonance);
  report(6, "network property suite", network_properties);
  report(7, "analytic S-parameter vectors", analytic_vectors);
  report(8, "band extraction oracle", band_oracle);
  report(9, "end-to-end pipeline", pipeline);
  report(10, "fit recovery", fit_recovery);
  report(11, "format stability and parser errors", format_stability);
  std::printf("%d of 11 criteria failed\n", g_failures);
  return g_failures == 0 ? 0 : 1;
}
