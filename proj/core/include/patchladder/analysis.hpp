#pragma once

#include <optional>
#include <vector>

#include "patchladder/network.hpp"

namespace patchladder {

struct Band {
  double low = 0.0;   // Hz
  double high = 0.0;  // Hz

  double width() const noexcept { return high - low; }
  friend bool operator==(const Band&, const Band&) = default;
};

/// Operating bands of a trace. The efficiency and VSWR figures are absent
/// when no band is found.
struct BandReport {
  std::vector<Band> bands;
  double threshold_db = -10.0;
  std::optional<std::size_t> widest_band;
  std::optional<double> mismatch_efficiency_percent;
  std::optional<double> max_vswr_in_band;
};

struct SimilarityReport {
  double band_agreement_percent = 0.0;
  double mean_abs_db_deviation = 0.0;
  std::size_t common_grid_points = 0;
};

/// Maximal runs with s11 dB <= threshold. Edges are interpolated linearly in
/// (frequency, dB) between the bracketing samples; runs touching the ends
/// of the trace stop at the first/last frequency. Zero-width runs (a single
/// sample sitting exactly on the threshold) are dropped.
std::vector<Band> find_bands(const SParameterTrace& trace, double threshold_db);

/// 100 * average of (1 - |s11|^2) over [low, high], trapezoidal in frequency,
/// with the band edges interpolated linearly between samples.
double mismatch_efficiency(const SParameterTrace& trace, const Band& band);

double resonant_frequency(double inductance, double capacitance);

/// Resamples `b` (linear in dB) onto the points of `a` inside the common span.
SimilarityReport compare_traces(const SParameterTrace& a, const SParameterTrace& b,
                                double threshold_db);

BandReport band_report(const SParameterTrace& trace, double threshold_db);

/// Linear interpolation of s11 dB at `frequency`; frequency must lie inside
/// the trace span.
double interpolate_db(const SParameterTrace& trace, double frequency);

}  // namespace patchladder
