#include "patchladder/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "patchladder/error.hpp"

namespace patchladder {

namespace {

void require_nonempty(const SParameterTrace& trace) {
  if (trace.size() == 0) throw Error(ErrorCode::EmptyTrace, "");
  trace.validate();
}

double lerp_x(double x0, double y0, double x1, double y1, double y) {
  return x0 + (y - y0) * (x1 - x0) / (y1 - y0);
}

double lerp_y(double x0, double y0, double x1, double y1, double x) {
  return y0 + (x - x0) * (y1 - y0) / (x1 - x0);
}

// Index i with f[i] <= x <= f[i+1]; x must be inside [f.front(), f.back()].
std::size_t bracket(const std::vector<double>& f, double x) {
  auto it = std::upper_bound(f.begin(), f.end(), x);
  std::size_t i = it == f.begin() ? 0 : static_cast<std::size_t>(it - f.begin()) - 1;
  return std::min(i, f.size() - 2);
}

}  // namespace

std::vector<Band> find_bands(const SParameterTrace& trace, double threshold_db) {
  require_nonempty(trace);
  const auto& f = trace.frequencies;
  const auto db = trace.s11_db();
  const auto n = f.size();
  std::vector<Band> bands;
  std::size_t i = 0;
  while (i < n) {
    if (db[i] > threshold_db) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j + 1 < n && db[j + 1] <= threshold_db) ++j;
    const double low = i == 0 ? f[0] : lerp_x(f[i - 1], db[i - 1], f[i], db[i], threshold_db);
    const double high = j + 1 == n ? f[n - 1] : lerp_x(f[j], db[j], f[j + 1], db[j + 1], threshold_db);
    if (low < high) bands.push_back({low, high});
    i = j + 1;
  }
  return bands;
}

double interpolate_db(const SParameterTrace& trace, double frequency) {
  require_nonempty(trace);
  const auto& f = trace.frequencies;
  if (frequency < f.front() || frequency > f.back()) {
    throw Error(ErrorCode::BandOutsideTrace, "frequency", 0, "outside trace span");
  }
  if (f.size() == 1) return magnitude_db(trace.s11[0]);
  const auto i = bracket(f, frequency);
  return lerp_y(f[i], magnitude_db(trace.s11[i]), f[i + 1], magnitude_db(trace.s11[i + 1]), frequency);
}

double mismatch_efficiency(const SParameterTrace& trace, const Band& band) {
  require_nonempty(trace);
  const auto& f = trace.frequencies;
  if (!(band.low < band.high)) throw Error(ErrorCode::BandOutsideTrace, "band", 0, "band must satisfy low < high");
  const double slack = 1e-9 * (f.back() - f.front());
  if (band.low < f.front() - slack || band.high > f.back() + slack) {
    throw Error(ErrorCode::BandOutsideTrace, "band");
  }
  const double low = std::max(band.low, f.front());
  const double high = std::min(band.high, f.back());

  std::vector<double> g(f.size());
  for (std::size_t k = 0; k < f.size(); ++k) g[k] = 1.0 - std::norm(trace.s11[k]);
  const auto g_at = [&](double x) {
    const auto k = bracket(f, x);
    return lerp_y(f[k], g[k], f[k + 1], g[k + 1], x);
  };

  // Trapezoid over the sample points inside the band plus the two edges.
  std::vector<double> xs{low};
  std::vector<double> ys{g_at(low)};
  for (std::size_t k = 0; k < f.size(); ++k) {
    if (f[k] > low && f[k] < high) {
      xs.push_back(f[k]);
      ys.push_back(g[k]);
    }
  }
  xs.push_back(high);
  ys.push_back(g_at(high));
  double area = 0.0;
  for (std::size_t k = 1; k < xs.size(); ++k) area += 0.5 * (ys[k] + ys[k - 1]) * (xs[k] - xs[k - 1]);
  return std::clamp(100.0 * area / (high - low), 0.0, 100.0);
}

double resonant_frequency(double inductance, double capacitance) {
  if (!(inductance > 0.0)) throw Error(ErrorCode::NonPositiveElement, "L");
  if (!(capacitance > 0.0)) throw Error(ErrorCode::NonPositiveElement, "C");
  return 1.0 / (2.0 * std::numbers::pi * std::sqrt(inductance * capacitance));
}

SimilarityReport compare_traces(const SParameterTrace& a, const SParameterTrace& b,
                                double threshold_db) {
  require_nonempty(a);
  require_nonempty(b);
  const double lo = std::max(a.frequencies.front(), b.frequencies.front());
  const double hi = std::min(a.frequencies.back(), b.frequencies.back());
  SimilarityReport r;
  std::size_t agree = 0;
  double deviation = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    const double f = a.frequencies[k];
    if (f < lo || f > hi) continue;
    const double da = magnitude_db(a.s11[k]);
    const double db = interpolate_db(b, f);
    if ((da <= threshold_db) == (db <= threshold_db)) ++agree;
    deviation += std::abs(da - db);
    ++r.common_grid_points;
  }
  if (r.common_grid_points == 0) throw Error(ErrorCode::NoOverlap, "");
  const auto n = static_cast<double>(r.common_grid_points);
  r.band_agreement_percent = 100.0 * static_cast<double>(agree) / n;
  r.mean_abs_db_deviation = deviation / n;
  return r;
}

BandReport band_report(const SParameterTrace& trace, double threshold_db) {
  BandReport r;
  r.threshold_db = threshold_db;
  r.bands = find_bands(trace, threshold_db);
  if (r.bands.empty()) return r;

  std::size_t widest = 0;
  for (std::size_t k = 1; k < r.bands.size(); ++k) {
    if (r.bands[k].width() > r.bands[widest].width()) widest = k;
  }
  r.widest_band = widest;
  r.mismatch_efficiency_percent = mismatch_efficiency(trace, r.bands[widest]);

  double worst = 1.0;
  for (std::size_t k = 0; k < trace.size(); ++k) {
    const double f = trace.frequencies[k];
    const bool inside = std::any_of(r.bands.begin(), r.bands.end(),
                                    [f](const Band& b) { return f >= b.low && f <= b.high; });
    if (!inside || magnitude_db(trace.s11[k]) > threshold_db) continue;
    worst = std::max(worst, vswr(std::abs(trace.s11[k])));
  }
  r.max_vswr_in_band = worst;
  return r;
}

}  // namespace patchladder
