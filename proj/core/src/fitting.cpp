#include "patchladder/fitting.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "patchladder/analysis.hpp"
#include "patchladder/error.hpp"

namespace patchladder {

namespace {

constexpr double kAbsoluteFloor = 1e-14;  // dB^2, a perfect fit
constexpr double kInitialStep = 0.2;      // log units, about 22 %
constexpr double kRestartJump = 0.9;      // log units, about x2.5

// Precomputed per-point targets on the sweep grid; points without a target
// are skipped.
class Objective {
 public:
  Objective(const FitTarget& target, const SweepGrid& grid) : freqs_(grid.frequencies()) {
    if (const auto* trace = std::get_if<SParameterTrace>(&target)) {
      trace->validate();
      if (trace->size() == 0) throw Error(ErrorCode::EmptyTrace, "target");
      mode_ = Mode::trace;
      for (std::size_t i = 0; i < freqs_.size(); ++i) {
        const double f = freqs_[i];
        if (f < trace->frequencies.front() || f > trace->frequencies.back()) continue;
        index_.push_back(i);
        reference_.push_back(interpolate_db(*trace, f));
      }
      if (index_.empty()) throw Error(ErrorCode::NoOverlap, "target", 0, "grid outside target trace");
    } else {
      const auto& mask = std::get<Mask>(target);
      mask.validate();
      mode_ = Mode::mask;
      for (std::size_t i = 0; i < freqs_.size(); ++i) {
        for (const auto& iv : mask.intervals) {
          if (freqs_[i] >= iv.low && freqs_[i] <= iv.high) {
            index_.push_back(i);
            reference_.push_back(iv.ceiling_db);
            break;
          }
        }
      }
    }
  }

  double operator()(const Netlist& netlist) const {
    if (index_.empty()) return 0.0;
    double sum = 0.0;
    for (std::size_t k = 0; k < index_.size(); ++k) {
      const double f = freqs_[index_[k]];
      const AbcdMatrix m = netlist_abcd(netlist, f);
      const double db = magnitude_db(reflection(
          input_impedance(m, netlist.output_port_impedance()), netlist.input_port_impedance()));
      const double r = mode_ == Mode::trace ? db - reference_[k] : std::max(0.0, db - reference_[k]);
      sum += r * r;
    }
    return sum / static_cast<double>(index_.size());
  }

 private:
  enum class Mode { trace, mask };
  Mode mode_ = Mode::trace;
  std::vector<double> freqs_;
  std::vector<std::size_t> index_;
  std::vector<double> reference_;
};

struct Vertex {
  std::vector<double> x;  // log parameters
  double cost = 0.0;
};

class Minimizer {
 public:
  /// `start` holds the physical starting values; they map back exactly.
  Minimizer(const FitProblem& p, const Objective& objective, std::vector<double> start)
      : problem_(p), objective_(objective), start_(std::move(start)) {
    for (std::size_t k = 0; k < start_.size(); ++k) {
      const auto& fp = p.free_parameters[k];
      log_low_.push_back(std::log(fp.low));
      log_high_.push_back(std::log(fp.high));
      log_start_.push_back(std::log(start_[k]));
    }
  }

  const std::vector<double>& log_start() const noexcept { return log_start_; }

  std::vector<double> physical(std::span<const double> x) const {
    std::vector<double> phys(x.size());
    for (std::size_t k = 0; k < x.size(); ++k) {
      const auto& fp = problem_.free_parameters[k];
      phys[k] = x[k] == log_start_[k] ? start_[k] : std::clamp(std::exp(x[k]), fp.low, fp.high);
    }
    return phys;
  }

  double evaluate(std::vector<double>& x) {
    clamp(x);
    const std::vector<double> phys = physical(x);
    if (problem_.observer) problem_.observer(phys);
    ++evaluations;
    return objective_(apply(phys));
  }

  Netlist apply(std::span<const double> phys) const {
    Netlist n = problem_.netlist;
    for (std::size_t k = 0; k < phys.size(); ++k) {
      const auto& fp = problem_.free_parameters[k];
      n = n.with_parameter(fp.section, fp.param, phys[k]);
    }
    return n;
  }

  // One simplex run from `start`. `best` is the global incumbent and is only
  // ever replaced by a cheaper vertex. Returns true when the spread
  // criterion was met.
  bool run(Vertex start, const std::vector<double>& steps, Vertex& best, int& iterations_left,
           int& iterations, std::vector<double>& history) {
    const std::size_t n = start.x.size();
    const auto by_cost = [](const Vertex& a, const Vertex& b) { return a.cost < b.cost; };
    const auto offer = [&](const Vertex& v) {
      if (v.cost < best.cost) best = v;
    };
    std::vector<Vertex> simplex{start};
    for (std::size_t k = 0; k < n; ++k) {
      Vertex v{start.x, 0.0};
      double step = steps[k];
      if (v.x[k] + step > log_high_[k]) step = -step;
      v.x[k] += step;
      v.cost = evaluate(v.x);
      simplex.push_back(std::move(v));
    }

    while (iterations_left > 0) {
      std::sort(simplex.begin(), simplex.end(), by_cost);
      offer(simplex.front());
      if (converged(simplex)) return true;
      --iterations_left;
      ++iterations;

      std::vector<double> centroid(n, 0.0);
      for (std::size_t v = 0; v < n; ++v) {
        for (std::size_t k = 0; k < n; ++k) centroid[k] += simplex[v].x[k] / static_cast<double>(n);
      }
      auto& worst = simplex.back();
      const auto along = [&](double t) {
        std::vector<double> x(n);
        for (std::size_t k = 0; k < n; ++k) x[k] = centroid[k] + t * (worst.x[k] - centroid[k]);
        return x;
      };

      Vertex reflected{along(-1.0), 0.0};
      reflected.cost = evaluate(reflected.x);
      if (reflected.cost < simplex.front().cost) {
        Vertex expanded{along(-2.0), 0.0};
        expanded.cost = evaluate(expanded.x);
        worst = expanded.cost < reflected.cost ? std::move(expanded) : std::move(reflected);
      } else if (reflected.cost < simplex[n - 1].cost) {
        worst = std::move(reflected);
      } else {
        const bool outside = reflected.cost < worst.cost;
        Vertex contracted{along(outside ? -0.5 : 0.5), 0.0};
        contracted.cost = evaluate(contracted.x);
        if (contracted.cost < std::min(reflected.cost, worst.cost)) {
          worst = std::move(contracted);
        } else {
          for (std::size_t v = 1; v <= n; ++v) {
            for (std::size_t k = 0; k < n; ++k) {
              simplex[v].x[k] = simplex[0].x[k] + 0.5 * (simplex[v].x[k] - simplex[0].x[k]);
            }
            simplex[v].cost = evaluate(simplex[v].x);
          }
        }
      }
      offer(*std::min_element(simplex.begin(), simplex.end(), by_cost));
      history.push_back(best.cost);
    }
    std::sort(simplex.begin(), simplex.end(), by_cost);
    offer(simplex.front());
    return converged(simplex);
  }

  /// Random point within `jump` log units of `center`, clamped to bounds.
  Vertex jitter(const Vertex& center, double jump, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(-jump, jump);
    Vertex v{center.x, 0.0};
    for (auto& x : v.x) x += u(rng);
    v.cost = evaluate(v.x);
    return v;
  }

  int evaluations = 0;

 private:
  void clamp(std::vector<double>& x) const {
    for (std::size_t k = 0; k < x.size(); ++k) x[k] = std::clamp(x[k], log_low_[k], log_high_[k]);
  }

  bool converged(const std::vector<Vertex>& sorted) const {
    const double spread = sorted.back().cost - sorted.front().cost;
    if (spread <= problem_.tolerance * std::abs(sorted.front().cost) + kAbsoluteFloor) return true;
    double diameter = 0.0;
    for (std::size_t v = 1; v < sorted.size(); ++v) {
      for (std::size_t k = 0; k < sorted[v].x.size(); ++k) {
        diameter = std::max(diameter, std::abs(sorted[v].x[k] - sorted[0].x[k]));
      }
    }
    return diameter < kMinDiameter;
  }

  static constexpr double kMinDiameter = 1e-12;  // log units

  const FitProblem& problem_;
  const Objective& objective_;
  std::vector<double> start_;
  std::vector<double> log_low_;
  std::vector<double> log_high_;
  std::vector<double> log_start_;
};

}  // namespace

void Mask::validate() const {
  if (intervals.empty()) throw Error(ErrorCode::InvalidBounds, "mask", 0, "no intervals");
  auto sorted = intervals;
  std::sort(sorted.begin(), sorted.end(),
            [](const MaskInterval& a, const MaskInterval& b) { return a.low < b.low; });
  for (std::size_t k = 0; k < sorted.size(); ++k) {
    if (!(sorted[k].low < sorted[k].high)) throw Error(ErrorCode::InvalidBounds, "mask", 0, "interval needs low < high");
    if (k > 0 && sorted[k].low < sorted[k - 1].high) {
      throw Error(ErrorCode::InvalidBounds, "mask", 0, "intervals overlap");
    }
  }
}

double cost(const Netlist& netlist, const FitTarget& target, const SweepGrid& grid) {
  return Objective(target, grid)(netlist);
}

FreeParameter parse_free_parameter(std::string_view spec) {
  const auto dot = spec.rfind('.');
  if (dot == std::string_view::npos || dot == 0 || dot + 1 == spec.size()) {
    throw Error(ErrorCode::MalformedLine, std::string(spec), 0, "expected <section>.<param>");
  }
  const auto p = param_from_string(spec.substr(dot + 1));
  if (!p) throw Error(ErrorCode::MalformedLine, std::string(spec.substr(dot + 1)), 0, "unknown parameter");
  return FreeParameter{std::string(spec.substr(0, dot)), *p, 0.0, 0.0};
}

FitResult fit(const FitProblem& problem) {
  if (problem.free_parameters.empty()) throw Error(ErrorCode::NoFreeParameters, "");
  std::vector<double> start;
  for (const auto& fp : problem.free_parameters) {
    if (!(fp.low > 0.0) || !(fp.high > fp.low) || !std::isfinite(fp.high)) {
      throw Error(ErrorCode::InvalidBounds, fp.section + "." + std::string(to_string(fp.param)), 0,
                  "need 0 < low < high");
    }
    const auto& section = problem.netlist.section(fp.section);
    const double v = section.get(fp.param).value_or(std::sqrt(fp.low * fp.high));
    start.push_back(std::clamp(v, fp.low, fp.high));
  }

  const Objective objective(problem.target, problem.grid);
  Minimizer nm(problem, objective, start);
  Vertex best{nm.log_start(), 0.0};
  best.cost = nm.evaluate(best.x);

  FitResult result{problem.netlist, {}, best.cost, best.cost, 0, 0, false, {}};
  int budget = std::max(problem.max_iterations, 0);
  if (budget > 0) {
    const std::vector<double> steps(start.size(), kInitialStep);
    std::mt19937_64 rng(problem.seed);
    const Vertex origin = best;
    result.converged = nm.run(origin, steps, best, budget, result.iterations, result.best_cost_history);
    for (int r = 0; r < problem.restarts && budget > 0; ++r) {
      if (best.cost <= kAbsoluteFloor) break;
      // Restarts alternate between the starting point and the incumbent;
      // the incumbent only changes when a restart finds a cheaper point.
      const Vertex& center = r % 2 == 0 ? origin : best;
      const bool conv = nm.run(nm.jitter(center, kRestartJump, rng), steps, best, budget,
                               result.iterations, result.best_cost_history);
      result.converged = result.converged || conv;
    }
  }

  result.parameters = nm.physical(best.x);
  result.netlist = nm.apply(result.parameters);
  result.final_cost = best.cost;
  result.evaluations = nm.evaluations;
  return result;
}

}  // namespace patchladder
