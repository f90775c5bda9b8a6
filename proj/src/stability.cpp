#include "graspeq/stability.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <thread>

namespace graspeq {

StabilityAnalyzer::StabilityAnalyzer(GraspModel model, AnalysisOptions options, SolverTolerances tolerances)
    : model_(std::move(model)),
      options_(options),
      tolerances_(tolerances),
      states_(enumerate_slip_states(model_, options_)) {}

Verdict StabilityAnalyzer::check(const Wrench& w, unsigned threads) const {
  Verdict v;
  v.mode = options_;
  const auto& states = states_.states;

  if (threads <= 1) {
    for (const SlipState& s : states) {
      ++v.states_tried;
      if (auto sol = solve_state(model_, w, s, options_, tolerances_)) {
        v.stable = true;
        v.witness = std::move(sol);
        return v;
      }
    }
    return v;
  }

  std::atomic<std::size_t> best{states.size()};
  std::vector<std::optional<EquilibriumSolution>> found(threads);
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t) {
    pool.emplace_back([&, t] {
      for (std::size_t k = t; k < states.size(); k += threads) {
        if (k >= best.load()) return;
        if (auto sol = solve_state(model_, w, states[k], options_, tolerances_)) {
          found[t] = std::move(sol);
          std::size_t cur = best.load();
          while (k < cur && !best.compare_exchange_weak(cur, k)) {
          }
          return;
        }
      }
    });
  }
  for (auto& th : pool) th.join();

  const std::size_t k = best.load();
  if (k == states.size()) {
    v.states_tried = states.size();
    return v;
  }
  v.stable = true;
  v.states_tried = k + 1;
  for (auto& f : found) {
    if (f && f->state_index == k) v.witness = std::move(f);
  }
  return v;
}

Verdict check_stability(const GraspModel& model, const Wrench& w, const AnalysisOptions& options) {
  return StabilityAnalyzer(model, options).check(w);
}

ResistibleForce max_resistible(const StabilityAnalyzer& analyzer, const Vec2& direction, double tol, double cap) {
  if (!(tol > 0.0) || !(cap > 0.0)) throw std::invalid_argument("max_resistible: tol and cap must be positive");
  ResistibleForce out;
  auto stable_at = [&](double magnitude) {
    ++out.probes;
    return analyzer.check({magnitude * direction.x(), magnitude * direction.y(), 0.0}).stable;
  };

  if (stable_at(cap)) {
    out.magnitude = cap;
    out.at_least_cap = true;
    out.stable_bound = cap;
    out.unstable_bound = std::numeric_limits<double>::infinity();
    return out;
  }

  double lo = 0.0;
  double hi = cap;
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    (stable_at(mid) ? lo : hi) = mid;
  }
  out.magnitude = 0.5 * (lo + hi);
  out.stable_bound = lo;
  out.unstable_bound = hi;

  const double below = std::max(0.0, out.magnitude - tol);
  if (!stable_at(below) || stable_at(out.magnitude + tol)) out.non_monotone = true;
  return out;
}

std::vector<Vec2> sweep_directions(std::size_t n) {
  std::vector<Vec2> dirs;
  dirs.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double angle = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n);
    Vec2 d(std::cos(angle), std::sin(angle));
    // Snap round-off so axis directions are exact.
    for (int c = 0; c < 2; ++c) {
      if (std::abs(d(c)) < 1e-12) d(c) = 0.0;
      if (std::abs(std::abs(d(c)) - 1.0) < 1e-12) d(c) = std::copysign(1.0, d(c));
    }
    dirs.push_back(d);
  }
  return dirs;
}

RegionSweep resistible_region(const StabilityAnalyzer& analyzer, std::size_t n_directions, double tol, double cap,
                              unsigned threads) {
  if (n_directions < 4) throw std::invalid_argument("resistible_region: minimum 4 directions");
  if (!(tol > 0.0) || !(cap > 0.0)) throw std::invalid_argument("resistible_region: tol and cap must be positive");
  RegionSweep sweep{n_directions, tol, cap, {}};
  const auto dirs = sweep_directions(n_directions);
  sweep.results.resize(n_directions);

  auto work = [&](std::size_t first, std::size_t stride) {
    for (std::size_t k = first; k < n_directions; k += stride) {
      sweep.results[k] = {dirs[k], max_resistible(analyzer, dirs[k], tol, cap)};
    }
  };
  if (threads <= 1) {
    work(0, 1);
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work, t, threads);
    for (auto& th : pool) th.join();
  }
  return sweep;
}

}  // namespace graspeq
