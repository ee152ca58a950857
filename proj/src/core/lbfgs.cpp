// Copyright 2026 The QOC Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "core/lbfgs.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>

namespace qoc {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Evaluator {
  const LbfgsObjective& objective;
  std::size_t budget;
  std::size_t count = 0;

  bool exhausted() const { return count >= budget; }

  double operator()(const Eigen::VectorXd& x, Eigen::VectorXd& grad) {
    ++count;
    double f = objective(x, grad);
    if (!std::isfinite(f)) {
      f = kInf;
      grad.setZero();
    }
    return f;
  }
};

struct LinePoint {
  double alpha = 0;
  double f = 0;
  double slope = 0;  // directional derivative g.dot(direction)
};

// Quadratic interpolation between two bracket endpoints, safeguarded to stay
// well inside the interval; falls back to bisection when the model is flat.
double interpolate(const LinePoint& lo, const LinePoint& hi) {
  const double span = hi.alpha - lo.alpha;
  double trial = lo.alpha + 0.5 * span;
  if (std::isfinite(lo.f) && std::isfinite(hi.f)) {
    const double denom = 2.0 * (hi.f - lo.f - lo.slope * span);
    if (std::abs(denom) > 1e-300) {
      const double quad = lo.alpha - lo.slope * span * span / denom;
      const double margin = 0.1 * std::abs(span);
      const double left = std::min(lo.alpha, hi.alpha) + margin;
      const double right = std::max(lo.alpha, hi.alpha) - margin;
      if (quad >= left && quad <= right) trial = quad;
    }
  }
  return trial;
}

struct LineSearchOutcome {
  bool success = false;
  LinePoint point;
  Eigen::VectorXd x;
  Eigen::VectorXd grad;
};

// Strong-Wolfe line search (bracket + zoom). `x0`/`f0`/`slope0` describe the
// current iterate; on success the outcome holds the accepted point.
LineSearchOutcome wolfe_search(Evaluator& eval, const Eigen::VectorXd& x0, double f0,
                               double slope0, const Eigen::VectorXd& direction,
                               const LbfgsParams& params) {
  LineSearchOutcome out;
  Eigen::VectorXd x_trial(x0.size());
  Eigen::VectorXd g_trial(x0.size());

  const auto probe = [&](double alpha) -> LinePoint {
    x_trial = x0 + alpha * direction;
    const double f = eval(x_trial, g_trial);
    return {alpha, f, g_trial.dot(direction)};
  };
  const auto accept = [&](const LinePoint& p) {
    out.success = true;
    out.point = p;
    out.x = x_trial;
    out.grad = g_trial;
  };
  const auto armijo_ok = [&](const LinePoint& p) {
    return p.f <= f0 + params.c1 * p.alpha * slope0;
  };
  const auto curvature_ok = [&](const LinePoint& p) {
    return std::abs(p.slope) <= params.c2 * std::abs(slope0);
  };

  const auto zoom = [&](LinePoint lo, LinePoint hi) {
    for (std::size_t j = 0; j < params.max_line_search_steps; ++j) {
      if (eval.exhausted()) return;
      const double alpha = interpolate(lo, hi);
      if (std::abs(hi.alpha - lo.alpha) < 1e-16 * std::max(1.0, std::abs(lo.alpha))) return;
      LinePoint p = probe(alpha);
      if (p.alpha == lo.alpha || p.alpha == hi.alpha) return;
      if (!armijo_ok(p) || p.f >= lo.f) {
        hi = p;
      } else {
        if (curvature_ok(p)) {
          accept(p);
          return;
        }
        if (p.slope * (hi.alpha - lo.alpha) >= 0) hi = lo;
        lo = p;
      }
    }
  };

  LinePoint prev{0.0, f0, slope0};
  double alpha = 1.0;
  for (std::size_t i = 0; i < params.max_line_search_steps; ++i) {
    if (eval.exhausted()) return out;
    LinePoint p = probe(alpha);
    if (!armijo_ok(p) || (i > 0 && p.f >= prev.f)) {
      zoom(prev, p);
      return out;
    }
    if (curvature_ok(p)) {
      accept(p);
      return out;
    }
    if (p.slope >= 0) {
      zoom(p, prev);
      return out;
    }
    prev = p;
    alpha *= 2.0;
  }
  return out;
}

}  // namespace

LbfgsResult lbfgs_minimize(const LbfgsObjective& objective, Eigen::VectorXd x0,
                           const LbfgsParams& params,
                           const std::function<bool(double f)>& stop) {
  const Eigen::Index n = x0.size();
  Evaluator eval{objective, std::max<std::size_t>(params.max_evaluations, 1)};

  LbfgsResult result;
  result.x = std::move(x0);
  result.gradient.resize(n);
  result.f = eval(result.x, result.gradient);
  result.history.push_back(result.f);

  struct Pair {
    Eigen::VectorXd s, y;
    double rho;
  };
  std::deque<Pair> pairs;

  const auto finish = [&](LbfgsStatus status) {
    result.status = status;
    result.evaluations = eval.count;
    return result;
  };

  if (stop && stop(result.f)) return finish(LbfgsStatus::stopped_by_callback);
  if (!std::isfinite(result.f)) return finish(LbfgsStatus::line_search_fail);

  while (true) {
    if (result.gradient.lpNorm<Eigen::Infinity>() <= params.grad_inf_tolerance)
      return finish(LbfgsStatus::gradient_small);
    if (eval.count >= params.max_evaluations) return finish(LbfgsStatus::max_evaluations);

    // Two-loop recursion for the search direction.
    Eigen::VectorXd direction = -result.gradient;
    if (!pairs.empty()) {
      std::vector<double> a(pairs.size());
      for (std::size_t i = pairs.size(); i-- > 0;) {
        a[i] = pairs[i].rho * pairs[i].s.dot(direction);
        direction -= a[i] * pairs[i].y;
      }
      const Pair& last = pairs.back();
      direction *= last.s.dot(last.y) / last.y.squaredNorm();
      for (std::size_t i = 0; i < pairs.size(); ++i) {
        const double b = pairs[i].rho * pairs[i].y.dot(direction);
        direction += (a[i] - b) * pairs[i].s;
      }
    } else {
      // Modest first step so the unit trial stays in the line search's trust range.
      const double gnorm = result.gradient.norm();
      if (gnorm > 1.0) direction /= gnorm;
    }

    double slope = result.gradient.dot(direction);
    if (slope >= 0) {  // not a descent direction: reset the memory
      pairs.clear();
      direction = -result.gradient;
      slope = result.gradient.dot(direction);
      if (slope >= 0) return finish(LbfgsStatus::gradient_small);
    }

    LineSearchOutcome line = wolfe_search(eval, result.x, result.f, slope, direction, params);
    if (!line.success) {
      if (eval.count >= params.max_evaluations) return finish(LbfgsStatus::max_evaluations);
      if (!pairs.empty()) {  // retry once as plain steepest descent
        pairs.clear();
        direction = -result.gradient;
        slope = result.gradient.dot(direction);
        line = wolfe_search(eval, result.x, result.f, slope, direction, params);
      }
      if (!line.success)
        return finish(eval.count >= params.max_evaluations ? LbfgsStatus::max_evaluations
                                                           : LbfgsStatus::line_search_fail);
    }

    Eigen::VectorXd s = line.point.alpha * direction;
    Eigen::VectorXd y = line.grad - result.gradient;
    result.x = line.x;
    result.f = line.point.f;
    result.gradient = line.grad;
    ++result.iterations;
    result.history.push_back(result.f);

    if (stop && stop(result.f)) return finish(LbfgsStatus::stopped_by_callback);

    const double sy = s.dot(y);
    if (sy > 1e-10 * s.norm() * y.norm()) {
      pairs.push_back({std::move(s), std::move(y), 1.0 / sy});
      if (pairs.size() > params.memory) pairs.pop_front();
    }
  }
}

}  // namespace qoc
