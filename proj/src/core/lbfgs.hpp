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

#ifndef QOC_CORE_LBFGS_HPP
#define QOC_CORE_LBFGS_HPP

#include <functional>
#include <vector>

#include <Eigen/Dense>

namespace qoc {

/// Limited-memory BFGS minimizer with a strong-Wolfe line search.
/// The objective callback fills the gradient and returns the value; it may
/// return +inf to reject a trial point.
struct LbfgsParams {
  std::size_t memory = 10;
  double c1 = 1e-4;           // sufficient-decrease coefficient
  double c2 = 0.9;            // curvature coefficient
  std::size_t max_evaluations = 2000;
  double grad_inf_tolerance = 1e-10;
  std::size_t max_line_search_steps = 25;
};

enum class LbfgsStatus { gradient_small, stopped_by_callback, max_evaluations, line_search_fail };

struct LbfgsResult {
  Eigen::VectorXd x;
  double f = 0;
  Eigen::VectorXd gradient;
  std::size_t iterations = 0;
  std::size_t evaluations = 0;
  LbfgsStatus status = LbfgsStatus::max_evaluations;
  std::vector<double> history;  // objective after the initial evaluation and each accepted step
};

using LbfgsObjective = std::function<double(const Eigen::VectorXd& x, Eigen::VectorXd& grad)>;

/// `stop` is checked after the initial evaluation and after every accepted
/// step; returning true ends the run with status stopped_by_callback.
LbfgsResult lbfgs_minimize(const LbfgsObjective& objective, Eigen::VectorXd x0,
                           const LbfgsParams& params,
                           const std::function<bool(double f)>& stop = {});

}  // namespace qoc

#endif
