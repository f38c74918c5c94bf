#pragma once

#include <Eigen/Dense>

#include <functional>
#include <string>
#include <vector>

namespace vqesim {

/// f(x); must be deterministic.
using ScalarFunction = std::function<double(const Eigen::VectorXd&)>;
/// f(x) with the gradient written to `grad`.
using GradientFunction = std::function<double(const Eigen::VectorXd&, Eigen::VectorXd& grad)>;

struct OptimizerOptions {
  double tol = 1e-6;
  int max_iterations = 1000;
};

struct OptimizationResult {
  Eigen::VectorXd x;
  double value = 0.0;
  std::vector<double> trace;  // value after each iteration, trace[0] at x0
  int iterations = 0;
  int evaluations = 0;
  bool converged = false;
  std::string message;
};

/// BFGS with a strong-Wolfe line search. Stops when an iteration changes the
/// value by less than tol or the gradient max-norm drops below tol.
/// Throws std::runtime_error on a non-finite value or gradient.
OptimizationResult minimize_bfgs(const GradientFunction& f, Eigen::VectorXd x0, const OptimizerOptions& options);

/// Nelder-Mead simplex. Stops when the spread of simplex values and the
/// change of the best value are both below tol.
OptimizationResult minimize_nelder_mead(const ScalarFunction& f, Eigen::VectorXd x0, const OptimizerOptions& options,
                                        double initial_step = 0.1);

}  // namespace vqesim
