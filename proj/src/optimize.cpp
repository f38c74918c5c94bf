#include "vqesim/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace vqesim {

namespace {

struct Point {
  double step = 0.0;
  double value = 0.0;
  double slope = 0.0;  // directional derivative
  Eigen::VectorXd grad;
};

class LineSearch {
 public:
  LineSearch(const GradientFunction& f, const Eigen::VectorXd& x, const Eigen::VectorXd& dir, int& evaluations)
      : f_(f), x_(x), dir_(dir), evaluations_(evaluations) {}

  Point eval(double step) {
    Point p;
    p.step = step;
    p.grad.resize(x_.size());
    p.value = f_(x_ + step * dir_, p.grad);
    ++evaluations_;
    if (!std::isfinite(p.value) || !p.grad.allFinite()) {
      throw std::runtime_error("objective returned a non-finite value");
    }
    p.slope = p.grad.dot(dir_);
    return p;
  }

  // Strong Wolfe conditions with c1 = 1e-4, c2 = 0.9.
  bool search(const Point& origin, double initial_step, Point& accepted) {
    constexpr double c1 = 1e-4, c2 = 0.9;
    Point prev = origin;
    double step = initial_step;
    for (int i = 0; i < 40; ++i) {
      Point cur = eval(step);
      if (cur.value > origin.value + c1 * step * origin.slope || (i > 0 && cur.value >= prev.value)) {
        return zoom(origin, prev, cur, accepted);
      }
      if (std::abs(cur.slope) <= -c2 * origin.slope) {
        accepted = std::move(cur);
        return true;
      }
      if (cur.slope >= 0) return zoom(origin, cur, prev, accepted);
      prev = std::move(cur);
      step *= 2.0;
    }
    return false;
  }

 private:
  bool zoom(const Point& origin, Point lo, Point hi, Point& accepted) {
    constexpr double c1 = 1e-4, c2 = 0.9;
    for (int j = 0; j < 40; ++j) {
      const double width = hi.step - lo.step;
      // minimizer of the quadratic through lo (value, slope) and hi (value)
      double step = lo.step + 0.5 * width;
      const double denom = hi.value - lo.value - lo.slope * width;
      if (denom > 0) step = lo.step - 0.5 * lo.slope * width * width / denom;
      const double a = std::min(lo.step, hi.step), b = std::max(lo.step, hi.step);
      step = std::clamp(step, a + 0.1 * (b - a), b - 0.1 * (b - a));
      Point cur = eval(step);
      if (cur.value > origin.value + c1 * step * origin.slope || cur.value >= lo.value) {
        hi = std::move(cur);
      } else {
        if (std::abs(cur.slope) <= -c2 * origin.slope) {
          accepted = std::move(cur);
          return true;
        }
        if (cur.slope * (hi.step - lo.step) >= 0) hi = lo;
        lo = std::move(cur);
      }
      if (std::abs(hi.step - lo.step) < 1e-14) break;
    }
    // accept any decrease found
    if (lo.step != 0.0 && lo.value < origin.value) {
      accepted = std::move(lo);
      return true;
    }
    return false;
  }

  const GradientFunction& f_;
  const Eigen::VectorXd& x_;
  const Eigen::VectorXd& dir_;
  int& evaluations_;
};

}  // namespace

OptimizationResult minimize_bfgs(const GradientFunction& f, Eigen::VectorXd x0, const OptimizerOptions& options) {
  OptimizationResult out;
  const Eigen::Index n = x0.size();
  out.x = std::move(x0);
  Eigen::VectorXd grad(n);
  out.value = f(out.x, grad);
  out.evaluations = 1;
  if (!std::isfinite(out.value) || !grad.allFinite()) throw std::runtime_error("objective returned a non-finite value");
  out.trace.push_back(out.value);
  if (n == 0 || grad.lpNorm<Eigen::Infinity>() < options.tol) {
    out.converged = true;
    out.message = "gradient below tolerance";
    return out;
  }

  Eigen::MatrixXd inv_hessian = Eigen::MatrixXd::Identity(n, n);
  bool scaled = false;
  for (int it = 1; it <= options.max_iterations; ++it) {
    Eigen::VectorXd dir = -inv_hessian * grad;
    if (grad.dot(dir) >= 0) {
      inv_hessian.setIdentity();
      dir = -grad;
    }
    LineSearch ls(f, out.x, dir, out.evaluations);
    Point origin{0.0, out.value, grad.dot(dir), grad};
    Point accepted;
    double first_step = scaled ? 1.0 : std::min(1.0, 1.0 / grad.lpNorm<Eigen::Infinity>());
    if (!ls.search(origin, first_step, accepted)) {
      if (inv_hessian.isIdentity()) {
        out.message = "line search failed";
        out.iterations = it;
        out.converged = grad.lpNorm<Eigen::Infinity>() < std::sqrt(options.tol);
        return out;
      }
      inv_hessian.setIdentity();
      scaled = false;
      continue;
    }
    const Eigen::VectorXd s = accepted.step * dir;
    const Eigen::VectorXd y = accepted.grad - grad;
    const double ys = y.dot(s);
    if (ys > 1e-16) {
      if (!scaled) {
        inv_hessian *= ys / y.squaredNorm();
        scaled = true;
      }
      const double rho = 1.0 / ys;
      const Eigen::VectorXd hy = inv_hessian * y;
      const double yhy = y.dot(hy);
      inv_hessian += (rho * rho * yhy + rho) * s * s.transpose() - rho * (hy * s.transpose() + s * hy.transpose());
    }
    const double change = out.value - accepted.value;
    out.x += s;
    out.value = accepted.value;
    grad = accepted.grad;
    out.trace.push_back(out.value);
    out.iterations = it;
    if (std::abs(change) < options.tol) {
      out.converged = true;
      out.message = "energy change below tolerance";
      return out;
    }
    if (grad.lpNorm<Eigen::Infinity>() < options.tol) {
      out.converged = true;
      out.message = "gradient below tolerance";
      return out;
    }
  }
  out.message = "iteration limit reached";
  return out;
}

OptimizationResult minimize_nelder_mead(const ScalarFunction& f, Eigen::VectorXd x0, const OptimizerOptions& options,
                                        double initial_step) {
  OptimizationResult out;
  const Eigen::Index n = x0.size();
  auto eval = [&](const Eigen::VectorXd& x) {
    const double v = f(x);
    ++out.evaluations;
    if (!std::isfinite(v)) throw std::runtime_error("objective returned a non-finite value");
    return v;
  };

  std::vector<Eigen::VectorXd> simplex{x0};
  for (Eigen::Index i = 0; i < n; ++i) {
    Eigen::VectorXd v = x0;
    v(i) += initial_step;
    simplex.push_back(std::move(v));
  }
  std::vector<double> values;
  for (const auto& v : simplex) values.push_back(eval(v));
  out.trace.push_back(values[0]);
  if (n == 0) {
    out.x = x0;
    out.value = values[0];
    out.converged = true;
    return out;
  }

  std::vector<std::size_t> order(simplex.size());
  double last_best = values[0];
  for (int it = 1; it <= options.max_iterations; ++it) {
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return values[a] < values[b]; });
    const std::size_t best = order.front(), worst = order.back(), second = order[order.size() - 2];

    Eigen::VectorXd centroid = Eigen::VectorXd::Zero(n);
    for (std::size_t k = 0; k + 1 < order.size(); ++k) centroid += simplex[order[k]];
    centroid /= static_cast<double>(n);

    const Eigen::VectorXd reflected = centroid + (centroid - simplex[worst]);
    const double fr = eval(reflected);
    if (fr < values[best]) {
      const Eigen::VectorXd expanded = centroid + 2.0 * (centroid - simplex[worst]);
      const double fe = eval(expanded);
      if (fe < fr) {
        simplex[worst] = expanded;
        values[worst] = fe;
      } else {
        simplex[worst] = reflected;
        values[worst] = fr;
      }
    } else if (fr < values[second]) {
      simplex[worst] = reflected;
      values[worst] = fr;
    } else {
      const bool outside = fr < values[worst];
      const Eigen::VectorXd contracted =
          outside ? Eigen::VectorXd(centroid + 0.5 * (reflected - centroid))
                  : Eigen::VectorXd(centroid + 0.5 * (simplex[worst] - centroid));
      const double fc = eval(contracted);
      if (fc < std::min(fr, values[worst])) {
        simplex[worst] = contracted;
        values[worst] = fc;
      } else {
        for (std::size_t k = 1; k < order.size(); ++k) {
          auto& v = simplex[order[k]];
          v = simplex[best] + 0.5 * (v - simplex[best]);
          values[order[k]] = eval(v);
        }
      }
    }

    const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
    out.trace.push_back(*lo);
    out.iterations = it;
    const double change = last_best - *lo;
    last_best = *lo;
    if (*hi - *lo < options.tol && change < options.tol) {
      out.converged = true;
      out.message = "simplex spread below tolerance";
      break;
    }
  }
  if (!out.converged) out.message = "iteration limit reached";
  const auto best = static_cast<std::size_t>(std::min_element(values.begin(), values.end()) - values.begin());
  out.x = simplex[best];
  out.value = values[best];
  return out;
}

}  // namespace vqesim
