/**
 * @file  newton.hpp
 * @brief Damped Newton iteration for square nonlinear systems with optional
 *        deflation of previously found roots.
 *
 * Deflation replaces F by G(x) = M(x) F(x) with
 *   M(x) = prod_i (1 / ||x - r_i||^p + shift),
 * which keeps every other root of F but pushes iterates away from the r_i.
 * The line search backtracks on ||G||^2; convergence is always judged on the
 * undeflated residual ||F||_inf.
 */

#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <span>

namespace ppps {

struct NewtonSettings {
  int max_iterations = 200;
  double tolerance = 1e-12;
  double divergence = 1e6;
  /// A stalled run still counts as converged below this residual, which is
  /// where rounding in the residual evaluation takes over.
  double stall_tolerance = 1e-10;
  double deflation_power = 2.0;
  double deflation_shift = 1.0;
};

enum class NewtonStatus { Converged, Diverged, Stalled, MaxIterations };

template <int N>
struct NewtonResult {
  Eigen::Matrix<double, N, 1> x;
  NewtonStatus status = NewtonStatus::MaxIterations;
  int iterations = 0;
  double residual = INFINITY;

  bool converged() const { return status == NewtonStatus::Converged; }
};

namespace detail {

template <int N>
struct Deflation {
  using Vec = Eigen::Matrix<double, N, 1>;

  std::span<const Vec> roots;
  double power;
  double shift;

  // Returns M(x) and fills grad with the gradient of M.
  double operator()(const Vec& x, Vec& grad) const {
    double m = 1.0;
    Vec log_grad = Vec::Zero();
    for (const Vec& r : roots) {
      const Vec d = x - r;
      const double dist2 = d.squaredNorm();
      const double inv = std::pow(dist2, -0.5 * power);
      const double factor = inv + shift;
      m *= factor;
      // d/dx ||d||^-p = -p ||d||^(-p-2) d
      log_grad += (-power * inv / dist2 / factor) * d;
    }
    grad = m * log_grad;
    return m;
  }
};

}  // namespace detail

/// System must provide `void operator()(const Vec& x, Vec& f, Mat& jac)`.
template <int N, typename System>
NewtonResult<N> damped_newton(
    System&& system, const Eigen::Matrix<double, N, 1>& start,
    const NewtonSettings& settings,
    std::span<const Eigen::Matrix<double, N, 1>> deflated = {}) {
  using Vec = Eigen::Matrix<double, N, 1>;
  using Mat = Eigen::Matrix<double, N, N>;

  const detail::Deflation<N> deflation{deflated, settings.deflation_power,
                                       settings.deflation_shift};

  Vec f;
  Mat jac;
  Vec grad_m;

  // Merit and Newton system of the (possibly deflated) map at x.
  auto evaluate = [&](const Vec& x, Vec& g, Mat* jg) {
    system(x, f, jac);
    if (deflated.empty()) {
      g = f;
      if (jg) *jg = jac;
    } else {
      const double m = deflation(x, grad_m);
      g = m * f;
      if (jg) *jg = m * jac + f * grad_m.transpose();
    }
    return f.cwiseAbs().maxCoeff();
  };

  NewtonResult<N> result;
  result.x = start;
  Vec g;
  Mat jg;
  double residual = evaluate(result.x, g, &jg);

  for (int iter = 0; iter <= settings.max_iterations; ++iter) {
    result.iterations = iter;
    result.residual = residual;
    if (!std::isfinite(residual) || residual >= settings.divergence ||
        result.x.cwiseAbs().maxCoeff() >= settings.divergence) {
      result.status = NewtonStatus::Diverged;
      return result;
    }
    if (residual <= settings.tolerance) {
      result.status = NewtonStatus::Converged;
      return result;
    }
    if (iter == settings.max_iterations) break;

    Vec step;
    Eigen::FullPivLU<Mat> lu(jg);
    if (lu.isInvertible()) {
      step = -lu.solve(g);
    } else {
      step = -jg.completeOrthogonalDecomposition().solve(g);
    }

    const double merit = g.squaredNorm();
    double alpha = 1.0;
    bool accepted = false;
    Vec trial_g;
    Vec trial;
    double trial_residual = residual;
    while (alpha > 1e-10) {
      trial = result.x + alpha * step;
      trial_residual = evaluate(trial, trial_g, nullptr);
      if (std::isfinite(trial_residual) &&
          trial_g.squaredNorm() <= (1.0 - 1e-4 * alpha) * merit) {
        accepted = true;
        break;
      }
      alpha *= 0.5;
    }

    if (!accepted || step.norm() <= 1e-15 * (1.0 + result.x.norm())) {
      result.status = residual <= settings.stall_tolerance
                          ? NewtonStatus::Converged
                          : NewtonStatus::Stalled;
      return result;
    }
    result.x = trial;
    residual = evaluate(result.x, g, &jg);
  }
  result.status = NewtonStatus::MaxIterations;
  return result;
}

}  // namespace ppps
