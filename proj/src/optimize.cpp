// Copyright 2026 The pcrank Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "pcrank/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "pcrank/error.hpp"

namespace pcrank {

namespace {

double Dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double InfNorm(std::span<const double> v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

bool AllFinite(std::span<const double> v) {
  return std::all_of(v.begin(), v.end(),
                     [](double x) { return std::isfinite(x); });
}

// Minimization state: f = -objective, g = -gradient.
struct Point {
  std::vector<double> x;
  double f = 0.0;
  std::vector<double> g;
};

Point Evaluate(const SmoothObjective& objective, std::vector<double> x) {
  Evaluation e = objective(x);
  Point pt{std::move(x), -e.value, std::move(e.gradient)};
  for (double& gi : pt.g) gi = -gi;
  return pt;
}

class InverseHessian {
 public:
  explicit InverseHessian(std::size_t n) : n_(n) { Reset(1.0); }

  void Reset(double scale) {
    h_.assign(n_ * n_, 0.0);
    for (std::size_t i = 0; i < n_; ++i) h_[i * n_ + i] = scale;
  }

  std::vector<double> Apply(std::span<const double> v) const {
    std::vector<double> out(n_, 0.0);
    for (std::size_t i = 0; i < n_; ++i) {
      out[i] = Dot(std::span(h_).subspan(i * n_, n_), v);
    }
    return out;
  }

  // H <- (I - r s y^T) H (I - r y s^T) + r s s^T, r = 1 / (y^T s).
  void Update(std::span<const double> s, std::span<const double> y) {
    const double sy = Dot(s, y);
    const std::vector<double> hy = Apply(y);
    const double yhy = Dot(y, hy);
    const double r = 1.0 / sy;
    const double coef = (1.0 + r * yhy) * r;
    for (std::size_t i = 0; i < n_; ++i) {
      for (std::size_t j = 0; j < n_; ++j) {
        h_[i * n_ + j] +=
            coef * s[i] * s[j] - r * (hy[i] * s[j] + s[i] * hy[j]);
      }
    }
  }

 private:
  std::size_t n_;
  std::vector<double> h_;
};

}  // namespace

void OptimizerConfig::Validate() const {
  if (!(gradient_tolerance > 0.0) || max_iterations <= 0 ||
      !(scalar_tolerance > 0.0)) {
    Fail(ErrorCode::kInvalidArgument, "optimizer settings must be positive");
  }
}

OptimizeResult MaximizeSmooth(const SmoothObjective& objective,
                              std::vector<double> x0,
                              const OptimizerConfig& config) {
  config.Validate();
  const std::size_t n = x0.size();
  Point cur = Evaluate(objective, std::move(x0));
  if (!std::isfinite(cur.f) || !AllFinite(cur.g)) {
    Fail(ErrorCode::kNumerical, "objective is not finite at the start point");
  }

  OptimizeResult result;
  InverseHessian hinv(n);
  bool identity = true;
  constexpr double kArmijo = 1e-4;
  constexpr double kCurvature = 0.9;

  int iter = 0;
  for (; iter < config.max_iterations; ++iter) {
    if (InfNorm(cur.g) <= config.gradient_tolerance) {
      result.converged = true;
      break;
    }
    std::vector<double> d = hinv.Apply(cur.g);
    for (double& di : d) di = -di;
    double slope = Dot(cur.g, d);
    if (!(slope < 0.0)) {
      hinv.Reset(1.0);
      identity = true;
      d = cur.g;
      for (double& di : d) di = -di;
      slope = Dot(cur.g, d);
    }

    // First steepest-descent step is limited to unit length.
    double alpha = identity ? std::min(1.0, 1.0 / InfNorm(d)) : 1.0;
    const double f_slack = 1e-12 * (1.0 + std::abs(cur.f));
    bool accepted = false;
    Point next;
    for (int ls = 0; ls < 60; ++ls) {
      std::vector<double> x(n);
      for (std::size_t i = 0; i < n; ++i) x[i] = cur.x[i] + alpha * d[i];
      next = Evaluate(objective, std::move(x));
      if (std::isfinite(next.f) && AllFinite(next.g)) {
        const double new_slope = Dot(next.g, d);
        const bool armijo = next.f <= cur.f + kArmijo * alpha * slope;
        // Approximate Wolfe test: once f differences drop to rounding level
        // the slope is the only usable signal.
        const bool approx_wolfe = next.f <= cur.f + f_slack &&
                                  new_slope >= kCurvature * slope &&
                                  new_slope <= -(1.0 - 2.0 * kArmijo) * slope;
        if (armijo || approx_wolfe) {
          accepted = true;
          break;
        }
      }
      alpha *= 0.5;
    }
    if (!accepted) {
      if (identity) break;
      hinv.Reset(1.0);
      identity = true;
      continue;
    }

    std::vector<double> s(n), y(n);
    for (std::size_t i = 0; i < n; ++i) {
      s[i] = next.x[i] - cur.x[i];
      y[i] = next.g[i] - cur.g[i];
    }
    const double sy = Dot(s, y);
    if (sy > 1e-12 * std::sqrt(Dot(s, s) * Dot(y, y))) {
      if (identity) hinv.Reset(sy / Dot(y, y));
      hinv.Update(s, y);
      identity = false;
    }
    cur = std::move(next);
  }

  result.iterations = iter;
  result.gradient_norm = InfNorm(cur.g);
  if (result.gradient_norm <= config.gradient_tolerance) {
    result.converged = true;
  }
  result.value = -cur.f;
  result.argmax = std::move(cur.x);
  return result;
}

double BrentMaxScalar(const std::function<double(double)>& objective,
                      double lo, double hi, const OptimizerConfig& config) {
  config.Validate();
  if (!(lo < hi) || !std::isfinite(lo) || !std::isfinite(hi)) {
    Fail(ErrorCode::kInvalidArgument, "Brent search needs finite lo < hi");
  }
  auto f = [&](double x) { return -objective(x); };
  const double golden = 0.5 * (3.0 - std::sqrt(5.0));
  const double rel = std::sqrt(std::numeric_limits<double>::epsilon());
  const double abs_tol = config.scalar_tolerance;

  double a = lo;
  double b = hi;
  double x = a + golden * (b - a);
  double w = x;
  double v = x;
  double fx = f(x);
  double fw = fx;
  double fv = fx;
  double d = 0.0;
  double e = 0.0;

  for (int iter = 0; iter < 1000; ++iter) {
    const double m = 0.5 * (a + b);
    const double tol = rel * std::abs(x) + abs_tol / 3.0;
    const double t2 = 2.0 * tol;
    if (std::abs(x - m) <= t2 - 0.5 * (b - a)) break;

    double p = 0.0;
    double q = 0.0;
    double r = 0.0;
    if (std::abs(e) > tol) {
      r = (x - w) * (fx - fv);
      q = (x - v) * (fx - fw);
      p = (x - v) * q - (x - w) * r;
      q = 2.0 * (q - r);
      if (q > 0.0) {
        p = -p;
      } else {
        q = -q;
      }
      r = e;
      e = d;
    }
    if (std::abs(p) < std::abs(0.5 * q * r) && p > q * (a - x) &&
        p < q * (b - x)) {
      d = p / q;
      const double u = x + d;
      if (u - a < t2 || b - u < t2) d = x < m ? tol : -tol;
    } else {
      e = (x < m ? b : a) - x;
      d = golden * e;
    }
    // Rounding in x + d can step one ulp past the bracket.
    const double u = std::clamp(
        x + (std::abs(d) >= tol ? d : (d > 0.0 ? tol : -tol)), lo, hi);
    const double fu = f(u);
    if (fu <= fx) {
      if (u < x) {
        b = x;
      } else {
        a = x;
      }
      v = w;
      fv = fw;
      w = x;
      fw = fx;
      x = u;
      fx = fu;
    } else {
      if (u < x) {
        a = u;
      } else {
        b = u;
      }
      if (fu <= fw || w == x) {
        v = w;
        fv = fw;
        w = u;
        fw = fu;
      } else if (fu <= fv || v == x || v == w) {
        v = u;
        fv = fu;
      }
    }
  }

  double best = x;
  double fbest = fx;
  for (double edge : {lo, hi}) {
    const double fe = f(edge);
    if (fe < fbest) {
      best = edge;
      fbest = fe;
    }
  }
  return best;
}

}  // namespace pcrank
