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

#include "pcrank/special.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "pcrank/error.hpp"

namespace pcrank {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kInvSqrt2 = 0.70710678118654752440;
constexpr double kInvSqrt2Pi = 0.39894228040143267794;

struct GaussLegendre {
  std::vector<double> nodes;
  std::vector<double> weights;
};

// n-point Gauss-Legendre rule on [-1, 1], nodes by Newton iteration on P_n.
GaussLegendre MakeGaussLegendre(int n) {
  GaussLegendre rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (int i = 0; i < n; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = pk;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    rule.nodes[i] = x;
    rule.weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
  return rule;
}

const GaussLegendre& RuleFor(double abs_rho) {
  static const std::array<GaussLegendre, 3> rules = {
      MakeGaussLegendre(6), MakeGaussLegendre(12), MakeGaussLegendre(20)};
  if (abs_rho < 0.3) return rules[0];
  if (abs_rho < 0.75) return rules[1];
  return rules[2];
}

// Lower-tail cumulative bivariate probability P(X <= x, Y <= y).
double BivariateCdf(double x, double y, double rho) {
  constexpr double kInf = std::numeric_limits<double>::infinity();
  if (x == -kInf || y == -kInf) return 0.0;
  if (x == kInf) return y == kInf ? 1.0 : NormalCdf(y);
  if (y == kInf) return NormalCdf(x);
  return BivariateNormalUpper(-x, -y, rho);
}

}  // namespace

Correlation::Correlation(double rho) : rho_(rho) {
  if (!(std::abs(rho) < 1.0)) {
    Fail(ErrorCode::kInvalidArgument, "correlation must satisfy |rho| < 1");
  }
}

double NormalPdf(double x) { return kInvSqrt2Pi * std::exp(-0.5 * x * x); }

double NormalCdf(double x) { return 0.5 * std::erfc(-x * kInvSqrt2); }

double NormalSf(double x) { return 0.5 * std::erfc(x * kInvSqrt2); }

double NormalInterval(double lower, double upper) {
  if (upper <= lower) return 0.0;
  if (lower > 0.0) return NormalSf(lower) - NormalSf(upper);
  return NormalCdf(upper) - NormalCdf(lower);
}

double NormalQuantile(double p) {
  if (!(p > 0.0 && p < 1.0)) {
    Fail(ErrorCode::kInvalidArgument, "quantile requires 0 < p < 1");
  }
  // Acklam's rational approximation (relative error ~1e-9) followed by one
  // Newton step on the distribution function.
  static constexpr double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                                 -2.759285104469687e+02, 1.383577518672690e+02,
                                 -3.066479806614716e+01, 2.506628277459239e+00};
  static constexpr double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                                 -1.556989798598866e+02, 6.680131188771972e+01,
                                 -1.328068155288572e+01};
  static constexpr double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                                 -2.400758277161838e+00, -2.549732539343734e+00,
                                 4.374664141464968e+00,  2.938163982698783e+00};
  static constexpr double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                                 2.445134137142996e+00, 3.754408661907416e+00};
  constexpr double kLow = 0.02425;

  double x;
  if (p < kLow) {
    const double q = std::sqrt(-2.0 * std::log(p));
    x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  } else if (p <= 1.0 - kLow) {
    const double q = p - 0.5;
    const double r = q * q;
    x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) *
        q /
        (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
  } else {
    const double q = std::sqrt(-2.0 * std::log1p(-p));
    x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }

  const double density = NormalPdf(x);
  if (density > 0.0) {
    // Work with the smaller tail so the residual keeps its precision.
    const double residual = p < 0.5 ? NormalCdf(x) - p : (1.0 - p) - NormalSf(x);
    x -= residual / density;
  }
  return x;
}

// Drezner-Wesolowsky as refined by Genz: Gauss-Legendre quadrature over the
// correlation for moderate |rho|, and an asymptotic expansion around |rho|=1
// otherwise.
double BivariateNormalUpper(double h, double k, double rho) {
  const GaussLegendre& rule = RuleFor(std::abs(rho));
  double hk = h * k;
  double bvn = 0.0;

  if (std::abs(rho) < 0.925) {
    const double hs = 0.5 * (h * h + k * k);
    const double asr = std::asin(rho);
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
      const double sn = std::sin(0.5 * asr * (rule.nodes[i] + 1.0));
      bvn += rule.weights[i] * std::exp((sn * hk - hs) / (1.0 - sn * sn));
    }
    return bvn * asr / (2.0 * kTwoPi) + NormalSf(h) * NormalSf(k);
  }

  if (rho < 0.0) {
    k = -k;
    hk = -hk;
  }
  if (std::abs(rho) < 1.0) {
    const double as = (1.0 - rho) * (1.0 + rho);
    double a = std::sqrt(as);
    const double bs = (h - k) * (h - k);
    const double c = (4.0 - hk) / 8.0;
    const double d = (12.0 - hk) / 16.0;
    bvn = a * std::exp(-0.5 * (bs / as + hk)) *
          (1.0 - c * (bs - as) * (1.0 - d * bs / 5.0) / 3.0 +
           c * d * as * as / 5.0);
    if (hk > -160.0) {
      const double b = std::sqrt(bs);
      bvn -= std::exp(-0.5 * hk) * std::sqrt(kTwoPi) * NormalCdf(-b / a) * b *
             (1.0 - c * bs * (1.0 - d * bs / 5.0) / 3.0);
    }
    a *= 0.5;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
      const double t = a * (rule.nodes[i] + 1.0);
      const double xs = t * t;
      const double rs = std::sqrt(1.0 - xs);
      const double asr = -0.5 * (bs / xs + hk);
      if (asr > -100.0) {
        bvn += a * rule.weights[i] * std::exp(asr) *
               (std::exp(-hk * xs / (2.0 * (1.0 + rs) * (1.0 + rs))) / rs -
                (1.0 + c * xs * (1.0 + d * xs)));
      }
    }
    bvn = -bvn / kTwoPi;
  }
  if (rho > 0.0) {
    bvn += NormalCdf(-std::max(h, k));
  } else {
    bvn = -bvn;
    if (k > h) {
      if (h < 0.0) {
        bvn += NormalCdf(k) - NormalCdf(h);
      } else {
        bvn += NormalCdf(-h) - NormalCdf(-k);
      }
    }
  }
  return bvn;
}

double BivariateNormalRect(double a1, double b1, double a2, double b2,
                           Correlation rho) {
  if (std::isnan(a1) || std::isnan(b1) || std::isnan(a2) || std::isnan(b2)) {
    Fail(ErrorCode::kInvalidArgument, "NaN rectangle bound");
  }
  if (a1 > b1 || a2 > b2) {
    Fail(ErrorCode::kInvalidArgument, "inverted rectangle bounds");
  }
  if (a1 == b1 || a2 == b2) return 0.0;
  const double r = rho.value();
  const double p = BivariateCdf(b1, b2, r) - BivariateCdf(a1, b2, r) -
                   BivariateCdf(b1, a2, r) + BivariateCdf(a1, a2, r);
  return std::clamp(p, 0.0, 1.0);
}

}  // namespace pcrank
