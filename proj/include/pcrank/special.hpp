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

// Standard normal primitives: density, distribution function, quantile, and
// rectangle probabilities of the standard bivariate normal.

#ifndef PCRANK_SPECIAL_HPP_
#define PCRANK_SPECIAL_HPP_

namespace pcrank {

// Correlation coefficient of a standard bivariate normal, |rho| < 1.
class Correlation {
 public:
  explicit Correlation(double rho);
  double value() const { return rho_; }

 private:
  double rho_;
};

double NormalPdf(double x);

// Phi(x). Saturates to 0 or 1 in the far tails.
double NormalCdf(double x);

// 1 - Phi(x), accurate in the upper tail.
double NormalSf(double x);

// Phi(upper) - Phi(lower) evaluated in whichever tail avoids cancellation.
// Either bound may be infinite.
double NormalInterval(double lower, double upper);

// Phi^{-1}(p) for 0 < p < 1.
double NormalQuantile(double p);

// P(X > h, Y > k) for a standard bivariate normal with correlation rho.
// Finite h and k only.
double BivariateNormalUpper(double h, double k, double rho);

// P(a1 < X <= b1, a2 < Y <= b2). Bounds may be +/-infinity.
double BivariateNormalRect(double a1, double b1, double a2, double b2,
                           Correlation rho);

}  // namespace pcrank

#endif  // PCRANK_SPECIAL_HPP_
