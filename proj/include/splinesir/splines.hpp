/*
 * SPDX-License-Identifier: Apache-2.0
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef SPLINESIR_SPLINES_HPP
#define SPLINESIR_SPLINES_HPP

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace splinesir {

enum class KernelKind { Nearest, Linear, Keys, BSpline, OMoms3 };

/**
 * Symmetric finite-support kernel used for generalized interpolation of
 * uniformly sampled signals.
 *
 * Supports: nearest (1), linear (2), Keys (4), B-spline of degree n (n + 1),
 * cubic O-MoMS (4). Nearest is the degree-0 B-spline and takes the value 1/2
 * at |x| = 1/2.
 */
class BasisFunction {
 public:
  static BasisFunction nearest();
  static BasisFunction linear();
  static BasisFunction keys(double a = -0.5);
  static BasisFunction bspline(int degree);
  static BasisFunction omoms3();

  /// Parses "nearest", "linear", "keys", "omoms3" or "bsplineN".
  static BasisFunction parse(std::string_view name);

  KernelKind kind() const { return kind_; }
  /// Polynomial degree of the kernel pieces (Keys: 3).
  int degree() const { return degree_; }
  double keys_parameter() const { return keys_a_; }

  /// Width of the support in samples.
  double support() const;
  /// Number of integer samples on each side of the origin that the kernel can reach.
  int half_support() const;
  bool interpolating() const;
  /// Theoretical approximation order L (error ~ T^L).
  int approximation_order() const;
  std::string name() const;

  double operator()(double x) const;

  friend bool operator==(const BasisFunction&, const BasisFunction&) = default;

 private:
  BasisFunction(KernelKind kind, int degree, double keys_a)
      : kind_(kind), degree_(degree), keys_a_(keys_a) {}

  KernelKind kind_;
  int degree_;
  double keys_a_;
};

double eval_basis(const BasisFunction& f, double x);

/// Centered B-spline of degree n via the one-sided power sum.
double bspline_value(int degree, double x);

/**
 * Convolution-inverse of the kernel's integer samples, factored into
 * first-order causal/anti-causal pole pairs (z_i, 1/z_i).
 */
struct Prefilter {
  std::vector<double> poles;  // |z| < 1, sorted by decreasing magnitude
  double gain = 1.0;          // prod (1 - z_i)^2, unit DC gain

  bool empty() const { return poles.empty(); }
};

inline constexpr int kMaxPrefilterDegree = 11;

Prefilter prefilter_poles(const BasisFunction& f);

/// Samples phi(k) for k = -half_support .. half_support.
std::vector<double> kernel_samples(const BasisFunction& f);

/**
 * Basis coefficients c of the samples, with c[k] = 0 outside [0, K-1] and
 * sum_k c[k] phi(k0 - k) = samples[k0] for every k0 in [0, K-1].
 *
 * The bulk of the work is the cascaded causal/anti-causal recursion per
 * pole; the zero boundary condition on the coefficients is then imposed
 * exactly by adding the 2m decaying homogeneous solutions at both ends.
 */
std::vector<double> compute_coefficients(std::span<const double> samples,
                                         const BasisFunction& f);

/**
 * Applies the (infinite-support) convolution-inverse to a zero-extended
 * sequence and returns the result restricted to the input extent.
 */
std::vector<double> apply_convolution_inverse(std::span<const double> samples,
                                              const Prefilter& prefilter);

/// sum_k coeffs[k] phi(x - k) over the coefficient extent.
double reconstruct(std::span<const double> coeffs, const BasisFunction& f, double x);

}  // namespace splinesir

#endif  // SPLINESIR_SPLINES_HPP
