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

#include "splinesir/splines.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <complex>
#include <stdexcept>

#include <Eigen/Dense>

namespace splinesir {

namespace {

double factorial(int n) {
  double r = 1.0;
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

double keys_value(double a, double x) {
  const double t = std::abs(x);
  if (t < 1.0) return ((a + 2.0) * t - (a + 3.0)) * t * t + 1.0;
  if (t < 2.0) return ((a * t - 5.0 * a) * t + 8.0 * a) * t - 4.0 * a;
  return 0.0;
}

double omoms3_value(double x) {
  const double t = std::abs(x);
  if (t < 1.0) return ((0.5 * t - 1.0) * t + 1.0 / 14.0) * t + 13.0 / 21.0;
  if (t < 2.0) return ((-t / 6.0 + 1.0) * t - 85.0 / 42.0) * t + 29.0 / 21.0;
  return 0.0;
}

// Real roots inside the unit circle of sum_j samples[j] z^j (samples symmetric).
std::vector<double> poles_from_samples(const std::vector<double>& samples) {
  const int degree = static_cast<int>(samples.size()) - 1;
  const double lead = samples.back();
  Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(degree, degree);
  for (int i = 1; i < degree; ++i) companion(i, i - 1) = 1.0;
  for (int i = 0; i < degree; ++i) companion(i, degree - 1) = -samples[i] / lead;
  const Eigen::VectorXcd roots = companion.eigenvalues();

  auto poly = [&](double z, double& dp) {
    double p = 0.0;
    dp = 0.0;
    for (int j = degree; j >= 0; --j) {
      dp = dp * z + p;
      p = p * z + samples[j];
    }
    return p;
  };

  std::vector<double> poles;
  for (const auto& r : roots) {
    if (std::abs(r) >= 1.0) continue;
    if (std::abs(r.imag()) > 1e-8) {
      throw std::runtime_error("prefilter: complex pole for a symmetric B-spline kernel");
    }
    double z = r.real();
    for (int it = 0; it < 8; ++it) {
      double dp = 0.0;
      const double p = poly(z, dp);
      if (dp == 0.0) break;
      z -= p / dp;
    }
    poles.push_back(z);
  }
  return poles;
}

// Runs the cascaded first-order recursions of `prefilter` on `data` in place.
// `data` is treated as the restriction of a sequence that is zero before its
// first element; the anti-causal pass starts from the geometric-tail value.
void run_recursions(std::vector<double>& data, const Prefilter& prefilter) {
  const std::size_t n = data.size();
  if (n == 0) return;
  for (const double z : prefilter.poles) {
    for (std::size_t k = 1; k < n; ++k) data[k] += z * data[k - 1];
    data[n - 1] /= (1.0 - z * z);
    for (std::size_t k = n - 1; k-- > 0;) data[k] += z * data[k + 1];
  }
  for (double& d : data) d *= prefilter.gain;
}

// Samples of padding needed so that the slowest pole has decayed below 1e-20.
std::size_t tail_padding(const Prefilter& prefilter) {
  double zmax = 0.0;
  for (const double z : prefilter.poles) zmax = std::max(zmax, std::abs(z));
  if (zmax == 0.0) return 0;
  const double p = std::ceil(std::log(1e-20) / std::log(zmax));
  return static_cast<std::size_t>(p) + prefilter.poles.size() + 1;
}

}  // namespace

BasisFunction BasisFunction::nearest() { return {KernelKind::Nearest, 0, 0.0}; }
BasisFunction BasisFunction::linear() { return {KernelKind::Linear, 1, 0.0}; }
BasisFunction BasisFunction::keys(double a) { return {KernelKind::Keys, 3, a}; }
BasisFunction BasisFunction::omoms3() { return {KernelKind::OMoms3, 3, 0.0}; }

BasisFunction BasisFunction::bspline(int degree) {
  if (degree < 0 || degree > 25) {
    throw std::invalid_argument("bspline: degree must be in [0, 25]");
  }
  return {KernelKind::BSpline, degree, 0.0};
}

BasisFunction BasisFunction::parse(std::string_view name) {
  if (name == "nearest") return nearest();
  if (name == "linear") return linear();
  if (name == "keys") return keys();
  if (name == "omoms3") return omoms3();
  if (name.starts_with("bspline")) {
    const auto digits = name.substr(7);
    int degree = -1;
    const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), degree);
    if (ec == std::errc{} && ptr == digits.data() + digits.size() && !digits.empty()) {
      return bspline(degree);
    }
  }
  throw std::invalid_argument("unknown basis function: " + std::string(name));
}

double BasisFunction::support() const {
  switch (kind_) {
    case KernelKind::Nearest: return 1.0;
    case KernelKind::Linear: return 2.0;
    case KernelKind::Keys: return 4.0;
    case KernelKind::BSpline: return degree_ + 1.0;
    case KernelKind::OMoms3: return 4.0;
  }
  return 0.0;
}

int BasisFunction::half_support() const {
  return static_cast<int>(std::ceil(support() / 2.0));
}

bool BasisFunction::interpolating() const {
  switch (kind_) {
    case KernelKind::Nearest:
    case KernelKind::Linear:
    case KernelKind::Keys:
      return true;
    case KernelKind::BSpline:
      return degree_ <= 1;
    case KernelKind::OMoms3:
      return false;
  }
  return false;
}

int BasisFunction::approximation_order() const {
  switch (kind_) {
    case KernelKind::Nearest: return 1;
    case KernelKind::Linear: return 2;
    case KernelKind::Keys: return keys_a_ == -0.5 ? 3 : 1;
    case KernelKind::BSpline: return degree_ + 1;
    case KernelKind::OMoms3: return 4;
  }
  return 0;
}

std::string BasisFunction::name() const {
  switch (kind_) {
    case KernelKind::Nearest: return "nearest";
    case KernelKind::Linear: return "linear";
    case KernelKind::Keys:
      return keys_a_ == -0.5 ? "keys" : "keys(a=" + std::to_string(keys_a_) + ")";
    case KernelKind::BSpline: return "bspline" + std::to_string(degree_);
    case KernelKind::OMoms3: return "omoms3";
  }
  return {};
}

double bspline_value(int degree, double x) {
  const double t = std::abs(x);
  const double half = 0.5 * (degree + 1);
  if (t > half) return 0.0;
  const double scale = (degree + 1) / factorial(degree + 1);
  double sum = 0.0;
  double binom = 1.0;  // C(n+1, k)
  for (int k = 0; k <= degree + 1; ++k) {
    const double arg = half - t - k;
    if (arg < 0.0) break;
    double power;
    if (degree == 0) {
      power = arg > 0.0 ? 1.0 : 0.5;
    } else {
      power = std::pow(arg, degree);
    }
    sum += (k % 2 == 0 ? 1.0 : -1.0) * binom * power;
    binom = binom * (degree + 1 - k) / (k + 1);
  }
  // (n+1)/((n+1-k)! k!) = C(n+1, k) (n+1) / (n+1)!
  return sum * scale;
}

double BasisFunction::operator()(double x) const {
  switch (kind_) {
    case KernelKind::Nearest: return bspline_value(0, x);
    case KernelKind::Linear: return std::max(0.0, 1.0 - std::abs(x));
    case KernelKind::Keys: return keys_value(keys_a_, x);
    case KernelKind::BSpline: return bspline_value(degree_, x);
    case KernelKind::OMoms3: return omoms3_value(x);
  }
  return 0.0;
}

double eval_basis(const BasisFunction& f, double x) { return f(x); }

std::vector<double> kernel_samples(const BasisFunction& f) {
  const int h = f.half_support();
  std::vector<double> out;
  out.reserve(2 * h + 1);
  for (int k = -h; k <= h; ++k) out.push_back(f(static_cast<double>(k)));
  return out;
}

Prefilter prefilter_poles(const BasisFunction& f) {
  Prefilter pf;
  if (f.interpolating()) return pf;

  if (f.kind() == KernelKind::OMoms3) {
    pf.poles = {(-13.0 + std::sqrt(105.0)) / 8.0};
  } else {
    switch (f.degree()) {
      case 2:
        pf.poles = {std::sqrt(8.0) - 3.0};
        break;
      case 3:
        pf.poles = {std::sqrt(3.0) - 2.0};
        break;
      case 4:
        pf.poles = {std::sqrt(664.0 - std::sqrt(438976.0)) + std::sqrt(304.0) - 19.0,
                    std::sqrt(664.0 + std::sqrt(438976.0)) - std::sqrt(304.0) - 19.0};
        break;
      case 5:
        pf.poles = {std::sqrt(135.0 / 2.0 - std::sqrt(17745.0 / 4.0)) + std::sqrt(105.0 / 4.0) - 13.0 / 2.0,
                    std::sqrt(135.0 / 2.0 + std::sqrt(17745.0 / 4.0)) - std::sqrt(105.0 / 4.0) - 13.0 / 2.0};
        break;
      default: {
        if (f.degree() > kMaxPrefilterDegree) {
          throw std::invalid_argument("prefilter: unsupported B-spline degree " +
                                      std::to_string(f.degree()));
        }
        // Drop the zero samples at the support edge (even degrees reach them).
        std::vector<double> s = kernel_samples(f);
        const std::size_t m = static_cast<std::size_t>(f.degree() / 2);
        const std::size_t mid = s.size() / 2;
        s = std::vector<double>(s.begin() + (mid - m), s.begin() + (mid + m + 1));
        pf.poles = poles_from_samples(s);
        break;
      }
    }
  }
  std::sort(pf.poles.begin(), pf.poles.end(),
            [](double a, double b) { return std::abs(a) > std::abs(b); });
  pf.gain = 1.0;
  for (const double z : pf.poles) pf.gain *= (1.0 - z) * (1.0 - z);
  return pf;
}

std::vector<double> apply_convolution_inverse(std::span<const double> samples,
                                              const Prefilter& prefilter) {
  if (prefilter.empty()) return {samples.begin(), samples.end()};
  const std::size_t pad = tail_padding(prefilter);
  std::vector<double> ext(samples.size() + 2 * pad, 0.0);
  std::copy(samples.begin(), samples.end(), ext.begin() + static_cast<std::ptrdiff_t>(pad));
  run_recursions(ext, prefilter);
  return {ext.begin() + static_cast<std::ptrdiff_t>(pad),
          ext.begin() + static_cast<std::ptrdiff_t>(pad + samples.size())};
}

std::vector<double> compute_coefficients(std::span<const double> samples,
                                         const BasisFunction& f) {
  const Prefilter prefilter = prefilter_poles(f);
  if (prefilter.empty() || samples.empty()) return {samples.begin(), samples.end()};

  const auto count = static_cast<std::ptrdiff_t>(samples.size());
  const auto m = static_cast<std::ptrdiff_t>(prefilter.poles.size());
  const auto pad = static_cast<std::ptrdiff_t>(tail_padding(prefilter));

  // Particular solution on [-pad, K + pad): inverse filter of the zero-extended samples.
  std::vector<double> ext(static_cast<std::size_t>(count + 2 * pad), 0.0);
  std::copy(samples.begin(), samples.end(), ext.begin() + pad);
  run_recursions(ext, prefilter);
  auto particular = [&](std::ptrdiff_t k) { return ext[static_cast<std::size_t>(k + pad)]; };

  // Homogeneous solutions: z^(k+m) decays away from the left boundary,
  // z^(K-1+m-k) away from the right one.
  auto homogeneous = [&](std::ptrdiff_t column, std::ptrdiff_t k) {
    const double z = prefilter.poles[static_cast<std::size_t>(column % m)];
    const auto e = column < m ? k + m : count - 1 + m - k;
    return std::pow(z, static_cast<double>(e));
  };

  Eigen::MatrixXd system(2 * m, 2 * m);
  Eigen::VectorXd rhs(2 * m);
  for (std::ptrdiff_t r = 0; r < 2 * m; ++r) {
    const std::ptrdiff_t k = r < m ? r - m : count + (r - m);
    for (std::ptrdiff_t c = 0; c < 2 * m; ++c) system(r, c) = homogeneous(c, k);
    rhs(r) = -particular(k);
  }
  const Eigen::VectorXd amplitudes = system.fullPivLu().solve(rhs);

  std::vector<double> coeffs(samples.size());
  for (std::ptrdiff_t k = 0; k < count; ++k) {
    double v = particular(k);
    for (std::ptrdiff_t c = 0; c < 2 * m; ++c) v += amplitudes(c) * homogeneous(c, k);
    coeffs[static_cast<std::size_t>(k)] = v;
  }
  return coeffs;
}

double reconstruct(std::span<const double> coeffs, const BasisFunction& f, double x) {
  const double half = 0.5 * f.support();
  const auto count = static_cast<std::ptrdiff_t>(coeffs.size());
  const auto first = std::max<std::ptrdiff_t>(0, static_cast<std::ptrdiff_t>(std::ceil(x - half)));
  const auto last = std::min<std::ptrdiff_t>(count - 1, static_cast<std::ptrdiff_t>(std::floor(x + half)));
  double sum = 0.0;
  for (std::ptrdiff_t k = first; k <= last; ++k) {
    sum += coeffs[static_cast<std::size_t>(k)] * f(x - static_cast<double>(k));
  }
  return sum;
}

}  // namespace splinesir
