#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <string>
#include <vector>

#include "twinrep/scalar.hpp"

namespace twinrep {

class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, double worst_residual)
      : Error(what), worst_residual_(worst_residual) {}
  double worst_residual() const { return worst_residual_; }

 private:
  double worst_residual_;
};

/// Dense polynomial with arbitrary-precision integer coefficients;
/// coeffs()[i] multiplies t^i. The zero polynomial has no coefficients.
class IntPolynomial {
 public:
  IntPolynomial() = default;
  explicit IntPolynomial(std::vector<mpz_class> coeffs) : c_(std::move(coeffs)) { trim(); }
  IntPolynomial(std::initializer_list<long> coeffs) {
    for (long x : coeffs) c_.emplace_back(x);
    trim();
  }

  static IntPolynomial monomial(long coeff, int degree) {
    std::vector<mpz_class> c(static_cast<std::size_t>(degree) + 1, 0);
    c.back() = coeff;
    return IntPolynomial(std::move(c));
  }

  const std::vector<mpz_class>& coeffs() const { return c_; }
  bool is_zero() const { return c_.empty(); }
  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  mpz_class coeff(int i) const {
    return i >= 0 && i < static_cast<int>(c_.size()) ? c_[static_cast<std::size_t>(i)] : mpz_class(0);
  }

  /// Multiplicity of t = 0 as a root.
  int zero_multiplicity() const {
    int m = 0;
    while (m < static_cast<int>(c_.size()) && c_[static_cast<std::size_t>(m)] == 0) ++m;
    return m;
  }

  /// Divides out t^k (requires the low k coefficients to vanish).
  IntPolynomial shift_down(int k) const {
    if (k > zero_multiplicity()) throw DomainError("shift_down would drop nonzero coefficients");
    return IntPolynomial(std::vector<mpz_class>(c_.begin() + k, c_.end()));
  }

  IntPolynomial derivative() const {
    std::vector<mpz_class> d;
    for (std::size_t i = 1; i < c_.size(); ++i) d.push_back(c_[i] * static_cast<long>(i));
    return IntPolynomial(std::move(d));
  }

  IntPolynomial pow(int e) const {
    IntPolynomial result{1};
    for (int i = 0; i < e; ++i) result = result * *this;
    return result;
  }

  friend IntPolynomial operator+(const IntPolynomial& p, const IntPolynomial& q) {
    std::vector<mpz_class> c(std::max(p.c_.size(), q.c_.size()), 0);
    for (std::size_t i = 0; i < p.c_.size(); ++i) c[i] += p.c_[i];
    for (std::size_t i = 0; i < q.c_.size(); ++i) c[i] += q.c_[i];
    return IntPolynomial(std::move(c));
  }
  friend IntPolynomial operator-(const IntPolynomial& p, const IntPolynomial& q) {
    std::vector<mpz_class> c(std::max(p.c_.size(), q.c_.size()), 0);
    for (std::size_t i = 0; i < p.c_.size(); ++i) c[i] += p.c_[i];
    for (std::size_t i = 0; i < q.c_.size(); ++i) c[i] -= q.c_[i];
    return IntPolynomial(std::move(c));
  }
  friend IntPolynomial operator*(const IntPolynomial& p, const IntPolynomial& q) {
    if (p.is_zero() || q.is_zero()) return {};
    std::vector<mpz_class> c(p.c_.size() + q.c_.size() - 1, 0);
    for (std::size_t i = 0; i < p.c_.size(); ++i)
      for (std::size_t j = 0; j < q.c_.size(); ++j) c[i + j] += p.c_[i] * q.c_[j];
    return IntPolynomial(std::move(c));
  }
  friend bool operator==(const IntPolynomial& p, const IntPolynomial& q) { return p.c_ == q.c_; }

  /// Horner evaluation in any scalar backend.
  template <Scalar F>
  F eval(const F& x) const {
    F acc(0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + from_integer<F>(*it);
    return acc;
  }

  std::complex<double> eval(std::complex<double> x) const {
    std::complex<double> acc(0.0, 0.0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + it->get_d();
    return acc;
  }

  double max_abs_coeff() const {
    double m = 0.0;
    for (const auto& c : c_) m = std::max(m, std::abs(c.get_d()));
    return m;
  }

  std::string to_string() const {
    if (c_.empty()) return "0";
    std::string out;
    for (int i = degree(); i >= 0; --i) {
      const mpz_class& c = c_[static_cast<std::size_t>(i)];
      if (c == 0) continue;
      out += (c < 0) ? (out.empty() ? "-" : " - ") : (out.empty() ? "" : " + ");
      const mpz_class mag = abs(c);
      if (mag != 1 || i == 0) out += mag.get_str();
      if (i >= 1) out += "t";
      if (i >= 2) out += "^" + std::to_string(i);
    }
    return out;
  }

  template <Scalar F>
  static F from_integer(const mpz_class& z) {
    if constexpr (F::is_exact) {
      return F(mpq_class(z));
    } else {
      return F(z.get_d(), 0.0);
    }
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }

  std::vector<mpz_class> c_;
};

// =============================================================================
// Root finding: Durand-Kerner with Newton polish
// =============================================================================

struct PolyRoot {
  std::complex<double> value;
  /// |p(r)| / max_i |c_i|
  double residual = 0.0;
};

struct RootOptions {
  int max_iterations = 500;
  double step_tolerance = 1e-13;
  int newton_steps = 3;
};

struct RootReport {
  std::vector<PolyRoot> roots;
  int iterations = 0;
  double worst_residual = 0.0;
};

/// All complex roots of p (degree >= 1), including any at zero.
///
/// Start points are roots of unity scaled by the Cauchy bound and rotated by a
/// fixed irrational angle so that no start point lies on a symmetry axis of a
/// real polynomial. Iterates simultaneous Durand-Kerner updates until the
/// largest relative step is below step_tolerance or max_iterations is hit,
/// then refines each root with a few Newton steps on p itself.
inline RootReport find_roots(const IntPolynomial& p, const RootOptions& opt = {}) {
  const int deg = p.degree();
  if (deg < 1) throw DomainError("root finding needs degree >= 1");
  const auto& c = p.coeffs();
  const double lead = c.back().get_d();
  std::vector<std::complex<double>> monic(c.size());
  for (std::size_t i = 0; i < c.size(); ++i) monic[i] = c[i].get_d() / lead;

  double cauchy = 0.0;
  for (int i = 0; i < deg; ++i) cauchy = std::max(cauchy, std::abs(monic[static_cast<std::size_t>(i)]));
  cauchy += 1.0;

  auto eval_monic = [&](std::complex<double> z) {
    std::complex<double> acc(1.0, 0.0);
    for (int i = deg - 1; i >= 0; --i) acc = acc * z + monic[static_cast<std::size_t>(i)];
    return acc;
  };

  std::vector<std::complex<double>> z(static_cast<std::size_t>(deg));
  const double radius = 0.5 * cauchy;
  for (int k = 0; k < deg; ++k) {
    const double angle = 2.0 * std::numbers::pi * k / deg + 0.4;
    z[static_cast<std::size_t>(k)] = std::polar(radius, angle);
  }

  RootReport report;
  int it = 0;
  for (; it < opt.max_iterations; ++it) {
    double worst_step = 0.0;
    for (std::size_t i = 0; i < z.size(); ++i) {
      std::complex<double> denom(1.0, 0.0);
      for (std::size_t j = 0; j < z.size(); ++j)
        if (j != i) denom *= (z[i] - z[j]);
      if (std::abs(denom) == 0.0) denom = std::complex<double>(1e-300, 0.0);
      const std::complex<double> step = eval_monic(z[i]) / denom;
      z[i] -= step;
      worst_step = std::max(worst_step, std::abs(step) / std::max(1.0, std::abs(z[i])));
    }
    if (worst_step < opt.step_tolerance) {
      ++it;
      break;
    }
  }
  report.iterations = it;

  const IntPolynomial dp = p.derivative();
  const double scale = p.max_abs_coeff();
  for (auto root : z) {
    for (int s = 0; s < opt.newton_steps; ++s) {
      const std::complex<double> d = dp.eval(root);
      if (std::abs(d) == 0.0) break;
      const std::complex<double> next = root - p.eval(root) / d;
      if (!(std::abs(p.eval(next)) < std::abs(p.eval(root)))) break;
      root = next;
    }
    const double residual = std::abs(p.eval(root)) / scale;
    report.roots.push_back({root, residual});
    report.worst_residual = std::max(report.worst_residual, residual);
  }
  std::sort(report.roots.begin(), report.roots.end(), [](const PolyRoot& x, const PolyRoot& y) {
    if (x.value.imag() != y.value.imag()) return x.value.imag() < y.value.imag();
    return x.value.real() < y.value.real();
  });
  return report;
}

}  // namespace twinrep
