#pragma once

#include <cmath>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "twinrep/chain.hpp"
#include "twinrep/linalg.hpp"
#include "twinrep/polynomial.hpp"
#include "twinrep/reduction.hpp"
#include "twinrep/representation.hpp"
#include "twinrep/scalar.hpp"

namespace twinrep {

// =============================================================================
// The criterion polynomial
//   P(t)   = 4(1+t^2) + (1-t)^4/(2t) * (1 - ((1-t)/(1+t))^{n-4})
//   P^_n(t) = 2t(1+t)^{n-4} P(t)
//          = 8t(1+t^2)(1+t)^{n-4} + (1-t)^4 [(1+t)^{n-4} - (1-t)^{n-4}]
// =============================================================================

struct ClearedPoly {
  int n = 4;
  IntPolynomial poly;
  /// Roots introduced by clearing denominators; t = 0 always.
  std::vector<GaussianRational> spurious_roots{GaussianRational(0)};
};

inline ClearedPoly cleared_poly(int n) {
  if (n < 4) throw DomainError("the criterion polynomial is defined for n >= 4");
  const IntPolynomial t{0, 1};
  const IntPolynomial one_plus{1, 1};
  const IntPolynomial one_minus{1, -1};
  const IntPolynomial first = IntPolynomial{0, 8} * IntPolynomial{1, 0, 1} * one_plus.pow(n - 4);
  const IntPolynomial second = one_minus.pow(4) * (one_plus.pow(n - 4) - one_minus.pow(n - 4));
  return {n, first + second, {GaussianRational(0)}};
}

/// The two summands of P(a); their magnitudes set the scale for float zero tests.
template <Scalar F>
std::pair<F, F> criterion_terms(int n, const F& a) {
  if (n < 4) throw DomainError("the criterion polynomial is defined for n >= 4");
  if (is_zero(a)) throw DomainError("P(t) has a pole at t = 0");
  if (is_zero(a + F(1))) throw DomainError("P(t) has a pole at t = -1");
  const F one(1);
  const F om = one - a;
  const F first = F(4) * (one + a * a);
  const F second = ipow(om, 4) / (F(2) * a) * (one - ipow(om / (one + a), n - 4));
  return {first, second};
}

/// P(a) evaluated directly in rational form.
template <Scalar F>
F eval_P(int n, const F& a) {
  auto [first, second] = criterion_terms(n, a);
  return first + second;
}

struct CriterionRoots {
  int n = 4;
  std::vector<PolyRoot> roots;  // nonzero roots of P^_n; residuals against P^_n
  int zero_multiplicity = 0;
  int iterations = 0;
  double worst_residual = 0.0;
};

/// Nonzero complex roots of P^_n. The root at t = 0 is divided out exactly
/// before iterating; any remaining root within eps of 0 is also dropped.
inline CriterionRoots roots_of_P(int n, Tolerance tol = Tolerance::standard(),
                                 const RootOptions& opt = {}) {
  const ClearedPoly cp = cleared_poly(n);
  CriterionRoots out;
  out.n = n;
  out.zero_multiplicity = cp.poly.zero_multiplicity();
  const IntPolynomial reduced = cp.poly.shift_down(out.zero_multiplicity);
  if (reduced.degree() < 1) return out;
  const RootReport found = find_roots(reduced, opt);
  out.iterations = found.iterations;
  const double scale = cp.poly.max_abs_coeff();
  for (const auto& r : found.roots) {
    if (std::abs(r.value) <= tol.eps) continue;
    const double residual = std::abs(cp.poly.eval(r.value)) / scale;
    out.roots.push_back({r.value, residual});
    out.worst_residual = std::max(out.worst_residual, residual);
  }
  if (found.iterations >= opt.max_iterations && out.worst_residual > tol.eps) {
    throw ConvergenceError("root finder did not converge for n = " + std::to_string(n),
                           out.worst_residual);
  }
  return out;
}

// =============================================================================
// Witnesses
// =============================================================================

struct WitnessReport {
  bool invariant = true;
  PivotStats stats;
};

/// Every generator maps every basis vector of W back into W.
template <Scalar F>
WitnessReport witness_report(std::span<const Matrix<F>> images, const Subspace<F>& w,
                             Tolerance tol = Tolerance::standard()) {
  WitnessReport report;
  for (const auto& g : images) {
    if (g.rows() != w.ambient_dim() || g.cols() != w.ambient_dim()) {
      throw DimensionError("witness_check: generator is " + g.shape() + ", subspace lives in dimension " +
                           std::to_string(w.ambient_dim()));
    }
    for (const auto& x : w.basis()) {
      if (!w.contains(g * x, tol, &report.stats)) report.invariant = false;
    }
  }
  return report;
}

template <Scalar F>
bool witness_check(std::span<const Matrix<F>> images, const Subspace<F>& w,
                   Tolerance tol = Tolerance::standard()) {
  return witness_report(images, w, tol).invariant;
}

template <Scalar F>
bool witness_check(const std::vector<GeneratorImage<F>>& images, const Subspace<F>& w,
                   Tolerance tol = Tolerance::standard()) {
  const auto mats = matrices_of(images);
  return witness_check(std::span<const Matrix<F>>(mats), w, tol);
}

// =============================================================================
// Decision procedure for xi~_1
// =============================================================================

enum class Status { Irreducible, Reducible };

enum class Reason {
  AIsOne,      // "a=1"
  AIsMinusOne, // "a=-1"
  RootOfP,     // "root-of-P"
  T3Special,   // "T3-special": n = 3, a = +-i sqrt(3)
  AIsZero,     // "a=0": irreducible, Delta = -bn/2
  Criterion,   // "criterion": irreducible, no exceptional condition met
};

inline std::string to_string(Status s) { return s == Status::Irreducible ? "Irreducible" : "Reducible"; }

inline std::string to_string(Reason r) {
  switch (r) {
    case Reason::AIsOne: return "a=1";
    case Reason::AIsMinusOne: return "a=-1";
    case Reason::RootOfP: return "root-of-P";
    case Reason::T3Special: return "T3-special";
    case Reason::AIsZero: return "a=0";
    case Reason::Criterion: return "criterion";
  }
  return "criterion";
}

struct VerdictDiagnostics {
  std::optional<double> rank_gap;   // float witness checks only
  std::optional<double> residual;   // |P(a)| relative to its term scale (n >= 4)
  bool witness_verified = false;
};

template <Scalar F>
struct Verdict {
  Status status = Status::Irreducible;
  Reason reason = Reason::Criterion;
  /// Proper invariant subspace of C^{n-1} in the standard coordinates of xi~_1.
  std::optional<Subspace<F>> witness;
  VerdictDiagnostics diagnostics;

  bool reducible() const { return status == Status::Reducible; }
};

namespace detail {

template <Scalar F>
bool is_plus_minus_i_sqrt3(const F& a, Tolerance tol) {
  if constexpr (F::is_exact) {
    return (a * a + F(3)).is_zero();
  } else {
    const F root(0.0, std::sqrt(3.0));
    return approx_equal(a, root, tol) || approx_equal(a, -root, tol);
  }
}

/// sum_{k=1}^{n-1} (b/2)^{n-1-k} e_k
template <Scalar F>
Matrix<F> minus_one_witness(int n, const F& b) {
  const std::size_t d = static_cast<std::size_t>(n - 1);
  Matrix<F> v(d, 1);
  const F half_b = b / F(2);
  F power(1);
  for (std::size_t k = d; k-- > 0;) {
    v[k] = power;
    power *= half_b;
  }
  return v;
}

}  // namespace detail

/// Irreducibility of xi~_1 for T_n, n >= 3.
///
///   n = 3: reducible iff a in {1, -1, i sqrt 3, -i sqrt 3}
///   n >= 4: reducible iff a = +-1 or (a != 0 and P(a) = 0)
///
/// Every reducible verdict carries a witness subspace that has been checked
/// for invariance against the generator images.
template <Scalar F>
Verdict<F> decide(int n, const F& a, const F& b, Tolerance tol = Tolerance::standard()) {
  if (n < 3) throw DomainError("decide requires n >= 3");
  if (is_zero(b, tol)) throw DomainError("b must be nonzero");
  const std::size_t d = static_cast<std::size_t>(n - 1);
  Verdict<F> verdict;
  std::vector<Matrix<F>> witness_vectors;

  const bool a_one = approx_equal(a, F(1), tol);
  const bool a_minus_one = approx_equal(a, F(-1), tol);

  if (a_one) {
    verdict.status = Status::Reducible;
    verdict.reason = Reason::AIsOne;
    witness_vectors.push_back(Matrix<F>::unit(d, 0));
  } else if (a_minus_one) {
    verdict.status = Status::Reducible;
    verdict.reason = Reason::AIsMinusOne;
    witness_vectors.push_back(detail::minus_one_witness(n, b));
  } else if (n == 3) {
    if (detail::is_plus_minus_i_sqrt3(a, tol)) {
      verdict.status = Status::Reducible;
      verdict.reason = Reason::T3Special;
      witness_vectors.push_back(t3_transition(a, b).col(0));
    }
  } else if (is_zero(a, tol)) {
    verdict.reason = Reason::AIsZero;
  } else {
    auto [first, second] = criterion_terms(n, a);
    const F value = first + second;
    const double scale = std::max({1.0, magnitude(first), magnitude(second)});
    verdict.diagnostics.residual = magnitude(value) / scale;
    const bool root = F::is_exact ? is_zero(value, tol) : magnitude(value) <= tol.eps * scale;
    if (root) {
      verdict.status = Status::Reducible;
      verdict.reason = Reason::RootOfP;
      const BasisChange<F> p = build_P(n, a, b);
      witness_vectors.push_back(p.forward.col(0));
      for (int k = 1; k <= n - 3; ++k) witness_vectors.push_back(p.forward * chain_vector(n, a, b, k));
    }
  }

  if (verdict.reducible()) {
    Subspace<F> w = Subspace<F>::span(d, witness_vectors, tol);
    const auto images = matrices_of(reduced_generators(n, a, b));
    const WitnessReport check = witness_report(std::span<const Matrix<F>>(images), w, tol);
    verdict.diagnostics.witness_verified = check.invariant && w.is_proper();
    if constexpr (!F::is_exact) verdict.diagnostics.rank_gap = check.stats.gap();
    verdict.witness = std::move(w);
  }
  return verdict;
}

}  // namespace twinrep
