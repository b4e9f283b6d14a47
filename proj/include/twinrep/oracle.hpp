#pragma once

#include <cstddef>
#include <deque>
#include <span>
#include <string>
#include <vector>

#include "twinrep/linalg.hpp"
#include "twinrep/matrix.hpp"
#include "twinrep/scalar.hpp"

// Irreducibility checks that know nothing about twin groups.
//
// Burnside: a set of d x d complex matrices acts irreducibly on C^d iff the
// unital algebra it generates is all of M_d(C), i.e. has dimension d^2. The
// rank of a set of matrices with Gaussian-rational entries is the same over
// Q(i) and over C, so exact-mode answers are verdicts over C.

namespace twinrep {

template <Scalar F>
struct AlgebraBasis {
  std::size_t d = 0;
  std::vector<Matrix<F>> basis;
  bool closed = false;
  PivotStats stats;

  std::size_t dimension() const { return basis.size(); }
  std::size_t full_dimension() const { return d * d; }
};

namespace detail {

template <Scalar F>
std::size_t common_size(std::span<const Matrix<F>> images) {
  if (images.empty()) throw DimensionError("need at least one matrix");
  const std::size_t d = images.front().rows();
  for (const auto& g : images) {
    if (g.rows() != d || g.cols() != d) throw DimensionError("matrices must be square of equal size");
  }
  return d;
}

/// Scales m to unit max-norm (float only; exact matrices are kept as-is).
template <Scalar F>
Matrix<F> normalized(Matrix<F> m) {
  if constexpr (!F::is_exact) {
    const double s = m.max_abs();
    if (s > 0.0) m *= F(1.0 / s, 0.0);
  }
  return m;
}

}  // namespace detail

/// Spans the unital algebra generated by `images`: seed with I, multiply every
/// new basis element on the left and right by every generator, keep whatever
/// is independent (as a d^2-vector), repeat until nothing new appears.
template <Scalar F>
AlgebraBasis<F> algebra_closure(std::span<const Matrix<F>> images, Tolerance tol = Tolerance::standard()) {
  const std::size_t d = detail::common_size(images);
  const std::size_t cap = d * d;
  AlgebraBasis<F> out;
  out.d = d;
  EchelonSpan<F> span(cap, tol);

  std::vector<Matrix<F>> frontier;
  auto offer = [&](Matrix<F> m, std::vector<Matrix<F>>& next) {
    m = detail::normalized(std::move(m));
    if (!span.insert(m.data())) return;
    if (out.basis.size() >= cap) throw Error("internal: algebra basis exceeded d^2");
    out.basis.push_back(m);
    next.push_back(std::move(m));
  };

  offer(Matrix<F>::identity(d), frontier);
  for (const auto& g : images) offer(g, frontier);

  std::size_t rounds = 0;
  while (!frontier.empty()) {
    if (++rounds > cap) throw Error("internal: algebra closure exceeded d^2 rounds");
    std::vector<Matrix<F>> next;
    for (const auto& x : frontier) {
      for (const auto& g : images) {
        offer(g * x, next);
        offer(x * g, next);
      }
    }
    frontier = std::move(next);
  }
  out.closed = true;
  out.stats = span.stats();
  return out;
}

template <Scalar F>
std::size_t algebra_dimension(std::span<const Matrix<F>> images, Tolerance tol = Tolerance::standard()) {
  return algebra_closure(images, tol).dimension();
}

template <Scalar F>
std::size_t algebra_dimension(const std::vector<Matrix<F>>& images, Tolerance tol = Tolerance::standard()) {
  return algebra_dimension(std::span<const Matrix<F>>(images), tol);
}

template <Scalar F>
bool is_irreducible_oracle(std::span<const Matrix<F>> images, Tolerance tol = Tolerance::standard()) {
  const AlgebraBasis<F> alg = algebra_closure(images, tol);
  return alg.dimension() == alg.full_dimension();
}

template <Scalar F>
bool is_irreducible_oracle(const std::vector<Matrix<F>>& images, Tolerance tol = Tolerance::standard()) {
  return is_irreducible_oracle(std::span<const Matrix<F>>(images), tol);
}

// =============================================================================
// Invariant lines of a set of involutions
// =============================================================================

/// A nonzero common eigenspace together with the eigenvalue sign of each
/// generator on it.
template <Scalar F>
struct CommonEigenspace {
  Subspace<F> space;
  std::vector<int> signs;
};

/// All nonzero common eigenspaces of a set of involutions, by intersecting the
/// +1 and -1 eigenspaces one generator at a time.
template <Scalar F>
std::vector<CommonEigenspace<F>> common_eigenspaces(std::span<const Matrix<F>> images,
                                                     Tolerance tol = Tolerance::standard()) {
  const std::size_t d = detail::common_size(images);
  const Matrix<F> id = Matrix<F>::identity(d);
  for (std::size_t i = 0; i < images.size(); ++i) {
    if (!approx_equal(images[i] * images[i], id, tol)) {
      throw DomainError("common_eigenlines: image " + std::to_string(i + 1) + " is not an involution");
    }
  }
  std::vector<CommonEigenspace<F>> current{{Subspace<F>::full(d), {}}};
  for (const auto& g : images) {
    const Subspace<F> plus = kernel(Matrix<F>(g - id), tol);
    const Subspace<F> minus = kernel(Matrix<F>(g + id), tol);
    std::vector<CommonEigenspace<F>> next;
    for (const auto& cand : current) {
      for (int sign : {1, -1}) {
        Subspace<F> cut = intersect(cand.space, sign == 1 ? plus : minus, tol);
        if (cut.dim() == 0) continue;
        auto signs = cand.signs;
        signs.push_back(sign);
        next.push_back({std::move(cut), std::move(signs)});
      }
    }
    current = std::move(next);
  }
  return current;
}

/// Every 1-dimensional invariant subspace that is a whole common eigenspace.
/// A common eigenspace of dimension >= 2 contains infinitely many invariant
/// lines; those are reported by common_eigenspaces() instead.
template <Scalar F>
std::vector<Subspace<F>> common_eigenlines(std::span<const Matrix<F>> images,
                                           Tolerance tol = Tolerance::standard()) {
  std::vector<Subspace<F>> lines;
  for (auto& ces : common_eigenspaces(images, tol)) {
    if (ces.space.dim() != 1) continue;
    bool duplicate = false;
    for (const auto& l : lines) duplicate = duplicate || l.same_span(ces.space, tol);
    if (!duplicate) lines.push_back(std::move(ces.space));
  }
  return lines;
}

template <Scalar F>
std::vector<Subspace<F>> common_eigenlines(const std::vector<Matrix<F>>& images,
                                           Tolerance tol = Tolerance::standard()) {
  return common_eigenlines(std::span<const Matrix<F>>(images), tol);
}

}  // namespace twinrep
