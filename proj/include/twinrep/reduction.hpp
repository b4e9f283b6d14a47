#pragma once

#include <string>
#include <vector>

#include "twinrep/matrix.hpp"
#include "twinrep/representation.hpp"
#include "twinrep/scalar.hpp"

// Reduction of the family-1 representation xi_1 of T_n to its (n-1)-dimensional
// quotient xi~_1, and the eigenbasis B = {w, e_2, ..., e_{n-1}} of xi~_1(s_1)
// in which the irreducibility argument is carried out.
//
// Index conventions: generator indices k, j are 1-based as in s_1 .. s_{n-1};
// vector components are 0-based in code.

namespace twinrep {

namespace detail {

template <Scalar F>
void require_family1(int n, const F& b, int min_n) {
  if (n < min_n) throw DomainError("n must be at least " + std::to_string(min_n));
  if (is_zero(b)) throw DomainError("b must be nonzero");
}

template <Scalar F>
void require_basis_b(int n, const F& a, const F& b) {
  require_family1(n, b, 3);
  if (approx_equal(a, F(1))) throw DomainError("basis B requires a != 1");
  if (n >= 4 && approx_equal(a, F(-1))) throw DomainError("basis B requires a != -1 for n >= 4");
}

}  // namespace detail

/// A change of basis together with its inverse.
template <Scalar F>
struct BasisChange {
  Matrix<F> forward;
  Matrix<F> inverse;
};

// =============================================================================
// The invariant line of xi_1 and the quotient
// =============================================================================

/// v = sum_k ((1-a)/b)^{k-1} e_k, fixed by every xi_1(s_k).
template <Scalar F>
Matrix<F> invariant_vector(int n, const F& a, const F& b) {
  detail::require_family1(n, b, 2);
  const F ratio = (F(1) - a) / b;
  Matrix<F> v(static_cast<std::size_t>(n), 1);
  F power(1);
  for (int k = 0; k < n; ++k) {
    v[k] = power;
    power *= ratio;
  }
  return v;
}

/// Q = (v, e_2, ..., e_n) = I + (v - e_1) e_1^T and, since e_1^T (v - e_1) = 0,
/// Q^{-1} = I - (v - e_1) e_1^T.
template <Scalar F>
BasisChange<F> build_Q(int n, const F& a, const F& b) {
  const Matrix<F> v = invariant_vector(n, a, b);
  BasisChange<F> q{Matrix<F>::identity(n), Matrix<F>::identity(n)};
  for (int i = 1; i < n; ++i) {
    q.forward(i, 0) = v[i];
    q.inverse(i, 0) = -v[i];
  }
  return q;
}

/// Q^{-1} xi_1(s_k) Q, the full n x n image in the basis {v, e_2, ..., e_n}.
template <Scalar F>
Matrix<F> conjugated_generator(int n, const F& a, const F& b, int k) {
  const BasisChange<F> q = build_Q(n, a, b);
  const Matrix<F> g = embed_block(xi1_block(a, b), n, k);
  return q.inverse * g * q.forward;
}

/// xi~_1(s_k), built from the closed form:
///   k = 1: identity except column 1 = (-1, (a-1)^2/(-b), ..., (a-1)^{n-1}/(-b)^{n-2})
///   k >= 2: I_{k-2} (+) M (+) I_{n-k-1}
template <Scalar F>
Matrix<F> reduced_generator(int n, const F& a, const F& b, int k) {
  detail::require_family1(n, b, 2);
  if (k < 1 || k > n - 1) {
    throw DomainError("generator index " + std::to_string(k) + " outside 1.." + std::to_string(n - 1));
  }
  const std::size_t d = static_cast<std::size_t>(n - 1);
  if (k >= 2) return embed_block(xi1_block(a, b), n - 1, k - 1);
  Matrix<F> m = Matrix<F>::identity(d);
  m(0, 0) = F(-1);
  const F a1 = a - F(1);
  const F minus_b = -b;
  F num = a1;        // (a-1)^j
  F den(1);          // (-b)^{j-1}
  for (std::size_t row = 1; row < d; ++row) {
    num *= a1;
    den *= minus_b;
    m(row, 0) = num / den;
  }
  return m;
}

template <Scalar F>
std::vector<GeneratorImage<F>> reduced_generators(int n, const F& a, const F& b) {
  std::vector<GeneratorImage<F>> images;
  for (int k = 1; k <= n - 1; ++k) images.push_back({k, reduced_generator(n, a, b, k)});
  return images;
}

/// The quotient image obtained the long way: conjugate by Q, then delete the
/// first row and column.
template <Scalar F>
Matrix<F> reduced_generator_by_deletion(int n, const F& a, const F& b, int k) {
  return conjugated_generator(n, a, b, k).drop_first_row_col();
}

template <Scalar F>
struct ReductionBundle {
  int n;
  F a;
  F b;
  Matrix<F> v;
  BasisChange<F> q;
  std::vector<GeneratorImage<F>> reduced;
};

template <Scalar F>
ReductionBundle<F> make_reduction(int n, const F& a, const F& b) {
  return {n, a, b, invariant_vector(n, a, b), build_Q(n, a, b), reduced_generators(n, a, b)};
}

// =============================================================================
// Basis B
// =============================================================================

/// The (-1)-eigenvector of xi~_1(s_1):
///   w_1 = 2 b^{n-2} / (1-a)^{n-1},  w_j = b^{n-j-1} / (1-a)^{n-j-1} (j >= 2).
template <Scalar F>
Matrix<F> eigvec_w(int n, const F& a, const F& b) {
  detail::require_family1(n, b, 3);
  if (approx_equal(a, F(1))) throw DomainError("eigenvector w requires a != 1");
  const F one_minus_a = F(1) - a;
  Matrix<F> w(static_cast<std::size_t>(n - 1), 1);
  w[0] = F(2) * ipow(b, n - 2) / ipow(one_minus_a, n - 1);
  for (int j = 2; j <= n - 1; ++j) {
    w[j - 1] = ipow(b / one_minus_a, n - j - 1);
  }
  return w;
}

/// The n = 3 eigenbasis {(2b/(a-1)^2, 1), (0, 1)} as its transition matrix.
template <Scalar F>
Matrix<F> t3_transition(const F& a, const F& b) {
  detail::require_family1(3, b, 3);
  if (approx_equal(a, F(1))) throw DomainError("the n = 3 eigenbasis requires a != 1");
  const F a1 = a - F(1);
  return Matrix<F>{{F(2) * b / (a1 * a1), F(0)}, {F(1), F(1)}};
}

/// P = (w, e_2, ..., e_{n-1}) = I + (w - e_1) e_1^T with the Sherman-Morrison
/// inverse P^{-1} = I - (1/w_1)(w - e_1) e_1^T.
template <Scalar F>
BasisChange<F> build_P(int n, const F& a, const F& b) {
  detail::require_basis_b(n, a, b);
  Matrix<F> p;
  if (n == 3) {
    p = t3_transition(a, b);
  } else {
    p = Matrix<F>::identity(static_cast<std::size_t>(n - 1));
    const Matrix<F> w = eigvec_w(n, a, b);
    for (int i = 0; i < n - 1; ++i) p(i, 0) = w[i];
  }
  const F w1 = p(0, 0);
  Matrix<F> p_inv = Matrix<F>::identity(static_cast<std::size_t>(n - 1));
  p_inv(0, 0) = F(1) - (w1 - F(1)) / w1;
  for (int i = 1; i < n - 1; ++i) p_inv(i, 0) = -p(i, 0) / w1;
  return {std::move(p), std::move(p_inv)};
}

/// S_j = P^{-1} xi~_1(s_j) P from the closed forms:
///   S_1 = diag(-1, 1, ..., 1)
///   S_2 = explicit 2-column matrix (below)
///   S_j = I_{j-2} (+) M (+) I_{n-j-1} for j >= 3
template <Scalar F>
Matrix<F> build_S(int n, const F& a, const F& b, int j) {
  detail::require_basis_b(n, a, b);
  if (j < 1 || j > n - 1) {
    throw DomainError("generator index " + std::to_string(j) + " outside 1.." + std::to_string(n - 1));
  }
  const std::size_t d = static_cast<std::size_t>(n - 1);
  if (j == 1) {
    Matrix<F> s = Matrix<F>::identity(d);
    s(0, 0) = F(-1);
    return s;
  }
  if (j >= 3) return embed_block(xi1_block(a, b), n - 1, j - 1);

  const F one(1);
  const F two(2);
  const F a2 = a * a;
  if (n == 3) {
    const F a1 = a - one;
    return Matrix<F>{{(one + a2) / two, a1 * a1 / two},
                     {(F(3) + F(3) * a + a2 + a2 * a) / (two - two * a), -(one + a2) / two}};
  }
  const F om = one - a;  // 1 - a
  const F op = one + a;  // 1 + a
  Matrix<F> s = Matrix<F>::identity(d);
  s(0, 0) = (a2 + one) / two;
  s(0, 1) = ipow(om, n - 1) / (two * ipow(b, n - 3));
  s(1, 0) = (F(3) + a2) * op * ipow(b, n - 3) / (two * ipow(om, n - 2));
  s(1, 1) = -(one + a2) / two;
  for (int row = 3; row <= n - 1; ++row) {
    s(row - 1, 0) = op * ipow(b, n - row - 1) / (two * ipow(om, n - row - 2));
    s(row - 1, 1) = -ipow(om, row) / (two * ipow(b, row - 2));
  }
  return s;
}

/// P^{-1} xi~_1(s_j) P computed by matrix products.
template <Scalar F>
Matrix<F> conjugated_S(int n, const F& a, const F& b, int j) {
  const BasisChange<F> p = build_P(n, a, b);
  return p.inverse * reduced_generator(n, a, b, j) * p.forward;
}

template <Scalar F>
struct BasisBBundle {
  int n;
  F a;
  F b;
  Matrix<F> w;
  BasisChange<F> p;
  std::vector<Matrix<F>> s;  // s[j-1] = S_j
};

template <Scalar F>
BasisBBundle<F> make_basis_b(int n, const F& a, const F& b) {
  BasisBBundle<F> bundle{n, a, b, Matrix<F>(), build_P(n, a, b), {}};
  bundle.w = bundle.p.forward.col(0);
  for (int j = 1; j <= n - 1; ++j) bundle.s.push_back(build_S(n, a, b, j));
  return bundle;
}

}  // namespace twinrep
