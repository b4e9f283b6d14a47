#pragma once

#include <span>
#include <string>
#include <vector>

#include "twinrep/linalg.hpp"
#include "twinrep/matrix.hpp"
#include "twinrep/reduction.hpp"
#include "twinrep/scalar.hpp"

// Everything below lives in basis B of C^{n-1}; e_1 there is the eigenvector w.

namespace twinrep {

namespace detail {

template <Scalar F>
void require_chain(int n, const F& a, const F& b) {
  if (n < 4) throw DomainError("the chain construction requires n >= 4");
  detail::require_basis_b(n, a, b);
}

}  // namespace detail

/// v_k = -b e_{k+1} + (1+a) e_{k+2}, 1 <= k <= n-3.
template <Scalar F>
Matrix<F> chain_vector(int n, const F& a, const F& b, int k) {
  if (k < 1 || k > n - 3) throw DomainError("chain index " + std::to_string(k) + " out of range");
  Matrix<F> v(static_cast<std::size_t>(n - 1), 1);
  v[k] = -b;
  v[k + 1] = F(1) + a;
  return v;
}

template <Scalar F>
struct ChainBundle {
  int n;
  F a;
  F b;
  Matrix<F> f;                    // S_2 e_1 - (a^2+1)/2 e_1
  std::vector<Matrix<F>> v;       // v[k-1] = v_k
  Subspace<F> w_span;             // span(e_1, v_1, ..., v_{n-3})
};

/// Builds v_1 .. v_{n-3} the constructive way, by applying S_j to f and
/// rescaling:
///   v_1     = (1-a)^{n-3} / (b^{n-4} (1+a)^2) * (S_3 f - f)
///   v_{k+1} = b / ((1-a)(1+a)) * (S_{k+3} v_k - v_k)
template <Scalar F>
ChainBundle<F> chain_vectors(int n, const F& a, const F& b) {
  detail::require_chain(n, a, b);
  const std::size_t d = static_cast<std::size_t>(n - 1);
  const F one(1);
  const Matrix<F> e1 = Matrix<F>::unit(d, 0);
  const Matrix<F> s2 = build_S(n, a, b, 2);
  Matrix<F> f = s2 * e1 - ((a * a + one) / F(2)) * e1;

  std::vector<Matrix<F>> chain;
  const Matrix<F> s3 = build_S(n, a, b, 3);
  const F scale1 = ipow(one - a, n - 3) / (ipow(b, n - 4) * (one + a) * (one + a));
  chain.push_back(scale1 * (s3 * f - f));
  const F scale = b / ((one - a) * (one + a));
  for (int k = 1; k <= n - 4; ++k) {
    const Matrix<F>& vk = chain.back();
    const Matrix<F> sk = build_S(n, a, b, k + 3);
    chain.push_back(scale * (sk * vk - vk));
  }

  std::vector<Matrix<F>> spanning{e1};
  spanning.insert(spanning.end(), chain.begin(), chain.end());
  Subspace<F> w = Subspace<F>::span(d, spanning);
  return {n, a, b, std::move(f), std::move(chain), std::move(w)};
}

struct ClosureReport {
  std::vector<std::string> failures;
  int checked = 0;

  bool ok() const { return failures.empty(); }
};

/// Checks every action of S_1 .. S_{n-1} on e_1 and the chain vectors:
///   S_1 e_1 = -e_1, S_1 v_j = v_j
///   S_2 v_j = v_j                                (j >= 2)
///   S_k v_{k-3} = v_{k-3} + (1-a^2)/b v_{k-2}    (4 <= k <= n-1)
///   S_k v_{k-2} = -v_{k-2}                       (3 <= k <= n-1)
///   S_k v_{k-1} = b v_{k-2} + v_{k-1}            (3 <= k <= n-2)
///   S_k v_j = v_j                                otherwise (k >= 3)
template <Scalar F>
ClosureReport closure_check(const ChainBundle<F>& bundle, Tolerance tol = Tolerance::standard()) {
  const int n = bundle.n;
  const F& a = bundle.a;
  const F& b = bundle.b;
  const std::size_t d = static_cast<std::size_t>(n - 1);
  const int m = n - 3;
  ClosureReport report;
  auto v = [&](int k) -> const Matrix<F>& { return bundle.v[static_cast<std::size_t>(k - 1)]; };
  auto expect = [&](const Matrix<F>& got, const Matrix<F>& want, const std::string& what) {
    ++report.checked;
    if (!approx_equal(got, want, tol)) report.failures.push_back(what);
  };
  auto name = [](int k, int j) { return "S" + std::to_string(k) + " v" + std::to_string(j); };

  const Matrix<F> e1 = Matrix<F>::unit(d, 0);
  const Matrix<F> s1 = build_S(n, a, b, 1);
  expect(s1 * e1, -e1, "S1 e1 = -e1");
  for (int j = 1; j <= m; ++j) expect(s1 * v(j), v(j), name(1, j) + " = v" + std::to_string(j));

  const Matrix<F> s2 = build_S(n, a, b, 2);
  for (int j = 2; j <= m; ++j) expect(s2 * v(j), v(j), name(2, j) + " = v" + std::to_string(j));

  const F c = (F(1) - a * a) / b;
  for (int k = 3; k <= n - 1; ++k) {
    const Matrix<F> sk = build_S(n, a, b, k);
    for (int j = 1; j <= m; ++j) {
      const std::string label = name(k, j);
      if (j == k - 3) {
        expect(sk * v(j), v(j) + c * v(k - 2), label + " = v" + std::to_string(j) + " + (1-a^2)/b v" +
                                                   std::to_string(k - 2));
      } else if (j == k - 2) {
        expect(sk * v(j), -v(j), label + " = -v" + std::to_string(j));
      } else if (j == k - 1) {
        expect(sk * v(j), b * v(k - 2) + v(j), label + " = b v" + std::to_string(k - 2) + " + v" +
                                                   std::to_string(j));
      } else {
        expect(sk * v(j), v(j), label + " = v" + std::to_string(j));
      }
    }
  }
  return report;
}

// =============================================================================
// The bordered bidiagonal determinant
// =============================================================================

/// M_n with first column x, m_12 = 1, and for rows i >= 2, columns j >= 3:
/// y_2 on the diagonal j = i and y_1 on j = i + 1.
template <Scalar F>
Matrix<F> lemma_matrix(std::span<const F> xs, const F& y1, const F& y2) {
  const std::size_t n = xs.size();
  if (n < 2) throw DomainError("lemma matrix needs n >= 2");
  Matrix<F> m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, 0) = xs[i];
  m(0, 1) = F(1);
  for (std::size_t j = 2; j < n; ++j) {
    m(j, j) = y2;
    m(j - 1, j) = y1;
  }
  return m;
}

/// det M_n = sum_{k=2}^{n} (-1)^{k+1} x_k y_1^{k-2} y_2^{n-k}.
template <Scalar F>
F det_closed_form(std::span<const F> xs, const F& y1, const F& y2) {
  const int n = static_cast<int>(xs.size());
  if (n < 2) throw DomainError("lemma determinant needs n >= 2");
  F sum(0);
  for (int k = 2; k <= n; ++k) {
    F term = xs[static_cast<std::size_t>(k - 1)] * ipow(y1, k - 2) * ipow(y2, n - k);
    if ((k + 1) % 2 != 0) term = -term;
    sum += term;
  }
  return sum;
}

// =============================================================================
// Delta = det(S_2 v_1 | e_1 | v_1 | ... | v_{n-3})
// =============================================================================

/// S_2 v_1 from its explicit components:
///   (-(1-a)^{n-1}/(2 b^{n-4}), (1+a^2) b/2, (1-a)^3/2 + a + 1,
///    (1-a)^j / (2 b^{j-3}) for j = 4 .. n-1)
template <Scalar F>
Matrix<F> s2v1_closed_form(int n, const F& a, const F& b) {
  detail::require_chain(n, a, b);
  const F one(1);
  const F two(2);
  const F om = one - a;
  Matrix<F> x(static_cast<std::size_t>(n - 1), 1);
  x[0] = -ipow(om, n - 1) / (two * ipow(b, n - 4));
  x[1] = (one + a * a) * b / two;
  x[2] = ipow(om, 3) / two + a + one;
  for (int j = 4; j <= n - 1; ++j) x[j - 1] = ipow(om, j) / (two * ipow(b, j - 3));
  return x;
}

/// The (n-1) x (n-1) matrix (S_2 v_1 | e_1 | v_1 | ... | v_{n-3}) with S_2
/// taken from the conjugation product and v_k from the closed form.
template <Scalar F>
Matrix<F> delta_matrix(int n, const F& a, const F& b) {
  detail::require_chain(n, a, b);
  const std::size_t d = static_cast<std::size_t>(n - 1);
  const Matrix<F> s2 = conjugated_S(n, a, b, 2);
  std::vector<Matrix<F>> cols{s2 * chain_vector(n, a, b, 1), Matrix<F>::unit(d, 0)};
  for (int k = 1; k <= n - 3; ++k) cols.push_back(chain_vector(n, a, b, k));
  return Matrix<F>::hstack(cols);
}

template <Scalar F>
F delta_direct(int n, const F& a, const F& b) {
  return det(delta_matrix(n, a, b));
}

/// Delta as the bordered-bidiagonal sum with y_1 = -b, y_2 = 1 + a and x the
/// components of S_2 v_1.
template <Scalar F>
F delta_lemma(int n, const F& a, const F& b) {
  const Matrix<F> x = s2v1_closed_form(n, a, b);
  return det_closed_form(std::span<const F>(x.data()), -b, F(1) + a);
}

/// Intermediate form -(b/2) [4(1+a^2)(1+a)^{n-4} + sum_{k=4}^{n-1} (1-a)^k (1+a)^{n-1-k}].
/// The sum is empty for n = 4.
template <Scalar F>
F delta_bracketed(int n, const F& a, const F& b) {
  detail::require_chain(n, a, b);
  const F one(1);
  const F op = one + a;
  const F om = one - a;
  F bracket = F(4) * (one + a * a) * ipow(op, n - 4);
  for (int k = 4; k <= n - 1; ++k) bracket += ipow(om, k) * ipow(op, n - 1 - k);
  return -b / F(2) * bracket;
}

/// Closed form:
///   a = 0: -b n / 2
///   else:  -(b/2) (1+a)^{n-4} [4(1+a^2) + (1-a)^4/(2a) (1 - ((1-a)/(1+a))^{n-4})]
template <Scalar F>
F delta(int n, const F& a, const F& b) {
  detail::require_chain(n, a, b);
  const F one(1);
  const F two(2);
  if (is_zero(a)) return -b * F(n) / two;
  const F op = one + a;
  const F om = one - a;
  const F tail = ipow(om, 4) / (two * a) * (one - ipow(om / op, n - 4));
  return -b / two * ipow(op, n - 4) * (F(4) * (one + a * a) + tail);
}

}  // namespace twinrep
