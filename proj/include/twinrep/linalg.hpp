#pragma once

#include <algorithm>
#include <cstddef>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "twinrep/matrix.hpp"
#include "twinrep/scalar.hpp"

namespace twinrep {

class SingularMatrixError : public Error {
 public:
  explicit SingularMatrixError(std::size_t column)
      : Error("singular matrix: no usable pivot in column " + std::to_string(column + 1)),
        column_(column) {}

  /// 0-based column where elimination failed.
  std::size_t column() const { return column_; }

 private:
  std::size_t column_;
};

// =============================================================================
// Pivot statistics (float-mode rank diagnostics)
// =============================================================================

/// Tracks the smallest accepted and largest rejected pivot magnitude across a
/// series of float-mode rank decisions. The ratio is the "rank gap"; a large
/// gap means no decision was borderline. Exact mode never records anything.
struct PivotStats {
  double min_accepted = std::numeric_limits<double>::infinity();
  double max_rejected = 0.0;

  void accept(double pivot) { min_accepted = std::min(min_accepted, pivot); }
  void reject(double pivot) { max_rejected = std::max(max_rejected, pivot); }

  void merge(const PivotStats& o) {
    min_accepted = std::min(min_accepted, o.min_accepted);
    max_rejected = std::max(max_rejected, o.max_rejected);
  }

  /// +inf when nothing was rejected (or nothing accepted).
  double gap() const {
    if (max_rejected == 0.0 || min_accepted == std::numeric_limits<double>::infinity()) {
      return std::numeric_limits<double>::infinity();
    }
    return min_accepted / max_rejected;
  }
};

namespace detail {

template <Scalar F>
double max_abs(const std::vector<F>& v) {
  double m = 0.0;
  for (const auto& x : v) m = std::max(m, magnitude(x));
  return m;
}

}  // namespace detail

// =============================================================================
// Incremental row echelon span
// =============================================================================

/// Maintains an echelon basis of a growing set of vectors in F^dim.
///
/// Each stored row has a pivot column holding 1, and every row is zero in the
/// pivot columns of the rows stored before it, so a single forward sweep
/// reduces a candidate. In float mode candidates are scaled to unit max-norm
/// before reduction and the pivot is the largest residual entry; a residual
/// whose max-norm is at most eps is dependent.
template <Scalar F>
class EchelonSpan {
 public:
  explicit EchelonSpan(std::size_t dim, Tolerance tol = Tolerance::standard())
      : dim_(dim), tol_(tol) {}

  std::size_t dim() const { return dim_; }
  std::size_t rank() const { return rows_.size(); }
  const PivotStats& stats() const { return stats_; }

  /// Adds v if it is independent of the current rows. Returns true if added.
  /// With normalize = false the caller is responsible for scaling (float mode
  /// then compares the raw residual against eps).
  bool insert(std::vector<F> v, bool normalize = true) {
    auto [independent, pivot] = reduce(v, normalize);
    if (!independent) return false;
    const F inv = F(1) / v[pivot];
    for (auto& x : v) x *= inv;
    v[pivot] = F(1);
    rows_.push_back(std::move(v));
    pivots_.push_back(pivot);
    return true;
  }

  /// True if v lies in the span of the current rows. Records the decision's
  /// pivot in stats().
  bool contains(std::vector<F> v) {
    return !reduce(v, true).first;
  }

 private:
  std::pair<bool, std::size_t> reduce(std::vector<F>& v, bool normalize) {
    if (v.size() != dim_) throw DimensionError("vector length does not match span dimension");
    if constexpr (!F::is_exact) {
      if (normalize) {
        const double m = detail::max_abs(v);
        if (m == 0.0) return {false, 0};
        const F scale(1.0 / m, 0.0);
        for (auto& x : v) x *= scale;
      }
    }
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      const F coeff = v[pivots_[r]];
      if (is_zero(coeff, Tolerance{0.0})) continue;
      const auto& row = rows_[r];
      for (std::size_t k = 0; k < dim_; ++k) {
        if (!is_zero(row[k], Tolerance{0.0})) v[k] -= coeff * row[k];
      }
      v[pivots_[r]] = F(0);
    }
    if constexpr (F::is_exact) {
      for (std::size_t k = 0; k < dim_; ++k)
        if (!v[k].is_zero()) return {true, k};
      return {false, 0};
    } else {
      std::size_t best = 0;
      double best_mag = 0.0;
      for (std::size_t k = 0; k < dim_; ++k) {
        const double mag = magnitude(v[k]);
        if (mag > best_mag) {
          best_mag = mag;
          best = k;
        }
      }
      if (best_mag > tol_.eps) {
        stats_.accept(best_mag);
        return {true, best};
      }
      stats_.reject(best_mag);
      return {false, 0};
    }
  }

  std::size_t dim_;
  Tolerance tol_;
  std::vector<std::vector<F>> rows_;
  std::vector<std::size_t> pivots_;
  PivotStats stats_;
};

// =============================================================================
// Rank, determinant, inverse, kernel
// =============================================================================

struct RankReport {
  std::size_t rank = 0;
  PivotStats stats;

  double gap() const { return stats.gap(); }
};

/// Row rank. Float mode scales the whole matrix to unit max-norm so the pivot
/// threshold is eps relative to the largest entry.
template <Scalar F>
RankReport rank_report(const Matrix<F>& a, Tolerance tol = Tolerance::standard()) {
  RankReport report;
  if (a.size() == 0) return report;
  EchelonSpan<F> span(a.cols(), tol);
  F scale(1);
  if constexpr (!F::is_exact) {
    const double m = a.max_abs();
    if (m == 0.0) return report;
    scale = F(1.0 / m, 0.0);
  }
  for (std::size_t i = 0; i < a.rows(); ++i) {
    std::vector<F> row(a.cols());
    for (std::size_t j = 0; j < a.cols(); ++j) row[j] = a(i, j) * scale;
    span.insert(std::move(row), false);
  }
  report.rank = span.rank();
  report.stats = span.stats();
  return report;
}

template <Scalar F>
std::size_t rank(const Matrix<F>& a, Tolerance tol = Tolerance::standard()) {
  return rank_report(a, tol).rank;
}

/// Determinant by Gaussian elimination: first nonzero pivot in exact mode,
/// partial pivoting in float mode.
template <Scalar F>
F det(Matrix<F> a) {
  if (!a.is_square()) throw DimensionError("determinant of non-square " + a.shape());
  const std::size_t n = a.rows();
  F result(1);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = n;
    if constexpr (F::is_exact) {
      for (std::size_t r = col; r < n; ++r)
        if (!a(r, col).is_zero()) {
          pivot = r;
          break;
        }
    } else {
      double best = 0.0;
      for (std::size_t r = col; r < n; ++r) {
        const double mag = magnitude(a(r, col));
        if (mag > best) {
          best = mag;
          pivot = r;
        }
      }
    }
    if (pivot == n) return F(0);
    if (pivot != col) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(pivot, j), a(col, j));
      result = -result;
    }
    const F p = a(col, col);
    result *= p;
    for (std::size_t r = col + 1; r < n; ++r) {
      if (is_zero(a(r, col), Tolerance{0.0})) continue;
      const F factor = a(r, col) / p;
      for (std::size_t j = col; j < n; ++j) a(r, j) -= factor * a(col, j);
    }
  }
  return result;
}

/// Gauss-Jordan inverse. Float mode rejects pivots at or below
/// eps * max|a_ij|; the error names the first failing column.
template <Scalar F>
Matrix<F> inverse(const Matrix<F>& input, Tolerance tol = Tolerance::standard()) {
  if (!input.is_square()) throw DimensionError("inverse of non-square " + input.shape());
  const std::size_t n = input.rows();
  Matrix<F> a = input;
  Matrix<F> inv = Matrix<F>::identity(n);
  const double threshold = F::is_exact ? 0.0 : tol.eps * input.max_abs();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = n;
    if constexpr (F::is_exact) {
      for (std::size_t r = col; r < n; ++r)
        if (!a(r, col).is_zero()) {
          pivot = r;
          break;
        }
    } else {
      double best = 0.0;
      for (std::size_t r = col; r < n; ++r) {
        const double mag = magnitude(a(r, col));
        if (mag > best) {
          best = mag;
          pivot = r;
        }
      }
      if (best <= threshold) pivot = n;
    }
    if (pivot == n) throw SingularMatrixError(col);
    if (pivot != col) {
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(a(pivot, j), a(col, j));
        std::swap(inv(pivot, j), inv(col, j));
      }
    }
    const F p_inv = F(1) / a(col, col);
    for (std::size_t j = 0; j < n; ++j) {
      a(col, j) *= p_inv;
      inv(col, j) *= p_inv;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || is_zero(a(r, col), Tolerance{0.0})) continue;
      const F factor = a(r, col);
      for (std::size_t j = 0; j < n; ++j) {
        a(r, j) -= factor * a(col, j);
        inv(r, j) -= factor * inv(col, j);
      }
    }
  }
  return inv;
}

// =============================================================================
// Subspaces
// =============================================================================

/// A subspace of F^ambient given by linearly independent column vectors.
template <Scalar F>
class Subspace {
 public:
  explicit Subspace(std::size_t ambient_dim) : ambient_(ambient_dim) {}

  /// Span of the given vectors; dependent vectors are dropped, the kept ones
  /// are stored unchanged.
  static Subspace span(std::size_t ambient_dim, const std::vector<Matrix<F>>& vectors,
                       Tolerance tol = Tolerance::standard()) {
    Subspace s(ambient_dim);
    EchelonSpan<F> echelon(ambient_dim, tol);
    for (const auto& v : vectors) {
      s.check_vector(v);
      if (echelon.insert(v.data())) s.basis_.push_back(v);
    }
    return s;
  }

  static Subspace full(std::size_t ambient_dim) {
    std::vector<Matrix<F>> units;
    for (std::size_t i = 0; i < ambient_dim; ++i) units.push_back(Matrix<F>::unit(ambient_dim, i));
    return span(ambient_dim, units);
  }

  std::size_t ambient_dim() const { return ambient_; }
  std::size_t dim() const { return basis_.size(); }
  const std::vector<Matrix<F>>& basis() const { return basis_; }
  bool is_proper() const { return dim() > 0 && dim() < ambient_; }

  /// ambient x dim matrix whose columns are the basis vectors.
  Matrix<F> basis_matrix() const {
    if (basis_.empty()) return Matrix<F>(ambient_, 0);
    return Matrix<F>::hstack(basis_);
  }

  /// rank(basis + {x}) == rank(basis). Pivot decisions are merged into
  /// *stats when given.
  bool contains(const Matrix<F>& x, Tolerance tol = Tolerance::standard(),
                PivotStats* stats = nullptr) const {
    check_vector(x);
    EchelonSpan<F> echelon(ambient_, tol);
    for (const auto& b : basis_) echelon.insert(b.data());
    const bool inside = echelon.contains(x.data());
    if (stats) stats->merge(echelon.stats());
    return inside;
  }

  /// Same span (as sets).
  bool same_span(const Subspace& o, Tolerance tol = Tolerance::standard()) const {
    if (ambient_ != o.ambient_ || dim() != o.dim()) return false;
    for (const auto& b : o.basis_)
      if (!contains(b, tol)) return false;
    return true;
  }

 private:
  void check_vector(const Matrix<F>& v) const {
    if (v.cols() != 1 || v.rows() != ambient_) {
      throw DimensionError("expected a " + std::to_string(ambient_) + "x1 vector, got " + v.shape());
    }
  }

  std::size_t ambient_;
  std::vector<Matrix<F>> basis_;
};

/// Null space {x : A x = 0} via reduced row echelon form.
template <Scalar F>
Subspace<F> kernel(const Matrix<F>& input, Tolerance tol = Tolerance::standard()) {
  const std::size_t rows = input.rows();
  const std::size_t cols = input.cols();
  Matrix<F> a = input;
  const double threshold = F::is_exact ? 0.0 : tol.eps * input.max_abs();
  std::vector<std::size_t> pivot_cols;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t pivot = rows;
    if constexpr (F::is_exact) {
      for (std::size_t i = r; i < rows; ++i)
        if (!a(i, c).is_zero()) {
          pivot = i;
          break;
        }
    } else {
      double best = threshold;
      for (std::size_t i = r; i < rows; ++i) {
        const double mag = magnitude(a(i, c));
        if (mag > best) {
          best = mag;
          pivot = i;
        }
      }
    }
    if (pivot == rows) {
      if constexpr (!F::is_exact) {
        for (std::size_t i = r; i < rows; ++i) a(i, c) = F(0);
      }
      continue;
    }
    for (std::size_t j = 0; j < cols; ++j) std::swap(a(pivot, j), a(r, j));
    const F p_inv = F(1) / a(r, c);
    for (std::size_t j = 0; j < cols; ++j) a(r, j) *= p_inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || is_zero(a(i, c), Tolerance{0.0})) continue;
      const F factor = a(i, c);
      for (std::size_t j = 0; j < cols; ++j) a(i, j) -= factor * a(r, j);
      a(i, c) = F(0);
    }
    pivot_cols.push_back(c);
    ++r;
  }
  std::vector<bool> is_pivot(cols, false);
  for (auto c : pivot_cols) is_pivot[c] = true;
  std::vector<Matrix<F>> basis;
  for (std::size_t free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    Matrix<F> x(cols, 1);
    x[free] = F(1);
    for (std::size_t k = 0; k < pivot_cols.size(); ++k) x[pivot_cols[k]] = -a(k, free);
    basis.push_back(std::move(x));
  }
  return Subspace<F>::span(cols, basis, tol);
}

/// U intersected with V, from the kernel of [U | -V].
template <Scalar F>
Subspace<F> intersect(const Subspace<F>& u, const Subspace<F>& v, Tolerance tol = Tolerance::standard()) {
  if (u.ambient_dim() != v.ambient_dim()) throw DimensionError("intersect: ambient dimensions differ");
  const std::size_t n = u.ambient_dim();
  if (u.dim() == 0 || v.dim() == 0) return Subspace<F>(n);
  const Matrix<F> stacked = Matrix<F>::hstack({u.basis_matrix(), -v.basis_matrix()});
  const Subspace<F> coeffs = kernel(stacked, tol);
  const Matrix<F> ub = u.basis_matrix();
  std::vector<Matrix<F>> vectors;
  for (const auto& c : coeffs.basis()) vectors.push_back(ub * c.block(0, 0, u.dim(), 1));
  return Subspace<F>::span(n, vectors, tol);
}

}  // namespace twinrep
