#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "twinrep/linalg.hpp"
#include "twinrep/matrix.hpp"
#include "twinrep/scalar.hpp"

namespace twinrep {

/// The three families of homogeneous 2-local representations of the twin
/// group T_n, each sending s_k to I_{k-1} (+) M (+) I_{n-k-1}:
///   Xi1: M = [[a, b], [(1-a^2)/b, -a]], b != 0
///   Xi2: M = [[s, 0], [c, -s]], s = +1 or -1 (one shared sign)
///   Xi3: M = -I_2
enum class Family { Xi1 = 1, Xi2 = 2, Xi3 = 3 };

template <Scalar F>
struct RepSpec {
  Family family = Family::Xi1;
  int n = 2;
  F a{0};
  F b{1};
  F c{0};
  int sign = 1;

  static RepSpec xi1(int n, F a, F b) { return {Family::Xi1, n, std::move(a), std::move(b), F(0), 1}; }
  static RepSpec xi2(int n, F c, int sign) { return {Family::Xi2, n, F(0), F(1), std::move(c), sign}; }
  static RepSpec xi3(int n) { return {Family::Xi3, n, F(0), F(1), F(0), 1}; }

  void validate(Tolerance tol = Tolerance::standard()) const {
    if (n < 2) throw DomainError("n must be at least 2");
    if (family == Family::Xi1 && is_zero(b, tol)) throw DomainError("family 1 requires b != 0");
    if (family == Family::Xi2 && sign != 1 && sign != -1) throw DomainError("family 2 sign must be +1 or -1");
  }
};

/// Image of the generator s_index (1-based).
template <Scalar F>
struct GeneratorImage {
  int index = 1;
  Matrix<F> matrix;
};

template <Scalar F>
Matrix<F> xi1_block(const F& a, const F& b) {
  if (is_zero(b)) throw DomainError("family 1 requires b != 0");
  return Matrix<F>{{a, b}, {(F(1) - a * a) / b, -a}};
}

template <Scalar F>
Matrix<F> build_block(const RepSpec<F>& spec) {
  spec.validate();
  switch (spec.family) {
    case Family::Xi1:
      return xi1_block(spec.a, spec.b);
    case Family::Xi2: {
      const F s(spec.sign);
      return Matrix<F>{{s, F(0)}, {spec.c, -s}};
    }
    case Family::Xi3:
      return Matrix<F>{{F(-1), F(0)}, {F(0), F(-1)}};
  }
  throw DomainError("unknown family");
}

/// I_{k-1} (+) block (+) I_{n-k-1}.
template <Scalar F>
Matrix<F> embed_block(const Matrix<F>& block, int n, int k) {
  if (block.rows() != 2 || block.cols() != 2) throw DimensionError("2-local block must be 2x2");
  if (k < 1 || k > n - 1) {
    throw DomainError("generator index " + std::to_string(k) + " outside 1.." + std::to_string(n - 1));
  }
  Matrix<F> m = Matrix<F>::identity(static_cast<std::size_t>(n));
  m.set_block(static_cast<std::size_t>(k - 1), static_cast<std::size_t>(k - 1), block);
  return m;
}

template <Scalar F>
GeneratorImage<F> build_generator(const RepSpec<F>& spec, int k) {
  return {k, embed_block(build_block(spec), spec.n, k)};
}

template <Scalar F>
std::vector<GeneratorImage<F>> build_generators(const RepSpec<F>& spec) {
  const Matrix<F> block = build_block(spec);
  std::vector<GeneratorImage<F>> images;
  for (int k = 1; k <= spec.n - 1; ++k) images.push_back({k, embed_block(block, spec.n, k)});
  return images;
}

template <Scalar F>
std::vector<Matrix<F>> matrices_of(std::span<const GeneratorImage<F>> images) {
  std::vector<Matrix<F>> out;
  out.reserve(images.size());
  for (const auto& g : images) out.push_back(g.matrix);
  return out;
}

template <Scalar F>
std::vector<Matrix<F>> matrices_of(const std::vector<GeneratorImage<F>>& images) {
  return matrices_of(std::span<const GeneratorImage<F>>(images));
}

// =============================================================================
// Relations of T_n: s_i^2 = 1, s_i s_j = s_j s_i for |i - j| > 1
// =============================================================================

struct RelationFailure {
  enum class Kind { Involution, FarCommutation };
  Kind kind;
  int i;
  int j;  // equals i for Involution

  std::string describe() const {
    if (kind == Kind::Involution) return "s" + std::to_string(i) + "^2 != I";
    return "s" + std::to_string(i) + " s" + std::to_string(j) + " != s" + std::to_string(j) + " s" +
           std::to_string(i);
  }
};

struct RelationReport {
  std::vector<RelationFailure> failures;

  bool ok() const { return failures.empty(); }
};

template <Scalar F>
RelationReport verify_relations(std::span<const GeneratorImage<F>> images,
                                Tolerance tol = Tolerance::standard()) {
  RelationReport report;
  if (images.empty()) return report;
  const std::size_t dim = images.front().matrix.rows();
  for (const auto& g : images) {
    if (g.matrix.rows() != dim || g.matrix.cols() != dim) {
      throw DimensionError("generator images must be square of equal size");
    }
  }
  const Matrix<F> id = Matrix<F>::identity(dim);
  for (const auto& g : images) {
    if (!approx_equal(g.matrix * g.matrix, id, tol)) {
      report.failures.push_back({RelationFailure::Kind::Involution, g.index, g.index});
    }
  }
  for (std::size_t x = 0; x < images.size(); ++x) {
    for (std::size_t y = x + 1; y < images.size(); ++y) {
      const auto& gi = images[x];
      const auto& gj = images[y];
      if (std::abs(gi.index - gj.index) <= 1) continue;
      if (!approx_equal(gi.matrix * gj.matrix, gj.matrix * gi.matrix, tol)) {
        report.failures.push_back({RelationFailure::Kind::FarCommutation, gi.index, gj.index});
      }
    }
  }
  return report;
}

template <Scalar F>
RelationReport verify_relations(const std::vector<GeneratorImage<F>>& images,
                                Tolerance tol = Tolerance::standard()) {
  return verify_relations(std::span<const GeneratorImage<F>>(images), tol);
}

// =============================================================================
// Block classification
// =============================================================================

enum class BlockKind { Family1, Family2, Family3, Trivial, Invalid };

template <Scalar F>
struct BlockClass {
  BlockKind kind = BlockKind::Invalid;
  std::optional<RepSpec<F>> params;  // set for the three families
};

/// Decides which family a 2x2 block M belongs to. M^2 = I is checked first;
/// for b != 0 the trace must vanish (so d = -a), for b = 0 the diagonal
/// decides between -I, I and diag(+-1, -+1).
template <Scalar F>
BlockClass<F> classify_block(const Matrix<F>& m, Tolerance tol = Tolerance::standard()) {
  if (m.rows() != 2 || m.cols() != 2) throw DimensionError("classify_block expects a 2x2 matrix");
  BlockClass<F> out;
  if (!approx_equal(m * m, Matrix<F>::identity(2), tol)) return out;
  const F& a = m(0, 0);
  const F& b = m(0, 1);
  const F& c = m(1, 0);
  const F& d = m(1, 1);
  if (!is_zero(b, tol)) {
    // (a + d) b = 0 forces d = -a; a^2 + bc = 1 then fixes c.
    out.kind = BlockKind::Family1;
    out.params = RepSpec<F>::xi1(2, a, b);
    return out;
  }
  const bool a_pos = approx_equal(a, F(1), tol);
  const bool a_neg = approx_equal(a, F(-1), tol);
  const bool d_pos = approx_equal(d, F(1), tol);
  const bool d_neg = approx_equal(d, F(-1), tol);
  if (a_neg && d_neg) {
    out.kind = BlockKind::Family3;
    out.params = RepSpec<F>::xi3(2);
  } else if (a_pos && d_pos) {
    out.kind = BlockKind::Trivial;
  } else if ((a_pos && d_neg) || (a_neg && d_pos)) {
    out.kind = BlockKind::Family2;
    out.params = RepSpec<F>::xi2(2, c, a_pos ? 1 : -1);
  }
  return out;
}

inline std::string to_string(BlockKind kind) {
  switch (kind) {
    case BlockKind::Family1: return "family-1";
    case BlockKind::Family2: return "family-2";
    case BlockKind::Family3: return "family-3";
    case BlockKind::Trivial: return "trivial";
    case BlockKind::Invalid: return "not a valid block";
  }
  return "not a valid block";
}

}  // namespace twinrep
