#include <gtest/gtest.h>

#include <algorithm>

#include "support/oracles.hpp"
#include "support/random.hpp"
#include "twinrep/chain.hpp"
#include "twinrep/linalg.hpp"
#include "twinrep/reduction.hpp"

using namespace twinrep;
using testsupport::Draw;
using Q = GaussianRational;
using MQ = Matrix<Q>;

TEST(MatMul, Examples) {
  Draw draw(201);
  const MQ a = draw.matrix(3, 3);
  EXPECT_EQ(MQ::identity(3) * a, a);
  const MQ m = xi1_block(Q(0), Q(1));
  EXPECT_EQ(m * m, MQ::identity(2));
  EXPECT_EQ((MQ{{0, 1}, {1, 0}} * MQ{{1}, {2}}), (MQ{{2}, {1}}));
}

TEST(MatMul, DimensionMismatch) {
  EXPECT_THROW(MQ(2, 3) * MQ(2, 3), DimensionError);
  EXPECT_THROW(MQ(2, 3) + MQ(3, 2), DimensionError);
}

TEST(MatMul, AgreesWithNaiveProduct) {
  Draw draw(202);
  for (int t = 0; t < 20; ++t) {
    const MQ a = draw.matrix(3, 4), b = draw.matrix(4, 2);
    EXPECT_EQ(a * b, testsupport::naive_mul(a, b));
  }
}

TEST(Inverse, QExample) {
  const BasisChange<Q> q = build_Q(4, Q(2), Q(1));
  const MQ inv = inverse(q.forward);
  MQ expected = MQ::identity(4);
  expected(1, 0) = Q(1);
  expected(2, 0) = Q(-1);
  expected(3, 0) = Q(1);
  EXPECT_EQ(inv, expected);
  EXPECT_EQ(q.inverse, expected);
}

TEST(Inverse, IdentityAndSingular) {
  EXPECT_EQ(inverse(MQ::identity(4)), MQ::identity(4));
  try {
    inverse(MQ{{1, 0}, {0, 0}});
    FAIL() << "expected SingularMatrixError";
  } catch (const SingularMatrixError& e) {
    EXPECT_EQ(e.column(), 1u);
  }
  EXPECT_THROW(inverse(Matrix<ComplexFloat>{{1.0, 0.0}, {0.0, 1e-14}}), SingularMatrixError);
}

TEST(Inverse, RandomRoundTrip) {
  Draw draw(203);
  for (int t = 0; t < 30; ++t) {
    const MQ a = draw.matrix(4, 4);
    if (testsupport::cofactor_det(a).is_zero()) continue;
    EXPECT_EQ(a * inverse(a), MQ::identity(4));
  }
}

TEST(Det, Examples) {
  EXPECT_EQ(det(MQ::identity(5)), Q(1));
  EXPECT_EQ(det(reduced_generator(5, Q(2), Q(1), 1)), Q(-1));
  const std::vector<Q> xs{1, 2, 3, 4};
  // -2*7^2 + 3*5*7 - 4*5^2
  EXPECT_EQ(det(lemma_matrix(std::span<const Q>(xs), Q(5), Q(7))), Q(-93));
  EXPECT_EQ(testsupport::cofactor_det(lemma_matrix(std::span<const Q>(xs), Q(5), Q(7))), Q(-93));
  EXPECT_EQ(det(MQ(3, 3)), Q(0));
}

TEST(Det, MatchesCofactorOracle) {
  Draw draw(204);
  for (std::size_t n = 1; n <= 6; ++n) {
    for (int t = 0; t < 8; ++t) {
      const MQ a = draw.sparse_matrix(n, n);
      const Q d = det(a);
      EXPECT_EQ(d, testsupport::cofactor_det(a));
      EXPECT_EQ(!d.is_zero(), rank(a) == n);
      if (!d.is_zero()) {
        EXPECT_NO_THROW(inverse(a));
      } else {
        EXPECT_THROW(inverse(a), SingularMatrixError);
      }
    }
  }
}

TEST(Det, FloatAgreesWithExact) {
  Draw draw(205);
  for (int t = 0; t < 20; ++t) {
    const MQ a = draw.matrix(5, 5);
    const ComplexFloat f = det(a.cast<ComplexFloat>());
    EXPECT_TRUE(approx_equal(f, scalar_cast<ComplexFloat>(det(a)), Tolerance{1e-9}));
  }
}

TEST(Rank, Examples) {
  EXPECT_EQ(rank(MQ::identity(4)), 4u);
  EXPECT_EQ(kernel(MQ::identity(4)).dim(), 0u);
  EXPECT_EQ(rank(MQ(3, 3)), 0u);
  EXPECT_EQ(kernel(MQ(3, 3)).dim(), 3u);
  const Q a(2), b(1);
  const MQ s2 = conjugated_S(5, a, b, 2);
  const MQ v1 = chain_vector(5, a, b, 1);
  const MQ m = MQ::hstack({s2 * v1, MQ::unit(4, 0), v1});
  EXPECT_EQ(rank(m), 3u);
  EXPECT_EQ(testsupport::minor_rank(m), 3u);
}

TEST(Rank, RankNullity) {
  Draw draw(206);
  for (int t = 0; t < 40; ++t) {
    const std::size_t r = static_cast<std::size_t>(draw.integer(1, 5));
    const std::size_t c = static_cast<std::size_t>(draw.integer(1, 5));
    const MQ a = draw.sparse_matrix(r, c);
    const Subspace<Q> k = kernel(a);
    EXPECT_EQ(rank(a) + k.dim(), c);
    EXPECT_EQ(rank(a), testsupport::minor_rank(a));
    for (const auto& x : k.basis()) EXPECT_TRUE((a * x).is_zero());
  }
}

TEST(Rank, InvariantUnderShuffleAndScaling) {
  Draw draw(207);
  for (int t = 0; t < 30; ++t) {
    const MQ a = draw.sparse_matrix(5, 4);
    std::vector<std::size_t> order{0, 1, 2, 3, 4};
    std::shuffle(order.begin(), order.end(), draw.engine());
    MQ b(5, 4);
    for (std::size_t i = 0; i < 5; ++i) {
      const Q s = draw.nonzero();
      for (std::size_t j = 0; j < 4; ++j) b(i, j) = s * a(order[i], j);
    }
    EXPECT_EQ(rank(a), rank(b));
  }
}

TEST(Rank, FloatGapIsReported) {
  const Matrix<ComplexFloat> m{{1.0, 2.0}, {2.0, 4.0 + 1e-14}};
  const RankReport r = rank_report(m);
  EXPECT_EQ(r.rank, 1u);
  EXPECT_GT(r.gap(), 1e3);
  EXPECT_EQ(rank_report(Matrix<ComplexFloat>::identity(3)).rank, 3u);
}

TEST(Subspace, Contains) {
  const Subspace<Q> w = Subspace<Q>::span(3, {MQ::unit(3, 0)});
  EXPECT_TRUE(w.contains(Q(3) * MQ::unit(3, 0)));
  EXPECT_FALSE(w.contains(MQ::unit(3, 1)));
  EXPECT_THROW(w.contains(MQ::unit(4, 0)), DimensionError);

  const Q a(2), b(1);
  std::vector<MQ> gens{MQ::unit(4, 0)};
  for (int k = 1; k <= 2; ++k) gens.push_back(chain_vector(5, a, b, k));
  const Subspace<Q> chain = Subspace<Q>::span(4, gens);
  EXPECT_EQ(chain.dim(), 3u);
  EXPECT_FALSE(chain.contains(conjugated_S(5, a, b, 2) * chain_vector(5, a, b, 1)));
}

TEST(Subspace, SpanDropsDependentVectors) {
  const MQ e1 = MQ::unit(3, 0), e2 = MQ::unit(3, 1);
  const Subspace<Q> s = Subspace<Q>::span(3, {e1, e2, e1 + e2, MQ(3, 1)});
  EXPECT_EQ(s.dim(), 2u);
  EXPECT_TRUE(s.is_proper());
  EXPECT_FALSE(Subspace<Q>::full(3).is_proper());
  EXPECT_TRUE(s.same_span(Subspace<Q>::span(3, {e1 - e2, e2})));
}

TEST(Subspace, Intersection) {
  const MQ e1 = MQ::unit(4, 0), e2 = MQ::unit(4, 1), e3 = MQ::unit(4, 2);
  const Subspace<Q> u = Subspace<Q>::span(4, {e1, e2});
  const Subspace<Q> v = Subspace<Q>::span(4, {e2 + e1, e3});
  const Subspace<Q> both = intersect(u, v);
  EXPECT_EQ(both.dim(), 1u);
  EXPECT_TRUE(both.contains(e1 + e2));
}
