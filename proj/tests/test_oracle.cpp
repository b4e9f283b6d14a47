#include <gtest/gtest.h>

#include "support/random.hpp"
#include "twinrep/irreducibility.hpp"
#include "twinrep/oracle.hpp"

using namespace twinrep;
using testsupport::Draw;
using Q = GaussianRational;
using MQ = Matrix<Q>;
using CF = ComplexFloat;

TEST(AlgebraDimension, Examples) {
  EXPECT_EQ(algebra_dimension(std::vector<MQ>{MQ::identity(2)}), 1u);
  EXPECT_EQ(algebra_dimension(std::vector<MQ>{MQ{{0, 1}, {1, 0}}, MQ{{1, 0}, {0, -1}}}), 4u);
  EXPECT_EQ(algebra_dimension(matrices_of(reduced_generators(4, Q(2), Q(1)))), 9u);
  EXPECT_THROW(algebra_dimension(std::vector<MQ>{}), DimensionError);
  EXPECT_THROW(algebra_dimension(std::vector<MQ>{MQ::identity(2), MQ::identity(3)}), DimensionError);
}

TEST(AlgebraDimension, ClosedUnderProducts) {
  const auto images = matrices_of(reduced_generators(4, Q(1), Q(2)));
  const AlgebraBasis<Q> alg = algebra_closure(std::span<const MQ>(images));
  EXPECT_TRUE(alg.closed);
  EXPECT_LT(alg.dimension(), alg.full_dimension());
  std::vector<MQ> basis_vectors;
  for (const auto& m : alg.basis) basis_vectors.push_back(MQ::column(m.data()));
  const Subspace<Q> span = Subspace<Q>::span(9, basis_vectors);
  EXPECT_EQ(span.dim(), alg.dimension());
  for (const auto& x : alg.basis)
    for (const auto& y : alg.basis) EXPECT_TRUE(span.contains(MQ::column((x * y).data())));
}

TEST(IsIrreducibleOracle, Examples) {
  EXPECT_FALSE(is_irreducible_oracle(matrices_of(build_generators(RepSpec<Q>::xi3(4)))));
  EXPECT_TRUE(is_irreducible_oracle(matrices_of(reduced_generators(3, Q(2), Q(1)))));
  EXPECT_FALSE(is_irreducible_oracle(matrices_of(reduced_generators(3, Q(-1), Q(1)))));
  EXPECT_TRUE(is_irreducible_oracle(std::vector<MQ>{MQ::identity(1)}));
}

TEST(IsIrreducibleOracle, KnownReducibleFamilies) {
  Draw draw(801);
  for (int n = 2; n <= 6; ++n) {
    for (int t = 0; t < 3; ++t) {
      EXPECT_FALSE(is_irreducible_oracle(matrices_of(build_generators(RepSpec<Q>::xi1(n, draw.gaussian(), draw.nonzero())))));
      EXPECT_FALSE(is_irreducible_oracle(matrices_of(build_generators(RepSpec<Q>::xi2(n, draw.gaussian(), 1)))));
      EXPECT_FALSE(is_irreducible_oracle(matrices_of(build_generators(RepSpec<Q>::xi3(n)))));
    }
  }
}

TEST(AlgebraDimension, MonotoneUnderAddingGenerators) {
  Draw draw(802);
  for (int t = 0; t < 10; ++t) {
    const auto images = matrices_of(reduced_generators(5, draw.gaussian(), draw.nonzero()));
    std::size_t last = 0;
    std::vector<MQ> prefix;
    for (const auto& g : images) {
      prefix.push_back(g);
      const std::size_t dim = algebra_dimension(prefix);
      EXPECT_GE(dim, last);
      last = dim;
    }
    auto with_redundant = images;
    with_redundant.push_back(images[0] * images[1] + Q(3) * images[2]);
    EXPECT_EQ(algebra_dimension(with_redundant), algebra_dimension(images));
  }
}

TEST(AlgebraDimension, FieldStability) {
  Draw draw(803);
  for (int n = 3; n <= 6; ++n) {
    for (const Q& a : {Q(1), Q(-1), Q::i(), draw.gaussian(), draw.gaussian()}) {
      const Q b = draw.nonzero();
      const auto exact = matrices_of(reduced_generators(n, a, b));
      const auto flt = matrices_of(reduced_generators(n, CF(a), CF(b)));
      const AlgebraBasis<CF> alg = algebra_closure(std::span<const Matrix<CF>>(flt));
      EXPECT_EQ(algebra_dimension(exact), alg.dimension()) << "n=" << n << " a=" << a;
      EXPECT_GE(alg.stats.gap(), 1e3);
    }
  }
}

TEST(CommonEigenlines, Examples) {
  const auto xi1 = matrices_of(build_generators(RepSpec<Q>::xi1(4, Q(0), Q(1))));
  const auto lines = common_eigenlines(xi1);
  ASSERT_EQ(lines.size(), 1u);
  EXPECT_TRUE(lines[0].same_span(Subspace<Q>::span(4, {MQ::column({1, 1, 1, 1})})));

  const auto red = matrices_of(reduced_generators(5, Q(1), Q(2)));
  bool found = false;
  for (const auto& l : common_eigenlines(red)) found = found || l.same_span(Subspace<Q>::span(4, {MQ::unit(4, 0)}));
  EXPECT_TRUE(found);

  EXPECT_TRUE(common_eigenlines(matrices_of(reduced_generators(5, Q(2), Q(1)))).empty());
  EXPECT_THROW(common_eigenlines(std::vector<MQ>{MQ{{1, 1}, {0, 1}}}), DomainError);
}

TEST(CommonEigenlines, MatchesInvariantVector) {
  Draw draw(804);
  for (int n = 3; n <= 7; ++n) {
    const Q a = draw.generic_a(), b = draw.nonzero();
    const auto lines = common_eigenlines(matrices_of(build_generators(RepSpec<Q>::xi1(n, a, b))));
    const Subspace<Q> v = Subspace<Q>::span(static_cast<std::size_t>(n), {invariant_vector(n, a, b)});
    bool found = false;
    for (const auto& l : lines) found = found || l.same_span(v);
    EXPECT_TRUE(found) << n;
  }
}

TEST(CommonEigenlines, FindsEveryOneDimensionalWitness) {
  Draw draw(805);
  const double s3 = std::sqrt(3.0);
  for (int n = 3; n <= 7; ++n) {
    for (const Q& a : {Q(1), Q(-1)}) {
      const Q b = draw.nonzero();
      const Verdict<Q> v = decide(n, a, b);
      ASSERT_TRUE(v.witness.has_value());
      if (v.witness->dim() != 1) continue;
      bool found = false;
      for (const auto& l : common_eigenlines(matrices_of(reduced_generators(n, a, b))))
        found = found || l.same_span(*v.witness);
      EXPECT_TRUE(found) << "n=" << n << " a=" << a;
    }
  }
  for (double sign : {1.0, -1.0}) {
    const CF a(0.0, sign * s3), b(2.0);
    const Verdict<CF> v = decide(3, a, b);
    ASSERT_TRUE(v.witness.has_value());
    bool found = false;
    for (const auto& l : common_eigenlines(matrices_of(reduced_generators(3, a, b))))
      found = found || l.same_span(*v.witness);
    EXPECT_TRUE(found);
  }
}

TEST(CommonEigenspaces, ReportsSigns) {
  const auto xi3 = matrices_of(build_generators(RepSpec<Q>::xi3(3)));
  const auto spaces = common_eigenspaces(std::span<const MQ>(xi3));
  // s1 = diag(-1,-1,1), s2 = diag(1,-1,-1): three common eigenlines.
  ASSERT_EQ(spaces.size(), 3u);
  for (const auto& s : spaces) EXPECT_EQ(s.signs.size(), 2u);
  EXPECT_EQ(common_eigenlines(xi3).size(), 3u);
}
