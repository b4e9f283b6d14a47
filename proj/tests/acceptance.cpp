// Acceptance run: one PASS/FAIL line per criterion, exit status 1 on any FAIL.

#include <chrono>
#include <cmath>
#include <complex>
#include <functional>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "support/oracles.hpp"
#include "support/random.hpp"
#include "twinrep/twinrep.hpp"

using namespace twinrep;
using testsupport::Draw;
using Q = GaussianRational;
using MQ = Matrix<Q>;
using CF = ComplexFloat;
using MF = Matrix<CF>;

namespace {

// Pinned tolerances and limits.
constexpr double kFloatEps = 1e-9;
constexpr double kMinRankGap = 1e3;
constexpr double kPerturbation = 1e-3;
constexpr double kRootResidual = 1e-10;
constexpr double kClosedRootTol = 1e-10;
constexpr double kLimitAC1 = 5.0;
constexpr double kLimitAC8 = 1.0;
constexpr double kLimitAC9 = 60.0;

/// Collects the first few failure messages of one criterion.
class Check {
 public:
  void expect(bool ok, const std::string& what) {
    ++checked_;
    if (ok) return;
    ++failed_;
    if (failed_ <= 3) notes_.push_back(what);
  }
  bool ok() const { return failed_ == 0; }
  int checked() const { return checked_; }
  std::string summary() const {
    std::ostringstream s;
    s << checked_ << " checks";
    if (failed_ > 0) s << ", " << failed_ << " failed";
    for (const auto& n : notes_) s << "; " << n;
    return s.str();
  }

 private:
  int checked_ = 0;
  int failed_ = 0;
  std::vector<std::string> notes_;
};

std::string str(const Q& x) { return format_scalar(x); }

template <class T>
std::string cat(const T& x) {
  std::ostringstream s;
  s << x;
  return s.str();
}

/// Runs one criterion, prints its line and returns whether it passed.
bool run(const std::string& id, double time_limit, const std::function<void(Check&)>& body) {
  Check check;
  const auto start = std::chrono::steady_clock::now();
  std::string error;
  try {
    body(check);
  } catch (const std::exception& e) {
    error = e.what();
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const bool in_time = time_limit <= 0.0 || secs < time_limit;
  const bool pass = error.empty() && check.ok() && in_time;
  std::ostringstream line;
  line.precision(3);
  line << id << ' ' << (pass ? "PASS" : "FAIL") << ' ' << check.summary();
  if (!error.empty()) line << "; exception: " << error;
  line << "; " << secs << " s";
  if (time_limit > 0.0) line << " (limit " << time_limit << " s)";
  if (!in_time) line << " over time limit";
  std::cout << line.str() << std::endl;
  return pass;
}

/// Gaussian elimination inverse, kept apart from the closed forms under test.
MQ inverse_by_elimination(const MQ& m) { return inverse(m); }

// -----------------------------------------------------------------------------

void ac1(Check& c) {
  Draw draw(1001);
  for (int n = 2; n <= 8; ++n) {
    for (int t = 0; t < 10; ++t) {
      const std::vector<RepSpec<Q>> specs{
          RepSpec<Q>::xi1(n, draw.gaussian(), draw.nonzero()),
          RepSpec<Q>::xi2(n, draw.gaussian(), draw.integer(0, 1) ? 1 : -1),
          RepSpec<Q>::xi3(n),
      };
      for (std::size_t f = 0; f < specs.size(); ++f) {
        const RelationReport r = verify_relations(build_generators(specs[f]));
        c.expect(r.ok(), "family " + std::to_string(f + 1) + " n=" + std::to_string(n) + ": " +
                             (r.ok() ? "" : r.failures.front().describe()));
      }
    }
  }
}

void ac2(Check& c) {
  Draw draw(1002);
  for (int n = 3; n <= 8; ++n) {
    for (int t = 0; t < 10; ++t) {
      const Q a = draw.gaussian(), b = draw.nonzero();
      const MQ v = invariant_vector(n, a, b);
      for (const auto& g : build_generators(RepSpec<Q>::xi1(n, a, b))) {
        c.expect(testsupport::naive_mul(g.matrix, v) == v,
                 "n=" + std::to_string(n) + " k=" + std::to_string(g.index) + " a=" + str(a));
      }
    }
  }
}

void ac3(Check& c) {
  Draw draw(1003);
  for (int n = 4; n <= 8; ++n) {
    for (int t = 0; t < 5; ++t) {
      const Q a = draw.generic_a(true), b = draw.nonzero();
      const MQ qf = build_Q(n, a, b).forward;
      const MQ qi = inverse_by_elimination(qf);
      for (int k = 1; k <= n - 1; ++k) {
        const MQ g = embed_block(xi1_block(a, b), n, k);
        const MQ conj = testsupport::naive_mul(testsupport::naive_mul(qi, g), qf);
        MQ deleted(static_cast<std::size_t>(n - 1), static_cast<std::size_t>(n - 1));
        for (int i = 1; i < n; ++i)
          for (int j = 1; j < n; ++j) deleted(i - 1, j - 1) = conj(i, j);
        c.expect(reduced_generator(n, a, b, k) == deleted,
                 "reduced n=" + std::to_string(n) + " k=" + std::to_string(k));
      }
      const MQ pf = build_P(n, a, b).forward;
      const MQ pi = inverse_by_elimination(pf);
      for (int j = 1; j <= n - 1; ++j) {
        const MQ conj = testsupport::naive_mul(testsupport::naive_mul(pi, reduced_generator(n, a, b, j)), pf);
        c.expect(build_S(n, a, b, j) == conj, "S n=" + std::to_string(n) + " j=" + std::to_string(j));
      }
    }
  }
}

void ac4(Check& c) {
  Draw draw(1004);
  for (int n = 4; n <= 8; ++n) {
    for (int t = 0; t < 5; ++t) {
      const Q a = draw.gaussian(), b = draw.nonzero();
      const MQ s1 = reduced_generator(n, a, b, 1);
      for (int lam : {0, 2, -2}) {
        const Q l(lam);
        const Q want = (l + Q(1)) * ipow(l - Q(1), n - 2);
        const Q got = testsupport::char_poly_at(s1, l);
        c.expect(got == want, "n=" + std::to_string(n) + " lambda=" + std::to_string(lam) + " got " + str(got));
      }
    }
  }
}

void ac5(Check& c) {
  Draw draw(1005);
  for (int n = 3; n <= 10; ++n) {
    for (int t = 0; t < 50; ++t) {
      std::vector<Q> xs;
      for (int i = 0; i < n; ++i) xs.push_back(draw.gaussian());
      const Q y1 = draw.gaussian(), y2 = draw.gaussian();
      const std::span<const Q> view(xs);
      const Q closed = det_closed_form(view, y1, y2);
      const Q direct = det(lemma_matrix(view, y1, y2));
      c.expect(closed == direct, "n=" + std::to_string(n) + ": " + str(closed) + " vs " + str(direct));
    }
  }
}

void ac6(Check& c) {
  Draw draw(1006);
  for (int n = 4; n <= 8; ++n) {
    for (int t = 0; t < 20; ++t) {
      const Q a = draw.generic_a(), b = draw.nonzero();
      const Q closed = delta(n, a, b);
      const Q direct = delta_direct(n, a, b);
      c.expect(closed == direct, "n=" + std::to_string(n) + " a=" + str(a) + ": " + str(closed) + " vs " + str(direct));
    }
    for (int t = 0; t < 5; ++t) {
      const Q b = draw.nonzero();
      const Q want = -b * Q(n) / Q(2);
      c.expect(delta(n, Q(0), b) == want, "a=0 closed n=" + std::to_string(n));
      c.expect(delta_direct(n, Q(0), b) == want, "a=0 direct n=" + std::to_string(n));
    }
  }
}

void ac7(Check& c) {
  Draw draw(1007);
  for (int n = 4; n <= 8; ++n) {
    for (int t = 0; t < 5; ++t) {
      const Q a = draw.generic_a(), b = draw.nonzero();
      const ChainBundle<Q> bundle = chain_vectors(n, a, b);
      const std::size_t d = static_cast<std::size_t>(n - 1);
      for (int k = 1; k <= n - 3; ++k) {
        MQ want(d, 1);
        want[k] = -b;
        want[k + 1] = Q(1) + a;
        c.expect(bundle.v[static_cast<std::size_t>(k - 1)] == want,
                 "v_" + std::to_string(k) + " n=" + std::to_string(n) + " a=" + str(a));
      }
      const ClosureReport r = closure_check(bundle);
      c.expect(r.ok() && r.checked > 0, "closure n=" + std::to_string(n) + (r.ok() ? "" : ": " + r.failures.front()));
    }
  }
}

/// Float oracle on the reduced T_3 images, with the rank gap pinned.
struct OracleRun {
  std::size_t dim;
  std::size_t full;
  double gap;
};

OracleRun float_oracle(int n, const CF& a, const CF& b) {
  const auto images = matrices_of(reduced_generators(n, a, b));
  const AlgebraBasis<CF> alg = algebra_closure(std::span<const MF>(images), Tolerance{kFloatEps});
  return {alg.dimension(), alg.full_dimension(), alg.stats.gap()};
}

void ac8(Check& c) {
  const Tolerance tol{kFloatEps};
  const CF b(1.0);
  const double r3 = std::sqrt(3.0);
  const std::vector<CF> special{CF(1.0), CF(-1.0), CF(0.0, r3), CF(0.0, -r3)};
  for (const CF& a : special) {
    const OracleRun o = float_oracle(3, a, b);
    c.expect(o.dim < o.full, "oracle irreducible at a=" + cat(a));
    c.expect(o.gap >= kMinRankGap, "rank gap " + cat(o.gap) + " at a=" + cat(a));
    const Verdict<CF> v = decide(3, a, b, tol);
    c.expect(v.reducible() && v.diagnostics.witness_verified, "decide at a=" + cat(a));
  }
  for (int i = 0; i < 20; ++i) {
    const CF base = special[static_cast<std::size_t>(i % 4)];
    const CF delta_point = CF(std::polar(kPerturbation, 2.0 * std::numbers::pi * (i / 4 + 0.5) / 5.0));
    const CF a = base + delta_point;
    const OracleRun o = float_oracle(3, a, b);
    c.expect(o.dim == o.full, "oracle reducible at a=" + cat(a));
    c.expect(o.gap >= kMinRankGap, "rank gap " + cat(o.gap) + " at a=" + cat(a));
    c.expect(!decide(3, a, b, tol).reducible(), "decide reducible at a=" + cat(a));
  }
}

void ac9(Check& c) {
  const Tolerance tol{kFloatEps};
  Draw draw(1009);
  for (int n = 4; n <= 7; ++n) {
    const std::size_t d = static_cast<std::size_t>(n - 1);
    const CriterionRoots roots = roots_of_P(n, tol);
    c.expect(!roots.roots.empty(), "no roots for n=" + std::to_string(n));
    for (const auto& r : roots.roots) {
      const std::string at = "n=" + std::to_string(n) + " a=" + cat(CF(r.value));
      c.expect(r.residual <= kRootResidual, "residual " + cat(r.residual) + " at " + at);
      const CF a(r.value);
      const CF b(1.0);
      const Verdict<CF> v = decide(n, a, b, tol);
      c.expect(v.reducible() && v.reason == Reason::RootOfP, "decide at " + at);
      c.expect(v.witness && v.witness->dim() == d - 1, "witness dim at " + at);
      if (v.witness) {
        const auto images = matrices_of(reduced_generators(n, a, b));
        c.expect(witness_check(std::span<const MF>(images), *v.witness, tol), "witness_check at " + at);
      }
      const OracleRun o = float_oracle(n, a, b);
      c.expect(o.dim < d * d, "oracle full at " + at);
      c.expect(o.gap >= kMinRankGap, "oracle gap " + cat(o.gap) + " at " + at);
    }

    std::vector<Q> points{Q(1), Q(-1), Q(0)};
    while (points.size() < 13) points.push_back(draw.generic_a());
    for (const Q& a : points) {
      const std::string at = "n=" + std::to_string(n) + " a=" + str(a);
      const Q b = draw.nonzero();
      const Verdict<Q> v = decide(n, a, b);
      const bool oracle_irreducible = is_irreducible_oracle(matrices_of(reduced_generators(n, a, b)));
      c.expect(v.reducible() != oracle_irreducible, "decide/oracle disagree at " + at);
      if (a.is_zero()) c.expect(!v.reducible(), "a=0 reducible at " + at);
      if (a == Q(1) || a == Q(-1)) {
        c.expect(v.reducible() && v.diagnostics.witness_verified, "no verified witness at " + at);
        if (v.witness) {
          std::vector<MQ> basis = v.witness->basis();
          c.expect(testsupport::invariant_by_minors(matrices_of(reduced_generators(n, a, b)), basis),
                   "witness not invariant by minors at " + at);
        }
      }
    }
  }
}

void ac10(Check& c) {
  const CriterionRoots roots = roots_of_P(4, Tolerance{kFloatEps});
  c.expect(roots.roots.size() == 2, "root count " + std::to_string(roots.roots.size()));
  for (const std::complex<double> want : {std::complex<double>(0, 1), std::complex<double>(0, -1)}) {
    bool found = false;
    for (const auto& r : roots.roots) found = found || std::abs(r.value - want) <= kClosedRootTol;
    c.expect(found, "missing root " + cat(CF(want)));
  }
  const Verdict<Q> v = decide(4, Q::i(), Q(1));
  c.expect(v.reducible() && v.diagnostics.witness_verified, "decide(4, i, 1)");
}

void ac11(Check& c) {
  Draw draw(1011);
  for (int n = 4; n <= 8; ++n) {
    const IntPolynomial p = cleared_poly(n).poly;
    for (int t = 0; t < 20; ++t) {
      Q a;
      do {
        a = draw.generic_a();
      } while ((a + Q(1)).is_zero());
      const Q lhs = p.eval(a);
      const Q rhs = Q(2) * a * ipow(Q(1) + a, n - 4) * eval_P(n, a);
      c.expect(lhs == rhs, "n=" + std::to_string(n) + " a=" + str(a));
      c.expect(lhs == testsupport::eval_coeffs(testsupport::cleared_poly_by_binomials(n), a),
               "binomial oracle n=" + std::to_string(n));
    }
    c.expect(!p.eval(Q(1)).is_zero(), "P^(1) = 0 for n=" + std::to_string(n));
    c.expect(!p.eval(Q(-1)).is_zero(), "P^(-1) = 0 for n=" + std::to_string(n));
  }
}

void ac12(Check& c) {
  Draw draw(1012);
  for (int n = 3; n <= 8; ++n) {
    const std::size_t nn = static_cast<std::size_t>(n);
    for (int t = 0; t < 5; ++t) {
      const auto xi2 = build_generators(RepSpec<Q>::xi2(n, draw.gaussian(), draw.integer(0, 1) ? 1 : -1));
      const MQ en = MQ::unit(nn, nn - 1);
      c.expect(witness_check(xi2, Subspace<Q>::span(nn, {en})), "xi2 span(e_n) n=" + std::to_string(n));
      c.expect(testsupport::invariant_by_minors(matrices_of(xi2), {en}), "xi2 minors n=" + std::to_string(n));
    }
    const auto xi3 = build_generators(RepSpec<Q>::xi3(n));
    for (std::size_t k = 0; k < nn; ++k) {
      const MQ ek = MQ::unit(nn, k);
      c.expect(witness_check(xi3, Subspace<Q>::span(nn, {ek})),
               "xi3 span(e_" + std::to_string(k + 1) + ") n=" + std::to_string(n));
      c.expect(testsupport::invariant_by_minors(matrices_of(xi3), {ek}), "xi3 minors n=" + std::to_string(n));
    }
  }
}

}  // namespace

int main() {
  bool all = true;
  all &= run("AC1", kLimitAC1, ac1);
  all &= run("AC2", 0.0, ac2);
  all &= run("AC3", 0.0, ac3);
  all &= run("AC4", 0.0, ac4);
  all &= run("AC5", 0.0, ac5);
  all &= run("AC6", 0.0, ac6);
  all &= run("AC7", 0.0, ac7);
  all &= run("AC8", kLimitAC8, ac8);
  all &= run("AC9", kLimitAC9, ac9);
  all &= run("AC10", 0.0, ac10);
  all &= run("AC11", 0.0, ac11);
  all &= run("AC12", 0.0, ac12);
  return all ? 0 : 1;
}
