// For each n, list the nonzero roots of the criterion polynomial and confirm
// that the reduced representation is reducible there and irreducible nearby.
#include <cstdio>

#include "twinrep/twinrep.hpp"

using namespace twinrep;

int main() {
  const ComplexFloat b(1.0, 0.0);
  for (int n = 4; n <= 8; ++n) {
    const CriterionRoots r = roots_of_P(n);
    std::printf("n = %d: %s\n", n, cleared_poly(n).poly.to_string().c_str());
    for (const auto& root : r.roots) {
      const ComplexFloat a(root.value);
      const auto at = decide(n, a, b);
      const auto near = decide(n, a + ComplexFloat(1e-3, 0.0), b);
      const auto images = matrices_of(reduced_generators(n, a, b));
      std::printf("  a = %-28s  %-11s  algebra dim %zu / %d   (a + 0.001: %s)\n", format_scalar(a).c_str(),
                  to_string(at.status).c_str(), algebra_dimension(images), (n - 1) * (n - 1),
                  to_string(near.status).c_str());
    }
  }
}
