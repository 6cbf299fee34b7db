// Mass of CP^n left outside the eps-band around the hyperplane at infinity,
// exact vs Monte Carlo, for growing n.

#include <fmt/core.h>

#include "levylab/families.hpp"

int main() {
  using namespace levylab;
  const double eps[] = {0.1, 0.2, 0.3};
  std::uint64_t id = 0;
  for (int n : {2, 8, 32, 128}) {
    const auto rep = concentration::estimate_concentration(concentration::cpn_family(n), eps, 20'000, RandomStream{7, id++});
    for (const auto& e : rep.entries) {
      fmt::print("n={:4d} eps={:.1f}  exact={:.5f}  mc={:.5f} +- {:.5f}\n", e.n, e.epsilon, *e.exact_mass, e.mc_mass,
                 e.mc_halfwidth);
    }
  }
}
