// Tour of the library: a horn, its threshold plot, a flat function along it,
// and the psi map built from a shipped witness.
#include <iostream>

#include "analytica/analytica.hpp"

using namespace analytica;

int main() {
  const CuspidalSet horn = CuspidalSet::horn(2);
  std::cout << horn.name() << ": d = " << d_invariant(horn) << ", d' = " << d_prime_invariant(horn) << "\n";

  const PlotDegreeResult deg = min_plot_degree_through_origin(horn);
  for (const auto& line : deg.trace) std::cout << "  " << line << "\n";

  const PolynomialMap w = *deg.witness;
  const AnalyticityVerdict v = classify_analyticity(functions::flat_bump(), w);
  std::cout << "exp(-1/(x^2+y^2)) along the witness: " << to_string(v.tag) << ", |f(p(" << v.witness_t.get_str()
            << "))| >= " << v.value_lower << "\n";

  const Polynomial g = Polynomial::univariate({Rational(1), Rational(-2), Rational(0), Rational(3)});
  const PolynomialMap cusp_plot(1, {g.pow(2), g.pow(3)});
  const AnalyticityVerdict root = classify_analyticity(functions::cusp_cube_root(), cusp_plot);
  std::cout << "y^(1/3) along (g^2, g^3) = g: " << (root.polynomial && *root.polynomial == g ? "yes" : "no") << "\n";

  for (const auto& sw : shipped_witnesses()) {
    const PsiResult psi = build_psi(sw.witness);
    std::cout << sw.name << ": deg psi = " << psi.degree << ", rank " << psi.injectivity.report.generic_rank << "\n";
  }
}
