// Walks through the pipeline on one catalog category (default: fibonacci):
// S-matrix, simples of Z(C), and the defects of G against F.

#include "tcat/catalog.hpp"
#include "tcat/factorization.hpp"
#include "tcat/modularity.hpp"
#include "tcat/tube_algebra.hpp"

#include <iostream>

int main(int argc, char** argv) {
  using namespace tcat;
  const CategoryData cat = catalog(argc > 1 ? argv[1] : "fibonacci");

  const SMatrix s = s_matrix(cat);
  std::cout << cat.name() << ": " << cat.n() << " simples, rank S = " << s.rank << "\n";
  std::cout << "S =\n" << s.entries.real() << "\n\n";

  const std::vector<CenterObject> zs = center_simples(cat);
  std::cout << zs.size() << " simple objects in Z(C):\n";
  for (const auto& z : zs) std::cout << "  " << z.X.to_string(cat) << "   dim " << quantum_dim(cat, z.X).real() << "\n";

  // G on each simple of Z(C): which i* |x| I_i pieces are nonzero.
  std::cout << "\nG(Z) = sum over i of i* |x| I_i:\n";
  for (const auto& z : zs) {
    const GImage g = functor_G(cat, z);
    std::cout << "  " << z.X.to_string(cat) << "  ->  " << g.obj.to_string(cat) << "\n";
  }

  std::cout << "\n" << invertibility_report(cat).to_human();
  return 0;
}
