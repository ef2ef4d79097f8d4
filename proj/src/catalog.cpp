#include "nary/catalog.hpp"

#include <array>

namespace nary::catalog {

NPreLieAlgebra pl() {
  TensorBuilder b(3, std::vector<int>{3, 3}, nprelie_pattern(2));
  b.add(std::array{2, 1}, Vec::basis(1));
  b.add(std::array{2, 2}, -Vec::basis(2));
  return NPreLieAlgebra(std::move(b).build());
}

Covector t1(const Rational& a) { return Covector(std::vector<Rational>{a, 0, 0}); }

NPreLieAlgebra p3(const Rational& a) {
  TensorBuilder b(3, std::vector<int>{3, 3, 3}, nprelie_pattern(3));
  b.add(std::array{0, 2, 1}, a * Vec::basis(1));
  b.add(std::array{0, 2, 2}, -a * Vec::basis(2));
  return NPreLieAlgebra(std::move(b).build());
}

NLieAlgebra levi_civita_perturbed(int n) {
  NLieAlgebra a = levi_civita(n);
  TensorBuilder b(a.dim(), a.bracket.slot_dims(), a.bracket.pattern());
  for (const auto& [key, value] : a.bracket.entries()) b.set_canonical(key, value);
  std::vector<int> first(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) first[static_cast<std::size_t>(i)] = i;
  b.set_canonical(first, a.bracket.at(first) + Vec::basis(0));
  return NLieAlgebra(std::move(b).build());
}

NPreLieAlgebra p3_perturbed() {
  TensorBuilder b(3, std::vector<int>{3, 3, 3}, nprelie_pattern(3));
  b.add(std::array{0, 2, 1}, Vec::basis(0) + Vec::basis(1));
  b.add(std::array{0, 2, 2}, -Vec::basis(2));
  return NPreLieAlgebra(std::move(b).build());
}

}  // namespace nary::catalog
