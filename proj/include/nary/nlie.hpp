#pragma once

#include <utility>
#include <vector>

#include "nary/algebra.hpp"

namespace nary {

/// Filippov identity over canonical basis tuples (x_1..x_{n-1} | y_1..y_n).
Report check_n_lie(const NLieAlgebra& a, RunOptions opts = {});
/// Runs check_n_lie and sets the verified flag from its outcome.
Report certify(NLieAlgebra& a, RunOptions opts = {});

/// Matrix of y -> [x_1, ..., x_{n-1}, y].
LinearMap ad(const NLieAlgebra& a, std::span<const int> idx);

NLieRep adjoint_rep(const NLieAlgebra& a);
NLieRep zero_rep(const NLieAlgebra& a, int module_dim);

/// Both representation identities ("rep-1": bracket in the first slot, "rep-2": commutator).
Report check_rep(const NLieRep& rho, RunOptions opts = {});
Report certify(NLieRep& rho, RunOptions opts = {});

/// A (+) V with [x+u, ...] = [x] + sum_i (-1)^{n-i} rho(x^_i) u_i. Basis: A first, then V.
NLieAlgebra semidirect_nlie(const NLieRep& rho);
/// Negated transposes of the action matrices (coadjoint when applied to adjoint_rep).
NLieRep dual_rep(const NLieRep& rho);

/// [Tu_1..Tu_n] = T(sum_i (-1)^{n-i} rho(Tu^_i) u_i) over basis tuples of V.
Report check_o_operator_nlie(const LinearMap& t, const NLieRep& rho, RunOptions opts = {});

struct NPreLieFromOperator {
  NPreLieAlgebra algebra;
  Report morphism;  // T[u]^C = [Tu]
};
/// {u_1..u_n} = rho(Tu_1..Tu_{n-1}) u_n.
NPreLieFromOperator o_to_nprelie(const LinearMap& t, const NLieRep& rho);

struct SearchSpace {
  std::vector<Rational> entries{-1, 0, 1};
  std::vector<std::pair<int, int>> cells;  // (row, col), 0-based
  std::size_t max_cells = 8;
  std::uint64_t max_candidates = 531441;  // 3^12
};
std::vector<std::pair<int, int>> diagonal_cells(int dim);
std::vector<std::pair<int, int>> all_cells(int dim);
/// Candidate count for a search space; throws SearchCapError when over a cap.
std::uint64_t search_size(const SearchSpace& space);

/// Every map with entries from the set on the support cells (zero elsewhere)
/// that is a Rota-Baxter operator of weight zero; in candidate order.
std::vector<LinearMap> rb_search(const NLieAlgebra& a, const SearchSpace& space);

}  // namespace nary
