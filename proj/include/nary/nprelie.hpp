#pragma once

#include <utility>

#include "nary/nlie.hpp"

namespace nary {

/// Both n-pre-Lie identities ("n-pre-lie-1", "n-pre-lie-2") with [.]^C expanded.
Report check_nprelie(const NPreLieAlgebra& p, RunOptions opts = {});
Report certify(NPreLieAlgebra& p, RunOptions opts = {});

/// [x_1..x_n]^C = sum_i (-1)^{n-i} {x_1..x^_i..x_n, x_i}
Vec commutator(const NPreLieAlgebra& p, std::span<const VecView> xs);
NLieAlgebra sub_adjacent(const NPreLieAlgebra& p);

/// (A, L, R): L(x)v = {x, v}, R(x)v = {v, x}.
NPreLieRep left_right_mult(const NPreLieAlgebra& p);
NPreLieRep zero_pre_rep(const NPreLieAlgebra& p, int module_dim);

/// mu(x) v = l(x) v + sum_i (-1)^i r(x_1..x^_i..x_{n-1}, x_i) v
Vec mu(const NPreLieRep& rho, std::span<const VecView> xs, VecView v);
LinearMap mu(const NPreLieRep& rho, std::span<const int> idx);

/// "l-rep-1", "l-rep-2" (l represents A^c) and "identity-1" .. "identity-4".
Report check_pre_rep(const NPreLieRep& rho, RunOptions opts = {});
Report certify(NPreLieRep& rho, RunOptions opts = {});

/// A (+) V: {x} + l(x')u_n + sum_{i<n} (-1)^{i+1} r(x^_i.., x_n) u_i.
NPreLieAlgebra semidirect_nprelie(const NPreLieRep& rho);
/// mu on alternating tuples, as a representation of the sub-adjacent algebra.
NLieRep rho_tilde(const NPreLieRep& rho);
/// (rho~*, -r*) on the dual module.
NPreLieRep dual_pre_rep(const NPreLieRep& rho);

Report check_o_operator_nprelie(const LinearMap& t, const NPreLieRep& rho, RunOptions opts = {});

/// Rota-Baxter operators of weight zero on an n-pre-Lie algebra (adjoint pre-rep).
std::vector<LinearMap> rb_search(const NPreLieAlgebra& p, const SearchSpace& space);

/// {x} = [P1 x_1..P1 x_{n-1}, x_n] and the Rota-Baxter report of P2 on it.
std::pair<NPreLieAlgebra, Report> commuting_rb_nprelie(const NLieAlgebra& a, const LinearMap& p1, const LinearMap& p2);

}  // namespace nary
