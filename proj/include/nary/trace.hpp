#pragma once

#include "nary/nprelie.hpp"

namespace nary {

/// Basis tuples of phi's canonical domain whose value has nonzero tau.
Report check_trace(const StructureTensor& phi, const Covector& tau, RunOptions opts = {});

/// phi_tau(x_1..x_{n+1}) = sum_{k<=n} (-1)^{k+1} tau(x_k) phi(x_1..x^_k..x_{n+1}).
NPreLieAlgebra induce(const NPreLieAlgebra& p, const Covector& tau);
/// The n-Lie analogue: the sum runs over all n+1 slots, so the result stays fully alternating.
NLieAlgebra induce_nlie(const NLieAlgebra& a, const Covector& tau);

/// (l_tau, r_tau) over induce(P, tau); the induced algebra is certified here.
NPreLieRep induce_rep(const NPreLieRep& rho, const Covector& tau);

struct InducedDerivation {
  Report trace;      // tau o D is a trace of P
  Report vanishing;  // {x_1..x_{n+1}}_{tau o D} = 0
  Report direct;     // D is a derivation of induce(P, tau), checked directly
  bool agree() const { return vanishing.passed() == direct.passed(); }
};
/// D must be a derivation of P (PreconditionError otherwise).
InducedDerivation derivation_induced_criterion(const NPreLieAlgebra& p, const Covector& tau, const LinearMap& d);

}  // namespace nary
