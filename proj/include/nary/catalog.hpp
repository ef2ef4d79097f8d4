#pragma once

#include "nary/algebra.hpp"

namespace nary::catalog {

/// Pre-Lie algebra on e1,e2,e3: e3.e2 = e2, e3.e3 = -e3.
NPreLieAlgebra pl();
/// tau(e1) = a, tau(e2) = tau(e3) = 0.
Covector t1(const Rational& a = 1);
/// 3-pre-Lie algebra {e1,e3,e2} = a e2, {e1,e3,e3} = -a e3.
NPreLieAlgebra p3(const Rational& a = 1);

/// Levi-Civita algebra with e1 added to [e1..en]. Rescaling an entry would not do:
/// [e^_k] = c_k e_k is n-Lie for every choice of c.
NLieAlgebra levi_civita_perturbed(int n);
/// P3 with {e1,e3,e2} = e1 + e2.
NPreLieAlgebra p3_perturbed();

}  // namespace nary::catalog
