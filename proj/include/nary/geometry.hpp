#pragma once

#include "nary/nprelie.hpp"

namespace nary {

struct SymplecticNLie {
  NLieAlgebra algebra;
  BilinearForm omega;
};

struct MetricNLie {
  NLieAlgebra algebra;
  BilinearForm b;
};

/// omega([x], y) + sum_i (-1)^{n-i} omega(x_i, [x^_i, y]) = 0, plus a "nondegenerate" flag.
Report check_symplectic(const NLieAlgebra& a, const BilinearForm& omega, RunOptions opts = {});
/// B([x', x_n], x_{n+1}) + B([x', x_{n+1}], x_n) = 0, plus a "nondegenerate" flag.
Report check_metric(const NLieAlgebra& a, const BilinearForm& b, RunOptions opts = {});

/// "derivation", "b-skew" (B(Dx,y) + B(x,Dy) = 0) and "invertible" for D in Der_B(A).
Report check_b_derivation(const MetricNLie& m, const LinearMap& d, RunOptions opts = {});

/// D with B(Dx, y) = omega(x, y), i.e. D = -B^{-1} Omega in matrix terms.
LinearMap metric_symplectic_to_derivation(const MetricNLie& m, const BilinearForm& omega);
/// omega(x, y) = B(Dx, y).
BilinearForm derivation_to_symplectic(const MetricNLie& m, const LinearMap& d);

/// The product with omega({x}, y) = -omega(x_n, [x_1..x_{n-1}, y]).
NPreLieAlgebra symplectic_to_nprelie(const SymplecticNLie& s);

/// B({x}, x_{n+1}) + B(x_n, [x', x_{n+1}]^C) = 0, plus a "nondegenerate" flag.
Report check_quadratic(const NPreLieAlgebra& p, const BilinearForm& b, RunOptions opts = {});

/// omega(x + f, y + g) = f(y) - g(x) on V (+) V*, basis e_1..e_d, e*_1..e*_d.
BilinearForm canonical_form(int dim);

struct PhaseSpace {
  SymplecticNLie total;  // h = first base_dim vectors, h* = the rest
  NLieAlgebra base;
  int base_dim() const { return base.dim(); }
};

/// A^c (x)_{L*} A* with the canonical form.
PhaseSpace phase_space(const NPreLieAlgebra& p);

/// Families: symplectic (+ nondegenerate), canonical-form, h-closed, h*-closed,
/// restriction, perfect-h ([h..h, h*] in h*) and perfect-h* ([h*..h*, h] in h).
Report check_phase_space(const PhaseSpace& ps, RunOptions opts = {});
inline bool perfect(const Report& phase_space_report) {
  return phase_space_report.passed("perfect-h") && phase_space_report.passed("perfect-h*");
}

struct SymplecticDouble {
  NPreLieAlgebra algebra;  // A (x)_{L*,0} A*, whose sub-adjacent is the phase space of A
  PhaseSpace phase;        // phase space of that algebra, dim 4d
};
SymplecticDouble symplectic_double(const NPreLieAlgebra& p);

/// For a product on A (+) A* (dim 2d) and its form: quadratic, canonical-form,
/// isotropic-A / isotropic-A*, subalgebra-A / subalgebra-A*, condmanin-1..4 and
/// manin-1..4 (mixed products against the closed forms).
Report check_manin_triple(const NPreLieAlgebra& p, const BilinearForm& b, RunOptions opts = {});

struct AmBuild {
  NLieAlgebra a_m;        // A (x) t K[t] / t^m K[t], basis index (p-1)d + a
  LinearMap d;            // D(x (x) t^p) = p x (x) t^p
  MetricNLie metric;      // A_m (x)_{ad*} A_m* with B(x+xi, y+eta) = xi(y) + eta(x)
  LinearMap d_tilde;      // D (+) D*
  BilinearForm omega;     // B(D~ ., .)
};
AmBuild build_a_m(const NLieAlgebra& a, int m);

}  // namespace nary
