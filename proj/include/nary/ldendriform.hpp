#pragma once

#include <optional>

#include "nary/geometry.hpp"

namespace nary {

/// nw(x_1..x_n) and ne(x_1..x_n) on arbitrary vectors.
Vec nw(const NLDendriform& l, std::span<const VecView> xs);
Vec ne(const NLDendriform& l, std::span<const VecView> xs);
/// {x}^h = nw(x) + sum_{i<n} (-1)^{i+1} ne(x_i, x^_i.., x_n)
Vec horizontal(const NLDendriform& l, std::span<const VecView> xs);
/// {x}^v = nw(x) + sum_{i<n} (-1)^i ne(x_n, x^_i.., x_i)
Vec vertical(const NLDendriform& l, std::span<const VecView> xs);
/// [x]^C through the horizontal product.
Vec crochet(const NLDendriform& l, std::span<const VecView> xs);

/// "identity-1" .. "identity-6" and "crochet" (horizontal and vertical alternating sums agree).
Report check_ldend(const NLDendriform& l, RunOptions opts = {});
Report certify(NLDendriform& l, RunOptions opts = {});

enum class Mode { horizontal, vertical };
NPreLieAlgebra assoc_prelie(const NLDendriform& l, Mode mode);
NLieAlgebra assoc_nlie(const NLDendriform& l);

struct LDendReps {
  NPreLieRep horizontal;  // (A, L_nw, R_ne) over {.}^h
  NPreLieRep vertical;    // (A, L_nw, -L_ne) over {.}^v
  NLieRep left;           // (A, L_nw) over [.]^C
  NLieRep rho;            // (A, rho) over [.]^C
  Report horizontal_report, vertical_report, left_report, rho_report;
};
/// L_ne(x_1..x_{n-1}) v := ne(x_{n-1}, x_1..x_{n-2}, v), the r-shaped reading.
LDendReps ldend_reps(const NLDendriform& l);

struct DendFromOperator {
  NLDendriform dend;
  Report morphism;                      // "morphism-h": T{u}^h = {Tu}, "morphism-C": T[u]^C = [Tu]^C
  std::optional<NLDendriform> on_image; // compatible structure on A when T is invertible
};
/// nw(u) = l(Tu_1..Tu_{n-1}) u_n, ne(u) = r(Tu_2..Tu_n) u_1.
DendFromOperator o_to_ldend(const LinearMap& t, const NPreLieRep& rho);

/// nw = {Px_1..Px_{n-1}, x_n}, ne = {x_1, Px_2..Px_n}.
NLDendriform rb_to_ldend(const NPreLieAlgebra& p, const LinearMap& rb);

/// B({x}, w) + B(x_n, [x', w]^C) - sum_{i<n} (-1)^{i+1} B(x_i, {w, x^_i.., x_n}) = 0, plus "nondegenerate".
Report check_pseudo_hessian(const NPreLieAlgebra& p, const BilinearForm& b, RunOptions opts = {});

struct HessianSolutions {
  std::vector<BilinearForm> basis;  // symmetric closed forms, a basis of the solution space
  int unknowns = 0;
  int rank = 0;                     // rank of the linear closedness system
  std::optional<BilinearForm> nondegenerate;  // a nondegenerate member, if the grid search finds one
  std::vector<BilinearForm> samples;          // further nondegenerate members found on the grid
};
/// Exact solution of the closedness system; nondegenerate members are searched on the grid
/// {0..d}^k of basis coefficients (complete for the determinant's degree), up to `max_points`.
HessianSolutions solve_pseudo_hessian(const NPreLieAlgebra& p, std::size_t samples = 8, std::uint64_t max_points = 1000000);

struct HessianDend {
  NLDendriform dend;
  NPreLieAlgebra derived;  // the {.}' product
};
HessianDend hessian_to_ldend(const NPreLieAlgebra& p, const BilinearForm& b);

/// nw = [P1P2 x', x_n], ne = [P1 x_1, P1P2 x_2..P1P2 x_{n-1}, P2 x_n].
NLDendriform commuting_rb_to_ldend(const NLieAlgebra& a, const LinearMap& p1, const LinearMap& p2);

}  // namespace nary
