#include "nary/geometry.hpp"

#include "detail.hpp"
#include "nary/errors.hpp"

namespace nary {

using detail::Args;
using detail::cat;
using detail::hat;
using detail::parity;
using detail::scalar;
using detail::units;

namespace {

constexpr std::size_t at(int i) { return static_cast<std::size_t>(i); }

void flag(Report& r, const std::string& id, bool ok) {
  if (ok) {
    if (!r.has_family(id)) r.families.push_back(id);
  } else {
    r.add_flag(id);
  }
}

void require_form(const BilinearForm& f, int dim, bool skew, const char* what) {
  if (f.dim() != dim) throw ShapeError(std::string(what) + ": form dimension does not match the algebra");
  if ((f.symmetry == Symmetry::skew) != skew)
    throw ShapeError(std::string(what) + (skew ? ": form must be skew-symmetric" : ": form must be symmetric"));
}

// Part of v with indices in [lo, hi).
Vec part(const Vec& v, int lo, int hi) { return v.slice(lo, hi); }

}  // namespace

Report check_symplectic(const NLieAlgebra& a, const BilinearForm& omega, RunOptions opts) {
  require_form(omega, a.dim(), true, "check_symplectic");
  const int n = a.arity();
  const int d = a.dim();
  Family f{"symplectic", {alt(d, n), free_slots(d, 1)}, [&, n](std::span<const int> t) {
             Args x = units(t, 0, at(n));
             VecView y = unit(t[at(n)]);
             Rational s = omega(a(x), y);
             for (int i = 0; i < n; ++i)
               s += parity(n - (i + 1)) * omega(x[at(i)], a(cat(hat(x, at(i)), y)));
             return scalar(s);
           }};
  Report r = run_families("symplectic", {f}, opts);
  flag(r, "nondegenerate", omega.nondegenerate());
  return r;
}

Report check_metric(const NLieAlgebra& a, const BilinearForm& b, RunOptions opts) {
  require_form(b, a.dim(), false, "check_metric");
  const int n = a.arity();
  const int d = a.dim();
  Family f{"metric", {alt(d, n - 1), free_slots(d, 2)}, [&, n](std::span<const int> t) {
             Args x = units(t, 0, at(n - 1));
             VecView u = unit(t[at(n - 1)]);
             VecView w = unit(t[at(n)]);
             return scalar(b(a(cat(x, u)), w) + b(a(cat(x, w)), u));
           }};
  Report r = run_families("metric", {f}, opts);
  flag(r, "nondegenerate", b.nondegenerate());
  return r;
}

Report check_b_derivation(const MetricNLie& m, const LinearMap& d, RunOptions opts) {
  const int dim = m.algebra.dim();
  if (d.rows() != dim || d.cols() != dim) throw ShapeError("derivation must be a square map on the algebra");
  Report r = check_derivation(m.algebra.bracket, d, opts);
  r.check = "metric derivation";
  // B(Dx, y) + B(x, Dy) as a matrix: D^T B + B D
  LinearMap s = d.transpose() * m.b.matrix + m.b.matrix * d;
  Family f{"b-skew", {free_slots(dim, 2)},
           [&s](std::span<const int> t) { return scalar(s(t[0], t[1])); }};
  r.merge(run_families("b-skew", {f}, opts));
  flag(r, "invertible", sgn(determinant(d)) != 0);
  return r;
}

LinearMap metric_symplectic_to_derivation(const MetricNLie& m, const BilinearForm& omega) {
  require(check_metric(m.algebra, m.b, {Exec::parallel, true}).passed("metric"),
          "metric_symplectic_to_derivation: B is not invariant");
  require(m.b.nondegenerate(), "metric_symplectic_to_derivation: B is degenerate");
  require(check_symplectic(m.algebra, omega, {Exec::parallel, true}).passed("symplectic"),
          "metric_symplectic_to_derivation: omega fails the symplectic identity");
  require(omega.nondegenerate(), "metric_symplectic_to_derivation: omega is degenerate");
  LinearMap d = Rational(-1) * (invert(m.b.matrix) * omega.matrix);
  Report r = check_b_derivation(m, d);
  if (!r.passed()) throw Error("metric_symplectic_to_derivation: recovered map is not an invertible B-skew derivation");
  return d;
}

BilinearForm derivation_to_symplectic(const MetricNLie& m, const LinearMap& d) {
  Report r = check_b_derivation(m, d, {Exec::parallel, true});
  for (const char* id : {"derivation", "b-skew", "invertible"})
    require(r.passed(id), std::string("derivation_to_symplectic: D fails the ") + id + " condition");
  return BilinearForm(d.transpose() * m.b.matrix, Symmetry::skew);
}

NPreLieAlgebra symplectic_to_nprelie(const SymplecticNLie& s) {
  const NLieAlgebra& a = s.algebra;
  Report r = check_symplectic(a, s.omega, {Exec::parallel, true});
  require(r.passed("nondegenerate"), "symplectic_to_nprelie: omega is degenerate");
  require(r.passed("symplectic"), "symplectic_to_nprelie: omega fails the symplectic identity");
  const int n = a.arity();
  const int d = a.dim();
  // omega(z, e_y) = f_y  <=>  Omega^T z = f
  const LinearMap solve = invert(s.omega.matrix.transpose());
  auto prod = tabulate(d, std::vector<int>(at(n), d), nprelie_pattern(n), [&](std::span<const int> t) {
    Args x = units(t, 0, at(n - 1));
    VecView xn = unit(t[at(n - 1)]);
    std::vector<Term> f;
    for (int y = 0; y < d; ++y) {
      Rational v = -s.omega(xn, a(cat(x, unit(y))));
      if (sgn(v) != 0) f.emplace_back(y, v);
    }
    return solve.apply(Vec(std::move(f)));
  });
  return NPreLieAlgebra(std::move(prod));
}

Report check_quadratic(const NPreLieAlgebra& p, const BilinearForm& b, RunOptions opts) {
  require_form(b, p.dim(), true, "check_quadratic");
  const int n = p.arity();
  const int d = p.dim();
  Family f{"invariant", {alt(d, n - 1), free_slots(d, 2)}, [&, n](std::span<const int> t) {
             Args x = units(t, 0, at(n - 1));
             VecView xn = unit(t[at(n - 1)]);
             VecView w = unit(t[at(n)]);
             return scalar(b(p(cat(x, xn)), w) + b(xn, commutator(p, cat(x, w))));
           }};
  Report r = run_families("quadratic", {f}, opts);
  flag(r, "nondegenerate", b.nondegenerate());
  return r;
}

BilinearForm canonical_form(int dim) {
  Matrix m(2 * dim, 2 * dim);
  for (int i = 0; i < dim; ++i) {
    m(i, dim + i) = -1;
    m(dim + i, i) = 1;
  }
  return BilinearForm(std::move(m), Symmetry::skew);
}

PhaseSpace phase_space(const NPreLieAlgebra& p) {
  require(p.verified, "phase_space: the n-pre-Lie algebra has not been certified");
  NLieAlgebra c = sub_adjacent(p);
  require(certify(c).passed(), "phase_space: the sub-adjacent bracket fails the Filippov identity");
  NLieRep l(c, left_right_mult(p).l);
  require(certify(l).passed(), "phase_space: left multiplication is not a representation");
  NLieRep dual = dual_rep(l);
  dual.verified = certify(dual).passed();
  require(dual.verified, "phase_space: the dual of left multiplication is not a representation");
  NLieAlgebra total = semidirect_nlie(dual);
  const int d = p.dim();
  return PhaseSpace{{std::move(total), canonical_form(d)}, std::move(c)};
}

Report check_phase_space(const PhaseSpace& ps, RunOptions opts) {
  const NLieAlgebra& t = ps.total.algebra;
  const int n = t.arity();
  const int d = ps.base_dim();
  if (t.dim() != 2 * d) throw ShapeError("phase space must have twice the base dimension");
  Report r = check_symplectic(t, ps.total.omega, opts);
  r.check = "phase space";
  flag(r, "canonical-form", ps.total.omega.matrix == canonical_form(d).matrix);
  std::vector<Family> fams;
  fams.push_back({"h-closed", {alt(d, n)}, [&](std::span<const int> u) { return part(t.bracket.at(u), d, 2 * d); }});
  fams.push_back({"h*-closed", {alt(d, n, d)}, [&](std::span<const int> u) { return part(t.bracket.at(u), 0, d); }});
  fams.push_back({"restriction", {alt(d, n)}, [&](std::span<const int> u) {
                    return part(t.bracket.at(u), 0, d) - ps.base.bracket.at(u);
                  }});
  fams.push_back({"perfect-h", {alt(d, n - 1), free_slots(d, 1, d)},
                  [&](std::span<const int> u) { return part(t(units(u)), 0, d); }});
  fams.push_back({"perfect-h*", {alt(d, n - 1, d), free_slots(d, 1)},
                  [&](std::span<const int> u) { return part(t(units(u)), d, 2 * d); }});
  r.merge(run_families("phase space", fams, opts));
  return r;
}

SymplecticDouble symplectic_double(const NPreLieAlgebra& p) {
  require(p.verified, "symplectic_double: the n-pre-Lie algebra has not been certified");
  NLieAlgebra c = sub_adjacent(p);
  require(certify(c).passed(), "symplectic_double: the sub-adjacent bracket fails the Filippov identity");
  NLieRep l(c, left_right_mult(p).l);
  require(certify(l).passed(), "symplectic_double: left multiplication is not a representation");
  NLieRep dual = dual_rep(l);
  const int n = p.arity();
  NPreLieRep pre(p, dual.action, StructureTensor(p.dim(), rep_slots(p.dim(), n, p.dim()), r_pattern(n)));
  require(certify(pre).passed(), "symplectic_double: (L*, 0) is not a pre-representation");
  NPreLieAlgebra big = semidirect_nprelie(pre);
  require(certify(big).passed(), "symplectic_double: the semidirect product fails the n-pre-Lie identities");
  PhaseSpace ps = phase_space(big);
  return {std::move(big), std::move(ps)};
}

Report check_manin_triple(const NPreLieAlgebra& p, const BilinearForm& b, RunOptions opts) {
  if (p.dim() % 2 != 0) throw ShapeError("a Manin triple needs an even-dimensional algebra");
  const int n = p.arity();
  const int d = p.dim() / 2;
  Report r = check_quadratic(p, b, opts);
  r.check = "manin triple";
  r.families = {};
  r.violations.clear();
  r.merge(check_quadratic(p, b, opts), "quadratic-");
  flag(r, "canonical-form", b.matrix == canonical_form(d).matrix);

  auto prod = [&p](std::span<const int> u) { return p(units(u)); };
  auto sig = [](int i) { return parity(i); };
  std::vector<Family> fams;
  fams.push_back({"isotropic-A", {free_slots(d, 2)}, [&](std::span<const int> u) { return scalar(b.at(u[0], u[1])); }});
  fams.push_back({"isotropic-A*", {free_slots(d, 2, d)}, [&](std::span<const int> u) { return scalar(b.at(u[0], u[1])); }});
  fams.push_back({"subalgebra-A", {alt(d, n - 1), free_slots(d, 1)}, [&](std::span<const int> u) { return part(prod(u), d, 2 * d); }});
  fams.push_back({"subalgebra-A*", {alt(d, n - 1, d), free_slots(d, 1, d)}, [&](std::span<const int> u) { return part(prod(u), 0, d); }});

  // Domains of the four mixed shapes.
  const Domain m1{alt(d, n - 1), free_slots(d, 1, d)};                      // {x', alpha}
  const Domain m2{free_slots(d, 1, d), alt(d, n - 2), free_slots(d, 1)};    // {alpha, x_1..x_{n-1}}
  const Domain m3{alt(d, n - 1, d), free_slots(d, 1)};                      // {alpha', x}
  const Domain m4{free_slots(d, 1), alt(d, n - 2, d), free_slots(d, 1, d)}; // {x, alpha_1..alpha_{n-1}}
  fams.push_back({"condmanin-1", m1, [&](std::span<const int> u) { return part(prod(u), 0, d); }});
  fams.push_back({"condmanin-2", m2, [&](std::span<const int> u) { return part(prod(u), 0, d); }});
  fams.push_back({"condmanin-3", m3, [&](std::span<const int> u) { return part(prod(u), d, 2 * d); }});
  fams.push_back({"condmanin-4", m4, [&](std::span<const int> u) { return part(prod(u), d, 2 * d); }});

  // Closed forms; <alpha, x> = B(alpha, x) is the coefficient pairing.
  // manin-1: {x', e*_a} = (L*(x') + sum_i (-1)^i R*(x^_i.., x_i)) e*_a
  fams.push_back({"manin-1", m1, [&, n, d](std::span<const int> u) {
                    Args x = units(u, 0, at(n - 1));
                    const int a = u[at(n - 1)] - d;
                    std::vector<Term> c;
                    for (int k = 0; k < d; ++k) {
                      Vec v = p(cat(x, unit(k)));
                      for (int i = 0; i < n - 1; ++i) v.axpy(sig(i + 1), p(cat(unit(k), cat(hat(x, at(i)), x[at(i)]))));
                      Rational coeff = -v.at(a);
                      if (sgn(coeff) != 0) c.emplace_back(d + k, coeff);
                    }
                    return prod(u) - Vec(std::move(c));
                  }});
  // manin-2: {e*_a, x} = -R*(x) e*_a
  fams.push_back({"manin-2", m2, [&, d](std::span<const int> u) {
                    const int a = u[0] - d;
                    Args x = units(u.subspan(1));
                    std::vector<Term> c;
                    for (int k = 0; k < d; ++k) {
                      Rational coeff = p(cat(unit(k), x)).at(a);
                      if (sgn(coeff) != 0) c.emplace_back(d + k, coeff);
                    }
                    return prod(u) - Vec(std::move(c));
                  }});
  // manin-3: {alpha', e_b} = (Lc*(alpha') + sum_i (-1)^i Rc*(alpha^_i.., alpha_i)) e_b
  fams.push_back({"manin-3", m3, [&, n, d](std::span<const int> u) {
                    Args al = units(u, 0, at(n - 1));
                    const int b_ = u[at(n - 1)];
                    std::vector<Term> c;
                    for (int k = 0; k < d; ++k) {
                      VecView ek = unit(d + k);
                      Vec v = p(cat(al, ek));
                      for (int i = 0; i < n - 1; ++i) v.axpy(sig(i + 1), p(cat(ek, cat(hat(al, at(i)), al[at(i)]))));
                      Rational coeff = -v.at(d + b_);
                      if (sgn(coeff) != 0) c.emplace_back(k, coeff);
                    }
                    return prod(u) - Vec(std::move(c));
                  }});
  // manin-4: {e_b, alpha'} = -Rc*(alpha') e_b
  fams.push_back({"manin-4", m4, [&, d](std::span<const int> u) {
                    const int b_ = u[0];
                    Args al = units(u.subspan(1));
                    std::vector<Term> c;
                    for (int k = 0; k < d; ++k) {
                      Rational coeff = p(cat(unit(d + k), al)).at(d + b_);
                      if (sgn(coeff) != 0) c.emplace_back(k, coeff);
                    }
                    return prod(u) - Vec(std::move(c));
                  }});
  r.merge(run_families("manin triple", fams, opts));
  return r;
}

AmBuild build_a_m(const NLieAlgebra& a, int m) {
  require(a.verified, "build_a_m: the n-Lie algebra has not been certified");
  if (m < 2) throw ShapeError("build_a_m needs m >= 2");
  const int n = a.arity();
  const int d = a.dim();
  const int dm = d * (m - 1);
  auto br = tabulate(dm, std::vector<int>(at(n), dm), nlie_pattern(n), [&](std::span<const int> t) {
    int deg = 0;
    std::vector<int> base;
    for (int k : t) {
      deg += k / d + 1;
      base.push_back(k % d);
    }
    if (deg >= m) return Vec{};
    return a.bracket.at(base).shifted((deg - 1) * d);
  });
  NLieAlgebra am(std::move(br));
  require(certify(am).passed(), "build_a_m: A_m fails the Filippov identity");
  NLieRep adj = adjoint_rep(am);
  require(certify(adj).passed(), "build_a_m: adjoint of A_m is not a representation");
  NLieRep co = dual_rep(adj);
  require(certify(co).passed(), "build_a_m: coadjoint of A_m is not a representation");
  NLieAlgebra total = semidirect_nlie(co);

  std::vector<Rational> deg(at(dm)), tilde(at(2 * dm));
  for (int k = 0; k < dm; ++k) {
    deg[at(k)] = k / d + 1;
    tilde[at(k)] = deg[at(k)];
    tilde[at(dm + k)] = -deg[at(k)];  // D* xi = -xi o D
  }
  Matrix hb(2 * dm, 2 * dm);
  for (int k = 0; k < dm; ++k) {
    hb(k, dm + k) = 1;
    hb(dm + k, k) = 1;
  }
  BilinearForm b(std::move(hb), Symmetry::symmetric);
  LinearMap dt = Matrix::diagonal(tilde);
  BilinearForm omega(dt.transpose() * b.matrix, Symmetry::skew);
  return AmBuild{std::move(am), Matrix::diagonal(deg), MetricNLie{std::move(total), std::move(b)}, std::move(dt),
                 std::move(omega)};
}

}  // namespace nary
