#include "nary/ldendriform.hpp"

#include <memory>

#include "detail.hpp"
#include "nary/errors.hpp"

namespace nary {

using detail::Args;
using detail::cat;
using detail::hat;
using detail::parity;
using detail::slice;
using detail::units;
using detail::with;

namespace {

constexpr std::size_t at(int i) { return static_cast<std::size_t>(i); }

std::vector<Vec> columns(const LinearMap& t) {
  std::vector<Vec> c;
  for (int j = 0; j < t.cols(); ++j) c.push_back(t.column(j));
  return c;
}

Args images(const std::vector<Vec>& tc, std::span<const int> idx) {
  Args a;
  for (int k : idx) a.push_back(tc[at(k)]);
  return a;
}

Args mapped(const LinearMap& t, const Args& xs, std::vector<Vec>& keep) {
  keep.clear();
  keep.reserve(xs.size());
  for (const auto& x : xs) keep.push_back(t.apply(x));
  return Args(keep.begin(), keep.end());
}

}  // namespace

Vec nw(const NLDendriform& l, std::span<const VecView> xs) { return l.nw(xs); }
Vec ne(const NLDendriform& l, std::span<const VecView> xs) { return l.ne(xs); }

Vec horizontal(const NLDendriform& l, std::span<const VecView> xs) {
  const int n = static_cast<int>(xs.size());
  Args x(xs.begin(), xs.end());
  Vec out = l.nw(xs);
  for (int i = 0; i < n - 1; ++i) out.axpy(parity(i + 2), l.ne(cat(x[at(i)], hat(x, at(i)))));
  return out;
}

Vec vertical(const NLDendriform& l, std::span<const VecView> xs) {
  const int n = static_cast<int>(xs.size());
  Args x(xs.begin(), xs.end());
  Args xp = slice(x, 0, at(n - 1));
  Vec out = l.nw(xs);
  for (int i = 0; i < n - 1; ++i) out.axpy(parity(i + 1), l.ne(cat(cat(x[at(n - 1)], hat(xp, at(i))), xp[at(i)])));
  return out;
}

namespace {

template <class Product>
Vec alternating_sum(std::span<const VecView> xs, Product prod) {
  const int n = static_cast<int>(xs.size());
  Args x(xs.begin(), xs.end());
  Vec out;
  for (int i = 0; i < n; ++i) out.axpy(parity(n - (i + 1)), prod(cat(hat(x, at(i)), x[at(i)])));
  return out;
}

}  // namespace

Vec crochet(const NLDendriform& l, std::span<const VecView> xs) {
  return alternating_sum(xs, [&l](const Args& a) { return horizontal(l, a); });
}

Report check_ldend(const NLDendriform& l, RunOptions opts) {
  const int n = l.arity();
  const int d = l.dim();
  const auto un = at(n);
  if (n < 2) throw ShapeError("L-dendriform products need arity at least 2");
  auto NW = [&l](const Args& a) { return l.nw(a); };
  auto NE = [&l](const Args& a) { return l.ne(a); };
  auto H = [&l](const Args& a) { return horizontal(l, a); };
  auto V = [&l](const Args& a) { return vertical(l, a); };
  auto C = [&l](const Args& a) { return crochet(l, a); };

  std::vector<Family> fams;
  // nw(x', nw(y)) - nw(y', nw(x', y_n)) = sum_{i<n} nw(..[x', y_i]^C.., y_n)
  fams.push_back({"identity-1", {alt(d, n - 1), alt(d, n - 1), free_slots(d, 1)}, [=](std::span<const int> t) {
                    Args x = units(t, 0, un - 1);
                    Args y = units(t, un - 1, un);
                    Args yp = slice(y, 0, un - 1);
                    Vec res = NW(cat(x, NW(y)));
                    res -= NW(cat(yp, NW(cat(x, y[un - 1]))));
                    for (int i = 0; i < n - 1; ++i) res -= NW(with(y, at(i), C(cat(x, y[at(i)]))));
                    return res;
                  }});
  // nw([x]^C, y') = sum_i (-1)^{n-i} nw(x^_i, nw(x_i, y'))
  fams.push_back({"identity-2", {alt(d, n), alt(d, n - 2), free_slots(d, 1)}, [=](std::span<const int> t) {
                    Args x = units(t, 0, un);
                    Args y = units(t, un, un - 1);
                    Vec res = NW(cat(C(x), y));
                    for (int i = 0; i < n; ++i) res.axpy(-parity(n - (i + 1)), NW(cat(hat(x, at(i)), NW(cat(x[at(i)], y)))));
                    return res;
                  }});
  // nw(x', ne(y_n, y')) - ne(y_n, y_1..y_{n-2}, {x', y_{n-1}}^h)
  //   = ne({x', y_n}^v, y') + sum_{i<=n-2} ne(y_n, ..[x', y_i]^C.., y_{n-1})
  const Domain d36{alt(d, n - 1), alt(d, n - 2), free_slots(d, 1), free_slots(d, 1)};
  fams.push_back({"identity-3", d36, [=](std::span<const int> t) {
                    Args x = units(t, 0, un - 1);
                    Args y = units(t, un - 1, un);
                    Args yp = slice(y, 0, un - 1);
                    VecView yn = y[un - 1];
                    Vec res = NW(cat(x, NE(cat(yn, yp))));
                    res -= NE(cat(cat(yn, slice(y, 0, un - 2)), H(cat(x, y[un - 2]))));
                    Vec vx = V(cat(x, yn));
                    res -= NE(cat(VecView(vx), yp));
                    for (int i = 0; i < n - 2; ++i) res -= NE(cat(yn, with(yp, at(i), C(cat(x, y[at(i)])))));
                    return res;
                  }});
  // ne(y_{n-1}, [x]^C, y_1..y_{n-2}) = sum_i (-1)^{n-i} nw(x^_i, ne(y_{n-1}, x_i, y_1..y_{n-2}))
  Domain d4{alt(d, n)};
  if (n >= 3) d4.insert(d4.end(), {alt(d, n - 3), free_slots(d, 1)});
  d4.push_back(free_slots(d, 1));
  fams.push_back({"identity-4", d4, [=](std::span<const int> t) {
                    Args x = units(t, 0, un);
                    Args y = units(t, un, un - 1);
                    VecView ylast = y[un - 2];
                    Args yr = slice(y, 0, un - 2);
                    Vec cx = C(x);
                    Vec res = NE(cat(cat(Args{ylast}, cx), yr));
                    for (int i = 0; i < n; ++i)
                      res.axpy(-parity(n - (i + 1)), NW(cat(hat(x, at(i)), NE(cat(Args{ylast, x[at(i)]}, yr)))));
                    return res;
                  }});
  // ne(x_{n-1}, x_1..x_{n-2}, {y}^h) - nw(y', ne(x_{n-1}, x_1..x_{n-2}, y_n))
  //   = sum_{i<n} (-1)^{i+1} ne({x_1..x_{n-2}, y_i, x_{n-1}}^v, y^_i..)
  fams.push_back({"identity-5", {alt(d, n - 2), free_slots(d, 1), alt(d, n - 1), free_slots(d, 1)},
                  [=](std::span<const int> t) {
                    Args x = units(t, 0, un - 1);
                    Args y = units(t, un - 1, un);
                    Args xr = slice(x, 0, un - 2);
                    VecView xl = x[un - 2];
                    Vec res = NE(cat(cat(xl, xr), H(y)));
                    res -= NW(cat(slice(y, 0, un - 1), NE(cat(cat(xl, xr), y[un - 1]))));
                    for (int i = 0; i < n - 1; ++i)
                      {
                      Vec vi = V(cat(cat(xr, y[at(i)]), xl));
                      res.axpy(-parity(i + 2), NE(cat(VecView(vi), hat(y, at(i)))));
                    }
                    return res;
                  }});
  // ne({x', y_n}^v, y') - nw(x', ne(y_n, y')) = sum_{i<n} (-1)^i ne(y_n, x^_i.., {x_i, y'}^h)
  fams.push_back({"identity-6", d36, [=](std::span<const int> t) {
                    Args x = units(t, 0, un - 1);
                    Args y = units(t, un - 1, un);
                    Args yp = slice(y, 0, un - 1);
                    VecView yn = y[un - 1];
                    Vec vx = V(cat(x, yn));
                    Vec res = NE(cat(VecView(vx), yp));
                    res -= NW(cat(x, NE(cat(yn, yp))));
                    for (int i = 0; i < n - 1; ++i)
                      res.axpy(-parity(i + 1), NE(cat(cat(yn, hat(x, at(i))), H(cat(x[at(i)], yp)))));
                    return res;
                  }});
  fams.push_back({"crochet", {alt(d, n)}, [=](std::span<const int> t) {
                    Args x = units(t);
                    return alternating_sum(x, H) - alternating_sum(x, V);
                  }});
  return run_families("L-dendriform", fams, opts);
}

Report certify(NLDendriform& l, RunOptions opts) {
  Report r = check_ldend(l, opts);
  l.verified = r.passed();
  return r;
}

NPreLieAlgebra assoc_prelie(const NLDendriform& l, Mode mode) {
  require(l.verified, "assoc_prelie: the L-dendriform algebra has not been certified");
  const int n = l.arity();
  auto prod = tabulate(l.dim(), std::vector<int>(at(n), l.dim()), nprelie_pattern(n), [&](std::span<const int> t) {
    Args x = units(t);
    return mode == Mode::horizontal ? horizontal(l, x) : vertical(l, x);
  });
  return NPreLieAlgebra(std::move(prod));
}

NLieAlgebra assoc_nlie(const NLDendriform& l) {
  require(l.verified, "assoc_nlie: the L-dendriform algebra has not been certified");
  const int n = l.arity();
  auto br = tabulate(l.dim(), std::vector<int>(at(n), l.dim()), nlie_pattern(n),
                     [&](std::span<const int> t) { return crochet(l, units(t)); });
  return NLieAlgebra(std::move(br));
}

LDendReps ldend_reps(const NLDendriform& l) {
  require(l.verified, "ldend_reps: the L-dendriform algebra has not been certified");
  const int n = l.arity();
  const int d = l.dim();
  const auto slots = rep_slots(d, n, d);
  auto lnw = tabulate(d, slots, l_pattern(n), [&](std::span<const int> t) { return l.nw.at(t); });
  auto rne = tabulate(d, slots, r_pattern(n), [&](std::span<const int> t) {
    Args x = units(t);
    return l.ne(cat(x[at(n - 1)], slice(x, 0, at(n - 1))));
  });
  // -L_ne(x_1..x_{n-1}) v = -ne(x_{n-1}, x_1..x_{n-2}, v)
  auto lne = tabulate(d, slots, r_pattern(n), [&](std::span<const int> t) {
    Args x = units(t);
    Vec v = l.ne(cat(cat(x[at(n - 2)], slice(x, 0, at(n - 2))), x[at(n - 1)]));
    v *= Rational(-1);
    return v;
  });
  auto rho = tabulate(d, slots, l_pattern(n), [&](std::span<const int> t) { return vertical(l, units(t)); });

  NPreLieAlgebra h = assoc_prelie(l, Mode::horizontal);
  NPreLieAlgebra v = assoc_prelie(l, Mode::vertical);
  certify(h);
  certify(v);
  NLieAlgebra c = assoc_nlie(l);
  certify(c);

  LDendReps out{NPreLieRep(h, lnw, rne), NPreLieRep(v, lnw, lne), NLieRep(c, lnw), NLieRep(c, rho), {}, {}, {}, {}};
  auto guarded = [](bool ok, const std::string& what, auto&& run) {
    if (ok) return run();
    Report r;
    r.check = what;
    r.add_flag("algebra");
    return r;
  };
  out.horizontal_report =
      guarded(h.verified, "pre-representation", [&] { return certify(out.horizontal); });
  out.vertical_report = guarded(v.verified, "pre-representation", [&] { return certify(out.vertical); });
  out.left_report = guarded(c.verified, "representation", [&] { return certify(out.left); });
  out.rho_report = guarded(c.verified, "representation", [&] { return certify(out.rho); });
  return out;
}

DendFromOperator o_to_ldend(const LinearMap& t, const NPreLieRep& rho) {
  require(rho.verified, "o_to_ldend: the pre-representation has not been certified");
  require(check_o_operator_nprelie(t, rho, {Exec::parallel, true}).passed(),
          "o_to_ldend: the map is not an O-operator for this pre-representation");
  const NPreLieAlgebra& p = rho.algebra;
  const int n = p.arity();
  const int m = rho.module_dim();
  auto tc = std::make_shared<std::vector<Vec>>(columns(t));
  auto nwt = tabulate(m, std::vector<int>(at(n), m), nprelie_pattern(n), [&](std::span<const int> u) {
    return rho.act_l(images(*tc, u.subspan(0, at(n - 1))), unit(u[at(n - 1)]));
  });
  auto net = tabulate(m, std::vector<int>(at(n), m), ne_pattern(n), [&](std::span<const int> u) {
    return rho.act_r(images(*tc, u.subspan(1)), unit(u[0]));
  });
  DendFromOperator out{NLDendriform(std::move(nwt), std::move(net)), {}, std::nullopt};
  const NLDendriform& dv = out.dend;

  Family fh{"morphism-h", {alt(m, n - 1), free_slots(m, 1)}, [&, tc](std::span<const int> u) {
              Vec res = t.apply(horizontal(dv, units(u)));
              res -= p(images(*tc, u));
              return res;
            }};
  Family fc{"morphism-C", {alt(m, n)}, [&, tc](std::span<const int> u) {
              Vec res = t.apply(crochet(dv, units(u)));
              res -= commutator(p, images(*tc, u));
              return res;
            }};
  out.morphism = run_families("morphism", {fh, fc});

  if (t.square() && rank(t) == t.rows()) {
    // x = T u: nw(x) = T l(x') T^{-1} x_n, ne(x) = T r(x_2..x_n) T^{-1} x_1
    const LinearMap ti = invert(t);
    const int d = p.dim();
    auto nwa = tabulate(d, std::vector<int>(at(n), d), nprelie_pattern(n), [&](std::span<const int> x) {
      return t.apply(rho.act_l(units(x.subspan(0, at(n - 1))), ti.column(x[at(n - 1)])));
    });
    auto nea = tabulate(d, std::vector<int>(at(n), d), ne_pattern(n), [&](std::span<const int> x) {
      return t.apply(rho.act_r(units(x.subspan(1)), ti.column(x[0])));
    });
    out.on_image = NLDendriform(std::move(nwa), std::move(nea));
  }
  return out;
}

NLDendriform rb_to_ldend(const NPreLieAlgebra& p, const LinearMap& rb) {
  require(p.verified, "rb_to_ldend: the n-pre-Lie algebra has not been certified");
  NPreLieRep lr = left_right_mult(p);
  lr.verified = true;  // adjoint pair of a certified algebra
  return o_to_ldend(rb, lr).dend;
}

namespace {

// Closedness residual as a list of B(u, v) terms with coefficients.
struct FormTerm {
  Vec u, v;
  int c;
};

std::vector<FormTerm> closed_terms(const NPreLieAlgebra& p, std::span<const int> t) {
  const int n = p.arity();
  const auto un = at(n);
  Args x = units(t, 0, un);
  Args xp = slice(x, 0, un - 1);
  VecView xn = x[un - 1];
  VecView w = unit(t[un]);
  std::vector<FormTerm> out;
  out.push_back({p(x), Vec::from_view(w), 1});
  out.push_back({Vec::from_view(xn), commutator(p, cat(xp, w)), 1});
  for (int i = 0; i < n - 1; ++i) out.push_back({Vec::from_view(xp[at(i)]), p(cat(cat(w, hat(xp, at(i))), xn)), -parity(i + 2)});
  return out;
}

Domain closed_domain(int d, int n) { return {alt(d, n - 1), free_slots(d, 1), free_slots(d, 1)}; }

// Unknowns are b_jk, j <= k, in row-major order.
int unknown(int d, int j, int k) {
  if (j > k) std::swap(j, k);
  return j * d - j * (j - 1) / 2 + (k - j);
}

}  // namespace

Report check_pseudo_hessian(const NPreLieAlgebra& p, const BilinearForm& b, RunOptions opts) {
  if (b.symmetry != Symmetry::symmetric) throw ShapeError("a pseudo-Hessian form must be symmetric");
  if (b.dim() != p.dim()) throw ShapeError("form and algebra dimensions differ");
  Family f{"closed", closed_domain(p.dim(), p.arity()), [&](std::span<const int> t) {
             Rational s = 0;
             for (const auto& ft : closed_terms(p, t)) s += ft.c * b(ft.u, ft.v);
             return detail::scalar(s);
           }};
  Report r = run_families("pseudo-Hessian", {f}, opts);
  r.families.push_back("nondegenerate");
  if (!b.nondegenerate()) r.add_flag("nondegenerate");
  return r;
}

HessianSolutions solve_pseudo_hessian(const NPreLieAlgebra& p, std::size_t samples, std::uint64_t max_points) {
  const int d = p.dim();
  const int k = d * (d + 1) / 2;
  // Each nonzero row of the closedness system shows up as a "violation" whose residual is the row.
  Family f{"row", closed_domain(d, p.arity()), [&](std::span<const int> t) {
             std::vector<Rational> row(at(k));
             for (const auto& ft : closed_terms(p, t))
               for (const auto& [i, ui] : ft.u)
                 for (const auto& [j, vj] : ft.v) row[at(unknown(d, i, j))] += ft.c * ui * vj;
             std::vector<Term> terms;
             for (int i = 0; i < k; ++i)
               if (sgn(row[at(i)]) != 0) terms.emplace_back(i, row[at(i)]);
             return Vec(std::move(terms));
           }};
  Report rows = run_families("pseudo-Hessian system", {f});
  Matrix sys(static_cast<int>(rows.violations.size()), k);
  for (std::size_t r = 0; r < rows.violations.size(); ++r)
    for (const auto& [i, c] : rows.violations[r].residual) sys(static_cast<int>(r), i) = c;

  HessianSolutions out;
  out.unknowns = k;
  out.rank = rows.violations.empty() ? 0 : rank(sys);
  std::vector<std::vector<Rational>> null;
  if (rows.violations.empty()) {
    for (int i = 0; i < k; ++i) {
      std::vector<Rational> e(at(k));
      e[at(i)] = 1;
      null.push_back(std::move(e));
    }
  } else {
    null = nullspace(sys);
  }
  for (const auto& v : null) {
    Matrix m(d, d);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) m(i, j) = v[at(unknown(d, i, j))];
    out.basis.emplace_back(std::move(m), Symmetry::symmetric);
  }

  // det(sum c_i B_i) has degree <= d, so a nonzero value exists on {0..d}^k unless it vanishes identically.
  const std::size_t nb = out.basis.size();
  if (nb == 0) return out;
  std::vector<int> c(nb, 0);
  for (std::uint64_t pt = 0; pt < max_points; ++pt) {
    std::size_t pos = 0;
    while (pos < nb && c[pos] == d) c[pos++] = 0;
    if (pos == nb) break;
    ++c[pos];
    Matrix m(d, d);
    for (std::size_t i = 0; i < nb; ++i)
      if (c[i] != 0) m = m + Rational(c[i]) * out.basis[i].matrix;
    if (sgn(determinant(m)) == 0) continue;
    BilinearForm b(std::move(m), Symmetry::symmetric);
    if (!out.nondegenerate) out.nondegenerate = b;
    else out.samples.push_back(std::move(b));
    if (out.samples.size() >= samples) break;
  }
  return out;
}

HessianDend hessian_to_ldend(const NPreLieAlgebra& p, const BilinearForm& b) {
  require(p.verified, "hessian_to_ldend: the n-pre-Lie algebra has not been certified");
  require(check_pseudo_hessian(p, b, {Exec::parallel, true}).passed(),
          "hessian_to_ldend: the form is not a nondegenerate pseudo-Hessian form");
  const int n = p.arity();
  const int d = p.dim();
  const auto un = at(n);
  const Matrix binv = invert(b.matrix);
  // B(z, w) = (Mz)_w, so z = M^{-1} f where f_w is the prescribed value.
  auto solve = [&](auto&& value) {
    std::vector<Term> f;
    for (int w = 0; w < d; ++w) {
      Rational s = value(unit(w));
      if (sgn(s) != 0) f.emplace_back(w, s);
    }
    return binv.apply(Vec(std::move(f)));
  };
  const std::vector<int> dims(un, d);
  auto nwt = tabulate(d, dims, nprelie_pattern(n), [&](std::span<const int> t) {
    Args x = units(t);
    Args xp = slice(x, 0, un - 1);
    return solve([&](VecView w) -> Rational { return -b(x[un - 1], commutator(p, cat(xp, w))); });
  });
  auto net = tabulate(d, dims, ne_pattern(n), [&](std::span<const int> t) {
    Args x = units(t);
    return solve([&](VecView w) -> Rational { return b(x[0], p(cat(w, slice(x, 1, un - 1)))); });
  });
  auto der = tabulate(d, dims, nprelie_pattern(n), [&](std::span<const int> t) {
    Args x = units(t);
    Args xp = slice(x, 0, un - 1);
    VecView xn = x[un - 1];
    return solve([&](VecView w) -> Rational {
      Rational s = -b(xn, commutator(p, cat(xp, w)));
      for (int i = 0; i < n - 1; ++i) s += parity(i + 1) * b(xn, p(cat(cat(w, hat(xp, at(i))), xp[at(i)])));
      return s;
    });
  });
  return {NLDendriform(std::move(nwt), std::move(net)), NPreLieAlgebra(std::move(der))};
}

NLDendriform commuting_rb_to_ldend(const NLieAlgebra& a, const LinearMap& p1, const LinearMap& p2) {
  require(a.verified, "commuting_rb_to_ldend: the n-Lie algebra has not been certified");
  NLieRep adj = adjoint_rep(a);
  adj.verified = true;
  require(check_o_operator_nlie(p1, adj, {Exec::parallel, true}).passed(),
          "commuting_rb_to_ldend: P1 is not a Rota-Baxter operator");
  require(check_o_operator_nlie(p2, adj, {Exec::parallel, true}).passed(),
          "commuting_rb_to_ldend: P2 is not a Rota-Baxter operator");
  require(p1 * p2 == p2 * p1, "commuting_rb_to_ldend: P1 and P2 do not commute");
  const int n = a.arity();
  const int d = a.dim();
  const auto un = at(n);
  const LinearMap q = p1 * p2;
  const std::vector<int> dims(un, d);
  std::vector<Vec> keep;
  auto nwt = tabulate(d, dims, nprelie_pattern(n), [&](std::span<const int> t) {
    std::vector<Vec> k;
    Args x = mapped(q, units(t, 0, un - 1), k);
    return a(cat(x, unit(t[un - 1])));
  });
  auto net = tabulate(d, dims, ne_pattern(n), [&](std::span<const int> t) {
    std::vector<Vec> k;
    Args mid = mapped(q, units(t, 1, un - 2), k);
    Vec first = p1.column(t[0]);
    Vec last = p2.column(t[un - 1]);
    return a(cat(cat(VecView(first), mid), VecView(last)));
  });
  return NLDendriform(std::move(nwt), std::move(net));
}

}  // namespace nary
