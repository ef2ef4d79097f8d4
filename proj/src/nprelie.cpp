#include "nary/nprelie.hpp"

#include <memory>

#include "detail.hpp"
#include "nary/errors.hpp"
#include "search.hpp"

namespace nary {

using detail::Args;
using detail::cat;
using detail::hat;
using detail::parity;
using detail::units;
using detail::with;

namespace {

constexpr std::size_t at(int i) { return static_cast<std::size_t>(i); }

// Domain of a product's arguments: n-1 alternating then one free.
std::vector<SlotGroup> prod_args(int d, int n) { return {alt(d, n - 1), free_slots(d, 1)}; }

// r's argument shape: n-2 alternating then one free.
std::vector<SlotGroup> r_args(int d, int n) { return {alt(d, n - 2), free_slots(d, 1)}; }

Domain domain(std::initializer_list<std::vector<SlotGroup>> parts) {
  Domain out;
  for (const auto& p : parts) out.insert(out.end(), p.begin(), p.end());
  return out;
}

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

}  // namespace

Vec commutator(const NPreLieAlgebra& p, std::span<const VecView> xs) {
  const int n = static_cast<int>(xs.size());
  Args x(xs.begin(), xs.end());
  Vec out;
  for (int i = 0; i < n; ++i) out.axpy(parity(n - (i + 1)), p(cat(hat(x, at(i)), x[at(i)])));
  return out;
}

Report check_nprelie(const NPreLieAlgebra& p, RunOptions opts) {
  const int n = p.arity();
  const int d = p.dim();
  const auto un = at(n);
  auto br = [&p](const Args& a) { return commutator(p, a); };
  Family f1{"n-pre-lie-1", domain({{alt(d, n - 1)}, prod_args(d, n)}), [&, n, un](std::span<const int> t) {
              Args x = units(t, 0, un - 1);
              Args y = units(t, un - 1, un);
              Vec res = p(cat(x, p(y)));
              for (int i = 0; i < n - 1; ++i) res -= p(with(y, at(i), br(cat(x, y[at(i)]))));
              res -= p(cat(detail::slice(y, 0, un - 1), p(cat(x, y[un - 1]))));
              return res;
            }};
  Family f2{"n-pre-lie-2", domain({{alt(d, n)}, prod_args(d, n - 1)}), [&, n, un](std::span<const int> t) {
              Args x = units(t, 0, un);
              Args y = units(t, un, un - 1);
              Vec res = p(cat(br(x), y));
              for (int i = 0; i < n; ++i)
                res.axpy(-parity(n - (i + 1)), p(cat(hat(x, at(i)), p(cat(x[at(i)], y)))));
              return res;
            }};
  return run_families("n-pre-lie", {f1, f2}, opts);
}

Report certify(NPreLieAlgebra& p, RunOptions opts) {
  Report r = check_nprelie(p, opts);
  p.verified = r.passed();
  return r;
}

NLieAlgebra sub_adjacent(const NPreLieAlgebra& p) {
  require(p.verified, "sub_adjacent: the n-pre-Lie algebra has not been certified");
  const int n = p.arity();
  auto br = tabulate(p.dim(), std::vector<int>(at(n), p.dim()), nlie_pattern(n),
                     [&p](std::span<const int> t) { return commutator(p, units(t)); });
  return NLieAlgebra(std::move(br));
}

NPreLieRep left_right_mult(const NPreLieAlgebra& p) {
  require(p.verified, "left_right_mult: the n-pre-Lie algebra has not been certified");
  const int n = p.arity();
  const int d = p.dim();
  auto l = tabulate(d, rep_slots(d, n, d), l_pattern(n), [&p](std::span<const int> t) { return p.product.at(t); });
  auto r = tabulate(d, rep_slots(d, n, d), r_pattern(n), [&p, n](std::span<const int> t) {
    Args x = units(t);
    return p(cat(x[at(n - 1)], detail::slice(x, 0, at(n - 1))));
  });
  return NPreLieRep(p, std::move(l), std::move(r));
}

NPreLieRep zero_pre_rep(const NPreLieAlgebra& p, int module_dim) {
  const int n = p.arity();
  return NPreLieRep(p, StructureTensor(module_dim, rep_slots(p.dim(), n, module_dim), l_pattern(n)),
                    StructureTensor(module_dim, rep_slots(p.dim(), n, module_dim), r_pattern(n)));
}

Vec mu(const NPreLieRep& rho, std::span<const VecView> xs, VecView v) {
  Args x(xs.begin(), xs.end());
  Vec out = rho.act_l(x, v);
  for (std::size_t i = 0; i < x.size(); ++i)
    out.axpy(parity(static_cast<long>(i) + 1), rho.act_r(cat(hat(x, i), x[i]), v));
  return out;
}

LinearMap mu(const NPreLieRep& rho, std::span<const int> idx) {
  const int d = rho.algebra.dim();
  if (static_cast<int>(idx.size()) != rho.algebra.arity() - 1) throw ShapeError("mu needs n-1 indices");
  for (int i : idx)
    if (i < 0 || i >= d) throw ShapeError("mu index out of range");
  const int m = rho.module_dim();
  LinearMap out(m, m);
  Args x = units(idx);
  for (int j = 0; j < m; ++j)
    for (const auto& t : mu(rho, x, unit(j))) out(t.first, j) = t.second;
  return out;
}

Report check_pre_rep(const NPreLieRep& rho, RunOptions opts) {
  const NPreLieAlgebra& p = rho.algebra;
  require(p.verified, "check_pre_rep: the n-pre-Lie algebra has not been certified");
  const int n = p.arity();
  const int d = p.dim();
  const int m = rho.module_dim();
  const auto un = at(n);
  auto br = [&p](const Args& a) { return commutator(p, a); };
  auto l = [&rho](const Args& x, VecView v) { return rho.act_l(x, v); };
  auto r = [&rho](const Args& x, VecView v) { return rho.act_r(x, v); };
  auto mu_ = [&rho](const Args& x, VecView v) { return mu(rho, x, v); };
  const std::vector<SlotGroup> v{free_slots(m, 1)};

  std::vector<Family> fams = detail::rep_families(d, m, n, br, l, "l-rep-");

  // l(x) r(y) = r(y) mu(x) + sum_{i<=n-2} r(..[x, y_i]^C..) + r(y_1..y_{n-2}, {x, y_{n-1}})
  fams.push_back({"identity-1", domain({{alt(d, n - 1)}, r_args(d, n), v}), [=](std::span<const int> t) {
                    Args x = units(t, 0, un - 1);
                    Args y = units(t, un - 1, un - 1);
                    VecView w = unit(t[2 * un - 2]);
                    Vec res = l(x, r(y, w));
                    res -= r(y, mu_(x, w));
                    for (int i = 0; i < n - 2; ++i) res -= r(with(y, at(i), br(cat(x, y[at(i)]))), w);
                    res -= r(with(y, un - 2, p(cat(x, y[un - 2]))), w);
                    return res;
                  }});
  // r([x]^C, y_1..y_{n-2}) = sum_i (-1)^{n-i} l(x^_i) r(x_i, y)
  Domain d2{alt(d, n)};
  if (n >= 3) d2.insert(d2.end(), {alt(d, n - 3), free_slots(d, 1)});
  d2.push_back(free_slots(m, 1));
  fams.push_back({"identity-2", d2, [=](std::span<const int> t) {
                    Args x = units(t, 0, un);
                    Args y = units(t, un, un - 2);
                    VecView w = unit(t[2 * un - 2]);
                    Vec res = r(cat(br(x), y), w);
                    for (int i = 0; i < n; ++i)
                      res.axpy(-parity(n - (i + 1)), l(hat(x, at(i)), r(cat(x[at(i)], y), w)));
                    return res;
                  }});
  // r(x_1..x_{n-2}, {y}) = l(y_1..y_{n-1}) r(x, y_n) + sum_{i<n} (-1)^{i+1} r(y^_i.., y_n) mu(x, y_i)
  fams.push_back({"identity-3", domain({{alt(d, n - 2)}, prod_args(d, n), v}), [=](std::span<const int> t) {
                    Args x = units(t, 0, un - 2);
                    Args y = units(t, un - 2, un);
                    VecView w = unit(t[2 * un - 2]);
                    Vec res = r(cat(x, p(y)), w);
                    res -= l(detail::slice(y, 0, un - 1), r(cat(x, y[un - 1]), w));
                    for (int i = 0; i < n - 1; ++i)
                      res.axpy(-parity(i + 2), r(hat(y, at(i)), mu_(cat(x, y[at(i)]), w)));
                    return res;
                  }});
  // r(y) mu(x) = l(x) r(y) + sum_{i<n} (-1)^i r(x^_i.., {x_i, y})
  fams.push_back({"identity-4", domain({{alt(d, n - 1)}, r_args(d, n), v}), [=](std::span<const int> t) {
                    Args x = units(t, 0, un - 1);
                    Args y = units(t, un - 1, un - 1);
                    VecView w = unit(t[2 * un - 2]);
                    Vec res = r(y, mu_(x, w));
                    res -= l(x, r(y, w));
                    for (int i = 0; i < n - 1; ++i)
                      res.axpy(-parity(i + 1), r(cat(hat(x, at(i)), p(cat(x[at(i)], y))), w));
                    return res;
                  }});
  return run_families("pre-representation", fams, opts);
}

Report certify(NPreLieRep& rho, RunOptions opts) {
  Report r = check_pre_rep(rho, opts);
  rho.verified = r.passed();
  return r;
}

NPreLieAlgebra semidirect_nprelie(const NPreLieRep& rho) {
  require(rho.verified, "semidirect_nprelie: the pre-representation has not been certified");
  const NPreLieAlgebra& p = rho.algebra;
  const int n = p.arity();
  const int d = p.dim();
  const int m = rho.module_dim();
  auto prod = tabulate(d + m, std::vector<int>(at(n), d + m), nprelie_pattern(n), [&, n, d](std::span<const int> t) {
    Args x;
    int mod = -1;
    for (int i = 0; i < n; ++i) {
      if (t[at(i)] < d) {
        x.push_back(unit(t[at(i)]));
        continue;
      }
      if (mod >= 0) return Vec{};
      mod = i;
      x.push_back(VecView{});
    }
    if (mod < 0) return p(x);
    VecView u = unit(t[at(mod)] - d);
    Vec out = (mod == n - 1) ? rho.act_l(detail::slice(x, 0, at(n - 1)), u)
                             : parity(mod + 2) * rho.act_r(hat(x, at(mod)), u);
    return out.shifted(d);
  });
  return NPreLieAlgebra(std::move(prod));
}

NLieRep rho_tilde(const NPreLieRep& rho) {
  require(rho.verified, "rho_tilde: the pre-representation has not been certified");
  const NPreLieAlgebra& p = rho.algebra;
  const int n = p.arity();
  auto act = tabulate(rho.module_dim(), rep_slots(p.dim(), n, rho.module_dim()), l_pattern(n),
                      [&rho, n](std::span<const int> t) {
                        return mu(rho, units(t, 0, at(n - 1)), unit(t[at(n - 1)]));
                      });
  NLieAlgebra c = sub_adjacent(p);
  c.verified = true;  // sub-adjacent of a certified n-pre-Lie algebra
  return NLieRep(std::move(c), std::move(act));
}

namespace {

// Transpose of the action slot: out(x)_{k,j} = s * in(x)_{j,k}.
StructureTensor transposed(const StructureTensor& in, const Rational& s) {
  const int n = in.arity();
  const int m = in.out_dim();
  std::vector<int> dims = in.slot_dims();
  return tabulate(m, dims, in.pattern(), [&](std::span<const int> t) {
    Args x = units(t, 0, at(n - 1));
    const int j = t[at(n - 1)];
    std::vector<Term> out;
    for (int k = 0; k < m; ++k) {
      Rational c = in(cat(x, unit(k))).at(j);
      if (sgn(c) != 0) out.emplace_back(k, s * c);
    }
    return Vec(std::move(out));
  });
}

}  // namespace

NPreLieRep dual_pre_rep(const NPreLieRep& rho) {
  require(rho.verified, "dual_pre_rep: the pre-representation has not been certified");
  NLieRep tilde = rho_tilde(rho);
  return NPreLieRep(rho.algebra, transposed(tilde.action, -1), transposed(rho.r, 1));
}

Report check_o_operator_nprelie(const LinearMap& t, const NPreLieRep& rho, RunOptions opts) {
  const NPreLieAlgebra& p = rho.algebra;
  const int n = p.arity();
  const int m = rho.module_dim();
  if (t.rows() != p.dim() || t.cols() != m) throw ShapeError("O-operator must map the module into the algebra");
  auto tc = std::make_shared<std::vector<Vec>>(columns(t));
  Family f{"o-operator", {alt(m, n - 1), free_slots(m, 1)}, [&, tc, n](std::span<const int> u) {
             Args tu = images(*tc, u);
             Vec res = p(tu);
             Vec inner = rho.act_l(detail::slice(tu, 0, at(n - 1)), unit(u[at(n - 1)]));
             for (int i = 0; i < n - 1; ++i) inner.axpy(parity(i + 2), rho.act_r(hat(tu, at(i)), unit(u[at(i)])));
             res -= t.apply(inner);
             return res;
           }};
  return run_families("o-operator", {f}, opts);
}

std::vector<LinearMap> rb_search(const NPreLieAlgebra& p, const SearchSpace& space) {
  NPreLieAlgebra q = p;
  q.verified = true;  // the adjoint pair is only used as data here
  NPreLieRep adj = left_right_mult(q);
  return detail::search_maps(p.dim(), space, [&](const LinearMap& c) {
    return check_o_operator_nprelie(c, adj, {Exec::serial, true}).passed();
  });
}

std::pair<NPreLieAlgebra, Report> commuting_rb_nprelie(const NLieAlgebra& a, const LinearMap& p1, const LinearMap& p2) {
  require(a.verified, "commuting_rb_nprelie: the n-Lie algebra has not been certified");
  NLieRep adj = adjoint_rep(a);
  adj.verified = true;  // adjoint of a certified algebra
  require(check_o_operator_nlie(p1, adj, {Exec::parallel, true}).passed(),
          "commuting_rb_nprelie: P1 is not a Rota-Baxter operator");
  require(check_o_operator_nlie(p2, adj, {Exec::parallel, true}).passed(),
          "commuting_rb_nprelie: P2 is not a Rota-Baxter operator");
  require(p1 * p2 == p2 * p1, "commuting_rb_nprelie: P1 and P2 do not commute");
  NPreLieAlgebra p = o_to_nprelie(p1, adj).algebra;
  require(certify(p).passed(), "commuting_rb_nprelie: the induced product is not n-pre-Lie");
  NPreLieRep lr = left_right_mult(p);
  Report r = check_o_operator_nprelie(p2, lr);
  return {std::move(p), std::move(r)};
}

}  // namespace nary
