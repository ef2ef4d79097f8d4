#include "nary/nlie.hpp"

#include <algorithm>
#include <atomic>

#include "detail.hpp"
#include "nary/errors.hpp"
#include "search.hpp"

namespace nary {

using detail::Args;
using detail::hat;
using detail::parity;
using detail::units;
using detail::with;

Report check_n_lie(const NLieAlgebra& a, RunOptions opts) {
  const int n = a.arity();
  const int d = a.dim();
  Family f{"filippov", {alt(d, n - 1), alt(d, n)}, [&a, n](std::span<const int> t) {
             Args x = units(t, 0, static_cast<std::size_t>(n - 1));
             Args y = units(t, static_cast<std::size_t>(n - 1), static_cast<std::size_t>(n));
             Vec inner = a(y);
             Vec res = a(detail::cat(x, inner));
             for (int i = 0; i < n; ++i) {
               Vec xy = a(detail::cat(x, y[static_cast<std::size_t>(i)]));
               res -= a(with(y, static_cast<std::size_t>(i), xy));
             }
             return res;
           }};
  return run_families("n-lie", {f}, opts);
}

Report certify(NLieAlgebra& a, RunOptions opts) {
  Report r = check_n_lie(a, opts);
  a.verified = r.passed();
  return r;
}

LinearMap ad(const NLieAlgebra& a, std::span<const int> idx) {
  const int d = a.dim();
  if (static_cast<int>(idx.size()) != a.arity() - 1) throw ShapeError("ad needs n-1 indices");
  for (int i : idx)
    if (i < 0 || i >= d) throw ShapeError("ad index out of range");
  LinearMap m(d, d);
  Args x = units(idx);
  for (int j = 0; j < d; ++j)
    for (const auto& t : a(detail::cat(x, unit(j)))) m(t.first, j) = t.second;
  return m;
}

NLieRep adjoint_rep(const NLieAlgebra& a) {
  const int n = a.arity();
  const int d = a.dim();
  auto act = tabulate(d, rep_slots(d, n, d), l_pattern(n), [&](std::span<const int> t) { return a.bracket.at(t); });
  return NLieRep(a, std::move(act));
}

NLieRep zero_rep(const NLieAlgebra& a, int module_dim) {
  const int n = a.arity();
  return NLieRep(a, StructureTensor(module_dim, rep_slots(a.dim(), n, module_dim), l_pattern(n)));
}

namespace detail {

std::vector<Family> rep_families(int d, int m, int n, Bracket bracket, Action act, const std::string& prefix) {
  const auto un = static_cast<std::size_t>(n);
  Family f1{prefix + "1", {alt(d, n), alt(d, n - 2), free_slots(m, 1)}, [=](std::span<const int> t) {
              Args x = units(t, 0, un);
              Args y = units(t, un, un - 2);
              VecView v = unit(t[2 * un - 2]);
              Vec bx = bracket(x);
              Vec res = act(cat(bx, y), v);
              for (int i = 0; i < n; ++i) {
                Vec inner = act(cat(x[static_cast<std::size_t>(i)], y), v);
                res.axpy(-parity(n - (i + 1)), act(hat(x, static_cast<std::size_t>(i)), inner));
              }
              return res;
            }};
  Family f2{prefix + "2", {alt(d, n - 1), alt(d, n - 1), free_slots(m, 1)}, [=](std::span<const int> t) {
              Args x = units(t, 0, un - 1);
              Args y = units(t, un - 1, un - 1);
              VecView v = unit(t[2 * un - 2]);
              Vec res = act(x, act(y, v));
              res -= act(y, act(x, v));
              for (int i = 0; i < n - 1; ++i) {
                Vec xy = bracket(cat(x, y[static_cast<std::size_t>(i)]));
                res -= act(with(y, static_cast<std::size_t>(i), xy), v);
              }
              return res;
            }};
  return {f1, f2};
}

}  // namespace detail

Report check_rep(const NLieRep& rho, RunOptions opts) {
  const NLieAlgebra& a = rho.algebra;
  require(a.verified, "check_rep: the algebra has not been certified");
  if (rho.action.arity() != a.arity()) throw ShapeError("representation arity does not match the algebra");
  auto fams = detail::rep_families(
      a.dim(), rho.module_dim(), a.arity(), [&a](const Args& x) { return a(x); },
      [&rho](const Args& x, VecView v) { return rho.act(x, v); }, "rep-");
  return run_families("representation", fams, opts);
}

Report certify(NLieRep& rho, RunOptions opts) {
  Report r = check_rep(rho, opts);
  rho.verified = r.passed();
  return r;
}

NLieAlgebra semidirect_nlie(const NLieRep& rho) {
  require(rho.verified, "semidirect_nlie: the representation has not been certified");
  const NLieAlgebra& a = rho.algebra;
  const int n = a.arity();
  const int d = a.dim();
  const int m = rho.module_dim();
  auto br = tabulate(d + m, std::vector<int>(static_cast<std::size_t>(n), d + m), nlie_pattern(n),
                     [&](std::span<const int> t) {
                       Args x;
                       std::vector<int> mod;  // positions carrying a module vector
                       for (int k : t) x.push_back(k < d ? unit(k) : VecView{});
                       for (int i = 0; i < n; ++i)
                         if (t[static_cast<std::size_t>(i)] >= d) mod.push_back(i);
                       if (mod.empty()) return a(x);
                       if (mod.size() > 1) return Vec{};
                       const int i = mod[0];
                       Vec u = rho.act(hat(x, static_cast<std::size_t>(i)), unit(t[static_cast<std::size_t>(i)] - d));
                       u *= parity(n - (i + 1));
                       return u.shifted(d);
                     });
  return NLieAlgebra(std::move(br));
}

NLieRep dual_rep(const NLieRep& rho) {
  require(rho.verified, "dual_rep: the representation has not been certified");
  const int n = rho.algebra.arity();
  const int d = rho.algebra.dim();
  const int m = rho.module_dim();
  auto act = tabulate(m, rep_slots(d, n, m), l_pattern(n), [&](std::span<const int> t) {
    Args x = units(t, 0, static_cast<std::size_t>(n - 1));
    const int j = t[static_cast<std::size_t>(n - 1)];
    std::vector<Term> out;
    for (int k = 0; k < m; ++k) {
      Rational c = rho.act(x, unit(k)).at(j);
      if (sgn(c) != 0) out.emplace_back(k, -c);
    }
    return Vec(std::move(out));
  });
  return NLieRep(rho.algebra, std::move(act));
}

Report check_o_operator_nlie(const LinearMap& t, const NLieRep& rho, RunOptions opts) {
  const NLieAlgebra& a = rho.algebra;
  const int n = a.arity();
  const int m = rho.module_dim();
  if (t.rows() != a.dim() || t.cols() != m) throw ShapeError("O-operator must map the module into the algebra");
  std::vector<Vec> tc;
  for (int j = 0; j < m; ++j) tc.push_back(t.column(j));
  Family f{"o-operator", {alt(m, n)}, [&, n](std::span<const int> u) {
             Args tu;
             for (int k : u) tu.push_back(tc[static_cast<std::size_t>(k)]);
             Vec res = a(tu);
             Vec inner;
             for (int i = 0; i < n; ++i)
               inner.axpy(parity(n - (i + 1)), rho.act(hat(tu, static_cast<std::size_t>(i)), unit(u[static_cast<std::size_t>(i)])));
             res -= t.apply(inner);
             return res;
           }};
  return run_families("o-operator", {f}, opts);
}

NPreLieFromOperator o_to_nprelie(const LinearMap& t, const NLieRep& rho) {
  require(rho.verified, "o_to_nprelie: the representation has not been certified");
  require(check_o_operator_nlie(t, rho, {Exec::parallel, true}).passed(),
          "o_to_nprelie: the map is not an O-operator for this representation");
  const int n = rho.algebra.arity();
  const int m = rho.module_dim();
  std::vector<Vec> tc;
  for (int j = 0; j < m; ++j) tc.push_back(t.column(j));
  auto prod = tabulate(m, std::vector<int>(static_cast<std::size_t>(n), m), nprelie_pattern(n),
                       [&](std::span<const int> u) {
                         Args tu;
                         for (int i = 0; i < n - 1; ++i) tu.push_back(tc[static_cast<std::size_t>(u[static_cast<std::size_t>(i)])]);
                         return rho.act(tu, unit(u[static_cast<std::size_t>(n - 1)]));
                       });
  NPreLieFromOperator out{NPreLieAlgebra(std::move(prod)), {}};
  const NPreLieAlgebra& p = out.algebra;
  const NLieAlgebra& a = rho.algebra;
  Family f{"morphism", {alt(m, n)}, [&, n](std::span<const int> u) {
             Args uu = units(u);
             Vec c;  // [u]^C
             for (int i = 0; i < n; ++i)
               c.axpy(parity(n - (i + 1)), p(detail::cat(hat(uu, static_cast<std::size_t>(i)), uu[static_cast<std::size_t>(i)])));
             Args tu;
             for (int k : u) tu.push_back(tc[static_cast<std::size_t>(k)]);
             return t.apply(c) - a(tu);
           }};
  out.morphism = run_families("o-operator morphism", {f});
  return out;
}

std::vector<std::pair<int, int>> diagonal_cells(int dim) {
  std::vector<std::pair<int, int>> c;
  for (int i = 0; i < dim; ++i) c.emplace_back(i, i);
  return c;
}

std::vector<std::pair<int, int>> all_cells(int dim) {
  std::vector<std::pair<int, int>> c;
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) c.emplace_back(i, j);
  return c;
}

std::uint64_t search_size(const SearchSpace& space) {
  if (space.cells.size() > space.max_cells)
    throw SearchCapError("support has " + std::to_string(space.cells.size()) + " cells; the limit is " +
                         std::to_string(space.max_cells));
  std::vector<Rational> e = space.entries;
  std::sort(e.begin(), e.end());
  e.erase(std::unique(e.begin(), e.end()), e.end());
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < space.cells.size(); ++i) {
    total *= std::max<std::uint64_t>(e.size(), 1);
    if (total > space.max_candidates)
      throw SearchCapError("search space exceeds the cap of " + std::to_string(space.max_candidates) + " candidates");
  }
  return total;
}

std::vector<LinearMap> rb_search(const NLieAlgebra& a, const SearchSpace& space) {
  NLieRep adj = adjoint_rep(a);
  return detail::search_maps(a.dim(), space, [&](const LinearMap& p) {
    return check_o_operator_nlie(p, adj, {Exec::serial, true}).passed();
  });
}

}  // namespace nary
