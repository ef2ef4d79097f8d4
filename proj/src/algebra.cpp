#include "nary/algebra.hpp"

#include "detail.hpp"
#include "nary/errors.hpp"

namespace nary {

using detail::Args;

SkewPattern nlie_pattern(int n) { return SkewPattern::alternating(n, 0, n); }
SkewPattern nprelie_pattern(int n) { return SkewPattern::alternating(n, 0, n - 1); }
SkewPattern ne_pattern(int n) { return SkewPattern::alternating(n, 1, std::max(n - 2, 0)); }
SkewPattern l_pattern(int n) { return SkewPattern::alternating(n, 0, n - 1); }
SkewPattern r_pattern(int n) { return SkewPattern::alternating(n, 0, std::max(n - 2, 0)); }

std::vector<int> rep_slots(int dim, int n, int module_dim) {
  std::vector<int> s(static_cast<std::size_t>(n - 1), dim);
  s.push_back(module_dim);
  return s;
}

namespace {

void require_square(const StructureTensor& t, const char* what) {
  for (int s = 0; s < t.arity(); ++s)
    if (t.slot_dim(s) != t.out_dim()) throw ShapeError(std::string(what) + ": all slots must have the algebra dimension");
}

void require_rep_shape(const StructureTensor& t, int dim, int n, int m, const SkewPattern& p, const char* what) {
  if (t.arity() != n || t.out_dim() != m || t.slot_dims() != rep_slots(dim, n, m) || !(t.pattern() == p))
    throw ShapeError(std::string(what) + ": tensor shape does not fit the algebra");
}

}  // namespace

NLieAlgebra::NLieAlgebra(StructureTensor b) : bracket(std::move(b)) {
  if (arity() < 2) throw ShapeError("n-Lie bracket needs arity >= 2");
  require_square(bracket, "n-Lie bracket");
  if (!(bracket.pattern() == nlie_pattern(arity()))) throw ShapeError("n-Lie bracket must be fully alternating");
}

NPreLieAlgebra::NPreLieAlgebra(StructureTensor p) : product(std::move(p)) {
  if (arity() < 2) throw ShapeError("n-pre-Lie product needs arity >= 2");
  require_square(product, "n-pre-Lie product");
  if (!(product.pattern() == nprelie_pattern(arity())))
    throw ShapeError("n-pre-Lie product must be alternating in exactly its first n-1 slots");
}

NLieRep::NLieRep(NLieAlgebra a, StructureTensor act) : algebra(std::move(a)), action(std::move(act)) {
  require_rep_shape(action, algebra.dim(), algebra.arity(), action.out_dim(), l_pattern(algebra.arity()),
                    "representation");
}

Vec NLieRep::act(std::span<const VecView> xs, VecView v) const {
  Args a(xs.begin(), xs.end());
  a.push_back(v);
  return action(a);
}

LinearMap NLieRep::matrix(std::span<const int> xs) const {
  const int m = module_dim();
  LinearMap out(m, m);
  Args a = detail::units(xs);
  for (int j = 0; j < m; ++j)
    for (const auto& t : act(a, unit(j))) out(t.first, j) = t.second;
  return out;
}

NPreLieRep::NPreLieRep(NPreLieAlgebra a, StructureTensor l_, StructureTensor r_)
    : algebra(std::move(a)), l(std::move(l_)), r(std::move(r_)) {
  const int n = algebra.arity();
  require_rep_shape(l, algebra.dim(), n, l.out_dim(), l_pattern(n), "pre-representation l");
  require_rep_shape(r, algebra.dim(), n, l.out_dim(), r_pattern(n), "pre-representation r");
}

Vec NPreLieRep::act_l(std::span<const VecView> xs, VecView v) const {
  Args a(xs.begin(), xs.end());
  a.push_back(v);
  return l(a);
}

Vec NPreLieRep::act_r(std::span<const VecView> xs, VecView v) const {
  Args a(xs.begin(), xs.end());
  a.push_back(v);
  return r(a);
}

NLDendriform::NLDendriform(StructureTensor nw_, StructureTensor ne_) : nw(std::move(nw_)), ne(std::move(ne_)) {
  const int n = nw.arity();
  if (n < 2 || ne.arity() != n) throw ShapeError("dendriform products need a common arity >= 2");
  require_square(nw, "nw product");
  require_square(ne, "ne product");
  if (nw.out_dim() != ne.out_dim()) throw ShapeError("dendriform products must share the dimension");
  if (!(nw.pattern() == nprelie_pattern(n))) throw ShapeError("nw product must be alternating in slots 1..n-1");
  if (!(ne.pattern() == ne_pattern(n))) throw ShapeError("ne product must be alternating in slots 2..n-1");
}

NLieAlgebra zero_nlie(int dim, int n) { return NLieAlgebra(StructureTensor(dim, nlie_pattern(n))); }
NPreLieAlgebra zero_nprelie(int dim, int n) { return NPreLieAlgebra(StructureTensor(dim, nprelie_pattern(n))); }
NLDendriform zero_ldend(int dim, int n) {
  return NLDendriform(StructureTensor(dim, nprelie_pattern(n)), StructureTensor(dim, ne_pattern(n)));
}

NLieAlgebra levi_civita(int n) {
  const int d = n + 1;
  return NLieAlgebra(tabulate(d, std::vector<int>(static_cast<std::size_t>(n), d), nlie_pattern(n),
                              [&](std::span<const int> idx) {
                                // idx is strictly increasing; k is the missing index.
                                std::vector<int> perm;
                                std::vector<char> used(static_cast<std::size_t>(d), 0);
                                for (int i : idx) {
                                  perm.push_back(i + 1);
                                  used[static_cast<std::size_t>(i)] = 1;
                                }
                                int k = 0;
                                while (used[static_cast<std::size_t>(k)]) ++k;
                                perm.push_back(k + 1);
                                Vec v = Vec::basis(k);
                                return v *= perm_sign(perm);
                              }));
}

Report check_derivation(const StructureTensor& phi, const LinearMap& d, RunOptions opts) {
  const int dim = phi.out_dim();
  if (d.rows() != dim || d.cols() != dim) throw ShapeError("derivation must be a square map on the algebra");
  for (int s = 0; s < phi.arity(); ++s)
    if (phi.slot_dim(s) != dim) throw ShapeError("derivation check needs all slots on the algebra");
  std::vector<Vec> dcols;
  for (int j = 0; j < dim; ++j) dcols.push_back(d.column(j));
  Family f{"derivation", domain_of(phi), [&](std::span<const int> t) {
             Args a = detail::units(t);
             Vec res = d.apply(phi(a));
             for (std::size_t i = 0; i < a.size(); ++i)
               res -= phi(detail::with(a, i, dcols[static_cast<std::size_t>(t[i])]));
             return res;
           }};
  return run_families("derivation", {f}, opts);
}

void require(bool ok, const std::string& what) {
  if (!ok) throw PreconditionError(what);
}

}  // namespace nary
