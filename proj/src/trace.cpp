#include "nary/trace.hpp"

#include "detail.hpp"
#include "nary/errors.hpp"

namespace nary {

using detail::Args;
using detail::cat;
using detail::hat;
using detail::parity;
using detail::units;

namespace {

// sum_{k<upto} (-1)^k tau(x_k) phi(x^_k)
Vec lifted(const StructureTensor& phi, const Covector& tau, const Args& x, std::size_t upto) {
  Vec out;
  for (std::size_t k = 0; k < upto; ++k) {
    Rational c = tau(x[k]);
    if (sgn(c) == 0) continue;
    out.axpy(parity(static_cast<long>(k)) * c, phi(hat(x, k)));
  }
  return out;
}

void require_dim(const Covector& tau, int dim) {
  if (static_cast<int>(tau.coefficients.size()) != dim) throw ShapeError("covector dimension does not match the algebra");
}

}  // namespace

Report check_trace(const StructureTensor& phi, const Covector& tau, RunOptions opts) {
  require_dim(tau, phi.out_dim());
  Family f{"trace", domain_of(phi),
           [&](std::span<const int> t) { return detail::scalar(tau(phi.at(t))); }};
  return run_families("trace", {f}, opts);
}

NPreLieAlgebra induce(const NPreLieAlgebra& p, const Covector& tau) {
  require_dim(tau, p.dim());
  require(p.verified, "induce: the n-pre-Lie algebra has not been certified");
  require(check_trace(p.product, tau, {Exec::parallel, true}).passed(), "induce: the covector is not a trace");
  const int n = p.arity();
  auto prod = tabulate(p.dim(), std::vector<int>(static_cast<std::size_t>(n + 1), p.dim()), nprelie_pattern(n + 1),
                       [&](std::span<const int> t) {
                         return lifted(p.product, tau, units(t), static_cast<std::size_t>(n));
                       });
  return NPreLieAlgebra(std::move(prod));
}

NLieAlgebra induce_nlie(const NLieAlgebra& a, const Covector& tau) {
  require_dim(tau, a.dim());
  require(a.verified, "induce_nlie: the n-Lie algebra has not been certified");
  require(check_trace(a.bracket, tau, {Exec::parallel, true}).passed(), "induce_nlie: the covector is not a trace");
  const int n = a.arity();
  auto br = tabulate(a.dim(), std::vector<int>(static_cast<std::size_t>(n + 1), a.dim()), nlie_pattern(n + 1),
                     [&](std::span<const int> t) {
                       return lifted(a.bracket, tau, units(t), static_cast<std::size_t>(n + 1));
                     });
  return NLieAlgebra(std::move(br));
}

NPreLieRep induce_rep(const NPreLieRep& rho, const Covector& tau) {
  require(rho.verified, "induce_rep: the pre-representation has not been certified");
  NPreLieAlgebra q = induce(rho.algebra, tau);
  require(certify(q).passed(), "induce_rep: the induced product fails the n-pre-Lie identities");
  const int n = rho.algebra.arity();
  const int d = q.dim();
  const int m = rho.module_dim();
  const auto un = static_cast<std::size_t>(n);
  auto l = tabulate(m, rep_slots(d, n + 1, m), l_pattern(n + 1), [&](std::span<const int> t) {
    Args x = units(t, 0, un);
    VecView v = unit(t[un]);
    Vec out;
    for (std::size_t k = 0; k < un; ++k) {
      Rational c = tau(x[k]);
      if (sgn(c) != 0) out.axpy(parity(static_cast<long>(k)) * c, rho.act_l(hat(x, k), v));
    }
    return out;
  });
  // r_tau(x_1..x_n) = sum_{k<=n-1} (-1)^k tau(x_k) r(x^_k.., x_n)
  auto r = tabulate(m, rep_slots(d, n + 1, m), r_pattern(n + 1), [&](std::span<const int> t) {
    Args x = units(t, 0, un);
    VecView v = unit(t[un]);
    Vec out;
    for (std::size_t k = 0; k + 1 < un; ++k) {
      Rational c = tau(x[k]);
      if (sgn(c) != 0) out.axpy(parity(static_cast<long>(k) + 1) * c, rho.act_r(hat(x, k), v));
    }
    return out;
  });
  return NPreLieRep(std::move(q), std::move(l), std::move(r));
}

InducedDerivation derivation_induced_criterion(const NPreLieAlgebra& p, const Covector& tau, const LinearMap& d) {
  require_dim(tau, p.dim());
  require(check_derivation(p.product, d, {Exec::parallel, true}).passed(),
          "derivation_induced_criterion: D is not a derivation of the n-pre-Lie algebra");
  NPreLieAlgebra q = induce(p, tau);
  Covector td = tau.compose(d);
  InducedDerivation out;
  out.trace = check_trace(p.product, td);
  const int n = p.arity();
  Family f{"vanishing", domain_of(q.product),
           [&](std::span<const int> t) { return lifted(p.product, td, units(t), static_cast<std::size_t>(n)); }};
  out.vanishing = run_families("induced by tau o D", {f});
  out.direct = check_derivation(q.product, d);
  return out;
}

}  // namespace nary
