#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>

#include "nary/catalog.hpp"
#include "nary/errors.hpp"
#include "nary/trace.hpp"
#include "oracle.hpp"

using namespace nary;

namespace {

template <class T>
T certified(T x) {
  REQUIRE(certify(x).passed());
  return x;
}

Rational apply(const Covector& tau, const oracle::DVec& v) {
  Rational s;
  for (std::size_t i = 0; i < v.size(); ++i) s += tau.coefficients[i] * v[i];
  return s;
}

// phi_tau on basis tuples from the dense form of phi; `slots` = how many leading slots carry tau
oracle::DVec induced(const oracle::Dense& phi, const Covector& tau, const oracle::Tuple& t, int slots) {
  oracle::DVec out(static_cast<std::size_t>(phi.out));
  for (int k = 0; k < slots; ++k) {
    Rational c = tau.coefficients[static_cast<std::size_t>(t[static_cast<std::size_t>(k)])];
    if (c == 0) continue;
    oracle::Tuple rest;
    for (int j = 0; j < static_cast<int>(t.size()); ++j)
      if (j != k) rest.push_back(t[static_cast<std::size_t>(j)]);
    oracle::DVec v = phi.at(rest);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += Rational(k % 2 ? -1 : 1) * c * v[i];
  }
  return out;
}

// [e1,e2] = e2, [e3,e4] = e4 with the trace e1* + e3*
NLieAlgebra two_blocks() {
  TensorBuilder b(4, nlie_pattern(2));
  b.add(std::array{0, 1}, Vec::basis(1));
  b.add(std::array{2, 3}, Vec::basis(3));
  return NLieAlgebra(std::move(b).build());
}

}  // namespace

TEST_CASE("traces are located by the checker") {
  NPreLieAlgebra pl = catalog::pl();
  CHECK(check_trace(pl.product, catalog::t1()).passed());
  CHECK(check_trace(pl.product, catalog::t1(Rational(7, 3))).passed());
  Covector e2(std::vector<Rational>{0, 1, 0});
  Report r = check_trace(pl.product, e2);
  // only e3.e2 = e2 reaches e2
  REQUIRE(r.violations.size() == 1);
  CHECK(r.violations[0].tuple == std::vector<int>{2, 1});
  CHECK(r.violations[0].residual == Vec::basis(0));
  CHECK_THROWS_AS(check_trace(pl.product, Covector::zero(2)), ShapeError);
}

TEST_CASE("inducing PL by T1 gives P3 exactly") {
  NPreLieAlgebra pl = certified(catalog::pl());
  CHECK(induce(pl, catalog::t1()).product == catalog::p3().product);
  for (Rational a : {Rational(2), Rational(-1, 3), Rational(5, 7)})
    CHECK(induce(pl, catalog::t1(a)).product == catalog::p3(a).product);
  NPreLieAlgebra q = induce(pl, catalog::t1());
  CHECK(check_nprelie(q).passed());
}

TEST_CASE("the induced tensor matches the defining sum") {
  NPreLieAlgebra pl = certified(catalog::pl());
  oracle::Dense phi(pl.product);
  NPreLieAlgebra q = induce(pl, catalog::t1(Rational(3, 2)));
  oracle::Dense got(q.product);
  oracle::each_tuple(3, 3, [&](const oracle::Tuple& t) {
    CHECK(got.at(t) == induced(phi, catalog::t1(Rational(3, 2)), t, 2));
  });

  NLieAlgebra g = certified(two_blocks());
  Covector tau(std::vector<Rational>{1, 0, 1, 0});
  NLieAlgebra h = induce_nlie(g, tau);
  CHECK(check_n_lie(h).passed());
  oracle::Dense gd(g.bracket), hd(h.bracket);
  oracle::each_tuple(4, 3, [&](const oracle::Tuple& t) { CHECK(hd.at(t) == induced(gd, tau, t, 3)); });
  CHECK(h.bracket.at(std::array{0, 2, 3}) == Vec::basis(3));
  CHECK(h.bracket.at(std::array{0, 1, 2}) == Vec::basis(1));
}

TEST_CASE("inducing twice by the same trace gives zero") {
  NPreLieAlgebra p3 = certified(induce(certified(catalog::pl()), catalog::t1()));
  NPreLieAlgebra q = induce(p3, catalog::t1());
  CHECK(q.arity() == 4);
  CHECK(q.product.entries().empty());
}

TEST_CASE("sub-adjacent of the induced algebra is the induced sub-adjacent") {
  NPreLieAlgebra pl = certified(catalog::pl());
  for (Rational a : {Rational(1), Rational(-2, 5)}) {
    NPreLieAlgebra q = certified(induce(pl, catalog::t1(a)));
    NLieAlgebra c = certified(sub_adjacent(pl));
    CHECK(sub_adjacent(q).bracket == induce_nlie(c, catalog::t1(a)).bracket);
  }
}

TEST_CASE("induced pre-representation") {
  NPreLieAlgebra pl = certified(catalog::pl());
  NPreLieRep lr = certified(left_right_mult(pl));
  NPreLieRep ind = induce_rep(lr, catalog::t1());
  CHECK(ind.algebra.verified);
  CHECK(check_pre_rep(ind).passed());
  // the induced multiplication rep is the multiplication rep of the induced algebra
  NPreLieRep direct = left_right_mult(ind.algebra);
  CHECK(ind.l == direct.l);
  // r_tau has no tau(v) term, so it differs from R of the induced algebra by tau(v){x}
  oracle::Dense dr(direct.r), ir(ind.r), p(pl.product);
  oracle::each_tuple(3, 3, [&](const oracle::Tuple& t) {
    Rational tv = catalog::t1().coefficients[static_cast<std::size_t>(t[2])];
    CHECK(oracle::operator-(dr.at(t), ir.at(t)) == oracle::operator*(tv, p.at({t[0], t[1]})));
  });

  NPreLieRep z = certified(zero_pre_rep(pl, 2));
  CHECK(check_pre_rep(induce_rep(z, catalog::t1())).passed());
}

TEST_CASE("preconditions") {
  CHECK_THROWS_AS(induce(catalog::pl(), catalog::t1()), PreconditionError);
  NPreLieAlgebra pl = certified(catalog::pl());
  CHECK_THROWS_AS(induce(pl, Covector(std::vector<Rational>{0, 0, 1})), PreconditionError);
  CHECK_THROWS_AS(induce(pl, Covector::zero(4)), ShapeError);
  CHECK_THROWS_AS(induce_nlie(two_blocks(), Covector::zero(4)), PreconditionError);
  CHECK_THROWS_AS(derivation_induced_criterion(pl, catalog::t1(), Matrix::identity(3)), PreconditionError);
}

TEST_CASE("derivations of PL: vanishing criterion agrees with the direct check") {
  NPreLieAlgebra pl = certified(catalog::pl());
  int derivations = 0, vanishing = 0;
  oracle::each_tuple(4, 3, [&](const oracle::Tuple& t) {
    Matrix d = Matrix::diagonal({Rational(t[0] - 1), Rational(t[1] - 1), Rational(t[2] - 1)});
    if (!check_derivation(pl.product, d).passed()) return;
    ++derivations;
    InducedDerivation res = derivation_induced_criterion(pl, catalog::t1(), d);
    CHECK(res.trace.passed());
    CHECK(res.agree());
    // diag(a, b, 0) is a derivation; the induced one needs a = 0
    CHECK(res.direct.passed() == (t[0] == 1));
    if (res.vanishing.passed()) ++vanishing;
  });
  CHECK(derivations == 16);
  CHECK(vanishing == 4);
}
