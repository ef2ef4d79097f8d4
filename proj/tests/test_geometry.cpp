#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>

#include "nary/catalog.hpp"
#include "nary/errors.hpp"
#include "nary/geometry.hpp"
#include "oracle.hpp"

using namespace nary;

namespace {

template <class T>
T certified(T x) {
  REQUIRE(certify(x).passed());
  return x;
}

Rational form(const BilinearForm& w, const oracle::DVec& x, const oracle::DVec& y) {
  Rational s;
  for (int i = 0; i < w.dim(); ++i)
    for (int j = 0; j < w.dim(); ++j) s += x[static_cast<std::size_t>(i)] * w.at(i, j) * y[static_cast<std::size_t>(j)];
  return s;
}

// omega([x], y) + sum_i (-1)^{n-i} omega(x_i, [x^_i, y]) over every basis tuple
std::set<oracle::Tuple> symplectic_failures(const NLieAlgebra& a, const BilinearForm& w) {
  oracle::Dense br(a.bracket);
  const int d = a.dim(), n = a.arity();
  std::set<oracle::Tuple> bad;
  oracle::each_tuple(d, n + 1, [&](const oracle::Tuple& t) {
    auto u = oracle::units(d, t);
    std::vector<oracle::DVec> x(u.begin(), u.begin() + n);
    Rational s = form(w, br(x), u.back());
    for (int i = 0; i < n; ++i) {
      std::vector<oracle::DVec> rest;
      for (int k = 0; k < n; ++k)
        if (k != i) rest.push_back(x[static_cast<std::size_t>(k)]);
      rest.push_back(u.back());
      s += Rational((n - i - 1) % 2 ? -1 : 1) * form(w, x[static_cast<std::size_t>(i)], br(rest));
    }
    if (s != 0) bad.insert(t);
  });
  return bad;
}

}  // namespace

TEST_CASE("phase space of P3") {
  NPreLieAlgebra p3 = certified(catalog::p3());
  PhaseSpace ps = phase_space(p3);
  CHECK(ps.total.algebra.dim() == 6);
  CHECK(ps.base_dim() == 3);
  Report r = check_phase_space(ps);
  CHECK(r.passed());
  CHECK(perfect(r));
  CHECK(check_n_lie(ps.total.algebra).passed());
  CHECK(symplectic_failures(ps.total.algebra, ps.total.omega).empty());
  CHECK(ps.total.omega.matrix == canonical_form(3).matrix);

  NPreLieAlgebra back = symplectic_to_nprelie(ps.total);
  CHECK(check_nprelie(back).passed());
  CHECK(sub_adjacent(certified(back)).bracket == ps.total.algebra.bracket);
  oracle::each_tuple(3, 3, [&](const oracle::Tuple& t) {
    Vec v = back.product.at(t);
    CHECK(v.slice(0, 3) == p3.product.at(t));
    CHECK(v.slice(3, 6).is_zero());
  });
}

TEST_CASE("symplectic double") {
  NPreLieAlgebra p3 = certified(catalog::p3());
  SymplecticDouble dbl = symplectic_double(p3);
  CHECK(dbl.algebra.dim() == 6);
  CHECK(check_nprelie(dbl.algebra).passed());
  CHECK(sub_adjacent(dbl.algebra).bracket == phase_space(p3).total.algebra.bracket);
  CHECK(dbl.phase.total.algebra.dim() == 12);
  Report r = check_phase_space(dbl.phase);
  CHECK(r.passed());
  CHECK(perfect(r));
}

TEST_CASE("Manin triple from the phase space") {
  NPreLieAlgebra p3 = certified(catalog::p3());
  PhaseSpace ps = phase_space(p3);
  NPreLieAlgebra p = certified(symplectic_to_nprelie(ps.total));
  Report r = check_manin_triple(p, ps.total.omega);
  CHECK(r.passed());
  for (const char* id : {"manin-1", "manin-2", "manin-3", "manin-4", "condmanin-1", "subalgebra-A*", "isotropic-A"})
    CHECK(r.has_family(id));
  CHECK(check_quadratic(p, ps.total.omega).passed());

  // a product that moves A into A* breaks the subalgebra and closed-form families
  TensorBuilder b(6, nprelie_pattern(3));
  for (const auto& [k, v] : p.product.entries()) b.set_canonical(k, v);
  b.set_canonical({0, 1, 2}, Vec::basis(4));
  Report bad = check_manin_triple(NPreLieAlgebra(std::move(b).build()), ps.total.omega);
  CHECK_FALSE(bad.passed("subalgebra-A"));
}

TEST_CASE("symplectic negative control is located") {
  NPreLieAlgebra p3 = certified(catalog::p3());
  PhaseSpace ps = phase_space(p3);
  Matrix m = ps.total.omega.matrix;
  m(1, 3) += 1;  // most single-pair changes stay closed; this one does not
  m(3, 1) -= 1;
  BilinearForm w(m, Symmetry::skew);
  auto want = symplectic_failures(ps.total.algebra, w);
  REQUIRE_FALSE(want.empty());
  CHECK(oracle::tuples(check_symplectic(ps.total.algebra, w, {Exec::exhaustive}), "symplectic") == want);
  CHECK(oracle::tuples(check_symplectic(ps.total.algebra, w), "symplectic") ==
        oracle::canonical_only(want, {{0, 3}}));
  Report degenerate = check_symplectic(ps.total.algebra, BilinearForm(Matrix(6, 6), Symmetry::skew));
  CHECK(degenerate.passed("symplectic"));
  CHECK_FALSE(degenerate.passed("nondegenerate"));
  CHECK_THROWS_AS(symplectic_to_nprelie({ps.total.algebra, w}), PreconditionError);
  CHECK_THROWS_AS(check_symplectic(ps.total.algebra, BilinearForm(Matrix::identity(6), Symmetry::symmetric)),
                  ShapeError);
}

TEST_CASE("A_m for the Levi-Civita 3-Lie algebra") {
  NLieAlgebra s3 = certified(levi_civita(3));
  for (int m : {2, 3, 4}) {
    CAPTURE(m);
    AmBuild am = build_a_m(s3, m);
    CHECK(am.a_m.dim() == 4 * (m - 1));
    CHECK(am.metric.algebra.dim() == 8 * (m - 1));
    CHECK(check_n_lie(am.a_m).passed());
    CHECK(check_derivation(am.a_m.bracket, am.d).passed());
    CHECK(check_n_lie(am.metric.algebra).passed());
    CHECK(check_metric(am.metric.algebra, am.metric.b).passed());
    Report dr = check_b_derivation(am.metric, am.d_tilde);
    CHECK(dr.passed());
    CHECK(dr.has_family("invertible"));
    CHECK(check_symplectic(am.metric.algebra, am.omega).passed());
    CHECK(am.a_m.bracket.entries().empty() == (m < 4));
    // round trip through D = -B^{-1} Omega
    LinearMap d = metric_symplectic_to_derivation(am.metric, am.omega);
    CHECK(d == am.d_tilde);
    CHECK(derivation_to_symplectic(am.metric, d).matrix == am.omega.matrix);
    const int dim = am.metric.algebra.dim();
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j) CHECK(am.metric.b(d.column(i), unit(j)) == am.omega.at(i, j));
  }
  CHECK_THROWS_AS(build_a_m(s3, 1), ShapeError);
  CHECK_THROWS_AS(build_a_m(levi_civita(3), 2), PreconditionError);
}

TEST_CASE("metric and derivation sign conventions") {
  NLieAlgebra s3 = certified(levi_civita(3));
  BilinearForm id(Matrix::identity(4), Symmetry::symmetric);
  CHECK(check_metric(s3, id).passed());
  // B(Dx, y) = omega(x, y) reads D^T B = Omega on form matrices
  AmBuild am = build_a_m(s3, 4);
  LinearMap d = metric_symplectic_to_derivation(am.metric, am.omega);
  CHECK(d.transpose() * am.metric.b.matrix == am.omega.matrix);
  CHECK(d == -1 * (invert(am.metric.b.matrix) * am.omega.matrix));
  BilinearForm bad(Matrix::diagonal({1, 1, 1, 2}), Symmetry::symmetric);
  Report r = check_metric(s3, bad);
  CHECK_FALSE(r.passed());
  CHECK(r.passed("nondegenerate"));
}
