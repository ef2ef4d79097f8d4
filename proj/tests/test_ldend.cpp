#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <optional>

#include "nary/catalog.hpp"
#include "nary/errors.hpp"
#include "nary/ldendriform.hpp"
#include "oracle.hpp"

using namespace nary;
using oracle::operator+;
using oracle::operator-;
using oracle::operator*;

namespace {

template <class T>
T certified(T x) {
  REQUIRE(certify(x).passed());
  return x;
}

std::vector<Matrix> diagonal_rbs(const NPreLieAlgebra& p) {
  SearchSpace space;
  space.cells = diagonal_cells(p.dim());
  return rb_search(p, space);
}

bool same(const NLDendriform& a, const NLDendriform& b) { return a.nw == b.nw && a.ne == b.ne; }

oracle::DVec dense(const Vec& v, int d) {
  oracle::DVec out(static_cast<std::size_t>(d));
  for (const auto& [i, c] : v) out[static_cast<std::size_t>(i)] = c;
  return out;
}

Rational form(const BilinearForm& b, const oracle::DVec& x, const oracle::DVec& y) {
  Rational s;
  for (int i = 0; i < b.dim(); ++i)
    for (int j = 0; j < b.dim(); ++j) s += x[static_cast<std::size_t>(i)] * b.at(i, j) * y[static_cast<std::size_t>(j)];
  return s;
}

std::vector<oracle::DVec> drop(const std::vector<oracle::DVec>& v, std::size_t i) {
  std::vector<oracle::DVec> out;
  for (std::size_t k = 0; k < v.size(); ++k)
    if (k != i) out.push_back(v[k]);
  return out;
}

// closedness of a symmetric form, written out on dense vectors
bool hessian_oracle(const NPreLieAlgebra& p, const BilinearForm& b) {
  oracle::Dense prod(p.product);
  const int d = p.dim(), n = p.arity();
  auto comm = [&](const std::vector<oracle::DVec>& x) {
    oracle::DVec out(static_cast<std::size_t>(d));
    for (int i = 0; i < n; ++i) {
      auto a = drop(x, static_cast<std::size_t>(i));
      a.push_back(x[static_cast<std::size_t>(i)]);
      out = out + Rational((n - i - 1) % 2 ? -1 : 1) * prod(a);
    }
    return out;
  };
  bool ok = true;
  oracle::each_tuple(d, n + 1, [&](const oracle::Tuple& t) {
    auto u = oracle::units(d, t);
    std::vector<oracle::DVec> x(u.begin(), u.begin() + n);
    const oracle::DVec& w = u.back();
    std::vector<oracle::DVec> xw(u.begin(), u.begin() + (n - 1));
    xw.push_back(w);
    Rational s = form(b, prod(x), w) + form(b, x.back(), comm(xw));
    for (int i = 0; i < n - 1; ++i) {
      std::vector<oracle::DVec> a{w};
      for (auto& y : drop(x, static_cast<std::size_t>(i))) a.push_back(y);
      s -= Rational(i % 2 ? -1 : 1) * form(b, x[static_cast<std::size_t>(i)], prod(a));
    }
    if (s != 0) ok = false;
  });
  return ok;
}

}  // namespace

TEST_CASE("zero structure and the ne = 0 degeneration") {
  for (int n : {2, 3, 4}) CHECK(check_ldend(zero_ldend(3, n)).passed());
  for (const auto& p : {catalog::pl(), catalog::p3(), catalog::p3_perturbed()}) {
    const int n = p.arity();
    NLDendriform l(p.product, StructureTensor(p.dim(), std::vector<int>(static_cast<std::size_t>(n), p.dim()), ne_pattern(n)));
    Report r = check_ldend(l, {Exec::exhaustive});
    Report q = check_nprelie(p, {Exec::exhaustive});
    CHECK(r.passed() == q.passed());
    CHECK(oracle::tuples(r, "identity-1") == oracle::tuples(q, "n-pre-lie-1"));
    CHECK(oracle::tuples(r, "identity-2") == oracle::tuples(q, "n-pre-lie-2"));
    for (const char* id : {"identity-3", "identity-4", "identity-5", "identity-6", "crochet"}) CHECK(r.passed(id));
  }
}

TEST_CASE("Rota-Baxter operators on P3 give L-dendriform structures") {
  NPreLieAlgebra p3 = certified(catalog::p3());
  oracle::Dense prod(p3.product);
  auto rbs = diagonal_rbs(p3);
  REQUIRE(rbs.size() == 11);
  for (const auto& rb : rbs) {
    NLDendriform l = rb_to_ldend(p3, rb);
    Report r = certify(l);
    CHECK(r.passed());
    for (int k = 1; k <= 6; ++k) CHECK(r.has_family("identity-" + std::to_string(k)));
    CHECK(check_ldend(l, {Exec::exhaustive}).passed());
    CHECK(check_nprelie(assoc_prelie(l, Mode::horizontal)).passed());
    CHECK(check_nprelie(assoc_prelie(l, Mode::vertical)).passed());
    CHECK(check_n_lie(assoc_nlie(l)).passed());
    LDendReps reps = ldend_reps(l);
    CHECK(reps.horizontal_report.passed());
    CHECK(reps.vertical_report.passed());
    CHECK(reps.left_report.passed());
    CHECK(reps.rho_report.passed());

    // {x}^h = {Px_1, Px_2, x_3} + {x_1, Px_2, Px_3} - {x_2, Px_1, Px_3}, by hand
    auto pv = [&](int i) { return dense(rb.column(i), 3); };
    oracle::each_tuple(3, 3, [&](const oracle::Tuple& t) {
      auto e = oracle::units(3, t);
      oracle::DVec want = prod({pv(t[0]), pv(t[1]), e[2]}) + prod({e[0], pv(t[1]), pv(t[2])}) -
                          prod({e[1], pv(t[0]), pv(t[2])});
      CHECK(dense(horizontal(l, std::array<VecView, 3>{unit(t[0]), unit(t[1]), unit(t[2])}), 3) == want);
    });

    NPreLieRep lr = certified(left_right_mult(p3));
    DendFromOperator o = o_to_ldend(rb, lr);
    CHECK(same(o.dend, l));
    CHECK(o.morphism.passed("morphism-h"));
    CHECK(o.morphism.passed("morphism-C"));
  }
}

TEST_CASE("compatible structure on the image of an invertible operator") {
  NPreLieAlgebra p3 = certified(catalog::p3());
  NPreLieRep lr = certified(left_right_mult(p3));
  int invertible = 0;
  for (const auto& rb : diagonal_rbs(p3)) {
    DendFromOperator o = o_to_ldend(rb, lr);
    CHECK(o.on_image.has_value() == (determinant(rb) != 0));
    if (!o.on_image) continue;
    ++invertible;
    NLDendriform img = *o.on_image;
    CHECK(certify(img).passed());
    // compatible: the horizontal product is the original one
    CHECK(assoc_prelie(img, Mode::horizontal).product == p3.product);
    // and T carries the structure on V onto it
    oracle::each_tuple(3, 3, [&](const oracle::Tuple& t) {
      std::array<Vec, 3> tu{rb.column(t[0]), rb.column(t[1]), rb.column(t[2])};
      std::array<VecView, 3> tv{tu[0], tu[1], tu[2]};
      std::array<VecView, 3> u{unit(t[0]), unit(t[1]), unit(t[2])};
      CHECK(nw(*o.on_image, tv) == rb.apply(nw(o.dend, u)));
      CHECK(ne(*o.on_image, tv) == rb.apply(ne(o.dend, u)));
    });
  }
  CHECK(invertible > 0);
}

TEST_CASE("the zero operator gives the zero structure") {
  NPreLieAlgebra p3 = certified(catalog::p3());
  NPreLieRep lr = certified(left_right_mult(p3));
  DendFromOperator o = o_to_ldend(Matrix(3, 3), lr);
  CHECK(o.dend.nw.entries().empty());
  CHECK(o.dend.ne.entries().empty());
  CHECK_FALSE(o.on_image);
  CHECK(check_ldend(o.dend).passed());
  CHECK_THROWS_AS(o_to_ldend(Matrix::identity(3), lr), PreconditionError);
  CHECK_THROWS_AS(rb_to_ldend(catalog::p3(), Matrix(3, 3)), PreconditionError);
}

TEST_CASE("pseudo-Hessian forms on P3") {
  NPreLieAlgebra p3 = certified(catalog::p3());
  HessianSolutions sol = solve_pseudo_hessian(p3);
  CHECK(sol.unknowns == 6);
  CHECK(sol.rank == 2);
  CHECK(sol.basis.size() == 4);
  for (const auto& b : sol.basis) {
    CHECK(check_pseudo_hessian(p3, b).passed("closed"));
    CHECK(hessian_oracle(p3, b));
  }
  REQUIRE(sol.nondegenerate);
  std::vector<BilinearForm> all{*sol.nondegenerate};
  all.insert(all.end(), sol.samples.begin(), sol.samples.end());
  for (const auto& b : all) {
    CHECK(check_pseudo_hessian(p3, b).passed());
    HessianDend h = hessian_to_ldend(p3, b);
    CHECK(certify(h.dend).passed());
    CHECK(assoc_prelie(h.dend, Mode::horizontal).product == p3.product);
    CHECK(h.derived.product == assoc_prelie(h.dend, Mode::vertical).product);
  }

  // some diagonal bump of a closed form leaves the solution space
  std::optional<BilinearForm> found;
  for (int i = 0; i < 3 && !found; ++i) {
    Matrix m = sol.nondegenerate->matrix;
    m(i, i) += 1;
    BilinearForm f(m, Symmetry::symmetric);
    if (!hessian_oracle(p3, f)) found = f;
  }
  REQUIRE(found);
  const BilinearForm& bad = *found;
  Report r = check_pseudo_hessian(p3, bad);
  REQUIRE_FALSE(r.passed("closed"));
  Report ex = check_pseudo_hessian(p3, bad, {Exec::exhaustive});
  for (const auto& v : r.violations) {
    bool found = false;
    for (const auto& w : ex.violations) found |= (w.tuple == v.tuple && w.residual == v.residual);
    CHECK(found);
  }
  CHECK_THROWS_AS(check_pseudo_hessian(p3, BilinearForm(Matrix(3, 3), Symmetry::skew)), ShapeError);
  CHECK_THROWS_AS(hessian_to_ldend(p3, BilinearForm(Matrix::identity(3), Symmetry::symmetric)), PreconditionError);
}

TEST_CASE("commuting Rota-Baxter pairs: both routes agree") {
  NLieAlgebra s3 = certified(levi_civita(3));
  SearchSpace space;
  space.cells = diagonal_cells(4);
  auto rbs = rb_search(s3, space);
  REQUIRE(rbs.size() == 33);
  int pairs = 0;
  for (std::size_t i = 0; i < rbs.size(); i += 3)
    for (std::size_t j = 1; j < rbs.size(); j += 4) {
      NLDendriform l = commuting_rb_to_ldend(s3, rbs[i], rbs[j]);
      CHECK(check_ldend(l).passed());
      auto [p, rep] = commuting_rb_nprelie(s3, rbs[i], rbs[j]);
      CHECK(rep.passed());
      CHECK(same(rb_to_ldend(p, rbs[j]), l));
      ++pairs;
    }
  CHECK(pairs == 88);
}

TEST_CASE("a perturbed structure is located") {
  NPreLieAlgebra p3 = certified(catalog::p3());
  NLDendriform l = rb_to_ldend(p3, diagonal_rbs(p3).back());
  TensorBuilder b(3, l.ne.slot_dims(), l.ne.pattern());
  for (const auto& [k, v] : l.ne.entries()) b.set_canonical(k, v);
  b.set_canonical({0, 1, 2}, Vec::basis(0));
  NLDendriform bad(l.nw, std::move(b).build());
  Report par = check_ldend(bad);
  REQUIRE_FALSE(par.passed());
  Report ex = check_ldend(bad, {Exec::exhaustive});
  for (const auto& v : par.violations) {
    bool found = false;
    for (const auto& w : ex.violations)
      found |= (w.identity == v.identity && w.tuple == v.tuple && w.residual == v.residual);
    CHECK(found);
  }
  CHECK(par.violations.size() <= ex.violations.size());
}
