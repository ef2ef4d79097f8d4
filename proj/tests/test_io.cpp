#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <sstream>

#include "nary/catalog.hpp"
#include "nary/errors.hpp"
#include "nary/io.hpp"

using namespace nary;
using nlohmann::json;

namespace {

const char* const kNames[] = {"S3", "S4", "S(5)", "S3.perturbed", "S4.perturbed", "PL", "T1", "T(3/2)", "P3",
                              "P3(-2)", "P3.perturbed", "Z(3,3)", "ZP(3,3)", "ZL(3,3)", "Am(S3,2)",
                              "Am(S3,3).B", "Am(S3,3).omega", "Am(S3,4).D"};

std::string location_of(const std::string& text) {
  try {
    io::parse(text);
  } catch (const ParseError& e) {
    return e.location();
  }
  return "<accepted>";
}

json s3() { return io::to_json(*io::catalog("S3")); }

}  // namespace

TEST_CASE("catalog objects round-trip byte for byte") {
  for (const char* name : kNames) {
    CAPTURE(name);
    auto doc = io::catalog(name);
    REQUIRE(doc);
    std::string text = io::serialize(*doc);
    CHECK(text.back() == '\n');
    io::Document back = io::parse(text);
    CHECK(back.kind == doc->kind);
    CHECK(io::serialize(back) == text);
    CHECK(io::serialize(io::parse(io::serialize(back))) == text);
  }
  CHECK_FALSE(io::catalog("Q7"));
  CHECK_FALSE(io::catalog_names().empty());
}

TEST_CASE("values survive the round trip") {
  auto p3 = std::get<NPreLieAlgebra>(io::parse(io::serialize(*io::catalog("P3"))).value);
  CHECK(p3.product == catalog::p3().product);
  CHECK_FALSE(p3.verified);
  auto s = std::get<NLieAlgebra>(io::resolve("catalog:S3").value);
  CHECK(s.bracket == levi_civita(3).bracket);
  auto t = std::get<Covector>(io::resolve("catalog:T(3/2)").value);
  CHECK(t == catalog::t1(Rational(3, 2)));

  NPreLieAlgebra p = catalog::p3();
  certify(p);
  NPreLieRep lr = left_right_mult(p);
  NLieAlgebra a = levi_civita(3);
  certify(a);
  for (const io::Document& d : {io::document(lr), io::document(adjoint_rep(a)), io::document(zero_ldend(3, 3)),
                                io::document(canonical_form(2)), io::document(Matrix::identity(3))}) {
    std::string text = io::serialize(d);
    CHECK(io::serialize(io::parse(text)) == text);
  }
  auto back = std::get<NPreLieRep>(io::parse(io::serialize(io::document(lr))).value);
  CHECK(back.l == lr.l);
  CHECK(back.r == lr.r);
  CHECK(back.algebra.product == p.product);
}

TEST_CASE("save and load") {
  auto path = std::filesystem::temp_directory_path() / "nary_io_test.json";
  io::Document d = *io::catalog("P3");
  io::save(d, path.string());
  CHECK(io::serialize(io::load(path.string())) == io::serialize(d));
  CHECK(io::serialize(io::resolve(path.string())) == io::serialize(d));
  std::filesystem::remove(path);
  CHECK_THROWS(io::load(path.string()));
}

TEST_CASE("strict reader rejects malformed input with a location") {
  json j = s3();
  j["entries"][0]["args"] = {2, 1, 3};
  CHECK(location_of(j.dump()).find("/entries/0") == 0);

  j = s3();
  j["entries"][1]["value"] = {{"1", "4/6"}};
  CHECK(location_of(j.dump()).find("/entries/1/value") == 0);

  j = s3();
  j["entries"][0]["value"] = {{"1", "0"}};
  CHECK(location_of(j.dump()).find("/entries/0/value") == 0);

  j = s3();
  j["entries"][0]["args"] = {1, 2, 5};
  CHECK(location_of(j.dump()).find("/entries/0") == 0);

  j = s3();
  j["entries"][0]["value"] = {{"9", "1"}};
  CHECK(location_of(j.dump()).find("/entries/0/value") == 0);

  j = s3();
  j["kind"] = "n_jordan";
  CHECK(location_of(j.dump()).find("/kind") == 0);

  j = s3();
  j["colour"] = "blue";
  CHECK(location_of(j.dump()) != "<accepted>");

  j = s3();
  j.erase("dim");
  CHECK(location_of(j.dump()) != "<accepted>");

  json f = io::to_json(io::document(BilinearForm(Matrix::identity(2), Symmetry::symmetric)));
  f["matrix"][0][1] = "1";
  CHECK(location_of(f.dump()) != "<accepted>");

  std::string text = io::serialize(*io::catalog("S3"));
  CHECK(location_of(text.substr(0, text.size() / 2)) != "<accepted>");
  CHECK(location_of("[1, 2") != "<accepted>");
  CHECK(location_of(s3().dump()) == "<accepted>");
}

TEST_CASE("sha256 known vectors") {
  CHECK(io::sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
  CHECK(io::sha256_hex("") == "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
  std::string p3 = io::serialize(*io::catalog("P3"));
  CHECK(io::sha256_hex(p3) == io::sha256_hex(io::serialize(io::parse(p3))));
}

TEST_CASE("reports render one line per violation") {
  NLieAlgebra bad = catalog::levi_civita_perturbed(3);
  Report r = check_n_lie(bad);
  std::string text = io::render(r);
  std::istringstream in(text);
  std::string line;
  std::size_t lines = 0;
  while (std::getline(in, line))
    if (line.find("filippov at (") != std::string::npos) ++lines;
  CHECK(lines == r.violations.size());
  json rj = io::report_json(r);
  CHECK(rj["passed"] == false);
  CHECK(rj["violations"].size() == r.violations.size());
  // tuples are written 1-based
  CHECK(rj["violations"][0]["tuple"][0].get<int>() == r.violations[0].tuple[0] + 1);
  CHECK(io::report_json(check_n_lie(levi_civita(3)))["passed"] == true);
}
