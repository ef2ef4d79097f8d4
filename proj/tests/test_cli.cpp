#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>
#include <string>

#ifndef NARY_CLI
#error "NARY_CLI must name the command-line binary"
#endif

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct Run {
  int status;
  std::string out;
};

Run run(const std::string& args) {
  std::string cmd = std::string(NARY_CLI) + " " + args + " 2>/dev/null";
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p);
  std::string out;
  std::array<char, 4096> buf{};
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) out.append(buf.data(), n);
  int st = pclose(p);
  return {WIFEXITED(st) ? WEXITSTATUS(st) : -1, out};
}

int status(const std::string& args) { return run(args).status; }

struct Scratch {
  fs::path dir;
  Scratch() : dir(fs::temp_directory_path() / ("nary_cli_" + std::to_string(::getpid()))) { fs::create_directories(dir); }
  ~Scratch() { fs::remove_all(dir); }
  std::string operator()(const std::string& name) const { return "'" + (dir / name).string() + "'"; }
};

json read(const std::string& quoted) {
  std::ifstream in(quoted.substr(1, quoted.size() - 2));
  return json::parse(in);
}

void write(const std::string& quoted, const json& j) {
  std::ofstream(quoted.substr(1, quoted.size() - 2)) << j.dump(2) << "\n";
}

}  // namespace

TEST_CASE("check exit codes") {
  CHECK(status("check catalog:S3") == 0);
  CHECK(status("check catalog:S4") == 0);
  CHECK(status("check catalog:S3.perturbed") == 1);
  CHECK(status("check catalog:P3") == 0);
  CHECK(status("check catalog:P3.perturbed") == 1);
  CHECK(status("check catalog:T1 catalog:PL") == 0);
  CHECK(status("check catalog:NOPE") == 2);
  CHECK(status("check /nonexistent/file.json") == 2);
  CHECK(status("frobnicate") == 2);
  Scratch tmp;
  std::ofstream(tmp.dir / "broken.json") << "{\"kind\": \"n_lie\", ";
  CHECK(status("check " + tmp("broken.json")) == 2);

  Run r = run("check catalog:S3.perturbed --json");
  json j = json::parse(r.out);
  CHECK(j["passed"] == false);
  CHECK(j["violations"].size() == 6);
}

TEST_CASE("derive induce reproduces P3") {
  Scratch tmp;
  REQUIRE(status("derive induce catalog:PL catalog:T1 -o " + tmp("p3.json")) == 0);
  json got = read(tmp("p3.json"));
  json want = json::parse(run("catalog P3").out);
  CHECK(got["entries"] == want["entries"]);
  CHECK(got["arity"] == 3);
  CHECK(got["metadata"]["provenance"]["construction"] == "induce");
  CHECK(got["metadata"]["provenance"]["inputs"].size() == 2);
  CHECK(got["metadata"]["provenance"]["inputs"][0]["sha256"].get<std::string>().size() == 64);
  CHECK(status("check " + tmp("p3.json")) == 0);

  // deterministic output
  CHECK(run("derive induce catalog:PL catalog:T1").out == run("derive induce catalog:PL catalog:T1").out);
  // inducing twice is zero
  Run twice = run("derive induce " + tmp("p3.json") + " catalog:T1");
  CHECK(json::parse(twice.out)["entries"].empty());
}

TEST_CASE("zero structures") {
  CHECK(json::parse(run("derive sub-adjacent catalog:'Z(3,3)'").out)["entries"].empty());
  CHECK(json::parse(run("catalog 'Z(4,3)'").out)["entries"].empty());
  CHECK(status("check catalog:'ZL(3,3)'") == 0);
}

TEST_CASE("search-rb") {
  Run all = run("search-rb catalog:'Z(2,3)' --support all");
  REQUIRE(all.status == 0);
  json j = json::parse(all.out);
  CHECK(j["count"] == 81);  // every map on an abelian algebra
  CHECK(json::parse(run("search-rb catalog:S3").out)["count"] == 33);
  CHECK(json::parse(run("search-rb catalog:P3").out)["count"] == 11);
  CHECK(status("search-rb catalog:S3 --support all") == 2);
  CHECK(status("search-rb catalog:P3.perturbed") == 1);
}

TEST_CASE("forced derivation is recorded") {
  CHECK(status("derive phase-space catalog:P3.perturbed") == 1);
  Run forced = run("derive sub-adjacent catalog:P3.perturbed --force");
  REQUIRE(forced.status == 0);
  CHECK(json::parse(forced.out)["metadata"]["provenance"]["forced"] == true);
  json ok = json::parse(run("derive sub-adjacent catalog:P3").out);
  CHECK(ok["metadata"]["provenance"]["forced"] == false);
}

TEST_CASE("every derived object rechecks") {
  Scratch tmp;
  auto derive = [&](const std::string& args, const std::string& out) {
    CAPTURE(args);
    REQUIRE(status("derive " + args + " -o " + tmp(out)) == 0);
  };
  auto recheck = [&](const std::string& file, const std::string& context = "") {
    CAPTURE(file);
    CHECK(status("check " + tmp(file) + (context.empty() ? "" : " " + context)) == 0);
  };

  // Rota-Baxter operators from the search
  json s3ops = json::parse(run("search-rb catalog:S3").out)["operators"];
  json p3ops = json::parse(run("search-rb catalog:P3").out)["operators"];
  write(tmp("s3a.json"), s3ops[3]);
  write(tmp("s3b.json"), s3ops[7]);
  write(tmp("p3rb.json"), p3ops[p3ops.size() - 1]);
  recheck("s3a.json", "catalog:S3");
  recheck("p3rb.json", "catalog:P3");

  derive("sub-adjacent catalog:P3", "c3.json");
  derive("adjoint catalog:S3", "ad.json");
  derive("semidirect " + tmp("ad.json"), "sd.json");
  derive("dual-rep " + tmp("ad.json"), "coad.json");
  derive("adjoint catalog:P3", "lr.json");
  derive("rho-tilde " + tmp("lr.json"), "rt.json");
  derive("dual-rep " + tmp("lr.json"), "dlr.json");
  derive("semidirect " + tmp("dlr.json"), "sdp.json");
  derive("phase-space catalog:P3", "ps.json");
  derive("symplectic-double catalog:P3", "dbl.json");
  derive("o-to-nprelie " + tmp("s3a.json") + " " + tmp("ad.json"), "onp.json");
  derive("rb-to-ldend catalog:P3 " + tmp("p3rb.json"), "ld.json");
  derive("o-to-ldend " + tmp("p3rb.json") + " " + tmp("lr.json"), "old.json");
  derive("assoc-horizontal " + tmp("ld.json"), "h.json");
  derive("assoc-vertical " + tmp("ld.json"), "v.json");
  derive("assoc-nlie " + tmp("ld.json"), "c.json");
  derive("commuting-rb-nprelie catalog:S3 " + tmp("s3a.json") + " " + tmp("s3b.json"), "crp.json");
  derive("commuting-rb-to-ldend catalog:S3 " + tmp("s3a.json") + " " + tmp("s3b.json"), "crl.json");
  derive("solve-hessian catalog:P3", "hb.json");
  derive("hessian-to-ldend catalog:P3 " + tmp("hb.json"), "hl.json");
  derive("hessian-derived catalog:P3 " + tmp("hb.json"), "hd.json");
  derive("build-a-m catalog:S3 3", "am.json");

  for (const char* f : {"c3.json", "ad.json", "sd.json", "coad.json", "lr.json", "rt.json", "dlr.json", "sdp.json",
                        "ps.json", "dbl.json", "onp.json", "ld.json", "old.json", "h.json", "v.json", "c.json",
                        "crp.json", "crl.json", "hl.json", "hd.json", "am.json"})
    recheck(f);
  recheck("hb.json", "catalog:P3");
  CHECK(read(tmp("ld.json"))["nw"] == read(tmp("old.json"))["nw"]);
  CHECK(read(tmp("ld.json"))["ne"] == read(tmp("old.json"))["ne"]);
  derive("assoc-horizontal " + tmp("hl.json"), "hh.json");
  CHECK(read(tmp("hh.json"))["entries"] == json::parse(run("catalog P3").out)["entries"]);
  CHECK(read(tmp("ps.json"))["dim"] == 6);
  CHECK(read(tmp("dbl.json"))["dim"] == 12);

  // the identity is not an O-operator for P3's adjoint pair
  write(tmp("id.json"), json::parse(run("search-rb catalog:'Z(3,3)' --support diag --entries 1").out)["operators"][0]);
  CHECK(status("derive o-to-ldend " + tmp("id.json") + " " + tmp("lr.json")) == 1);
}
