// nary: check, derive, search and list exact n-ary algebra structures.
//
// exit codes: 0 pass, 1 identity violation or failed precondition, 2 usage/parse error

#include <CLI11.hpp>

#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>

#include "nary/errors.hpp"
#include "nary/io.hpp"
#include "nary/trace.hpp"

using namespace nary;
using nlohmann::json;

namespace {

struct UsageError : Error {
  using Error::Error;
};

struct Input {
  std::string ref;
  io::Document doc;
  std::string sha;
};

Input load_input(const std::string& ref) {
  io::Document d = io::resolve(ref);
  return {ref, d, io::sha256_hex(io::serialize(d))};
}

template <class T>
T& as(Input& in, const char* role) {
  if (auto* p = std::get_if<T>(&in.doc.value)) return *p;
  throw UsageError(std::string(role) + ": " + in.ref + " has kind " + io::to_string(in.doc.kind));
}

Report certify_doc(io::Document& d) {
  return std::visit(
      [](auto& v) -> Report {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, NLieAlgebra> || std::is_same_v<T, NPreLieAlgebra> ||
                      std::is_same_v<T, NLDendriform>) {
          return certify(v);
        } else if constexpr (std::is_same_v<T, NLieRep> || std::is_same_v<T, NPreLieRep>) {
          Report alg = certify(v.algebra);
          if (!alg.passed()) return alg;
          return certify(v);
        } else {
          Report r;
          r.check = "none";
          return r;
        }
      },
      d.value);
}

void force_verified(io::Document& d) {
  std::visit(
      [](auto& v) {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, NLieAlgebra> || std::is_same_v<T, NPreLieAlgebra> ||
                      std::is_same_v<T, NLDendriform>) {
          v.verified = true;
        } else if constexpr (std::is_same_v<T, NLieRep> || std::is_same_v<T, NPreLieRep>) {
          v.algebra.verified = true;
          v.verified = true;
        }
      },
      d.value);
}

// ---- check ------------------------------------------------------------------

Report check_doc(Input& in, Input* ctx) {
  io::Document& d = in.doc;
  switch (d.kind) {
    case io::Kind::n_lie:
      return check_n_lie(std::get<NLieAlgebra>(d.value));
    case io::Kind::n_pre_lie:
      return check_nprelie(std::get<NPreLieAlgebra>(d.value));
    case io::Kind::n_l_dendriform:
      return check_ldend(std::get<NLDendriform>(d.value));
    case io::Kind::representation:
    case io::Kind::pre_representation:
      return certify_doc(d);
    default:
      break;
  }
  if (!ctx) throw UsageError("checking a " + io::to_string(d.kind) + " needs a second argument: the algebra it lives on");
  Report alg = certify_doc(ctx->doc);
  if (!alg.passed()) {
    alg.check = "algebra " + alg.check;
    return alg;
  }
  if (auto* b = std::get_if<BilinearForm>(&d.value)) {
    if (auto* a = std::get_if<NLieAlgebra>(&ctx->doc.value))
      return b->symmetry == Symmetry::skew ? check_symplectic(*a, *b) : check_metric(*a, *b);
    auto& p = as<NPreLieAlgebra>(*ctx, "algebra");
    return b->symmetry == Symmetry::symmetric ? check_pseudo_hessian(p, *b) : check_quadratic(p, *b);
  }
  if (auto* t = std::get_if<LinearMap>(&d.value)) {
    if (auto* a = std::get_if<NLieAlgebra>(&ctx->doc.value)) {
      NLieRep adj = adjoint_rep(*a);
      return check_o_operator_nlie(*t, adj);
    }
    if (auto* p = std::get_if<NPreLieAlgebra>(&ctx->doc.value)) return check_o_operator_nprelie(*t, left_right_mult(*p));
    if (auto* r = std::get_if<NLieRep>(&ctx->doc.value)) return check_o_operator_nlie(*t, *r);
    return check_o_operator_nprelie(*t, as<NPreLieRep>(*ctx, "representation"));
  }
  auto& tau = std::get<Covector>(d.value);
  if (auto* a = std::get_if<NLieAlgebra>(&ctx->doc.value)) return check_trace(a->bracket, tau);
  return check_trace(as<NPreLieAlgebra>(*ctx, "algebra").product, tau);
}

// ---- derive -----------------------------------------------------------------

using Output = std::variant<io::Document, Report>;
struct Construction {
  std::string usage;
  std::size_t inputs;  // catalog/file inputs; anything after is a plain argument
  std::function<Output(std::vector<Input>&, const std::vector<std::string>&)> run;
};

int int_arg(const std::vector<std::string>& extra, std::size_t i, const char* what) {
  if (i >= extra.size()) throw UsageError(std::string("missing ") + what);
  try {
    return std::stoi(extra[i]);
  } catch (const std::exception&) {
    throw UsageError(std::string("bad ") + what + ": " + extra[i]);
  }
}

const std::map<std::string, Construction>& constructions() {
  using V = std::vector<Input>;
  using E = std::vector<std::string>;
  static const std::map<std::string, Construction> table{
      {"sub-adjacent", {"<n-pre-Lie>", 1, [](V& in, const E&) -> Output {
                          if (auto* a = std::get_if<NLieAlgebra>(&in[0].doc.value)) {
                            // an alternating bracket read as a product; it must pass the n-pre-Lie check itself
                            const int n = a->arity();
                            TensorBuilder b(a->dim(), std::vector<int>(static_cast<std::size_t>(n), a->dim()),
                                            nprelie_pattern(n));
                            for (const auto& [k, v] : a->bracket.entries()) b.add(k, v);
                            NPreLieAlgebra p(std::move(b).build());
                            require(certify(p).passed(), "sub-adjacent: the bracket is not an n-pre-Lie product");
                            return io::document(sub_adjacent(p));
                          }
                          return io::document(sub_adjacent(as<NPreLieAlgebra>(in[0], "algebra")));
                        }}},
      {"adjoint", {"<n-Lie | n-pre-Lie>", 1, [](V& in, const E&) -> Output {
                     if (auto* a = std::get_if<NLieAlgebra>(&in[0].doc.value)) return io::document(adjoint_rep(*a));
                     return io::document(left_right_mult(as<NPreLieAlgebra>(in[0], "algebra")));
                   }}},
      {"semidirect", {"<representation | pre_representation>", 1, [](V& in, const E&) -> Output {
                        if (auto* r = std::get_if<NLieRep>(&in[0].doc.value)) return io::document(semidirect_nlie(*r));
                        return io::document(semidirect_nprelie(as<NPreLieRep>(in[0], "pre-representation")));
                      }}},
      {"dual-rep", {"<representation | pre_representation>", 1, [](V& in, const E&) -> Output {
                      if (auto* r = std::get_if<NLieRep>(&in[0].doc.value)) return io::document(dual_rep(*r));
                      return io::document(dual_pre_rep(as<NPreLieRep>(in[0], "pre-representation")));
                    }}},
      {"rho-tilde", {"<pre_representation>", 1, [](V& in, const E&) -> Output {
                       return io::document(rho_tilde(as<NPreLieRep>(in[0], "pre-representation")));
                     }}},
      {"induce", {"<n-pre-Lie | n-Lie> <covector>", 2, [](V& in, const E&) -> Output {
                    auto& tau = as<Covector>(in[1], "trace");
                    if (auto* a = std::get_if<NLieAlgebra>(&in[0].doc.value)) {
                      require(check_trace(a->bracket, tau).passed(), "induce: the covector is not a trace");
                      return io::document(induce_nlie(*a, tau));
                    }
                    return io::document(induce(as<NPreLieAlgebra>(in[0], "algebra"), tau));
                  }}},
      {"o-to-nprelie", {"<linear_map> <representation>", 2, [](V& in, const E&) -> Output {
                          return io::document(o_to_nprelie(as<LinearMap>(in[0], "operator"),
                                                           as<NLieRep>(in[1], "representation")).algebra);
                        }}},
      {"o-to-ldend", {"<linear_map> <pre_representation>", 2, [](V& in, const E&) -> Output {
                        return io::document(o_to_ldend(as<LinearMap>(in[0], "operator"),
                                                       as<NPreLieRep>(in[1], "pre-representation")).dend);
                      }}},
      {"rb-to-ldend", {"<n-pre-Lie> <linear_map>", 2, [](V& in, const E&) -> Output {
                         return io::document(rb_to_ldend(as<NPreLieAlgebra>(in[0], "algebra"),
                                                         as<LinearMap>(in[1], "operator")));
                       }}},
      {"commuting-rb-nprelie", {"<n-Lie> <P1> <P2>", 3, [](V& in, const E&) -> Output {
                                  auto [p, rep] = commuting_rb_nprelie(as<NLieAlgebra>(in[0], "algebra"),
                                                                       as<LinearMap>(in[1], "P1"), as<LinearMap>(in[2], "P2"));
                                  io::Document d = io::document(std::move(p));
                                  d.metadata["p2_rota_baxter"] = io::report_json(rep);
                                  return d;
                                }}},
      {"commuting-rb-to-ldend", {"<n-Lie> <P1> <P2>", 3, [](V& in, const E&) -> Output {
                                   return io::document(commuting_rb_to_ldend(as<NLieAlgebra>(in[0], "algebra"),
                                                                             as<LinearMap>(in[1], "P1"),
                                                                             as<LinearMap>(in[2], "P2")));
                                 }}},
      {"assoc-horizontal", {"<n-L-dendriform>", 1, [](V& in, const E&) -> Output {
                              return io::document(assoc_prelie(as<NLDendriform>(in[0], "algebra"), Mode::horizontal));
                            }}},
      {"assoc-vertical", {"<n-L-dendriform>", 1, [](V& in, const E&) -> Output {
                            return io::document(assoc_prelie(as<NLDendriform>(in[0], "algebra"), Mode::vertical));
                          }}},
      {"assoc-nlie", {"<n-L-dendriform>", 1, [](V& in, const E&) -> Output {
                        return io::document(assoc_nlie(as<NLDendriform>(in[0], "algebra")));
                      }}},
      {"solve-hessian", {"<n-pre-Lie>", 1, [](V& in, const E&) -> Output {
                           auto& p = as<NPreLieAlgebra>(in[0], "algebra");
                           HessianSolutions s = solve_pseudo_hessian(p, 0);
                           if (!s.nondegenerate) {
                             Report r;
                             r.check = "pseudo-Hessian solve";
                             r.add_flag("nondegenerate-solution", Vec::basis(0));
                             return r;
                           }
                           io::Document d = io::document(*s.nondegenerate);
                           d.metadata["solution_space_dim"] = s.basis.size();
                           d.metadata["system_rank"] = s.rank;
                           d.metadata["unknowns"] = s.unknowns;
                           return d;
                         }}},
      {"hessian-to-ldend", {"<n-pre-Lie> <bilinear_form>", 2, [](V& in, const E&) -> Output {
                              return io::document(hessian_to_ldend(as<NPreLieAlgebra>(in[0], "algebra"),
                                                                   as<BilinearForm>(in[1], "form")).dend);
                            }}},
      {"hessian-derived", {"<n-pre-Lie> <bilinear_form>", 2, [](V& in, const E&) -> Output {
                             return io::document(hessian_to_ldend(as<NPreLieAlgebra>(in[0], "algebra"),
                                                                  as<BilinearForm>(in[1], "form")).derived);
                           }}},
      {"phase-space", {"<n-pre-Lie>", 1, [](V& in, const E&) -> Output {
                         PhaseSpace ps = phase_space(as<NPreLieAlgebra>(in[0], "algebra"));
                         io::Document d = io::document(ps.total.algebra);
                         d.metadata["omega"] = io::to_json(io::document(ps.total.omega));
                         d.metadata["base_dim"] = ps.base_dim();
                         return d;
                       }}},
      {"symplectic-double", {"<n-pre-Lie>", 1, [](V& in, const E&) -> Output {
                               SymplecticDouble sd = symplectic_double(as<NPreLieAlgebra>(in[0], "algebra"));
                               io::Document d = io::document(sd.phase.total.algebra);
                               d.metadata["omega"] = io::to_json(io::document(sd.phase.total.omega));
                               d.metadata["base_dim"] = sd.phase.base_dim();
                               return d;
                             }}},
      {"symplectic-to-nprelie", {"<n-Lie> <bilinear_form>", 2, [](V& in, const E&) -> Output {
                                   auto& a = as<NLieAlgebra>(in[0], "algebra");
                                   auto& w = as<BilinearForm>(in[1], "form");
                                   require(check_symplectic(a, w).passed(), "symplectic-to-nprelie: the form is not symplectic");
                                   return io::document(symplectic_to_nprelie({a, w}));
                                 }}},
      {"manin-check", {"<n-pre-Lie> <bilinear_form>", 2, [](V& in, const E&) -> Output {
                         return check_manin_triple(as<NPreLieAlgebra>(in[0], "algebra"), as<BilinearForm>(in[1], "form"));
                       }}},
      {"build-a-m", {"<n-Lie> <m>", 1, [](V& in, const E& extra) -> Output {
                       AmBuild b = build_a_m(as<NLieAlgebra>(in[0], "algebra"), int_arg(extra, 0, "m"));
                       io::Document d = io::document(b.metric.algebra);
                       d.metadata["B"] = io::to_json(io::document(b.metric.b));
                       d.metadata["omega"] = io::to_json(io::document(b.omega));
                       d.metadata["D"] = io::to_json(io::document(b.d_tilde));
                       return d;
                     }}},
      {"derivation", {"<n-Lie> <metric> <symplectic>", 3, [](V& in, const E&) -> Output {
                        MetricNLie m{as<NLieAlgebra>(in[0], "algebra"), as<BilinearForm>(in[1], "metric")};
                        require(check_metric(m.algebra, m.b).passed(), "derivation: B is not a metric");
                        auto& w = as<BilinearForm>(in[2], "form");
                        require(check_symplectic(m.algebra, w).passed(), "derivation: omega is not symplectic");
                        return io::document(metric_symplectic_to_derivation(m, w));
                      }}},
  };
  return table;
}

void emit(const std::string& text, const std::string& out) {
  if (out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(out, std::ios::binary);
  if (!f) throw UsageError("cannot write " + out);
  f << text;
}

std::vector<Rational> parse_entries(const std::string& s) {
  std::vector<Rational> out;
  std::stringstream ss(s);
  std::string part;
  while (std::getline(ss, part, ',')) out.push_back(parse_rational(part, false));
  if (out.empty()) throw UsageError("--entries needs at least one value");
  return out;
}

std::vector<std::pair<int, int>> parse_support(const std::string& s, int dim) {
  if (s == "diag") return diagonal_cells(dim);
  if (s == "all") return all_cells(dim);
  std::vector<std::pair<int, int>> out;
  std::stringstream ss(s);
  std::string part;
  while (std::getline(ss, part, ',')) {
    auto colon = part.find(':');
    if (colon == std::string::npos) throw UsageError("--support cells are written row:col");
    int r = std::stoi(part.substr(0, colon)), c = std::stoi(part.substr(colon + 1));
    if (r < 1 || c < 1 || r > dim || c > dim) throw UsageError("--support cell out of range: " + part);
    out.emplace_back(r - 1, c - 1);
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact checks and constructions for n-Lie, n-pre-Lie and n-L-dendriform algebras"};
  app.require_subcommand(1);
  bool as_json = false;
  std::string out;

  auto* check = app.add_subcommand("check", "run the checker for a structure's kind");
  std::string target, context, identity;
  check->add_option("file", target, "file path or catalog:NAME")->required();
  check->add_option("context", context, "algebra (or representation) a form, map or covector lives on");
  check->add_option("--identity", identity, "report only this identity family");
  check->add_flag("--json", as_json, "machine-readable report");

  auto* cat = app.add_subcommand("catalog", "list built-in objects, or emit one");
  std::string name;
  cat->add_option("name", name);
  cat->add_option("-o", out, "output file");

  auto* derive = app.add_subcommand("derive", "apply a construction");
  std::string construction;
  std::vector<std::string> inputs;
  bool force = false;
  derive->add_option("construction", construction)->required();
  derive->add_option("inputs", inputs);
  derive->add_option("-o", out, "output file");
  derive->add_flag("--force", force, "skip input certification (recorded in metadata)");
  derive->add_flag("--json", as_json, "machine-readable report for report-valued constructions");

  auto* search = app.add_subcommand("search-rb", "exhaustive search for Rota-Baxter operators of weight zero");
  std::string entries = "-1,0,1", support = "diag";
  search->add_option("file", target)->required();
  search->add_option("--entries", entries, "comma-separated candidate values");
  search->add_option("--support", support, "diag, all, or row:col cells (1-based)");
  search->add_option("-o", out, "output file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (*cat) {
      if (name.empty()) {
        for (const auto& n : io::catalog_names()) std::cout << n << "\n";
        return 0;
      }
      auto d = io::catalog(name);
      if (!d) throw UsageError("unknown catalog name '" + name + "'");
      emit(io::serialize(*d), out);
      return 0;
    }

    if (*check) {
      Input in = load_input(target);
      std::optional<Input> ctx;
      if (!context.empty()) ctx = load_input(context);
      Report r = check_doc(in, ctx ? &*ctx : nullptr);
      if (!identity.empty()) {
        if (!r.has_family(identity)) throw UsageError("no identity '" + identity + "' in check " + r.check);
        r = r.only(identity);
      }
      if (as_json) std::cout << io::report_json(r).dump(2) << "\n";
      else std::cout << io::render(r);
      return r.passed() ? 0 : 1;
    }

    if (*search) {
      Input in = load_input(target);
      int dim = 0;
      if (auto* a = std::get_if<NLieAlgebra>(&in.doc.value)) dim = a->dim();
      else dim = as<NPreLieAlgebra>(in, "search-rb").dim();
      SearchSpace space;
      space.entries = parse_entries(entries);
      space.cells = parse_support(support, dim);
      search_size(space);  // throws on an oversize space before any work
      if (Report r = certify_doc(in.doc); !r.passed()) {
        std::cerr << "input " << in.ref << " fails its own checks:\n" << io::render(r);
        return 1;
      }
      std::vector<LinearMap> found;
      std::function<Report(const LinearMap&)> verify;
      if (auto* a = std::get_if<NLieAlgebra>(&in.doc.value)) {
        found = rb_search(*a, space);
        NLieRep adj = adjoint_rep(*a);
        verify = [adj](const LinearMap& t) { return check_o_operator_nlie(t, adj); };
      } else {
        auto& p = std::get<NPreLieAlgebra>(in.doc.value);
        found = rb_search(p, space);
        NPreLieRep lr = left_right_mult(p);
        verify = [lr](const LinearMap& t) { return check_o_operator_nprelie(t, lr); };
      }
      json ops = json::array();
      for (const auto& t : found) {
        io::Document d = io::document(t);
        d.metadata["report"] = io::report_json(verify(t));
        ops.push_back(io::to_json(d));
      }
      json res{{"algebra", in.ref}, {"algebra_sha256", in.sha}, {"entries", entries}, {"support", support},
               {"count", found.size()}, {"operators", ops}};
      emit(res.dump(2) + "\n", out);
      return 0;
    }

    // derive
    const auto& table = constructions();
    auto it = table.find(construction);
    if (it == table.end()) {
      std::string known;
      for (const auto& [k, c] : table) known += "\n  " + k + " " + c.usage;
      throw UsageError("unknown construction '" + construction + "'; known:" + known);
    }
    const Construction& c = it->second;
    if (inputs.size() < c.inputs) throw UsageError("usage: derive " + construction + " " + c.usage);
    std::vector<Input> in;
    for (std::size_t i = 0; i < c.inputs; ++i) in.push_back(load_input(inputs[i]));
    std::vector<std::string> extra(inputs.begin() + static_cast<std::ptrdiff_t>(c.inputs), inputs.end());
    for (auto& i : in) {
      if (force) {
        force_verified(i.doc);
        continue;
      }
      Report r = certify_doc(i.doc);
      if (!r.passed()) {
        std::cerr << "input " << i.ref << " fails its own checks:\n" << io::render(r);
        return 1;
      }
    }
    Output res = c.run(in, extra);
    if (auto* r = std::get_if<Report>(&res)) {
      if (as_json) emit(io::report_json(*r).dump(2) + "\n", out);
      else emit(io::render(*r), out);
      return r->passed() ? 0 : 1;
    }
    io::Document d = std::get<io::Document>(std::move(res));
    json prov{{"construction", construction}, {"forced", force}, {"inputs", json::array()}};
    for (const auto& i : in) prov["inputs"].push_back({{"ref", i.ref}, {"sha256", i.sha}});
    if (!extra.empty()) prov["arguments"] = extra;
    d.metadata["provenance"] = prov;
    if (force) std::cerr << "warning: inputs were not certified (--force)\n";
    emit(io::serialize(d), out);
    return 0;
  } catch (const PreconditionError& e) {
    std::cerr << "precondition failed: " << e.what() << "\n";
    return 1;
  } catch (const ParseError& e) {
    std::cerr << "parse error at " << e.what() << "\n";
    return 2;
  } catch (const SearchCapError& e) {
    std::cerr << "search space too large: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
