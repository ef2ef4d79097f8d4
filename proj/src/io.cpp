#include "nary/io.hpp"

#include <openssl/evp.h>

#include <cstdio>
#include <fstream>
#include <iomanip>
#include <regex>
#include <set>
#include <sstream>

#include "nary/catalog.hpp"
#include "nary/errors.hpp"

namespace nary::io {

using nlohmann::json;

namespace {

constexpr std::size_t at(int i) { return static_cast<std::size_t>(i); }

const std::vector<std::pair<Kind, std::string>>& kind_names() {
  static const std::vector<std::pair<Kind, std::string>> names{
      {Kind::n_lie, "n_lie"},
      {Kind::n_pre_lie, "n_pre_lie"},
      {Kind::n_l_dendriform, "n_l_dendriform"},
      {Kind::representation, "representation"},
      {Kind::pre_representation, "pre_representation"},
      {Kind::bilinear_form, "bilinear_form"},
      {Kind::linear_map, "linear_map"},
      {Kind::covector, "covector"}};
  return names;
}

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw ParseError(where.empty() ? "/" : where, what);
}

const json& field(const json& j, const std::string& key, const std::string& where) {
  auto it = j.find(key);
  if (it == j.end()) fail(where, "missing key '" + key + "'");
  return *it;
}

int positive(const json& j, const std::string& key, const std::string& where) {
  const json& v = field(j, key, where);
  if (!v.is_number_integer() || v.get<long long>() < 1 || v.get<long long>() > 1000000)
    fail(where + "/" + key, "expected a positive integer");
  return v.get<int>();
}

void allow_keys(const json& j, std::initializer_list<const char*> keys, const std::string& where) {
  std::set<std::string> ok(keys.begin(), keys.end());
  for (auto it = j.begin(); it != j.end(); ++it)
    if (!ok.count(it.key())) fail(where + "/" + it.key(), "unknown key");
}

Rational rational(const json& j, const std::string& where) {
  if (!j.is_string()) fail(where, "rationals are written as strings");
  try {
    return parse_rational(j.get<std::string>());
  } catch (const ParseError& e) {
    fail(where, e.what() + 2);  // drop the empty location prefix
  }
}

json rational_json(const Rational& q) { return nary::to_string(q); }

// ---- tensors ----------------------------------------------------------------

json entries_json(const StructureTensor& t) {
  json out = json::array();
  for (const auto& [key, v] : t.entries()) {
    json args = json::array();
    for (int i : key) args.push_back(i + 1);
    json val = json::object();
    for (const auto& [i, c] : v) val[std::to_string(i + 1)] = rational_json(c);
    out.push_back({{"args", args}, {"value", val}});
  }
  return out;
}

StructureTensor entries_from(const json& j, const std::string& where, int out_dim, std::vector<int> slot_dims,
                             const SkewPattern& pattern) {
  if (!j.is_array()) fail(where, "expected a list of entries");
  std::map<StructureTensor::Key, Vec> entries;
  for (std::size_t e = 0; e < j.size(); ++e) {
    const std::string loc = where + "/" + std::to_string(e);
    const json& ent = j[e];
    if (!ent.is_object()) fail(loc, "expected an object with 'args' and 'value'");
    allow_keys(ent, {"args", "value"}, loc);
    const json& args = field(ent, "args", loc);
    if (!args.is_array() || args.size() != slot_dims.size())
      fail(loc + "/args", "expected " + std::to_string(slot_dims.size()) + " indices");
    StructureTensor::Key key;
    for (std::size_t s = 0; s < args.size(); ++s) {
      const json& a = args[s];
      if (!a.is_number_integer() || a.get<long long>() < 1 || a.get<long long>() > slot_dims[s])
        fail(loc + "/args/" + std::to_string(s), "index out of range 1.." + std::to_string(slot_dims[s]));
      key.push_back(a.get<int>() - 1);
    }
    if (!pattern.is_canonical(key)) fail(loc + "/args", "tuple is not canonical for this kind (alternating slots must increase)");
    if (entries.count(key)) fail(loc + "/args", "duplicate tuple");
    const json& val = field(ent, "value", loc);
    if (!val.is_object() || val.empty()) fail(loc + "/value", "expected a nonempty map index -> rational");
    std::vector<Term> terms;
    for (auto it = val.begin(); it != val.end(); ++it) {
      const std::string vloc = loc + "/value/" + it.key();
      int idx = 0;
      try {
        std::size_t used = 0;
        idx = std::stoi(it.key(), &used);
        if (used != it.key().size() || std::to_string(idx) != it.key()) throw std::invalid_argument("");
      } catch (const std::exception&) {
        fail(vloc, "index is not an integer");
      }
      if (idx < 1 || idx > out_dim) fail(vloc, "index out of range 1.." + std::to_string(out_dim));
      Rational c = rational(*it, vloc);
      if (sgn(c) == 0) fail(vloc, "zero coefficients are not stored");
      terms.emplace_back(idx - 1, c);
    }
    entries.emplace(std::move(key), Vec(std::move(terms)));
  }
  return StructureTensor::from_canonical(out_dim, std::move(slot_dims), pattern, std::move(entries));
}

// ---- matrices ---------------------------------------------------------------

json matrix_json(const Matrix& m) {
  json rows = json::array();
  for (int i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (int j = 0; j < m.cols(); ++j) row.push_back(rational_json(m(i, j)));
    rows.push_back(row);
  }
  return rows;
}

Matrix matrix_from(const json& j, const std::string& where, int rows, int cols) {
  if (!j.is_array() || static_cast<int>(j.size()) != rows) fail(where, "expected " + std::to_string(rows) + " rows");
  Matrix m(rows, cols);
  for (int i = 0; i < rows; ++i) {
    const std::string rloc = where + "/" + std::to_string(i);
    const json& row = j[at(i)];
    if (!row.is_array() || static_cast<int>(row.size()) != cols)
      fail(rloc, "expected " + std::to_string(cols) + " columns");
    for (int k = 0; k < cols; ++k) m(i, k) = rational(row[at(k)], rloc + "/" + std::to_string(k));
  }
  return m;
}

int doc_dim(const Document& d) {
  return std::visit(
      [](const auto& v) -> int {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, NLieRep> || std::is_same_v<T, NPreLieRep>) return v.module_dim();
        else if constexpr (std::is_same_v<T, LinearMap>) return v.rows();
        else return v.dim();
      },
      d.value);
}

void basis_to(json& j, const Document& d) {
  if (d.basis.empty()) {
    json b = json::array();
    for (int i = 1; i <= doc_dim(d); ++i) b.push_back("e" + std::to_string(i));
    j["basis"] = b;
  } else {
    j["basis"] = d.basis;
  }
}

std::vector<std::string> basis_from(const json& j, const std::string& where, int dim) {
  auto it = j.find("basis");
  if (it == j.end()) return {};
  if (!it->is_array() || static_cast<int>(it->size()) != dim) fail(where + "/basis", "expected " + std::to_string(dim) + " names");
  std::vector<std::string> out;
  for (std::size_t i = 0; i < it->size(); ++i) {
    if (!(*it)[i].is_string()) fail(where + "/basis/" + std::to_string(i), "expected a string");
    out.push_back((*it)[i].get<std::string>());
  }
  bool defaults = true;
  for (int i = 0; i < dim; ++i) defaults = defaults && out[at(i)] == "e" + std::to_string(i + 1);
  if (defaults) out.clear();
  return out;
}

}  // namespace

std::string to_string(Kind k) {
  for (const auto& [kk, s] : kind_names())
    if (kk == k) return s;
  return "?";
}

Kind parse_kind(const std::string& s) {
  for (const auto& [k, name] : kind_names())
    if (name == s) return k;
  throw ParseError("/kind", "unknown kind '" + s + "'");
}

Document document(NLieAlgebra a) { return {Kind::n_lie, std::move(a), {}, json::object()}; }
Document document(NPreLieAlgebra p) { return {Kind::n_pre_lie, std::move(p), {}, json::object()}; }
Document document(NLDendriform l) { return {Kind::n_l_dendriform, std::move(l), {}, json::object()}; }
Document document(NLieRep r) { return {Kind::representation, std::move(r), {}, json::object()}; }
Document document(NPreLieRep r) { return {Kind::pre_representation, std::move(r), {}, json::object()}; }
Document document(BilinearForm b) { return {Kind::bilinear_form, std::move(b), {}, json::object()}; }
Document document(LinearMap m) { return {Kind::linear_map, std::move(m), {}, json::object()}; }
Document document(Covector c) { return {Kind::covector, std::move(c), {}, json::object()}; }

json to_json(const Document& d) {
  json j = json::object();
  j["kind"] = to_string(d.kind);
  j["metadata"] = d.metadata.is_null() ? json::object() : d.metadata;
  std::visit(
      [&j](const auto& v) {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, NLieAlgebra>) {
          j["dim"] = v.dim();
          j["arity"] = v.arity();
          j["entries"] = entries_json(v.bracket);
        } else if constexpr (std::is_same_v<T, NPreLieAlgebra>) {
          j["dim"] = v.dim();
          j["arity"] = v.arity();
          j["entries"] = entries_json(v.product);
        } else if constexpr (std::is_same_v<T, NLDendriform>) {
          j["dim"] = v.dim();
          j["arity"] = v.arity();
          j["nw"] = entries_json(v.nw);
          j["ne"] = entries_json(v.ne);
        } else if constexpr (std::is_same_v<T, NLieRep>) {
          j["dim"] = v.module_dim();
          j["arity"] = v.algebra.arity();
          j["algebra"] = to_json(document(v.algebra));
          j["entries"] = entries_json(v.action);
        } else if constexpr (std::is_same_v<T, NPreLieRep>) {
          j["dim"] = v.module_dim();
          j["arity"] = v.algebra.arity();
          j["algebra"] = to_json(document(v.algebra));
          j["l"] = entries_json(v.l);
          j["r"] = entries_json(v.r);
        } else if constexpr (std::is_same_v<T, BilinearForm>) {
          j["dim"] = v.dim();
          j["symmetry"] = nary::to_string(v.symmetry);
          j["matrix"] = matrix_json(v.matrix);
        } else if constexpr (std::is_same_v<T, LinearMap>) {
          j["rows"] = v.rows();
          j["cols"] = v.cols();
          j["matrix"] = matrix_json(v);
        } else {
          j["dim"] = v.dim();
          json c = json::array();
          for (const auto& q : v.coefficients) c.push_back(rational_json(q));
          j["coefficients"] = c;
        }
      },
      d.value);
  if (d.kind != Kind::linear_map) basis_to(j, d);
  return j;
}

Document from_json(const json& j, const std::string& where) {
  if (!j.is_object()) fail(where, "expected an object");
  const json& k = field(j, "kind", where);
  if (!k.is_string()) fail(where + "/kind", "expected a string");
  Document d;
  try {
    d.kind = parse_kind(k.get<std::string>());
  } catch (const ParseError&) {
    fail(where + "/kind", "unknown kind '" + k.get<std::string>() + "'");
  }
  if (auto m = j.find("metadata"); m != j.end()) {
    if (!m->is_object()) fail(where + "/metadata", "expected an object");
    d.metadata = *m;
  }
  auto tensor_dims = [&](int& dim, int& n) {
    dim = positive(j, "dim", where);
    n = positive(j, "arity", where);
    if (n < 2) fail(where + "/arity", "arity must be at least 2");
  };
  int dim = 0, n = 0;
  switch (d.kind) {
    case Kind::n_lie:
      allow_keys(j, {"kind", "metadata", "dim", "arity", "basis", "entries"}, where);
      tensor_dims(dim, n);
      d.value = NLieAlgebra(entries_from(field(j, "entries", where), where + "/entries", dim,
                                         std::vector<int>(at(n), dim), nlie_pattern(n)));
      break;
    case Kind::n_pre_lie:
      allow_keys(j, {"kind", "metadata", "dim", "arity", "basis", "entries"}, where);
      tensor_dims(dim, n);
      d.value = NPreLieAlgebra(entries_from(field(j, "entries", where), where + "/entries", dim,
                                            std::vector<int>(at(n), dim), nprelie_pattern(n)));
      break;
    case Kind::n_l_dendriform:
      allow_keys(j, {"kind", "metadata", "dim", "arity", "basis", "nw", "ne"}, where);
      tensor_dims(dim, n);
      d.value = NLDendriform(
          entries_from(field(j, "nw", where), where + "/nw", dim, std::vector<int>(at(n), dim), nprelie_pattern(n)),
          entries_from(field(j, "ne", where), where + "/ne", dim, std::vector<int>(at(n), dim), ne_pattern(n)));
      break;
    case Kind::representation: {
      allow_keys(j, {"kind", "metadata", "dim", "arity", "basis", "algebra", "entries"}, where);
      tensor_dims(dim, n);
      Document a = from_json(field(j, "algebra", where), where + "/algebra");
      if (a.kind != Kind::n_lie) fail(where + "/algebra", "a representation needs an n_lie algebra");
      auto& alg = std::get<NLieAlgebra>(a.value);
      if (alg.arity() != n) fail(where + "/arity", "does not match the algebra's arity");
      d.value = NLieRep(alg, entries_from(field(j, "entries", where), where + "/entries", dim,
                                          rep_slots(alg.dim(), n, dim), l_pattern(n)));
      break;
    }
    case Kind::pre_representation: {
      allow_keys(j, {"kind", "metadata", "dim", "arity", "basis", "algebra", "l", "r"}, where);
      tensor_dims(dim, n);
      Document a = from_json(field(j, "algebra", where), where + "/algebra");
      if (a.kind != Kind::n_pre_lie) fail(where + "/algebra", "a pre-representation needs an n_pre_lie algebra");
      auto& alg = std::get<NPreLieAlgebra>(a.value);
      if (alg.arity() != n) fail(where + "/arity", "does not match the algebra's arity");
      auto slots = rep_slots(alg.dim(), n, dim);
      d.value = NPreLieRep(alg, entries_from(field(j, "l", where), where + "/l", dim, slots, l_pattern(n)),
                           entries_from(field(j, "r", where), where + "/r", dim, slots, r_pattern(n)));
      break;
    }
    case Kind::bilinear_form: {
      allow_keys(j, {"kind", "metadata", "dim", "basis", "symmetry", "matrix"}, where);
      dim = positive(j, "dim", where);
      const json& s = field(j, "symmetry", where);
      Symmetry sym{};
      try {
        sym = parse_symmetry(s.is_string() ? s.get<std::string>() : "");
      } catch (const std::exception&) {
        fail(where + "/symmetry", "expected 'symmetric' or 'skew'");
      }
      Matrix m = matrix_from(field(j, "matrix", where), where + "/matrix", dim, dim);
      if (!(m.transpose() == (sym == Symmetry::symmetric ? m : -m)))
        fail(where + "/matrix", "matrix does not have the declared symmetry");
      d.value = BilinearForm(std::move(m), sym);
      break;
    }
    case Kind::linear_map: {
      allow_keys(j, {"kind", "metadata", "rows", "cols", "matrix"}, where);
      int r = positive(j, "rows", where), c = positive(j, "cols", where);
      d.value = matrix_from(field(j, "matrix", where), where + "/matrix", r, c);
      break;
    }
    case Kind::covector: {
      allow_keys(j, {"kind", "metadata", "dim", "basis", "coefficients"}, where);
      dim = positive(j, "dim", where);
      const json& c = field(j, "coefficients", where);
      if (!c.is_array() || static_cast<int>(c.size()) != dim) fail(where + "/coefficients", "expected " + std::to_string(dim) + " values");
      std::vector<Rational> v;
      for (int i = 0; i < dim; ++i) v.push_back(rational(c[at(i)], where + "/coefficients/" + std::to_string(i)));
      d.value = Covector(std::move(v));
      break;
    }
  }
  if (d.kind != Kind::linear_map) d.basis = basis_from(j, where, doc_dim(d));
  return d;
}

Document parse(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError("byte " + std::to_string(e.byte), "malformed JSON");
  }
  return from_json(j);
}

Document load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(path, "cannot open file");
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return parse(ss.str());
  } catch (const ParseError& e) {
    throw ParseError(path + ":" + e.location(), std::string(e.what()).substr(e.location().size() + 2));
  }
}

std::string serialize(const Document& d) { return to_json(d).dump(2) + "\n"; }

void save(const Document& d, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path);
  out << serialize(d);
}

std::string sha256_hex(std::string_view data) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr);
  std::ostringstream os;
  for (unsigned i = 0; i < len; ++i) os << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(md[i]);
  return os.str();
}

json report_json(const Report& r) {
  json vs = json::array();
  for (const auto& v : r.violations) {
    json tuple = json::array();
    for (int i : v.tuple) tuple.push_back(i + 1);
    json res = json::object();
    for (const auto& [i, c] : v.residual) res[std::to_string(i + 1)] = rational_json(c);
    vs.push_back({{"identity", v.identity}, {"tuple", tuple}, {"layout", v.layout}, {"residual", res}});
  }
  json counts = json::object();
  for (const auto& f : r.families) counts[f] = r.count(f);
  return {{"check", r.check},
          {"passed", r.passed()},
          {"instances", r.instances},
          {"families", counts},
          {"violations", vs}};
}

std::string render(const Report& r) {
  std::ostringstream os;
  os << r.check << ": " << (r.passed() ? "pass" : "FAIL") << " (" << r.instances << " instances";
  if (!r.passed()) os << ", " << r.violations.size() << " violations";
  os << ")\n";
  for (const auto& f : r.families) os << "  " << f << ": " << r.count(f) << "\n";
  for (const auto& v : r.violations) os << "  " << v.identity << " at " << format_tuple(v) << " -> " << format_vec(v.residual) << "\n";
  return os.str();
}

// ---- catalog ----------------------------------------------------------------

namespace {

Document named(Document d, const std::string& name) {
  d.metadata["catalog"] = name;
  return d;
}

}  // namespace

std::vector<std::string> catalog_names() {
  return {"S3", "S4", "S(n)", "S3.perturbed", "S4.perturbed", "PL", "T1", "T(a)", "P3", "P3(a)", "P3.perturbed",
          "Z(d,n)", "ZP(d,n)", "ZL(d,n)", "Am(S3,m)", "Am(S3,m).B", "Am(S3,m).omega", "Am(S3,m).D"};
}

std::optional<Document> catalog(const std::string& name) {
  static const std::regex lc(R"(S\((\d+)\))"), zero(R"((Z|ZP|ZL)\((\d+),(\d+)\))"), tau(R"(T\(([-0-9/]+)\))"),
      p3a(R"(P3\(([-0-9/]+)\))"), am(R"(Am\((.+),(\d+)\)(\.B|\.omega|\.D)?)");
  std::smatch m;
  try {
    if (name == "S3") return named(document(levi_civita(3)), name);
    if (name == "S4") return named(document(levi_civita(4)), name);
    if (name == "S3.perturbed") return named(document(catalog::levi_civita_perturbed(3)), name);
    if (name == "S4.perturbed") return named(document(catalog::levi_civita_perturbed(4)), name);
    if (name == "PL") return named(document(catalog::pl()), name);
    if (name == "T1") return named(document(catalog::t1()), name);
    if (name == "P3") return named(document(catalog::p3()), name);
    if (name == "P3.perturbed") return named(document(catalog::p3_perturbed()), name);
    if (std::regex_match(name, m, lc)) {
      int n = std::stoi(m[1]);
      if (n < 2 || n > 8) return std::nullopt;
      return named(document(levi_civita(n)), name);
    }
    if (std::regex_match(name, m, zero)) {
      int d = std::stoi(m[2]), n = std::stoi(m[3]);
      if (d < 1 || n < 2 || d > 64 || n > 8) return std::nullopt;
      if (m[1] == "Z") return named(document(zero_nlie(d, n)), name);
      if (m[1] == "ZP") return named(document(zero_nprelie(d, n)), name);
      return named(document(zero_ldend(d, n)), name);
    }
    if (std::regex_match(name, m, tau)) return named(document(catalog::t1(parse_rational(m[1].str()))), name);
    if (std::regex_match(name, m, p3a)) return named(document(catalog::p3(parse_rational(m[1].str()))), name);
    if (std::regex_match(name, m, am)) {
      auto inner = catalog(m[1].str());
      int mm = std::stoi(m[2]);
      if (!inner || inner->kind != Kind::n_lie || mm < 2 || mm > 6) return std::nullopt;
      NLieAlgebra a = std::get<NLieAlgebra>(inner->value);
      if (!certify(a).passed()) return std::nullopt;
      AmBuild b = build_a_m(a, mm);
      const std::string part = m[3].str();
      if (part == ".B") return named(document(b.metric.b), name);
      if (part == ".omega") return named(document(b.omega), name);
      if (part == ".D") return named(document(b.d_tilde), name);
      return named(document(b.metric.algebra), name);
    }
  } catch (const std::exception&) {
    return std::nullopt;
  }
  return std::nullopt;
}

Document resolve(const std::string& ref) {
  static const std::string prefix = "catalog:";
  if (ref.rfind(prefix, 0) == 0) {
    auto d = catalog(ref.substr(prefix.size()));
    if (!d) throw ParseError(ref, "unknown catalog name");
    return *d;
  }
  return load(ref);
}

}  // namespace nary::io
