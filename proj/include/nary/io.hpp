#pragma once

#include <json.hpp>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "nary/ldendriform.hpp"

namespace nary::io {

enum class Kind {
  n_lie,
  n_pre_lie,
  n_l_dendriform,
  representation,
  pre_representation,
  bilinear_form,
  linear_map,
  covector
};
std::string to_string(Kind k);
Kind parse_kind(const std::string& s);

using Value = std::variant<NLieAlgebra, NPreLieAlgebra, NLDendriform, NLieRep, NPreLieRep, BilinearForm, LinearMap, Covector>;

/// One interchange file. Loaded structures are never marked verified.
struct Document {
  Kind kind = Kind::n_lie;
  Value value;
  std::vector<std::string> basis;  // empty: e1..ed
  nlohmann::json metadata = nlohmann::json::object();
};

Document document(NLieAlgebra a);
Document document(NPreLieAlgebra p);
Document document(NLDendriform l);
Document document(NLieRep r);
Document document(NPreLieRep r);
Document document(BilinearForm b);
Document document(LinearMap m);
Document document(Covector c);

/// Strict reader: canonical tuples, reduced nonzero rationals, indices in range,
/// no unknown keys. Errors are ParseError with a JSON-pointer location.
Document parse(std::string_view text);
Document from_json(const nlohmann::json& j, const std::string& where = "");
Document load(const std::string& path);

/// Canonical text: sorted keys, entries in lexicographic tuple order, trailing newline.
nlohmann::json to_json(const Document& d);
std::string serialize(const Document& d);
void save(const Document& d, const std::string& path);

std::string sha256_hex(std::string_view data);

nlohmann::json report_json(const Report& r);
/// One line per violation: identity, 1-based tuple, residual.
std::string render(const Report& r);

/// Built-in objects: S3, S4, S(n), PL, T1, T(a), P3, P3(a), Z(d,n), ZP(d,n), ZL(d,n),
/// S3.perturbed, S4.perturbed, P3.perturbed, Am(<n-Lie>,m) and its .B / .omega / .D.
std::optional<Document> catalog(const std::string& name);
std::vector<std::string> catalog_names();
/// "catalog:NAME" or a file path.
Document resolve(const std::string& ref);

}  // namespace nary::io
