#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "nary/tensor.hpp"

namespace nary {

/// `count` consecutive arguments drawn from basis indices offset..offset+dim-1.
/// Alternating groups are enumerated strictly increasing only.
struct SlotGroup {
  int dim = 0;
  int count = 0;
  bool alternating = false;
  int offset = 0;
};
using Domain = std::vector<SlotGroup>;

inline SlotGroup alt(int dim, int count, int offset = 0) { return {dim, count, true, offset}; }
inline SlotGroup free_slots(int dim, int count, int offset = 0) { return {dim, count, false, offset}; }

/// Residual of one identity at one basis tuple; zero means the identity holds there.
/// Scalar identities put their value at index 0.
using Residual = std::function<Vec(std::span<const int>)>;

struct Family {
  std::string id;
  Domain domain;
  Residual residual;
};

enum class Exec {
  parallel,   // canonical tuples, OpenMP worksharing
  serial,     // canonical tuples, one thread
  exhaustive  // every tuple (alternation ignored), one thread: the reference path
};

struct RunOptions {
  Exec exec = Exec::parallel;
  bool stop_at_first = false;  // searches only need a yes/no answer
};

struct Violation {
  std::string identity;
  std::vector<int> tuple;   // 0-based, absolute basis indices
  std::vector<int> layout;  // group sizes, for printing
  Vec residual;
};

struct Report {
  std::string check;
  std::vector<std::string> families;
  std::vector<Violation> violations;
  std::uint64_t instances = 0;

  bool passed() const { return violations.empty(); }
  std::size_t count(const std::string& identity) const;
  bool passed(const std::string& identity) const { return count(identity) == 0; }
  bool has_family(const std::string& identity) const;

  /// Records a property that is not indexed by basis tuples (e.g. nondegeneracy).
  void add_flag(const std::string& identity, Vec residual = Vec::basis(0));
  /// Appends another report's families and violations, prefixing their ids.
  void merge(const Report& other, const std::string& prefix = "");
  /// Keeps only one family.
  Report only(const std::string& identity) const;
};

/// "(1,2 | 3)" style, 1-based.
std::string format_tuple(const Violation& v);
std::string format_vec(VecView v);

/// Number of tuples enumerated for a domain (canonical or exhaustive).
std::uint64_t domain_size(const Domain& d, bool exhaustive = false);

Report run_families(std::string check, const std::vector<Family>& families, RunOptions opts = {});

/// Builds a tensor by evaluating `value` on every canonical basis tuple.
StructureTensor tabulate(int out_dim, std::vector<int> slot_dims, const SkewPattern& pattern,
                         const std::function<Vec(std::span<const int>)>& value);

/// The canonical-tuple domain of a tensor's own pattern.
Domain domain_of(const StructureTensor& t);

}  // namespace nary
