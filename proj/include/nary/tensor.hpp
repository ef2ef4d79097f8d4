#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include "nary/vec.hpp"

namespace nary {

/// Sign of a permutation of 1..k given in one-line notation. Throws
/// std::invalid_argument when the input is not a permutation.
int perm_sign(std::span<const int> permutation);

/// Which argument slots of a multilinear map are alternating.
/// Blocks are disjoint contiguous ranges of 0-based slots.
class SkewPattern {
 public:
  struct Block {
    int first;
    int size;
    friend bool operator==(const Block&, const Block&) = default;
  };

  SkewPattern() = default;
  SkewPattern(int arity, std::vector<Block> blocks);

  /// No alternating slots.
  static SkewPattern free(int arity) { return SkewPattern(arity, {}); }
  /// One alternating block over slots [first, first + size).
  static SkewPattern alternating(int arity, int first, int size);

  int arity() const { return arity_; }
  const std::vector<Block>& blocks() const { return blocks_; }

  /// Sorts each block in place. Returns the permutation sign, or 0 when a
  /// block contains a repeated index (the value is then zero).
  int canonicalize(std::span<int> tuple) const;
  bool is_canonical(std::span<const int> tuple) const;

  friend bool operator==(const SkewPattern&, const SkewPattern&) = default;

 private:
  int arity_ = 0;
  std::vector<Block> blocks_;
};

/// Multilinear map V_1 x ... x V_k -> W given by exact structure constants on
/// canonical basis tuples. Immutable after construction.
class StructureTensor {
 public:
  using Key = std::vector<int>;

  StructureTensor() = default;
  /// Zero map with the given shape.
  StructureTensor(int out_dim, std::vector<int> slot_dims, SkewPattern pattern);
  /// All slots of dimension `dim`, output of dimension `dim`.
  StructureTensor(int dim, SkewPattern pattern);

  /// Builds from canonical entries. Non-canonical or out-of-range keys are
  /// rejected with ShapeError (no silent sign normalization).
  static StructureTensor from_canonical(int out_dim, std::vector<int> slot_dims, SkewPattern pattern,
                                        std::map<Key, Vec> entries);

  int out_dim() const { return out_dim_; }
  int arity() const { return static_cast<int>(slot_dims_.size()); }
  const std::vector<int>& slot_dims() const { return slot_dims_; }
  int slot_dim(int slot) const { return slot_dims_[static_cast<std::size_t>(slot)]; }
  const SkewPattern& pattern() const { return pattern_; }
  const std::map<Key, Vec>& entries() const { return entries_; }
  bool is_zero() const { return entries_.empty(); }

  /// Value on a basis tuple (any order); sign applied.
  Vec at(std::span<const int> basis_tuple) const;
  /// Multilinear extension.
  Vec operator()(std::span<const VecView> args) const;
  Vec operator()(std::initializer_list<VecView> args) const {
    return (*this)(std::span<const VecView>(args.begin(), args.size()));
  }

  friend bool operator==(const StructureTensor& a, const StructureTensor& b);

 private:
  struct Hit {
    int sign = 0;
    const Vec* value = nullptr;
  };
  Hit lookup(std::span<const int> basis_tuple) const;
  void build_index();
  std::uint64_t encode(std::span<const int> tuple) const;
  void eval_rec(std::span<const VecView> args, std::vector<int>& idx, const Rational& coeff, std::size_t slot,
                std::vector<Term>& out) const;

  int out_dim_ = 0;
  std::vector<int> slot_dims_;
  SkewPattern pattern_;
  std::map<Key, Vec> entries_;
  // Dense table over all tuples (entry slot + sign) when small enough,
  // otherwise a hash of canonical keys.
  std::vector<std::int32_t> dense_;
  // Index positions into values_ (entries' values in key order), so copies stay valid.
  std::vector<Vec> values_;
  std::unordered_map<std::uint64_t, std::int32_t> sparse_;
};

/// Collects values on arbitrary basis tuples, normalizing each to canonical
/// form with its permutation sign. Used by the constructions.
class TensorBuilder {
 public:
  TensorBuilder(int out_dim, std::vector<int> slot_dims, SkewPattern pattern);
  TensorBuilder(int dim, SkewPattern pattern);

  /// Adds `value` at `tuple` (sign-normalized). Tuples with a repeated index
  /// inside a block must carry a zero value; they are ignored.
  void add(std::span<const int> tuple, VecView value);
  /// Sets the value at an already-canonical tuple, replacing anything there.
  void set_canonical(std::vector<int> tuple, Vec value);
  StructureTensor build() &&;

 private:
  int out_dim_;
  std::vector<int> slot_dims_;
  SkewPattern pattern_;
  std::map<std::vector<int>, Vec> entries_;
};

}  // namespace nary
