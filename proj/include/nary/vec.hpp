#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "nary/rational.hpp"

namespace nary {

using Term = std::pair<int, Rational>;

/// Read-only view of the nonzero terms of a vector, sorted by index.
using VecView = std::span<const Term>;

/// View of the basis vector e_i (coefficient 1). Backed by a static table,
/// so it is valid for the life of the program.
inline constexpr int kMaxUnitIndex = 1 << 14;
VecView unit(int i);

/// Sparse exact vector: sorted (index, coefficient) pairs with no zeros.
class Vec {
 public:
  Vec() = default;
  explicit Vec(std::vector<Term> terms);  // sorts, merges and drops zeros

  static Vec basis(int i);
  static Vec from_view(VecView v) { return Vec(std::vector<Term>(v.begin(), v.end())); }

  VecView view() const { return terms_; }
  operator VecView() const { return terms_; }  // NOLINT: views are cheap
  const std::vector<Term>& terms() const { return terms_; }
  auto begin() const { return terms_.begin(); }
  auto end() const { return terms_.end(); }

  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  Rational at(int i) const;
  int max_index() const { return terms_.empty() ? -1 : terms_.back().first; }

  /// this += c * other
  Vec& axpy(const Rational& c, VecView other);
  Vec& operator+=(VecView other);
  Vec& operator-=(VecView other);
  Vec& operator*=(const Rational& c);

  friend Vec operator+(Vec a, VecView b) { return a += b; }
  friend Vec operator-(Vec a, VecView b) { return a -= b; }
  friend Vec operator*(const Rational& c, Vec v) { return v *= c; }
  friend Vec operator-(Vec v);

  friend bool operator==(const Vec& a, const Vec& b) { return a.terms_ == b.terms_; }

  /// Keeps only indices in [lo, hi) and shifts them down by `lo`.
  Vec slice(int lo, int hi) const;
  /// Shifts every index up by `offset`.
  Vec shifted(int offset) const;

 private:
  std::vector<Term> terms_;
};

/// Dot product sum_i a_i b_i.
Rational dot(VecView a, VecView b);

/// Dense scratch accumulator used by the evaluators; converts to a Vec.
class Accumulator {
 public:
  explicit Accumulator(int dim) : values_(static_cast<std::size_t>(dim)), touched_(static_cast<std::size_t>(dim), 0) {}
  void add(int i, const Rational& c);
  void add(VecView v, const Rational& c);
  void add(VecView v);
  Vec take();

 private:
  std::vector<Rational> values_;
  std::vector<char> touched_;
  std::vector<int> order_;
};

}  // namespace nary
