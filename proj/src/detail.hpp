#pragma once

// Argument-list plumbing shared by the identity checkers and constructions.

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "nary/algebra.hpp"

namespace nary::detail {

using Args = std::vector<VecView>;

inline Args units(std::span<const int> idx) {
  Args a;
  a.reserve(idx.size());
  for (int i : idx) a.push_back(unit(i));
  return a;
}

inline Args units(std::span<const int> idx, std::size_t first, std::size_t count) {
  return units(idx.subspan(first, count));
}

/// a with position i removed (the hat).
inline Args hat(const Args& a, std::size_t i) {
  Args r;
  r.reserve(a.size());
  for (std::size_t k = 0; k < a.size(); ++k)
    if (k != i) r.push_back(a[k]);
  return r;
}

inline Args with(const Args& a, std::size_t i, VecView v) {
  Args r = a;
  r[i] = v;
  return r;
}

inline Args cat(const Args& a, const Args& b) {
  Args r = a;
  r.insert(r.end(), b.begin(), b.end());
  return r;
}

inline Args cat(const Args& a, VecView v) {
  Args r = a;
  r.push_back(v);
  return r;
}

inline Args cat(VecView v, const Args& a) {
  Args r;
  r.reserve(a.size() + 1);
  r.push_back(v);
  r.insert(r.end(), a.begin(), a.end());
  return r;
}

inline Args slice(const Args& a, std::size_t first, std::size_t count) {
  return Args(a.begin() + static_cast<std::ptrdiff_t>(first), a.begin() + static_cast<std::ptrdiff_t>(first + count));
}

/// (-1)^k
inline int parity(long k) { return (k % 2 == 0) ? 1 : -1; }

inline Vec scalar(const Rational& s) {
  Vec v;
  if (sgn(s) != 0) v = Vec({{0, s}});
  return v;
}

}  // namespace nary::detail

namespace nary::detail {

using Bracket = std::function<Vec(const Args&)>;
using Action = std::function<Vec(const Args&, VecView)>;

/// The two representation identities for an action of an n-ary bracket on an
/// m-dimensional module, ids prefixed by `prefix`.
std::vector<Family> rep_families(int dim, int module_dim, int n, Bracket bracket, Action act, const std::string& prefix);

}  // namespace nary::detail
