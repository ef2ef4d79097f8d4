#include "nary/vec.hpp"

#include <algorithm>

#include "nary/errors.hpp"

namespace nary {

VecView unit(int i) {
  static const std::vector<Term> table = [] {
    std::vector<Term> t;
    t.reserve(kMaxUnitIndex);
    for (int k = 0; k < kMaxUnitIndex; ++k) t.emplace_back(k, Rational(1));
    return t;
  }();
  if (i < 0 || i >= kMaxUnitIndex) throw ShapeError("basis index out of range: " + std::to_string(i));
  return VecView(&table[static_cast<std::size_t>(i)], 1);
}

Vec::Vec(std::vector<Term> terms) : terms_(std::move(terms)) {
  std::stable_sort(terms_.begin(), terms_.end(), [](const Term& a, const Term& b) { return a.first < b.first; });
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (auto& t : terms_) {
    if (!out.empty() && out.back().first == t.first)
      out.back().second += t.second;
    else
      out.push_back(std::move(t));
  }
  out.erase(std::remove_if(out.begin(), out.end(), [](const Term& t) { return sgn(t.second) == 0; }), out.end());
  terms_ = std::move(out);
}

Vec Vec::basis(int i) { return Vec::from_view(unit(i)); }

Rational Vec::at(int i) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), i, [](const Term& t, int k) { return t.first < k; });
  if (it != terms_.end() && it->first == i) return it->second;
  return 0;
}

Vec& Vec::axpy(const Rational& c, VecView other) {
  if (sgn(c) == 0 || other.empty()) return *this;
  std::vector<Term> out;
  out.reserve(terms_.size() + other.size());
  auto a = terms_.begin();
  auto b = other.begin();
  while (a != terms_.end() || b != other.end()) {
    if (b == other.end() || (a != terms_.end() && a->first < b->first)) {
      out.push_back(std::move(*a++));
    } else if (a == terms_.end() || b->first < a->first) {
      out.emplace_back(b->first, c * b->second);
      ++b;
    } else {
      Rational v = a->second + c * b->second;
      if (sgn(v) != 0) out.emplace_back(a->first, std::move(v));
      ++a;
      ++b;
    }
  }
  terms_ = std::move(out);
  return *this;
}

Vec& Vec::operator+=(VecView other) { return axpy(1, other); }
Vec& Vec::operator-=(VecView other) { return axpy(-1, other); }

Vec& Vec::operator*=(const Rational& c) {
  if (sgn(c) == 0) {
    terms_.clear();
  } else {
    for (auto& t : terms_) t.second *= c;
  }
  return *this;
}

Vec operator-(Vec v) { return v *= -1; }

Vec Vec::slice(int lo, int hi) const {
  Vec r;
  for (const auto& t : terms_)
    if (t.first >= lo && t.first < hi) r.terms_.emplace_back(t.first - lo, t.second);
  return r;
}

Vec Vec::shifted(int offset) const {
  Vec r = *this;
  for (auto& t : r.terms_) t.first += offset;
  return r;
}

Rational dot(VecView a, VecView b) {
  Rational s = 0;
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (i->first < j->first) {
      ++i;
    } else if (j->first < i->first) {
      ++j;
    } else {
      s += i->second * j->second;
      ++i;
      ++j;
    }
  }
  return s;
}

void Accumulator::add(int i, const Rational& c) {
  auto k = static_cast<std::size_t>(i);
  if (!touched_[k]) {
    touched_[k] = 1;
    order_.push_back(i);
  }
  values_[k] += c;
}

void Accumulator::add(VecView v, const Rational& c) {
  for (const auto& t : v) add(t.first, c * t.second);
}

void Accumulator::add(VecView v) {
  for (const auto& t : v) add(t.first, t.second);
}

Vec Accumulator::take() {
  std::sort(order_.begin(), order_.end());
  std::vector<Term> terms;
  terms.reserve(order_.size());
  for (int i : order_) {
    auto k = static_cast<std::size_t>(i);
    if (sgn(values_[k]) != 0) terms.emplace_back(i, values_[k]);
    values_[k] = 0;
    touched_[k] = 0;
  }
  order_.clear();
  Vec out;
  out += VecView(terms);  // already sorted and zero-free
  return out;
}

}  // namespace nary
