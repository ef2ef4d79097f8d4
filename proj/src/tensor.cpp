#include "nary/tensor.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <string>

#include "nary/errors.hpp"

namespace nary {

namespace {

constexpr std::size_t kDenseLimit = std::size_t{1} << 16;
constexpr int kMaxArity = 16;

std::string tuple_text(std::span<const int> t) {
  std::string s = "(";
  for (std::size_t i = 0; i < t.size(); ++i) s += (i ? "," : "") + std::to_string(t[i] + 1);
  return s + ")";
}

}  // namespace

int perm_sign(std::span<const int> permutation) {
  const int k = static_cast<int>(permutation.size());
  std::vector<char> seen(static_cast<std::size_t>(k), 0);
  for (int v : permutation) {
    if (v < 1 || v > k || seen[static_cast<std::size_t>(v - 1)])
      throw std::invalid_argument("perm_sign: input is not a permutation of 1.." + std::to_string(k));
    seen[static_cast<std::size_t>(v - 1)] = 1;
  }
  // Parity via cycle decomposition: sign = (-1)^(k - #cycles).
  std::fill(seen.begin(), seen.end(), 0);
  int cycles = 0;
  for (int i = 0; i < k; ++i) {
    if (seen[static_cast<std::size_t>(i)]) continue;
    ++cycles;
    for (int j = i; !seen[static_cast<std::size_t>(j)]; j = permutation[static_cast<std::size_t>(j)] - 1)
      seen[static_cast<std::size_t>(j)] = 1;
  }
  return ((k - cycles) % 2 == 0) ? 1 : -1;
}

SkewPattern::SkewPattern(int arity, std::vector<Block> blocks) : arity_(arity) {
  if (arity < 0) throw ShapeError("negative arity");
  std::sort(blocks.begin(), blocks.end(), [](const Block& a, const Block& b) { return a.first < b.first; });
  int end = 0;
  for (const auto& b : blocks) {
    if (b.size < 0 || b.first < 0 || b.first + b.size > arity)
      throw ShapeError("alternating block outside [1, arity]");
    if (b.size <= 1) continue;  // a single slot carries no alternation
    if (b.first < end) throw ShapeError("alternating blocks overlap");
    end = b.first + b.size;
    blocks_.push_back(b);
  }
}

SkewPattern SkewPattern::alternating(int arity, int first, int size) { return SkewPattern(arity, {{first, size}}); }

int SkewPattern::canonicalize(std::span<int> tuple) const {
  int sign = 1;
  for (const auto& b : blocks_) {
    int* p = tuple.data() + b.first;
    for (int i = 1; i < b.size; ++i) {
      int v = p[i];
      int j = i - 1;
      while (j >= 0 && p[j] > v) {
        p[j + 1] = p[j];
        --j;
        sign = -sign;
      }
      if (j >= 0 && p[j] == v) return 0;
      p[j + 1] = v;
    }
  }
  return sign;
}

bool SkewPattern::is_canonical(std::span<const int> tuple) const {
  for (const auto& b : blocks_)
    for (int i = 1; i < b.size; ++i)
      if (tuple[static_cast<std::size_t>(b.first + i - 1)] >= tuple[static_cast<std::size_t>(b.first + i)]) return false;
  return true;
}

StructureTensor::StructureTensor(int out_dim, std::vector<int> slot_dims, SkewPattern pattern)
    : out_dim_(out_dim), slot_dims_(std::move(slot_dims)), pattern_(std::move(pattern)) {
  if (out_dim_ < 1) throw ShapeError("output dimension must be positive");
  if (pattern_.arity() != arity()) throw ShapeError("skew pattern arity does not match the number of slots");
  if (arity() > kMaxArity) throw ShapeError("arity above supported maximum");
  for (int d : slot_dims_)
    if (d < 1) throw ShapeError("slot dimension must be positive");
  for (const auto& b : pattern_.blocks())
    for (int i = 1; i < b.size; ++i)
      if (slot_dims_[static_cast<std::size_t>(b.first + i)] != slot_dims_[static_cast<std::size_t>(b.first)])
        throw ShapeError("alternating slots must share one dimension");
  long double total = 1;
  for (int d : slot_dims_) total *= d;
  if (total > static_cast<long double>(std::numeric_limits<std::int64_t>::max() / 2))
    throw ShapeError("tensor index space too large");
  build_index();
}

StructureTensor::StructureTensor(int dim, SkewPattern pattern)
    : StructureTensor(dim, std::vector<int>(static_cast<std::size_t>(pattern.arity()), dim), pattern) {}

StructureTensor StructureTensor::from_canonical(int out_dim, std::vector<int> slot_dims, SkewPattern pattern,
                                                std::map<Key, Vec> entries) {
  StructureTensor t(out_dim, std::move(slot_dims), std::move(pattern));
  for (auto it = entries.begin(); it != entries.end();) {
    const Key& k = it->first;
    if (static_cast<int>(k.size()) != t.arity())
      throw ShapeError("entry " + tuple_text(k) + " has wrong length");
    for (int s = 0; s < t.arity(); ++s)
      if (k[static_cast<std::size_t>(s)] < 0 || k[static_cast<std::size_t>(s)] >= t.slot_dim(s))
        throw ShapeError("entry " + tuple_text(k) + " index out of range");
    if (!t.pattern_.is_canonical(k)) throw ShapeError("entry " + tuple_text(k) + " is not canonical");
    if (it->second.max_index() >= out_dim) throw ShapeError("entry " + tuple_text(k) + " value out of range");
    if (it->second.is_zero())
      it = entries.erase(it);
    else
      ++it;
  }
  t.entries_ = std::move(entries);
  t.build_index();
  return t;
}

std::uint64_t StructureTensor::encode(std::span<const int> tuple) const {
  std::uint64_t code = 0;
  for (std::size_t s = 0; s < tuple.size(); ++s)
    code = code * static_cast<std::uint64_t>(slot_dims_[s]) + static_cast<std::uint64_t>(tuple[s]);
  return code;
}

void StructureTensor::build_index() {
  dense_.clear();
  values_.clear();
  sparse_.clear();
  values_.reserve(entries_.size());
  for (const auto& kv : entries_) values_.push_back(kv.second);
  std::size_t total = 1;
  for (int d : slot_dims_) total *= static_cast<std::size_t>(d);
  if (total <= kDenseLimit) {
    dense_.assign(total, 0);
    if (entries_.empty()) return;
    std::vector<int> tuple(static_cast<std::size_t>(arity()), 0);
    std::vector<int> canon(tuple.size());
    for (std::size_t flat = 0; flat < total; ++flat) {
      std::size_t rest = flat;
      for (int s = arity() - 1; s >= 0; --s) {
        auto d = static_cast<std::size_t>(slot_dims_[static_cast<std::size_t>(s)]);
        tuple[static_cast<std::size_t>(s)] = static_cast<int>(rest % d);
        rest /= d;
      }
      canon = tuple;
      int sign = pattern_.canonicalize(canon);
      if (sign == 0) continue;
      auto it = entries_.find(canon);
      if (it == entries_.end()) continue;
      auto idx = static_cast<std::int32_t>(std::distance(entries_.begin(), it)) + 1;
      dense_[flat] = sign * idx;
    }
  } else {
    sparse_.reserve(entries_.size());
    std::int32_t idx = 0;
    for (const auto& kv : entries_) sparse_.emplace(encode(kv.first), idx++);
  }
}

StructureTensor::Hit StructureTensor::lookup(std::span<const int> basis_tuple) const {
  if (!dense_.empty()) {
    std::size_t flat = 0;
    for (std::size_t s = 0; s < basis_tuple.size(); ++s)
      flat = flat * static_cast<std::size_t>(slot_dims_[s]) + static_cast<std::size_t>(basis_tuple[s]);
    std::int32_t code = dense_[flat];
    if (code == 0) return {};
    return {code > 0 ? 1 : -1, &values_[static_cast<std::size_t>(std::abs(code) - 1)]};
  }
  if (sparse_.empty()) return {};
  int buf[kMaxArity];
  std::copy(basis_tuple.begin(), basis_tuple.end(), buf);
  std::span<int> canon(buf, basis_tuple.size());
  int sign = pattern_.canonicalize(canon);
  if (sign == 0) return {};
  auto it = sparse_.find(encode(canon));
  if (it == sparse_.end()) return {};
  return {sign, &values_[static_cast<std::size_t>(it->second)]};
}

Vec StructureTensor::at(std::span<const int> basis_tuple) const {
  if (static_cast<int>(basis_tuple.size()) != arity()) throw ShapeError("tuple length does not match arity");
  for (int s = 0; s < arity(); ++s)
    if (basis_tuple[static_cast<std::size_t>(s)] < 0 || basis_tuple[static_cast<std::size_t>(s)] >= slot_dim(s))
      throw ShapeError("basis index out of range");
  Hit h = lookup(basis_tuple);
  if (h.sign == 0) return {};
  Vec v = *h.value;
  if (h.sign < 0) v *= -1;
  return v;
}

Vec StructureTensor::operator()(std::span<const VecView> args) const {
  if (static_cast<int>(args.size()) != arity()) throw ShapeError("argument count does not match arity");
  for (int s = 0; s < arity(); ++s) {
    const auto& a = args[static_cast<std::size_t>(s)];
    if (!a.empty() && a.back().first >= slot_dim(s)) throw ShapeError("argument vector longer than slot dimension");
    if (a.empty() || entries_.empty()) return {};
  }
  std::vector<Term> out;
  std::vector<int> idx(args.size());
  eval_rec(args, idx, Rational(1), 0, out);
  return Vec(std::move(out));
}

void StructureTensor::eval_rec(std::span<const VecView> args, std::vector<int>& idx, const Rational& coeff,
                               std::size_t slot, std::vector<Term>& out) const {
  if (slot == args.size()) {
    Hit h = lookup(idx);
    if (h.sign == 0) return;
    for (const auto& t : h.value->terms()) {
      Rational v = coeff * t.second;
      if (h.sign < 0) v = -v;
      out.emplace_back(t.first, std::move(v));
    }
    return;
  }
  for (const auto& t : args[slot]) {
    idx[slot] = t.first;
    eval_rec(args, idx, coeff * t.second, slot + 1, out);
  }
}

bool operator==(const StructureTensor& a, const StructureTensor& b) {
  return a.out_dim_ == b.out_dim_ && a.slot_dims_ == b.slot_dims_ && a.pattern_ == b.pattern_ &&
         a.entries_ == b.entries_;
}

TensorBuilder::TensorBuilder(int out_dim, std::vector<int> slot_dims, SkewPattern pattern)
    : out_dim_(out_dim), slot_dims_(std::move(slot_dims)), pattern_(std::move(pattern)) {}

TensorBuilder::TensorBuilder(int dim, SkewPattern pattern)
    : TensorBuilder(dim, std::vector<int>(static_cast<std::size_t>(pattern.arity()), dim), pattern) {}

void TensorBuilder::add(std::span<const int> tuple, VecView value) {
  if (value.empty()) return;
  std::vector<int> key(tuple.begin(), tuple.end());
  int sign = pattern_.canonicalize(key);
  if (sign == 0) throw ShapeError("nonzero value on a tuple with a repeated alternating index");
  entries_[std::move(key)].axpy(sign, value);
}

void TensorBuilder::set_canonical(std::vector<int> tuple, Vec value) { entries_[std::move(tuple)] = std::move(value); }

StructureTensor TensorBuilder::build() && {
  return StructureTensor::from_canonical(out_dim_, std::move(slot_dims_), std::move(pattern_), std::move(entries_));
}

}  // namespace nary
