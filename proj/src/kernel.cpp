#include "nary/kernel.hpp"

#include <omp.h>

#include <algorithm>
#include <atomic>
#include <exception>

#include "nary/errors.hpp"

namespace nary {

namespace {

void combos(int dim, int count, bool alternating, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
  if (static_cast<int>(cur.size()) == count) {
    out.push_back(cur);
    return;
  }
  int start = (alternating && !cur.empty()) ? cur.back() + 1 : 0;
  for (int i = start; i < dim; ++i) {
    cur.push_back(i);
    combos(dim, count, alternating, cur, out);
    cur.pop_back();
  }
}

// Mixed-radix view of a domain: flat index -> tuple.
class Enumerator {
 public:
  Enumerator(const Domain& d, bool exhaustive) {
    total_ = 1;
    for (const auto& g : d) {
      std::vector<std::vector<int>> c;
      std::vector<int> cur;
      combos(g.dim, g.count, g.alternating && !exhaustive, cur, c);
      for (auto& t : c)
        for (auto& i : t) i += g.offset;
      total_ *= c.size();
      lists_.push_back(std::move(c));
      arity_ += g.count;
      layout_.push_back(g.count);
    }
  }
  std::uint64_t total() const { return total_; }
  int arity() const { return arity_; }
  const std::vector<int>& layout() const { return layout_; }

  void decode(std::uint64_t flat, std::vector<int>& tuple) const {
    tuple.resize(static_cast<std::size_t>(arity_));
    int pos = arity_;
    for (std::size_t g = lists_.size(); g-- > 0;) {
      const auto& l = lists_[g];
      const auto& pick = l[flat % l.size()];
      flat /= l.size();
      pos -= static_cast<int>(pick.size());
      std::copy(pick.begin(), pick.end(), tuple.begin() + pos);
    }
  }

 private:
  std::vector<std::vector<std::vector<int>>> lists_;
  std::vector<int> layout_;
  std::uint64_t total_ = 1;
  int arity_ = 0;
};

struct Hit {
  std::uint64_t flat;
  std::vector<int> tuple;
  Vec residual;
};

}  // namespace

std::size_t Report::count(const std::string& identity) const {
  return static_cast<std::size_t>(
      std::count_if(violations.begin(), violations.end(), [&](const Violation& v) { return v.identity == identity; }));
}

bool Report::has_family(const std::string& identity) const {
  return std::find(families.begin(), families.end(), identity) != families.end();
}

void Report::add_flag(const std::string& identity, Vec residual) {
  if (!has_family(identity)) families.push_back(identity);
  violations.push_back({identity, {}, {}, std::move(residual)});
}

void Report::merge(const Report& other, const std::string& prefix) {
  for (const auto& f : other.families)
    if (!has_family(prefix + f)) families.push_back(prefix + f);
  for (auto v : other.violations) {
    v.identity = prefix + v.identity;
    violations.push_back(std::move(v));
  }
  instances += other.instances;
}

Report Report::only(const std::string& identity) const {
  Report r;
  r.check = check;
  if (has_family(identity)) r.families.push_back(identity);
  for (const auto& v : violations)
    if (v.identity == identity) r.violations.push_back(v);
  r.instances = instances;
  return r;
}

std::string format_tuple(const Violation& v) {
  std::string s = "(";
  std::size_t k = 0;
  for (std::size_t g = 0; g < v.layout.size(); ++g) {
    if (g) s += " | ";
    for (int i = 0; i < v.layout[g]; ++i, ++k) s += (i ? "," : "") + std::to_string(v.tuple[k] + 1);
  }
  return s + ")";
}

std::string format_vec(VecView v) {
  if (v.empty()) return "0";
  std::string s;
  for (const auto& t : v) {
    if (!s.empty()) s += " ";
    s += (sgn(t.second) < 0 ? "" : "+") + t.second.get_str() + "*e" + std::to_string(t.first + 1);
  }
  return s;
}

std::uint64_t domain_size(const Domain& d, bool exhaustive) { return Enumerator(d, exhaustive).total(); }

Report run_families(std::string check, const std::vector<Family>& families, RunOptions opts) {
  Report report;
  report.check = std::move(check);
  for (std::size_t f = 0; f < families.size(); ++f) {
    const Family& fam = families[f];
    report.families.push_back(fam.id);
    if (opts.stop_at_first && !report.violations.empty()) continue;
    const bool exhaustive = opts.exec == Exec::exhaustive;
    Enumerator en(fam.domain, exhaustive);
    const auto total = en.total();
    report.instances += total;
    std::vector<Hit> hits;

    if (opts.exec == Exec::parallel) {
      std::atomic<bool> stop{false};
      std::exception_ptr error;
      const auto n = static_cast<std::int64_t>(total);
#pragma omp parallel
      {
        std::vector<Hit> local;
        std::vector<int> tuple;
#pragma omp for schedule(dynamic, 64)
        for (std::int64_t i = 0; i < n; ++i) {
          if (stop.load(std::memory_order_relaxed)) continue;
          try {
            en.decode(static_cast<std::uint64_t>(i), tuple);
            Vec r = fam.residual(tuple);
            if (!r.is_zero()) {
              local.push_back({static_cast<std::uint64_t>(i), tuple, std::move(r)});
              if (opts.stop_at_first) stop.store(true, std::memory_order_relaxed);
            }
          } catch (...) {
#pragma omp critical(nary_error)
            if (!error) error = std::current_exception();
            stop.store(true);
          }
        }
#pragma omp critical(nary_merge)
        for (auto& h : local) hits.push_back(std::move(h));
      }
      if (error) std::rethrow_exception(error);
      std::sort(hits.begin(), hits.end(), [](const Hit& a, const Hit& b) { return a.flat < b.flat; });
    } else {
      std::vector<int> tuple;
      for (std::uint64_t i = 0; i < total; ++i) {
        en.decode(i, tuple);
        Vec r = fam.residual(tuple);
        if (!r.is_zero()) {
          hits.push_back({i, tuple, std::move(r)});
          if (opts.stop_at_first) break;
        }
      }
    }
    if (opts.stop_at_first && hits.size() > 1) hits.resize(1);
    for (auto& h : hits) report.violations.push_back({fam.id, std::move(h.tuple), en.layout(), std::move(h.residual)});
  }
  return report;
}

Domain domain_of(const StructureTensor& t) {
  Domain d;
  int s = 0;
  const auto& blocks = t.pattern().blocks();
  std::size_t b = 0;
  while (s < t.arity()) {
    if (b < blocks.size() && blocks[b].first == s) {
      d.push_back(alt(t.slot_dim(s), blocks[b].size));
      s += blocks[b].size;
      ++b;
    } else {
      d.push_back(free_slots(t.slot_dim(s), 1));
      ++s;
    }
  }
  return d;
}

StructureTensor tabulate(int out_dim, std::vector<int> slot_dims, const SkewPattern& pattern,
                         const std::function<Vec(std::span<const int>)>& value) {
  StructureTensor shape(out_dim, slot_dims, pattern);
  Enumerator en(domain_of(shape), false);
  const auto n = static_cast<std::int64_t>(en.total());
  std::vector<Vec> values(static_cast<std::size_t>(n));
  std::exception_ptr error;
#pragma omp parallel
  {
    std::vector<int> tuple;
#pragma omp for schedule(dynamic, 64)
    for (std::int64_t i = 0; i < n; ++i) {
      try {
        en.decode(static_cast<std::uint64_t>(i), tuple);
        values[static_cast<std::size_t>(i)] = value(tuple);
      } catch (...) {
#pragma omp critical(nary_error)
        if (!error) error = std::current_exception();
      }
    }
  }
  if (error) std::rethrow_exception(error);
  std::map<StructureTensor::Key, Vec> entries;
  std::vector<int> tuple;
  for (std::int64_t i = 0; i < n; ++i) {
    auto& v = values[static_cast<std::size_t>(i)];
    if (v.is_zero()) continue;
    en.decode(static_cast<std::uint64_t>(i), tuple);
    entries.emplace(tuple, std::move(v));
  }
  return StructureTensor::from_canonical(out_dim, std::move(slot_dims), pattern, std::move(entries));
}

}  // namespace nary
