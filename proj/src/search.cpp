#include "search.hpp"

#include <algorithm>
#include <exception>

#include "nary/errors.hpp"

namespace nary::detail {

std::vector<LinearMap> search_maps(int dim, const SearchSpace& space, const std::function<bool(const LinearMap&)>& accept) {
  const std::uint64_t total = search_size(space);
  for (const auto& [i, j] : space.cells)
    if (i < 0 || j < 0 || i >= dim || j >= dim) throw ShapeError("support cell outside the matrix");
  std::vector<Rational> entries = space.entries;
  std::sort(entries.begin(), entries.end());
  entries.erase(std::unique(entries.begin(), entries.end()), entries.end());
  if (entries.empty()) entries.push_back(0);
  const std::size_t base = entries.size();
  const auto n = static_cast<std::int64_t>(total);
  std::vector<char> keep(static_cast<std::size_t>(n), 0);
  std::exception_ptr error;
#pragma omp parallel for schedule(dynamic, 16)
  for (std::int64_t c = 0; c < n; ++c) {
    try {
      LinearMap p(dim, dim);
      auto rest = static_cast<std::uint64_t>(c);
      for (std::size_t k = space.cells.size(); k-- > 0;) {
        p(space.cells[k].first, space.cells[k].second) = entries[rest % base];
        rest /= base;
      }
      keep[static_cast<std::size_t>(c)] = accept(p) ? 1 : 0;
    } catch (...) {
#pragma omp critical(nary_error)
      if (!error) error = std::current_exception();
    }
  }
  if (error) std::rethrow_exception(error);
  std::vector<LinearMap> out;
  for (std::int64_t c = 0; c < n; ++c) {
    if (!keep[static_cast<std::size_t>(c)]) continue;
    LinearMap p(dim, dim);
    auto rest = static_cast<std::uint64_t>(c);
    for (std::size_t k = space.cells.size(); k-- > 0;) {
      p(space.cells[k].first, space.cells[k].second) = entries[rest % base];
      rest /= base;
    }
    // Repeated cells would make distinct candidates coincide.
    if (std::find(out.begin(), out.end(), p) == out.end()) out.push_back(std::move(p));
  }
  return out;
}

}  // namespace nary::detail
