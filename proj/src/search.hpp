#pragma once

#include <functional>

#include "nary/nlie.hpp"

namespace nary::detail {

/// Enumerates all maps over `space` (square, size dim) in candidate order and
/// keeps those accepted by `accept`. Candidates are tested in parallel.
std::vector<LinearMap> search_maps(int dim, const SearchSpace& space, const std::function<bool(const LinearMap&)>& accept);

}  // namespace nary::detail
