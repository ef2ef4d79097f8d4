#pragma once

#include <span>

#include "nary/kernel.hpp"
#include "nary/linalg.hpp"
#include "nary/tensor.hpp"

namespace nary {

/// Fully alternating n-ary bracket. `verified` is set only by certify().
struct NLieAlgebra {
  StructureTensor bracket;
  bool verified = false;

  NLieAlgebra() = default;
  explicit NLieAlgebra(StructureTensor b);

  int dim() const { return bracket.out_dim(); }
  int arity() const { return bracket.arity(); }
  Vec operator()(std::span<const VecView> xs) const { return bracket(xs); }
};

/// Product alternating in its first n-1 slots, last slot free.
struct NPreLieAlgebra {
  StructureTensor product;
  bool verified = false;

  NPreLieAlgebra() = default;
  explicit NPreLieAlgebra(StructureTensor p);

  int dim() const { return product.out_dim(); }
  int arity() const { return product.arity(); }
  Vec operator()(std::span<const VecView> xs) const { return product(xs); }
};

/// rho(x_1..x_{n-1}) in gl(V), stored as a tensor with slots (A,...,A,V) -> V
/// alternating in the algebra slots.
struct NLieRep {
  NLieAlgebra algebra;
  StructureTensor action;
  bool verified = false;

  NLieRep() = default;
  NLieRep(NLieAlgebra a, StructureTensor action);

  int module_dim() const { return action.out_dim(); }
  Vec act(std::span<const VecView> xs, VecView v) const;
  LinearMap matrix(std::span<const int> xs) const;
};

/// Pair (l, r): l alternating in all n-1 algebra slots, r in the first n-2.
struct NPreLieRep {
  NPreLieAlgebra algebra;
  StructureTensor l;
  StructureTensor r;
  bool verified = false;

  NPreLieRep() = default;
  NPreLieRep(NPreLieAlgebra a, StructureTensor l, StructureTensor r);

  int module_dim() const { return l.out_dim(); }
  Vec act_l(std::span<const VecView> xs, VecView v) const;
  Vec act_r(std::span<const VecView> xs, VecView v) const;
};

/// Two products: nw alternating in slots 1..n-1, ne alternating in 2..n-1.
struct NLDendriform {
  StructureTensor nw;
  StructureTensor ne;
  bool verified = false;

  NLDendriform() = default;
  NLDendriform(StructureTensor nw, StructureTensor ne);

  int dim() const { return nw.out_dim(); }
  int arity() const { return nw.arity(); }
};

// Patterns of the argument shapes.
SkewPattern nlie_pattern(int n);
SkewPattern nprelie_pattern(int n);
SkewPattern ne_pattern(int n);
/// Rep tensors: n-1 algebra slots then one module slot.
SkewPattern l_pattern(int n);
SkewPattern r_pattern(int n);
std::vector<int> rep_slots(int dim, int n, int module_dim);

NLieAlgebra zero_nlie(int dim, int n);
NPreLieAlgebra zero_nprelie(int dim, int n);
NLDendriform zero_ldend(int dim, int n);
/// [e_{i_1},...,e_{i_n}] = eps_{i_1...i_n k} e_k on dimension n+1.
NLieAlgebra levi_civita(int n);

/// Residuals of D(phi(x)) = sum_i phi(..., D x_i, ...) over the tensor's canonical tuples.
Report check_derivation(const StructureTensor& phi, const LinearMap& d, RunOptions opts = {});

/// Throws PreconditionError naming `what` unless `ok`.
void require(bool ok, const std::string& what);

}  // namespace nary
