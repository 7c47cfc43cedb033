#pragma once

#include "descentkit/algebra.hpp"
#include "descentkit/rng.hpp"

namespace descentkit {

// Finitely generated right module, presented by one action matrix per algebra
// basis element. Elements are column vectors; v * e_i is action(i).apply(v),
// so the module law reads action_of(e_i e_j) == action(j) * action(i).
class Module {
 public:
  Module() : algebra_(nullptr), dim_(0) {}  // placeholder; not a usable module
  Module(AlgebraPtr algebra, std::size_t dim, std::vector<Matrix> action,
         std::optional<std::vector<Degree>> grading = std::nullopt);

  const AlgebraPtr& algebra() const { return algebra_; }
  std::size_t dim() const { return dim_; }
  const Matrix& action(std::size_t i) const { return action_[i]; }
  const std::vector<Matrix>& actions() const { return action_; }
  const std::optional<std::vector<Degree>>& grading() const { return grading_; }
  bool is_graded() const { return grading_.has_value(); }

  Matrix action_of(const Vec& algebra_elem) const;

 private:
  AlgebraPtr algebra_;
  std::size_t dim_;
  std::vector<Matrix> action_;
  std::optional<std::vector<Degree>> grading_;
};

Report validate_module(const Module& m);

// Free right module of rank r; generator s gets degree shift shifts[s] when
// the algebra is graded.
Module free_module(AlgebraPtr a, std::size_t r, const std::vector<Degree>* shifts = nullptr);

struct ModuleMap {
  Module source, target;
  Matrix matrix;  // dim(target) x dim(source)
};

Report validate_module_map(const ModuleMap& h);

struct BaseChangeResult {
  Module module;    // m tensored up along f, a module over f.target
  Matrix unit_map;  // dim(module) x dim(m): m -> m (x) 1
  QuotientData qd;  // presentation: ambient (u,j) = m_u (x) b_j, mod tensor relations
};

// m (x)_A B along f : A -> B. Ambient index (u, j) = u * dim(B) + j.
BaseChangeResult base_change(const AlgebraMap& f, const Module& m);

// n viewed over f.source through f.
Module restrict_scalars(const AlgebraMap& f, const Module& n);

// f.target as a right module over opposite(f.source), acting by left
// multiplication through f. Freeness of this module is freeness of the target
// as a left module over the source, which is the flatness input.
Module target_as_opposite_module(const AlgebraMap& f);

struct ModuleQuotientResult {
  Module module;      // n / (n * k) over c
  Matrix projection;  // dim(quotient) x dim(n)
  QuotientData qd;
};

// k must be a two-sided ideal of n's algebra with c = algebra/k; b_lift maps
// c coordinates to representatives (the complement section of the quotient).
ModuleQuotientResult quotient_by_ideal(const Module& n, const Subspace& k, AlgebraPtr c,
                                       const Matrix& b_lift);

// Lifts of a basis of n / n*rad along the canonical complement section.
// Requires the algebra local (certified augmented-with-nilpotent-kernel),
// else throws not_certified_local. Generation is re-verified by saturation.
std::vector<Vec> minimal_generators(const Module& n);

struct FreenessWitness {
  std::size_t rank;
  std::vector<Vec> generators;
  Matrix iso;  // free_module(algebra, rank) -> n, verified bijective module map
  std::optional<std::vector<Degree>> shifts;
};

struct FreenessResult {
  bool free = false;
  std::size_t min_generators = 0;
  std::optional<FreenessWitness> witness;
};

// Over a local algebra, n is free iff dim(n) equals min_generators * dim(algebra).
FreenessResult is_free_over_local(const Module& n);

// Basis of the space of module maps m -> n (canonical order from the kernel
// of the intertwiner system).
std::vector<Matrix> hom_space(const Module& m, const Module& n);

enum class IsoVerdict { yes, no, inconclusive };

struct IsoResult {
  IsoVerdict verdict;
  std::optional<Matrix> witness;
};

struct SearchPolicy {
  std::uint64_t exhaustive_cap = 1ull << 20;
  std::size_t trials = 1000;
  std::uint64_t seed = kDefaultSeed;
};

// Exhaustive over hom coefficients when |F|^h fits the cap; otherwise seeded
// random trials, plus a grid determinant test over Q that decides exactly
// when (dim+1)^h fits the cap. "no" answers are certain (invariant mismatch,
// exhausted search, or identically vanishing determinant).
IsoResult is_isomorphic(const Module& m, const Module& n, const SearchPolicy& pol = {});

Module direct_sum(const Module& a, const Module& b);

struct StripResult {
  Module residual;
  std::size_t stripped = 0;
  bool exhaustive = true;  // false when the summand search was inconclusive
};

// Splits off copies of the regular module while a surjection onto it exists.
// Requires the algebra local.
StripResult strip_free_summands(const Module& n, const SearchPolicy& pol = {});

void check_same_algebra(const Module& a, const Module& b);

}  // namespace descentkit
