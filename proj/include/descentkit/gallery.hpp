#pragma once

#include "descentkit/descent.hpp"

namespace descentkit {

// Group algebra from a multiplication table (table[i][j] is the index of the
// product). Identity, associativity and inverses are checked; violations
// throw not_a_group. The augmentation sends every group element to 1.
AlgebraPtr group_algebra(const std::vector<std::vector<std::size_t>>& table, FieldDescriptor f,
                         const std::vector<std::string>* labels = nullptr);

// k[x]/(x^t), graded with deg(x) = gen_degree (one natural grading slot).
AlgebraPtr truncated_polynomial(FieldDescriptor f, std::size_t t, const std::string& var = "x",
                                long long gen_degree = 1);

// Exterior algebra on n generators, basis indexed by subsets; deg(e_i) = 1.
AlgebraPtr exterior_algebra(FieldDescriptor f, std::size_t n);

struct MapFamily {
  AlgebraPtr base, total;
  AlgebraMap map;
};

// k[y]/(y^{p^a}) -> k[x]/(x^{p^{a+b}}), y -> x^{p^b}, over GF(p); the grading
// puts y in degree p^b so the map preserves degrees.
MapFamily frobenius_family(std::uint64_t p, std::size_t a, std::size_t b);

// Group algebra inclusion C_m < C_n (requires m | n), h -> g^{n/m}.
MapFamily cyclic_inclusion(std::size_t m, std::size_t n, FieldDescriptor f);

// One-dimensional module where the algebra acts through its augmentation.
Module trivial_module(AlgebraPtr a);

// Named example modules over b: the regular module, the trivial module, and
// for algebras with a single nilpotent generator w the cyclic quotients
// b/(w^s) for 2 <= s < dim(b).
std::vector<std::pair<std::string, Module>> starter_modules(AlgebraPtr b);

// Deterministic pseudo-random module of the requested dimension: a quotient
// of a free module by the submodule generated by seeded random vectors.
// Throws budget_exceeded when rejection sampling fails to hit the dimension.
Module random_module(AlgebraPtr a, std::size_t dim, std::uint64_t seed);

// All isomorphism classes of right modules of dimension 1..max_dim. Uses the
// nilpotent-single-generator classification when it applies (partition types)
// and otherwise enumerates action tuples on a generating set, which throws
// budget_exceeded when the search space exceeds the budget.
std::vector<Module> enumerate_modules(AlgebraPtr a, std::size_t max_dim,
                                      std::uint64_t budget = 1ull << 22);

struct OracleResult {
  bool extended = false;
  std::optional<Module> base;  // witness module over the base when extended
};

// Brute-force ground truth: n is extended iff it is isomorphic to m (x) B for
// some base module m of dimension dim(n)/rho. Exact on finite fields within
// budget; throws budget_exceeded when any isomorphism test is inconclusive.
OracleResult decide_extended_oracle(const ExtensionContext& ctx, const Module& n,
                                    std::uint64_t budget = 1ull << 22, const SearchPolicy& pol = {});

}  // namespace descentkit
