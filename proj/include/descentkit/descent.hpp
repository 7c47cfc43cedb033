#pragma once

#include <variant>

#include "descentkit/modules.hpp"

namespace descentkit {

struct HypothesisChecks {
  bool a_local = false;
  bool b_free_over_a = false;
  bool k_two_sided = false;
  bool k_nilpotent = false;
  bool c_local = false;
};

// A -> B -> C with C = B / (ideal generated by the image of the augmentation
// ideal of A). Built only when every hypothesis certifies: the kernel ideal
// two-sided and nilpotent, A local, B free nonzero over A, C local.
struct ExtensionContext {
  AlgebraPtr A, B, C;
  AlgebraMap f;      // A -> B
  AlgebraMap g;      // B -> C, the quotient projection
  IdealData I_A;     // augmentation ideal of A
  IdealData K;       // kernel ideal in B
  QuotientData bq;   // quotient data of B by K; lift is the complement section
  std::size_t rho = 0;  // rank of B as a module over A
  HypothesisChecks checks;
  bool graded = false;
};

ExtensionContext build_context(AlgebraPtr a, AlgebraPtr b, AlgebraMap f);

// Presentation of n restricted to A and tensored back up to B. Ambient index
// (u, j) = u * dim(B) + j stands for n_u (x) b_j.
struct TensorPresentation {
  std::size_t n_dim = 0, ambient = 0;
  Subspace relations;
  QuotientData qd;
  Module quotient;  // over B, dimension n_dim * rho
  Matrix counit;    // n_dim x dim(quotient): class(n (x) b) -> n * b
  Matrix iota;      // dim(quotient) x n_dim: n -> class(n (x) 1)
};

TensorPresentation compute_fgn(const ExtensionContext& ctx, const Module& n);

struct CriterionVerdict {
  bool free = false;
  FreenessResult freeness;   // of nbar over C
  Module nbar;               // n / n*K
  Matrix projection;         // n -> nbar
  QuotientData nbar_qd;
};

// The freeness criterion: n is extended from A iff n (x)_B C is free over C.
CriterionVerdict descent_criterion(const ExtensionContext& ctx, const Module& n);

enum class Step { S1, S2, S3, S4, S5, S6, S7 };
const char* step_name(Step s);

struct StepFailure {
  Step step;
  Vec witness;
  std::string detail;
};

struct SigmaData {
  std::vector<Vec> lifts;  // generator representatives inside n
  Module free_source;      // free B-module of rank y_rank
  Matrix sigma;            // n_dim x (y_rank * dimB)
  Subspace sigma_kernel;
  std::optional<std::vector<Degree>> shifts;
};

// Lift the freeness generators through n -> nbar and assemble the induced map
// from the free module. variant 0 takes the canonical complement lifts;
// variant v > 0 perturbs one lift by one kernel basis vector (deterministic
// enumeration), failing with S1 once the variants are exhausted.
std::variant<SigmaData, StepFailure> construct_sigma(const ExtensionContext& ctx, const Module& n,
                                                     const CriterionVerdict& verdict,
                                                     std::size_t variant);

struct PsiData {
  TensorPresentation fgn;
  Matrix psi;  // coaction n -> fgn.quotient
};

// Pushes the standard coaction of the free module through sigma. Verifies the
// factorization over ker(sigma) (S4), module-linearity (also S4), counitality
// (S5) and coassociativity (S6).
std::variant<PsiData, StepFailure> construct_psi(const ExtensionContext& ctx, const Module& n,
                                                 const SigmaData& sig);

struct Certificate {
  std::size_t y_rank = 0;
  std::optional<std::vector<Degree>> shifts;
  std::vector<Vec> lifts;
  Matrix sigma;
  Matrix psi;
  Subspace m_basis;  // equalizer of psi and iota inside n
  Module m;          // descended module over A
  Matrix mu;         // base_change(f, m) -> n, verified bijective module map
  std::size_t retries_used = 0;
};

struct StepChecks {
  bool s2 = false, s3 = false, s4 = false, s5 = false, s6 = false, s7 = false;
};

struct DescentOutcome {
  bool criterion_free = false;
  std::size_t criterion_rank = 0;  // minimal generators of nbar
  bool success = false;
  std::optional<Certificate> certificate;
  std::optional<StepFailure> failure;  // absent when the criterion already failed
  StepChecks checks;                   // first attempt's progress; all true on success
  std::size_t retries_used = 0;
};

DescentOutcome descend(const ExtensionContext& ctx, const Module& n, std::size_t retry_bound = 16);

// Independent re-derivation of every step check from the certificate's raw
// matrices. Empty report iff the certificate is accepted; items carry the
// first violated step in their check field.
Report verify_certificate(const ExtensionContext& ctx, const Module& n, const Certificate& cert);

}  // namespace descentkit
