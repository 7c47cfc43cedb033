#pragma once

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "descentkit/linalg.hpp"

namespace descentkit {

// Degrees live in Z^z x N^n; the last n entries must stay nonnegative.
using Degree = std::vector<long long>;

struct GradingSignature {
  std::size_t z_count = 0;
  std::size_t n_count = 0;
  std::size_t length() const { return z_count + n_count; }
  bool operator==(const GradingSignature& o) const {
    return z_count == o.z_count && n_count == o.n_count;
  }
};

struct AlgebraGrading {
  GradingSignature signature;
  std::vector<Degree> degrees;  // one per basis element
};

Degree degree_add(const Degree& a, const Degree& b);
std::string degree_str(const Degree& d);

// True when every nonzero coordinate of v sits in one common degree; the
// degree comes back through `out` (zero vectors are vacuously homogeneous).
bool is_homogeneous(const Vec& v, const std::vector<Degree>& degrees, std::optional<Degree>* out = nullptr);

struct MulTriple {
  std::size_t i, j, k;
  Scalar c;  // coefficient of e_k in e_i * e_j
};

// Finite-dimensional associative unital algebra over an exact field, given by
// structure constants. Left/right multiplication matrices are cached at
// construction; validity (associativity etc.) is checked by validate_algebra.
class Algebra {
 public:
  Algebra(FieldDescriptor field, std::size_t dim, std::vector<std::string> labels,
          std::vector<MulTriple> mul, Vec unit, std::optional<Vec> augmentation,
          std::optional<AlgebraGrading> grading);

  const FieldDescriptor& field() const { return field_; }
  std::size_t dim() const { return dim_; }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::vector<MulTriple>& mul_triples() const { return mul_; }
  const Vec& unit() const { return unit_; }
  const std::optional<Vec>& augmentation() const { return augmentation_; }
  const std::optional<AlgebraGrading>& grading() const { return grading_; }
  bool is_graded() const { return grading_.has_value(); }

  const Matrix& left_mul(std::size_t i) const { return left_[i]; }
  const Matrix& right_mul(std::size_t i) const { return right_[i]; }
  Matrix left_mul_by(const Vec& v) const;
  Matrix right_mul_by(const Vec& v) const;
  Vec multiply(const Vec& u, const Vec& v) const;
  Scalar eps(const Vec& v) const;  // throws missing_augmentation

 private:
  FieldDescriptor field_;
  std::size_t dim_;
  std::vector<std::string> labels_;
  std::vector<MulTriple> mul_;
  Vec unit_;
  std::optional<Vec> augmentation_;
  std::optional<AlgebraGrading> grading_;
  std::vector<Matrix> left_, right_;
};

using AlgebraPtr = std::shared_ptr<const Algebra>;

AlgebraPtr make_algebra(FieldDescriptor field, std::size_t dim, std::vector<std::string> labels,
                        std::vector<MulTriple> mul, Vec unit,
                        std::optional<Vec> augmentation = std::nullopt,
                        std::optional<AlgebraGrading> grading = std::nullopt);

// Structural identity: same field, dimension, products, unit, augmentation
// and grading. Labels are cosmetic and ignored.
bool algebra_equal(const Algebra& a, const Algebra& b);

Report validate_algebra(const Algebra& a);

Algebra opposite_algebra(const Algebra& a);

struct AlgebraMap {
  AlgebraPtr source, target;
  Matrix matrix;  // dim(target) x dim(source); column i is the image of basis i

  Vec apply(const Vec& v) const { return matrix.apply(v); }
  Vec image_of_basis(std::size_t i) const { return matrix.col(i); }
};

Report validate_algebra_map(const AlgebraMap& f);

enum class IdealSide { left, right, two_sided };

struct IdealData {
  AlgebraPtr algebra;
  Subspace space;
  IdealSide side = IdealSide::two_sided;
  // filled for two-sided ideals: (is_nilpotent, vanishing power)
  std::optional<std::pair<bool, std::size_t>> nilpotency;
};

// Smallest subspace containing the generators and closed under the stated
// multiplications.
IdealData ideal_generated(AlgebraPtr a, const std::vector<Vec>& generators, IdealSide side);

bool ideal_closed(const Algebra& a, const Subspace& k, IdealSide side);

// Requires k two-sided (checked). Returns (true, least n with k^n = 0) or
// (false, 0) when the powers stabilize at a nonzero subspace. For two-sided
// ideals of these finite-dimensional algebras, nilpotency is equivalent to
// lying inside the Jacobson radical.
std::pair<bool, std::size_t> is_nilpotent_ideal(const Algebra& a, const Subspace& k);

// Augmented with nilpotent augmentation ideal; throws missing_augmentation.
bool check_local_augmented(const Algebra& a);

Subspace augmentation_ideal(const Algebra& a);

struct QuotientAlgebraResult {
  AlgebraPtr quotient;
  AlgebraMap projection;
  QuotientData qd;
};

// b / k for a two-sided k (checked, throws not_two_sided). The quotient basis
// is the lexicographically first complement of the pivot columns; the
// augmentation descends when k lies in its kernel, the grading when k is
// spanned by homogeneous vectors.
QuotientAlgebraResult quotient_algebra(AlgebraPtr b, const Subspace& k);

}  // namespace descentkit
