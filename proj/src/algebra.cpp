#include "descentkit/algebra.hpp"

#include <algorithm>

namespace descentkit {

Degree degree_add(const Degree& a, const Degree& b) {
  if (a.size() != b.size()) fail(Errc::dimension_mismatch, "degree length mismatch");
  Degree d = a;
  for (std::size_t i = 0; i < d.size(); ++i) d[i] += b[i];
  return d;
}

std::string degree_str(const Degree& d) {
  std::string s = "(";
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(d[i]);
  }
  return s + ")";
}

bool is_homogeneous(const Vec& v, const std::vector<Degree>& degrees, std::optional<Degree>* out) {
  std::optional<Degree> found;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i].is_zero()) continue;
    if (!found) {
      found = degrees[i];
    } else if (*found != degrees[i]) {
      return false;
    }
  }
  if (out) *out = found;
  return true;
}

Algebra::Algebra(FieldDescriptor field, std::size_t dim, std::vector<std::string> labels,
                 std::vector<MulTriple> mul, Vec unit, std::optional<Vec> augmentation,
                 std::optional<AlgebraGrading> grading)
    : field_(field),
      dim_(dim),
      labels_(std::move(labels)),
      mul_(std::move(mul)),
      unit_(std::move(unit)),
      augmentation_(std::move(augmentation)),
      grading_(std::move(grading)) {
  if (labels_.empty())
    for (std::size_t i = 0; i < dim_; ++i) labels_.push_back("e" + std::to_string(i));
  if (labels_.size() != dim_) fail(Errc::dimension_mismatch, "label count != dim");
  if (unit_.size() != dim_) fail(Errc::dimension_mismatch, "unit vector length != dim");
  if (augmentation_ && augmentation_->size() != dim_)
    fail(Errc::dimension_mismatch, "augmentation length != dim");
  if (grading_ && grading_->degrees.size() != dim_)
    fail(Errc::dimension_mismatch, "grading degree count != dim");
  left_.assign(dim_, Matrix(field_, dim_, dim_));
  right_.assign(dim_, Matrix(field_, dim_, dim_));
  for (const auto& t : mul_) {
    if (t.i >= dim_ || t.j >= dim_ || t.k >= dim_)
      fail(Errc::parse_error, "structure constant index out of range");
    if (t.c.field() != field_) fail(Errc::field_mismatch, "structure constant field mismatch");
    left_[t.i].at(t.k, t.j) += t.c;   // e_i * e_j contributes to column j of L_i
    right_[t.j].at(t.k, t.i) += t.c;  // and to column i of R_j
  }
}

Matrix Algebra::left_mul_by(const Vec& v) const {
  Matrix m(field_, dim_, dim_);
  for (std::size_t i = 0; i < dim_; ++i)
    if (!v[i].is_zero()) m = m + left_[i].scaled(v[i]);
  return m;
}

Matrix Algebra::right_mul_by(const Vec& v) const {
  Matrix m(field_, dim_, dim_);
  for (std::size_t i = 0; i < dim_; ++i)
    if (!v[i].is_zero()) m = m + right_[i].scaled(v[i]);
  return m;
}

Vec Algebra::multiply(const Vec& u, const Vec& v) const {
  if (u.size() != dim_ || v.size() != dim_) fail(Errc::dimension_mismatch, "multiply: length mismatch");
  Vec r = zero_vec(field_, dim_);
  for (std::size_t i = 0; i < dim_; ++i) {
    if (u[i].is_zero()) continue;
    Vec lv = left_[i].apply(v);
    for (std::size_t k = 0; k < dim_; ++k)
      if (!lv[k].is_zero()) r[k] += u[i] * lv[k];
  }
  return r;
}

Scalar Algebra::eps(const Vec& v) const {
  if (!augmentation_) fail(Errc::missing_augmentation, "algebra has no augmentation");
  Scalar s = Scalar::zero(field_);
  for (std::size_t i = 0; i < dim_; ++i)
    if (!v[i].is_zero()) s += v[i] * (*augmentation_)[i];
  return s;
}

AlgebraPtr make_algebra(FieldDescriptor field, std::size_t dim, std::vector<std::string> labels,
                        std::vector<MulTriple> mul, Vec unit, std::optional<Vec> augmentation,
                        std::optional<AlgebraGrading> grading) {
  return std::make_shared<Algebra>(field, dim, std::move(labels), std::move(mul), std::move(unit),
                                   std::move(augmentation), std::move(grading));
}

bool algebra_equal(const Algebra& a, const Algebra& b) {
  if (a.field() != b.field() || a.dim() != b.dim()) return false;
  for (std::size_t i = 0; i < a.dim(); ++i)
    if (a.left_mul(i) != b.left_mul(i)) return false;
  if (Matrix::from_rows(a.field(), a.dim(), {a.unit()}) !=
      Matrix::from_rows(b.field(), b.dim(), {b.unit()}))
    return false;
  if (a.augmentation().has_value() != b.augmentation().has_value()) return false;
  if (a.augmentation() && *a.augmentation() != *b.augmentation()) return false;
  if (a.grading().has_value() != b.grading().has_value()) return false;
  if (a.grading()) {
    if (!(a.grading()->signature == b.grading()->signature)) return false;
    if (a.grading()->degrees != b.grading()->degrees) return false;
  }
  return true;
}

Report validate_algebra(const Algebra& a) {
  Report rep;
  std::size_t n = a.dim();
  FieldDescriptor f = a.field();

  for (std::size_t j = 0; j < n; ++j) {
    Vec ej = unit_vec(f, n, j);
    if (a.multiply(a.unit(), ej) != ej) rep.add("unit.left", {j}, "1 * e_" + std::to_string(j));
    if (a.multiply(ej, a.unit()) != ej) rep.add("unit.right", {j}, "e_" + std::to_string(j) + " * 1");
  }

  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      Vec pij = a.left_mul(i).col(j);  // e_i * e_j
      for (std::size_t k = 0; k < n; ++k) {
        Vec lhs = a.multiply(pij, unit_vec(f, n, k));
        Vec rhs = a.left_mul(i).apply(a.left_mul(j).col(k));
        if (lhs != rhs) rep.add("associativity", {i, j, k}, "(e_i e_j) e_k != e_i (e_j e_k)");
      }
    }
  }

  if (a.augmentation()) {
    const Vec& eps = *a.augmentation();
    if (a.eps(a.unit()) != Scalar::one(f)) rep.add("augmentation.unit", {}, "eps(1) != 1");
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        Scalar lhs = a.eps(a.left_mul(i).col(j));
        if (lhs != eps[i] * eps[j]) rep.add("augmentation.multiplicative", {i, j}, "eps(e_i e_j) != eps(e_i) eps(e_j)");
      }
  }

  if (a.grading()) {
    const auto& g = *a.grading();
    for (std::size_t i = 0; i < n; ++i) {
      if (g.degrees[i].size() != g.signature.length()) {
        rep.add("grading.shape", {i}, "degree length != signature length");
        continue;
      }
      for (std::size_t t = 0; t < g.signature.n_count; ++t)
        if (g.degrees[i][g.signature.z_count + t] < 0)
          rep.add("grading.signature", {i}, "negative entry in N component");
    }
    if (rep.ok()) {
      for (const auto& t : a.mul_triples())
        if (!t.c.is_zero() && g.degrees[t.k] != degree_add(g.degrees[t.i], g.degrees[t.j]))
          rep.add("grading.multiplicative", {t.i, t.j, t.k}, "deg(e_k) != deg(e_i) + deg(e_j)");
      Degree zero(g.signature.length(), 0);
      for (std::size_t i = 0; i < n; ++i) {
        if (!a.unit()[i].is_zero() && g.degrees[i] != zero)
          rep.add("grading.unit", {i}, "unit supported outside degree 0");
        if (a.augmentation() && !(*a.augmentation())[i].is_zero() && g.degrees[i] != zero)
          rep.add("grading.augmentation", {i}, "augmentation supported outside degree 0");
      }
    }
  }
  return rep;
}

Algebra opposite_algebra(const Algebra& a) {
  std::vector<MulTriple> mul;
  mul.reserve(a.mul_triples().size());
  for (const auto& t : a.mul_triples()) mul.push_back({t.j, t.i, t.k, t.c});
  return Algebra(a.field(), a.dim(), a.labels(), std::move(mul), a.unit(), a.augmentation(),
                 a.grading());
}

Report validate_algebra_map(const AlgebraMap& f) {
  Report rep;
  const Algebra& s = *f.source;
  const Algebra& t = *f.target;
  if (s.field() != t.field()) {
    rep.add("map.field", {}, "source and target fields differ");
    return rep;
  }
  if (f.matrix.rows() != t.dim() || f.matrix.cols() != s.dim()) {
    rep.add("map.shape", {}, "matrix shape is not dim(target) x dim(source)");
    return rep;
  }
  if (f.apply(s.unit()) != t.unit()) rep.add("map.unit", {}, "f(1) != 1");
  for (std::size_t i = 0; i < s.dim(); ++i)
    for (std::size_t j = 0; j < s.dim(); ++j) {
      Vec lhs = f.apply(s.left_mul(i).col(j));
      Vec rhs = t.multiply(f.image_of_basis(i), f.image_of_basis(j));
      if (lhs != rhs) rep.add("map.multiplicative", {i, j}, "f(e_i e_j) != f(e_i) f(e_j)");
    }
  if (s.is_graded() && t.is_graded()) {
    if (!(s.grading()->signature == t.grading()->signature)) {
      rep.add("map.grading", {}, "grading signatures differ");
    } else {
      for (std::size_t i = 0; i < s.dim(); ++i) {
        std::optional<Degree> d;
        if (!is_homogeneous(f.image_of_basis(i), t.grading()->degrees, &d))
          rep.add("map.degree", {i}, "image of e_i is not homogeneous");
        else if (d && *d != s.grading()->degrees[i])
          rep.add("map.degree", {i}, "image of e_i has wrong degree");
      }
    }
  }
  return rep;
}

bool ideal_closed(const Algebra& a, const Subspace& k, IdealSide side) {
  for (std::size_t s = 0; s < k.dim(); ++s) {
    Vec v = k.basis_vec(s);
    for (std::size_t i = 0; i < a.dim(); ++i) {
      if (side != IdealSide::right && !k.contains(a.left_mul(i).apply(v))) return false;
      if (side != IdealSide::left && !k.contains(a.right_mul(i).apply(v))) return false;
    }
  }
  return true;
}

IdealData ideal_generated(AlgebraPtr a, const std::vector<Vec>& generators, IdealSide side) {
  Subspace cur = Subspace::from_span(a->field(), a->dim(), generators);
  for (;;) {
    std::vector<Vec> extra;
    for (std::size_t s = 0; s < cur.dim(); ++s) {
      Vec v = cur.basis_vec(s);
      for (std::size_t i = 0; i < a->dim(); ++i) {
        if (side != IdealSide::right) extra.push_back(a->left_mul(i).apply(v));
        if (side != IdealSide::left) extra.push_back(a->right_mul(i).apply(v));
      }
    }
    Subspace next = subspace_sum(cur, Subspace::from_span(a->field(), a->dim(), extra));
    if (next == cur) break;
    cur = next;
  }
  IdealData d;
  d.algebra = a;
  d.space = cur;
  d.side = side;
  if (side == IdealSide::two_sided) d.nilpotency = is_nilpotent_ideal(*a, cur);
  return d;
}

std::pair<bool, std::size_t> is_nilpotent_ideal(const Algebra& a, const Subspace& k) {
  if (!ideal_closed(a, k, IdealSide::two_sided))
    fail(Errc::not_two_sided, "nilpotency test needs a two-sided ideal");
  auto mul_basis = [&](std::size_t i, std::size_t j) { return a.left_mul(i).col(j); };
  Subspace power = k;
  for (std::size_t n = 1; n <= a.dim() + 1; ++n) {
    if (power.dim() == 0) return {true, n};
    Subspace next = subspace_product(power, k, a.dim(), mul_basis);
    if (next == power) return {false, 0};
    power = next;
  }
  return {false, 0};
}

Subspace augmentation_ideal(const Algebra& a) {
  if (!a.augmentation()) fail(Errc::missing_augmentation, "algebra has no augmentation");
  Matrix eps = Matrix::from_rows(a.field(), a.dim(), {*a.augmentation()});
  return kernel(eps);
}

bool check_local_augmented(const Algebra& a) {
  return is_nilpotent_ideal(a, augmentation_ideal(a)).first;
}

QuotientAlgebraResult quotient_algebra(AlgebraPtr b, const Subspace& k) {
  if (k.ambient_dim() != b->dim()) fail(Errc::dimension_mismatch, "quotient: ambient mismatch");
  if (!ideal_closed(*b, k, IdealSide::two_sided))
    fail(Errc::not_two_sided, "quotient by a non-two-sided ideal");

  QuotientData qd = quotient_space(b->dim(), k);
  FieldDescriptor f = b->field();
  std::size_t n = qd.dim();

  std::vector<std::string> labels;
  for (std::size_t t : qd.complement) labels.push_back(b->labels()[t]);

  std::vector<MulTriple> mul;
  for (std::size_t s = 0; s < n; ++s)
    for (std::size_t t = 0; t < n; ++t) {
      Vec prod = b->left_mul(qd.complement[s]).col(qd.complement[t]);
      Vec q = qd.project.apply(prod);
      for (std::size_t u = 0; u < n; ++u)
        if (!q[u].is_zero()) mul.push_back({s, t, u, q[u]});
    }

  Vec unit = qd.project.apply(b->unit());

  std::optional<Vec> aug;
  if (b->augmentation()) {
    bool killed = true;
    for (std::size_t s = 0; s < k.dim() && killed; ++s)
      killed = b->eps(k.basis_vec(s)).is_zero();
    if (killed) {
      Vec e;
      for (std::size_t t : qd.complement) e.push_back((*b->augmentation())[t]);
      aug = std::move(e);
    }
  }

  std::optional<AlgebraGrading> grading;
  if (b->is_graded()) {
    bool homog = true;
    for (std::size_t s = 0; s < k.dim() && homog; ++s)
      homog = is_homogeneous(k.basis_vec(s), b->grading()->degrees);
    if (homog) {
      AlgebraGrading g;
      g.signature = b->grading()->signature;
      for (std::size_t t : qd.complement) g.degrees.push_back(b->grading()->degrees[t]);
      grading = std::move(g);
    }
  }

  QuotientAlgebraResult out;
  out.quotient = make_algebra(f, n, std::move(labels), std::move(mul), std::move(unit),
                              std::move(aug), std::move(grading));
  out.projection = AlgebraMap{b, out.quotient, qd.project};
  out.qd = std::move(qd);
  return out;
}

}  // namespace descentkit
