#include "descentkit/linalg.hpp"

#include <algorithm>

namespace descentkit {

Vec zero_vec(FieldDescriptor f, std::size_t n) { return Vec(n, Scalar::zero(f)); }

Vec unit_vec(FieldDescriptor f, std::size_t n, std::size_t i) {
  Vec v = zero_vec(f, n);
  v[i] = Scalar::one(f);
  return v;
}

bool vec_is_zero(const Vec& v) {
  return std::all_of(v.begin(), v.end(), [](const Scalar& s) { return s.is_zero(); });
}

Vec vec_add(const Vec& a, const Vec& b) {
  if (a.size() != b.size()) fail(Errc::dimension_mismatch, "vector sizes differ");
  Vec r = a;
  for (std::size_t i = 0; i < r.size(); ++i) r[i] += b[i];
  return r;
}

Vec vec_sub(const Vec& a, const Vec& b) {
  if (a.size() != b.size()) fail(Errc::dimension_mismatch, "vector sizes differ");
  Vec r = a;
  for (std::size_t i = 0; i < r.size(); ++i) r[i] -= b[i];
  return r;
}

Vec vec_scale(const Scalar& c, const Vec& v) {
  Vec r = v;
  for (auto& x : r) x *= c;
  return r;
}

Matrix::Matrix(FieldDescriptor f, std::size_t rows, std::size_t cols)
    : field_(f), rows_(rows), cols_(cols), data_(rows * cols, Scalar::zero(f)) {}

Matrix Matrix::identity(FieldDescriptor f, std::size_t n) {
  Matrix m(f, n, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = Scalar::one(f);
  return m;
}

Matrix Matrix::from_rows(FieldDescriptor f, std::size_t cols, const std::vector<Vec>& rows) {
  Matrix m(f, rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) m.set_row(r, rows[r]);
  return m;
}

Matrix Matrix::from_cols(FieldDescriptor f, std::size_t rows, const std::vector<Vec>& cols) {
  Matrix m(f, rows, cols.size());
  for (std::size_t c = 0; c < cols.size(); ++c) m.set_col(c, cols[c]);
  return m;
}

Vec Matrix::row(std::size_t r) const {
  Vec v;
  v.reserve(cols_);
  for (std::size_t c = 0; c < cols_; ++c) v.push_back(at(r, c));
  return v;
}

Vec Matrix::col(std::size_t c) const {
  Vec v;
  v.reserve(rows_);
  for (std::size_t r = 0; r < rows_; ++r) v.push_back(at(r, c));
  return v;
}

void Matrix::set_row(std::size_t r, const Vec& v) {
  if (v.size() != cols_) fail(Errc::dimension_mismatch, "row length mismatch");
  for (std::size_t c = 0; c < cols_; ++c) at(r, c) = v[c];
}

void Matrix::set_col(std::size_t c, const Vec& v) {
  if (v.size() != rows_) fail(Errc::dimension_mismatch, "column length mismatch");
  for (std::size_t r = 0; r < rows_; ++r) at(r, c) = v[r];
}

Matrix Matrix::operator+(const Matrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) fail(Errc::dimension_mismatch, "matrix shapes differ in +");
  Matrix m = *this;
  for (std::size_t i = 0; i < data_.size(); ++i) m.data_[i] += o.data_[i];
  return m;
}

Matrix Matrix::operator-(const Matrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) fail(Errc::dimension_mismatch, "matrix shapes differ in -");
  Matrix m = *this;
  for (std::size_t i = 0; i < data_.size(); ++i) m.data_[i] -= o.data_[i];
  return m;
}

Matrix Matrix::operator*(const Matrix& o) const {
  if (cols_ != o.rows_) fail(Errc::dimension_mismatch, "matrix shapes differ in *");
  Matrix m(field_, rows_, o.cols_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t k = 0; k < cols_; ++k) {
      const Scalar& a = at(i, k);
      if (a.is_zero()) continue;
      for (std::size_t j = 0; j < o.cols_; ++j) {
        const Scalar& b = o.at(k, j);
        if (!b.is_zero()) m.at(i, j) += a * b;
      }
    }
  }
  return m;
}

Matrix Matrix::scaled(const Scalar& c) const {
  Matrix m = *this;
  for (auto& x : m.data_) x *= c;
  return m;
}

Matrix Matrix::transpose() const {
  Matrix m(field_, cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) m.at(c, r) = at(r, c);
  return m;
}

bool Matrix::operator==(const Matrix& o) const {
  if (field_ != o.field_ || rows_ != o.rows_ || cols_ != o.cols_) return false;
  for (std::size_t i = 0; i < data_.size(); ++i)
    if (data_[i] != o.data_[i]) return false;
  return true;
}

bool Matrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const Scalar& s) { return s.is_zero(); });
}

Vec Matrix::apply(const Vec& v) const {
  if (v.size() != cols_) fail(Errc::dimension_mismatch, "apply: vector length mismatch");
  Vec r = zero_vec(field_, rows_);
  for (std::size_t c = 0; c < cols_; ++c) {
    if (v[c].is_zero()) continue;
    for (std::size_t i = 0; i < rows_; ++i) {
      const Scalar& a = at(i, c);
      if (!a.is_zero()) r[i] += a * v[c];
    }
  }
  return r;
}

void Matrix::add_scaled_row(std::size_t target, std::size_t src, const Scalar& c) {
  if (c.is_zero()) return;
  for (std::size_t j = 0; j < cols_; ++j) {
    const Scalar& s = at(src, j);
    if (!s.is_zero()) at(target, j) += c * s;
  }
}

void Matrix::scale_row(std::size_t r, const Scalar& c) {
  for (std::size_t j = 0; j < cols_; ++j) at(r, j) *= c;
}

void Matrix::swap_rows(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t j = 0; j < cols_; ++j) std::swap(at(a, j), at(b, j));
}

Matrix hstack(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows()) fail(Errc::dimension_mismatch, "hstack row mismatch");
  Matrix m(a.field(), a.rows(), a.cols() + b.cols());
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t c = 0; c < a.cols(); ++c) m.at(r, c) = a.at(r, c);
    for (std::size_t c = 0; c < b.cols(); ++c) m.at(r, a.cols() + c) = b.at(r, c);
  }
  return m;
}

Matrix vstack(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.cols()) fail(Errc::dimension_mismatch, "vstack column mismatch");
  Matrix m(a.field(), a.rows() + b.rows(), a.cols());
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c) m.at(r, c) = a.at(r, c);
  for (std::size_t r = 0; r < b.rows(); ++r)
    for (std::size_t c = 0; c < b.cols(); ++c) m.at(a.rows() + r, c) = b.at(r, c);
  return m;
}

RrefResult rref(const Matrix& m) {
  Matrix a = m;
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < a.cols() && row < a.rows(); ++col) {
    std::size_t sel = row;
    while (sel < a.rows() && a.at(sel, col).is_zero()) ++sel;
    if (sel == a.rows()) continue;
    a.swap_rows(row, sel);
    Scalar piv = a.at(row, col);
    if (!piv.is_one()) a.scale_row(row, piv.inv());
    for (std::size_t r = 0; r < a.rows(); ++r) {
      if (r == row) continue;
      const Scalar& c = a.at(r, col);
      if (!c.is_zero()) a.add_scaled_row(r, row, -c);
    }
    pivots.push_back(col);
    ++row;
  }
  return {std::move(a), std::move(pivots)};
}

std::size_t rank(const Matrix& m) { return rref(m).pivots.size(); }

Subspace::Subspace(FieldDescriptor f, std::size_t ambient)
    : field_(f), ambient_(ambient), basis_(f, 0, ambient) {}

Subspace Subspace::from_span(FieldDescriptor f, std::size_t ambient, const std::vector<Vec>& spanning) {
  return from_matrix_rows(Matrix::from_rows(f, ambient, spanning));
}

Subspace Subspace::from_matrix_rows(const Matrix& rows) {
  RrefResult r = rref(rows);
  Subspace s(rows.field(), rows.cols());
  Matrix basis(rows.field(), r.pivots.size(), rows.cols());
  for (std::size_t i = 0; i < r.pivots.size(); ++i)
    for (std::size_t c = 0; c < rows.cols(); ++c) basis.at(i, c) = r.reduced.at(i, c);
  s.basis_ = std::move(basis);
  s.pivots_ = std::move(r.pivots);
  return s;
}

Subspace Subspace::full(FieldDescriptor f, std::size_t ambient) {
  return from_matrix_rows(Matrix::identity(f, ambient));
}

std::optional<Vec> Subspace::coordinates(const Vec& v) const {
  if (v.size() != ambient_) fail(Errc::dimension_mismatch, "coordinates: ambient mismatch");
  Vec residual = v;
  Vec coords = zero_vec(field_, dim());
  for (std::size_t i = 0; i < dim(); ++i) {
    Scalar c = residual[pivots_[i]];  // copy: the loop below zeroes this slot
    if (c.is_zero()) continue;
    coords[i] = c;
    for (std::size_t j = 0; j < ambient_; ++j) {
      const Scalar& b = basis_.at(i, j);
      if (!b.is_zero()) residual[j] -= c * b;
    }
  }
  if (!vec_is_zero(residual)) return std::nullopt;
  return coords;
}

bool Subspace::contains(const Vec& v) const { return coordinates(v).has_value(); }

bool Subspace::contains(const Subspace& other) const {
  if (other.ambient_ != ambient_) fail(Errc::dimension_mismatch, "contains: ambient mismatch");
  for (std::size_t i = 0; i < other.dim(); ++i)
    if (!contains(other.basis_vec(i))) return false;
  return true;
}

bool Subspace::operator==(const Subspace& o) const {
  return field_ == o.field_ && ambient_ == o.ambient_ && pivots_ == o.pivots_ && basis_ == o.basis_;
}

Subspace subspace_sum(const Subspace& a, const Subspace& b) {
  if (a.ambient_dim() != b.ambient_dim()) fail(Errc::dimension_mismatch, "sum: ambient mismatch");
  return Subspace::from_matrix_rows(vstack(a.basis(), b.basis()));
}

Subspace subspace_intersect(const Subspace& a, const Subspace& b) {
  if (a.ambient_dim() != b.ambient_dim()) fail(Errc::dimension_mismatch, "intersect: ambient mismatch");
  // Solve u^T A = v^T B: kernel of [A^T | -B^T] yields coefficient pairs.
  if (a.dim() == 0 || b.dim() == 0) return Subspace(a.field(), a.ambient_dim());
  Matrix stacked = hstack(a.basis().transpose(), b.basis().transpose().scaled(-Scalar::one(a.field())));
  Subspace pairs = kernel(stacked);
  std::vector<Vec> vecs;
  for (std::size_t i = 0; i < pairs.dim(); ++i) {
    Vec pair = pairs.basis_vec(i);
    Vec w = zero_vec(a.field(), a.ambient_dim());
    for (std::size_t s = 0; s < a.dim(); ++s) {
      if (pair[s].is_zero()) continue;
      for (std::size_t j = 0; j < a.ambient_dim(); ++j) {
        const Scalar& x = a.basis().at(s, j);
        if (!x.is_zero()) w[j] += pair[s] * x;
      }
    }
    vecs.push_back(std::move(w));
  }
  return Subspace::from_span(a.field(), a.ambient_dim(), vecs);
}

Subspace kernel(const Matrix& m) {
  RrefResult r = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (std::size_t p : r.pivots) is_pivot[p] = true;
  std::vector<Vec> basis;
  for (std::size_t c = 0; c < m.cols(); ++c) {
    if (is_pivot[c]) continue;
    Vec v = zero_vec(m.field(), m.cols());
    v[c] = Scalar::one(m.field());
    for (std::size_t i = 0; i < r.pivots.size(); ++i) v[r.pivots[i]] = -r.reduced.at(i, c);
    basis.push_back(std::move(v));
  }
  return Subspace::from_span(m.field(), m.cols(), basis);
}

SolveResult solve(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows()) fail(Errc::dimension_mismatch, "solve: row mismatch");
  RrefResult r = rref(hstack(a, b));
  // inconsistent iff some pivot falls in the b-block
  for (std::size_t p : r.pivots)
    if (p >= a.cols()) return {std::nullopt, kernel(a)};
  Matrix particular(a.field(), a.cols(), b.cols());
  for (std::size_t i = 0; i < r.pivots.size(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j)
      particular.at(r.pivots[i], j) = r.reduced.at(i, a.cols() + j);
  return {std::move(particular), kernel(a)};
}

QuotientData quotient_space(std::size_t ambient, const Subspace& sub) {
  if (sub.ambient_dim() != ambient) fail(Errc::dimension_mismatch, "quotient: ambient mismatch");
  QuotientData q;
  q.ambient_dim = ambient;
  q.sub = sub;
  std::vector<bool> is_pivot(ambient, false);
  for (std::size_t p : sub.pivots()) is_pivot[p] = true;
  for (std::size_t c = 0; c < ambient; ++c)
    if (!is_pivot[c]) q.complement.push_back(c);
  FieldDescriptor f = sub.field();
  std::size_t qd = q.complement.size();
  q.project = Matrix(f, qd, ambient);
  q.lift = Matrix(f, ambient, qd);
  for (std::size_t t = 0; t < qd; ++t) {
    q.project.at(t, q.complement[t]) = Scalar::one(f);
    q.lift.at(q.complement[t], t) = Scalar::one(f);
  }
  // reducing a pivot coordinate against the basis row moves it onto the complement
  for (std::size_t i = 0; i < sub.dim(); ++i)
    for (std::size_t t = 0; t < qd; ++t) {
      const Scalar& c = sub.basis().at(i, q.complement[t]);
      if (!c.is_zero()) q.project.at(t, sub.pivots()[i]) = -c;
    }
  return q;
}

}  // namespace descentkit
