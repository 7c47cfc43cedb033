#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "descentkit/field.hpp"

namespace descentkit {

using Vec = std::vector<Scalar>;

Vec zero_vec(FieldDescriptor f, std::size_t n);
Vec unit_vec(FieldDescriptor f, std::size_t n, std::size_t i);
bool vec_is_zero(const Vec& v);
Vec vec_add(const Vec& a, const Vec& b);
Vec vec_sub(const Vec& a, const Vec& b);
Vec vec_scale(const Scalar& c, const Vec& v);

// Dense exact matrix, row-major. Coordinate vectors are columns, so a linear
// map is applied as m.apply(v).
class Matrix {
 public:
  Matrix() : Matrix(make_rational_field(), 0, 0) {}
  Matrix(FieldDescriptor f, std::size_t rows, std::size_t cols);

  static Matrix identity(FieldDescriptor f, std::size_t n);
  static Matrix from_rows(FieldDescriptor f, std::size_t cols, const std::vector<Vec>& rows);
  static Matrix from_cols(FieldDescriptor f, std::size_t rows, const std::vector<Vec>& cols);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  const FieldDescriptor& field() const { return field_; }

  Scalar& at(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Scalar& at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  Vec row(std::size_t r) const;
  Vec col(std::size_t c) const;
  void set_row(std::size_t r, const Vec& v);
  void set_col(std::size_t c, const Vec& v);

  Matrix operator+(const Matrix& o) const;
  Matrix operator-(const Matrix& o) const;
  Matrix operator*(const Matrix& o) const;
  Matrix scaled(const Scalar& c) const;
  Matrix transpose() const;
  bool operator==(const Matrix& o) const;
  bool operator!=(const Matrix& o) const { return !(*this == o); }
  bool is_zero() const;

  Vec apply(const Vec& v) const;  // m * v, v a column vector

  void add_scaled_row(std::size_t target, std::size_t src, const Scalar& c);
  void scale_row(std::size_t r, const Scalar& c);
  void swap_rows(std::size_t a, std::size_t b);

 private:
  FieldDescriptor field_;
  std::size_t rows_, cols_;
  std::vector<Scalar> data_;
};

Matrix hstack(const Matrix& a, const Matrix& b);
Matrix vstack(const Matrix& a, const Matrix& b);

struct RrefResult {
  Matrix reduced;                   // unique reduced row echelon form
  std::vector<std::size_t> pivots;  // pivot column per nonzero row
};

RrefResult rref(const Matrix& m);
std::size_t rank(const Matrix& m);

// Canonical subspace of a coordinate space: basis rows kept in RREF, so two
// subspaces are equal iff their representations are identical.
class Subspace {
 public:
  Subspace() : Subspace(make_rational_field(), 0) {}
  Subspace(FieldDescriptor f, std::size_t ambient);  // zero subspace

  static Subspace from_span(FieldDescriptor f, std::size_t ambient, const std::vector<Vec>& spanning);
  static Subspace from_matrix_rows(const Matrix& rows);
  static Subspace full(FieldDescriptor f, std::size_t ambient);

  std::size_t ambient_dim() const { return ambient_; }
  std::size_t dim() const { return basis_.rows(); }
  const FieldDescriptor& field() const { return field_; }
  const Matrix& basis() const { return basis_; }  // RREF rows
  const std::vector<std::size_t>& pivots() const { return pivots_; }
  Vec basis_vec(std::size_t i) const { return basis_.row(i); }

  bool contains(const Vec& v) const;
  bool contains(const Subspace& other) const;
  bool operator==(const Subspace& o) const;
  bool operator!=(const Subspace& o) const { return !(*this == o); }

  // Coordinates of v in the basis rows; nullopt when v is outside.
  std::optional<Vec> coordinates(const Vec& v) const;

 private:
  FieldDescriptor field_;
  std::size_t ambient_;
  Matrix basis_;
  std::vector<std::size_t> pivots_;
};

Subspace subspace_sum(const Subspace& a, const Subspace& b);
Subspace subspace_intersect(const Subspace& a, const Subspace& b);

// Span of f(u, v) over basis pairs, where f is given on ambient basis
// elements and extended bilinearly.
template <typename BilinearFn>
Subspace subspace_product(const Subspace& a, const Subspace& b, std::size_t target_ambient,
                          BilinearFn&& on_basis_pair) {
  std::vector<Vec> out;
  for (std::size_t s = 0; s < a.dim(); ++s) {
    Vec u = a.basis_vec(s);
    for (std::size_t t = 0; t < b.dim(); ++t) {
      Vec v = b.basis_vec(t);
      Vec w = zero_vec(a.field(), target_ambient);
      for (std::size_t i = 0; i < u.size(); ++i) {
        if (u[i].is_zero()) continue;
        for (std::size_t j = 0; j < v.size(); ++j) {
          if (v[j].is_zero()) continue;
          Scalar c = u[i] * v[j];
          Vec base = on_basis_pair(i, j);
          for (std::size_t k = 0; k < target_ambient; ++k)
            if (!base[k].is_zero()) w[k] += c * base[k];
        }
      }
      out.push_back(std::move(w));
    }
  }
  return Subspace::from_span(a.field(), target_ambient, out);
}

struct SolveResult {
  std::optional<Matrix> particular;  // a*particular == b when consistent
  Subspace nullspace;                // kernel of a
};

SolveResult solve(const Matrix& a, const Matrix& b);
Subspace kernel(const Matrix& m);

// Quotient of a coordinate space by a subspace. The representative basis is
// the lexicographically first set of standard vectors missing the pivots,
// so project * lift == identity and kernel(project) == sub.
struct QuotientData {
  std::size_t ambient_dim = 0;
  Subspace sub;
  std::vector<std::size_t> complement;  // ambient indices of quotient basis
  Matrix project;                       // dim(quotient) x ambient
  Matrix lift;                          // ambient x dim(quotient)
  std::size_t dim() const { return complement.size(); }
};

QuotientData quotient_space(std::size_t ambient, const Subspace& sub);

}  // namespace descentkit
