#include <doctest.h>

#include "descentkit/linalg.hpp"
#include "descentkit/rng.hpp"
#include "helpers.hpp"

using namespace descentkit;
using testutil::mat;
using testutil::vec;

TEST_CASE("rref reaches the unique reduced form") {
  FieldDescriptor q = make_rational_field();
  RrefResult r = rref(mat(q, {{1, 2, 1}, {2, 4, 0}, {0, 0, 1}}));
  CHECK(r.reduced == mat(q, {{1, 2, 0}, {0, 0, 1}, {0, 0, 0}}));
  CHECK(r.pivots == std::vector<std::size_t>{0, 2});
  CHECK(rank(mat(q, {{1, 2}, {2, 4}})) == 1);
}

TEST_CASE("kernel is canonical") {
  FieldDescriptor f2 = make_prime_field(2);
  Subspace k = kernel(mat(f2, {{1, 1}}));
  CHECK(k.dim() == 1);
  CHECK(k.contains(vec(f2, {1, 1})));
  CHECK(k.basis_vec(0) == vec(f2, {1, 1}));

  FieldDescriptor q = make_rational_field();
  Subspace k2 = kernel(mat(q, {{1, 2, 3}}));
  CHECK(k2.dim() == 2);
  CHECK(k2.contains(vec(q, {-2, 1, 0})));
  CHECK(k2.contains(vec(q, {-3, 0, 1})));
}

TEST_CASE("solve splits into particular plus nullspace") {
  FieldDescriptor f3 = make_prime_field(3);
  Matrix a = mat(f3, {{1, 2, 0}, {0, 0, 1}});
  Matrix b = mat(f3, {{1}, {2}});
  SolveResult s = solve(a, b);
  REQUIRE(s.particular.has_value());
  CHECK(a * *s.particular == b);
  CHECK(s.nullspace.dim() == 1);
  CHECK((a * Matrix::from_cols(f3, 3, {s.nullspace.basis_vec(0)})).is_zero());

  SolveResult bad = solve(mat(f3, {{1, 0}, {1, 0}}), mat(f3, {{1}, {2}}));
  CHECK(!bad.particular.has_value());
}

TEST_CASE("rank plus nullity equals the column count on seeded matrices") {
  std::vector<FieldDescriptor> fields{make_prime_field(2), make_prime_field(3),
                                      make_rational_field()};
  Xorshift64 rng(0x5eed);
  for (const FieldDescriptor& f : fields)
    for (int it = 0; it < 20; ++it) {
      std::size_t rows = 1 + rng.next_below(5), cols = 1 + rng.next_below(5);
      Matrix m(f, rows, cols);
      for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j)
          m.at(i, j) = Scalar::from_int(f, static_cast<long long>(rng.next_below(7)) - 3);
      CHECK(rank(m) + kernel(m).dim() == cols);
      CHECK(rank(m) == rank(m.transpose()));
    }
}

TEST_CASE("quotient data satisfies its contracts") {
  FieldDescriptor f2 = make_prime_field(2);
  Subspace sub = Subspace::from_span(f2, 4, {vec(f2, {1, 1, 0, 0}), vec(f2, {0, 0, 1, 1})});
  QuotientData qd = quotient_space(4, sub);
  CHECK(qd.dim() == 2);
  CHECK(qd.complement == std::vector<std::size_t>{1, 3});  // first standard vectors off the pivots
  CHECK(qd.project * qd.lift == Matrix::identity(f2, 2));
  CHECK(kernel(qd.project) == sub);
  for (std::size_t t = 0; t < sub.dim(); ++t)
    CHECK(vec_is_zero(qd.project.apply(sub.basis_vec(t))));
}

TEST_CASE("subspace sum and intersection satisfy the dimension law") {
  FieldDescriptor f3 = make_prime_field(3);
  Subspace a = Subspace::from_span(f3, 4, {vec(f3, {1, 0, 0, 0}), vec(f3, {0, 1, 0, 0})});
  Subspace b = Subspace::from_span(f3, 4, {vec(f3, {0, 1, 0, 0}), vec(f3, {0, 0, 1, 0})});
  Subspace s = subspace_sum(a, b);
  Subspace i = subspace_intersect(a, b);
  CHECK(s.dim() == 3);
  CHECK(i.dim() == 1);
  CHECK(i.contains(vec(f3, {0, 1, 0, 0})));
  CHECK(s.dim() + i.dim() == a.dim() + b.dim());
  CHECK(s.contains(a));
  CHECK(s.contains(b));
}

TEST_CASE("subspace product extends bilinearly") {
  // simulate multiplication in a truncated polynomial ring: e_i * e_j = e_{i+j}, zero past degree 3
  FieldDescriptor f2 = make_prime_field(2);
  auto on_pair = [&](std::size_t i, std::size_t j) {
    Vec out = zero_vec(f2, 4);
    if (i + j < 4) out[i + j] = Scalar::one(f2);
    return out;
  };
  Subspace x2 = Subspace::from_span(f2, 4, {vec(f2, {0, 0, 1, 0})});
  Subspace x = Subspace::from_span(f2, 4, {vec(f2, {0, 1, 0, 0})});
  Subspace prod = subspace_product(x2, x, 4, on_pair);
  CHECK(prod.dim() == 1);
  CHECK(prod.contains(vec(f2, {0, 0, 0, 1})));
  Subspace zero = subspace_product(prod, x2, 4, on_pair);  // x^3 * x^2 = 0
  CHECK(zero.dim() == 0);
}

TEST_CASE("coordinates invert the basis representation") {
  FieldDescriptor q = make_rational_field();
  Subspace s = Subspace::from_span(q, 3, {vec(q, {1, 1, 0}), vec(q, {0, 2, 2})});
  Vec v = vec(q, {2, 5, 3});
  auto coords = s.coordinates(v);
  REQUIRE(coords.has_value());
  Vec rebuilt = zero_vec(q, 3);
  for (std::size_t i = 0; i < s.dim(); ++i)
    rebuilt = vec_add(rebuilt, vec_scale((*coords)[i], s.basis_vec(i)));
  CHECK(rebuilt == v);
  CHECK(!s.coordinates(vec(q, {1, 0, 0})).has_value());
}

TEST_CASE("matrix block helpers compose correctly") {
  FieldDescriptor f5 = make_prime_field(5);
  Matrix a = mat(f5, {{1, 2}, {3, 4}});
  Matrix b = mat(f5, {{0, 1}, {1, 0}});
  CHECK(hstack(a, b).cols() == 4);
  CHECK(vstack(a, b).rows() == 4);
  CHECK(hstack(a, b).col(2) == b.col(0));
  CHECK(vstack(a, b).row(3) == b.row(1));
  CHECK((a * b) == mat(f5, {{2, 1}, {4, 3}}));
  CHECK(a.transpose() == mat(f5, {{1, 3}, {2, 4}}));
}

TEST_CASE("membership and coordinates hold on random spans") {
  // regression class for subspaces whose reduced bases touch many columns
  std::vector<FieldDescriptor> fields{make_prime_field(2), make_prime_field(5),
                                      make_rational_field()};
  Xorshift64 rng(7);
  auto rand_scalar = [&](FieldDescriptor f) {
    if (f.kind == FieldKind::prime) return Scalar(f, rng.next_below(f.p));
    return Scalar::from_int(f, static_cast<long long>(rng.next_below(11)) - 5);
  };
  for (FieldDescriptor f : fields) {
    for (int round = 0; round < 25; ++round) {
      const std::size_t ambient = 6;
      std::vector<Vec> spanning;
      for (int s = 0; s < 3; ++s) {
        Vec v = zero_vec(f, ambient);
        for (auto& x : v) x = rand_scalar(f);
        spanning.push_back(std::move(v));
      }
      Subspace sub = Subspace::from_span(f, ambient, spanning);
      for (const Vec& v : spanning) CHECK(sub.contains(v));

      Vec combo = zero_vec(f, ambient);
      Vec coeffs = zero_vec(f, sub.dim());
      for (std::size_t i = 0; i < sub.dim(); ++i) {
        coeffs[i] = rand_scalar(f);
        combo = vec_add(combo, vec_scale(coeffs[i], sub.basis_vec(i)));
      }
      auto back = sub.coordinates(combo);
      REQUIRE(back.has_value());
      CHECK(*back == coeffs);

      // standard vectors at non-pivot columns always fall outside
      std::vector<bool> is_pivot(ambient, false);
      for (std::size_t p : sub.pivots()) is_pivot[p] = true;
      for (std::size_t j = 0; j < ambient; ++j)
        if (!is_pivot[j]) CHECK(!sub.contains(unit_vec(f, ambient, j)));
    }
  }
}

TEST_CASE("kernel vectors actually annihilate") {
  std::vector<FieldDescriptor> fields{make_prime_field(2), make_prime_field(3),
                                      make_rational_field()};
  Xorshift64 rng(11);
  for (FieldDescriptor f : fields) {
    for (int round = 0; round < 20; ++round) {
      std::size_t rows = 1 + rng.next_below(4), cols = 1 + rng.next_below(5);
      Matrix m(f, rows, cols);
      for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c)
          m.at(r, c) = f.kind == FieldKind::prime
                           ? Scalar(f, rng.next_below(f.p))
                           : Scalar::from_int(f, static_cast<long long>(rng.next_below(7)) - 3);
      Subspace k = kernel(m);
      CHECK(rank(m) + k.dim() == cols);
      for (std::size_t i = 0; i < k.dim(); ++i) CHECK(vec_is_zero(m.apply(k.basis_vec(i))));

      SolveResult sr = solve(m, Matrix(f, rows, 1));  // homogeneous: kernel == nullspace
      CHECK(sr.nullspace == k);
    }
  }
}
