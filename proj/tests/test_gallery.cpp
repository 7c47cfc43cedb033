#include <doctest.h>

#include <algorithm>

#include "descentkit/gallery.hpp"
#include "helpers.hpp"

using namespace descentkit;
using testutil::code_of;
using testutil::vec;

TEST_CASE("frobenius family builds a valid graded inclusion") {
  MapFamily fam = frobenius_family(2, 1, 1);
  CHECK(fam.base->dim() == 2);
  CHECK(fam.total->dim() == 4);
  CHECK(validate_algebra(*fam.base).ok());
  CHECK(validate_algebra(*fam.total).ok());
  CHECK(validate_algebra_map(fam.map).ok());
  CHECK(fam.base->labels()[1] == "y");
  CHECK(fam.total->labels()[1] == "x");
  CHECK(fam.base->is_graded());
  CHECK(fam.base->grading()->degrees[1] == Degree{2});  // deg y = p^b
  CHECK(fam.total->grading()->degrees[3] == Degree{3});

  FieldDescriptor f2 = fam.base->field();
  CHECK(fam.map.image_of_basis(1) == vec(f2, {0, 0, 1, 0}));  // y -> x^2

  MapFamily big = frobenius_family(3, 1, 1);
  CHECK(big.base->dim() == 3);
  CHECK(big.total->dim() == 9);
  CHECK(validate_algebra_map(big.map).ok());
  CHECK(code_of([&] { frobenius_family(4, 1, 1); }) == Errc::bad_family_spec);
}

TEST_CASE("cyclic group inclusions build and reject bad orders") {
  FieldDescriptor f2 = make_prime_field(2);
  MapFamily fam = cyclic_inclusion(2, 4, f2);
  CHECK(fam.base->dim() == 2);
  CHECK(fam.total->dim() == 4);
  CHECK(validate_algebra_map(fam.map).ok());
  // the generator of the subgroup lands on g^2
  CHECK(fam.map.image_of_basis(1) == vec(f2, {0, 0, 1, 0}));

  ExtensionContext ctx = build_context(fam.base, fam.total, fam.map);
  CHECK(ctx.rho == 2);
  CHECK(ctx.C->dim() == 2);

  CHECK(code_of([&] { cyclic_inclusion(3, 4, f2); }) == Errc::bad_family_spec);
}

TEST_CASE("group algebras validate their tables") {
  FieldDescriptor f3 = make_prime_field(3);
  AlgebraPtr c2 = group_algebra({{0, 1}, {1, 0}}, f3);
  CHECK(validate_algebra(*c2).ok());
  CHECK(c2->eps(vec(f3, {1, 1})) == Scalar::from_int(f3, 2));

  CHECK(code_of([&] { group_algebra({{0, 1}, {1, 1}}, f3); }) == Errc::not_a_group);
  CHECK(code_of([&] { group_algebra({{1, 0}, {0, 0}}, f3); }) == Errc::not_a_group);
  CHECK(code_of([&] { group_algebra({{0, 1}, {1, 5}}, f3); }) == Errc::not_a_group);
}

TEST_CASE("exterior algebras anticommute") {
  FieldDescriptor q = make_rational_field();
  AlgebraPtr ext = exterior_algebra(q, 2);
  CHECK(ext->dim() == 4);
  CHECK(validate_algebra(*ext).ok());
  Vec e1 = unit_vec(q, 4, 1), e2 = unit_vec(q, 4, 2);
  Vec a = ext->multiply(e1, e2), b = ext->multiply(e2, e1);
  CHECK(!vec_is_zero(a));
  CHECK(vec_is_zero(vec_add(a, b)));               // e1 e2 = -e2 e1
  CHECK(vec_is_zero(ext->multiply(e1, e1)));       // squares vanish
  CHECK(ext->grading()->degrees[3] == Degree{2});  // top class
}

TEST_CASE("the exterior inclusion is a certified extension") {
  FieldDescriptor f2 = make_prime_field(2);
  AlgebraPtr l1 = exterior_algebra(f2, 1);
  AlgebraPtr l2 = exterior_algebra(f2, 2);
  Matrix m(f2, 4, 2);
  m.at(0, 0) = Scalar::one(f2);
  m.at(1, 1) = Scalar::one(f2);  // e -> e1
  AlgebraMap inc{l1, l2, m};
  CHECK(validate_algebra_map(inc).ok());
  ExtensionContext ctx = build_context(l1, l2, inc);
  CHECK(ctx.rho == 2);
  CHECK(ctx.C->dim() == 2);
  CHECK(ctx.graded);

  DescentOutcome out = descend(ctx, free_module(l2, 1));
  REQUIRE(out.success);
  CHECK(out.certificate->m.dim() == 2);
}

TEST_CASE("module enumeration matches the jordan classification") {
  MapFamily fam = frobenius_family(2, 1, 1);
  std::vector<Module> mods = enumerate_modules(fam.total, 3);
  CHECK(mods.size() == 6);  // partitions with parts <= 4: 1 + 2 + 3
  for (const Module& m : mods) CHECK(validate_module(m).ok());
  for (std::size_t i = 0; i < mods.size(); ++i)
    for (std::size_t j = i + 1; j < mods.size(); ++j)
      CHECK(is_isomorphic(mods[i], mods[j]).verdict == IsoVerdict::no);

  std::vector<std::size_t> dims;
  for (const Module& m : mods) dims.push_back(m.dim());
  std::sort(dims.begin(), dims.end());
  CHECK(dims == std::vector<std::size_t>{1, 2, 2, 3, 3, 3});

  CHECK(enumerate_modules(fam.total, 4).size() == 11);  // + 5 partitions of 4
}

TEST_CASE("module enumeration handles several generators") {
  FieldDescriptor f2 = make_prime_field(2);
  AlgebraPtr ext = exterior_algebra(f2, 2);
  std::vector<Module> mods = enumerate_modules(ext, 2);
  CHECK(mods.size() == 5);  // 1 class in dim 1, 4 in dim 2
  for (const Module& m : mods) CHECK(validate_module(m).ok());
  for (std::size_t i = 0; i < mods.size(); ++i)
    for (std::size_t j = i + 1; j < mods.size(); ++j)
      CHECK(is_isomorphic(mods[i], mods[j]).verdict == IsoVerdict::no);
}

TEST_CASE("enumeration over the rationals signals its budget") {
  AlgebraPtr ext = exterior_algebra(make_rational_field(), 2);
  CHECK(code_of([&] { enumerate_modules(ext, 2); }) == Errc::budget_exceeded);
}

TEST_CASE("starter modules cover the standard examples") {
  MapFamily fam = frobenius_family(2, 1, 1);
  auto mods = starter_modules(fam.total);
  REQUIRE(mods.size() == 4);
  CHECK(mods[0].first == "regular");
  CHECK(mods[1].first == "trivial");
  CHECK(mods[2].first == "cyclic2");
  CHECK(mods[3].first == "cyclic3");
  CHECK(mods[0].second.dim() == 4);
  CHECK(mods[1].second.dim() == 1);
  CHECK(mods[2].second.dim() == 2);
  CHECK(mods[3].second.dim() == 3);
  for (const auto& [name, m] : mods) {
    CHECK(validate_module(m).ok());
    CHECK(m.is_graded());
  }
}

TEST_CASE("random modules are deterministic in the seed") {
  MapFamily fam = frobenius_family(2, 1, 1);
  Module a = random_module(fam.total, 3, 42);
  Module b = random_module(fam.total, 3, 42);
  Module c = random_module(fam.total, 3, 43);
  CHECK(a.dim() == 3);
  CHECK(validate_module(a).ok());
  CHECK(a.actions() == b.actions());
  CHECK(validate_module(c).ok());
  CHECK(c.dim() == 3);
}

TEST_CASE("the brute-force oracle agrees with hand answers") {
  MapFamily fam = frobenius_family(2, 1, 1);
  ExtensionContext ctx = build_context(fam.base, fam.total, fam.map);
  auto mods = starter_modules(fam.total);

  OracleResult reg = decide_extended_oracle(ctx, mods[0].second);
  CHECK(reg.extended);
  REQUIRE(reg.base.has_value());
  CHECK(reg.base->dim() == 2);
  CHECK(is_isomorphic(base_change(ctx.f, *reg.base).module, mods[0].second).verdict ==
        IsoVerdict::yes);

  CHECK(decide_extended_oracle(ctx, mods[2].second).extended);   // cyclic2 = k (x) B
  CHECK(!decide_extended_oracle(ctx, mods[3].second).extended);  // cyclic3
  CHECK(!decide_extended_oracle(ctx, mods[1].second).extended);  // trivial B-module
}

TEST_CASE("enumeration counts match partition counting") {
  // modules over k[x]/(x^t) of dim d <-> partitions of d with parts <= t
  FieldDescriptor f2 = make_prime_field(2);
  FieldDescriptor f3 = make_prime_field(3);
  CHECK(enumerate_modules(truncated_polynomial(f2, 2), 6).size() == 15);  // 1+2+2+3+3+4
  CHECK(enumerate_modules(truncated_polynomial(f3, 3), 5).size() == 15);  // 1+2+3+4+5
  CHECK(enumerate_modules(truncated_polynomial(f2, 1), 3).size() == 3);   // k^d only
}

TEST_CASE("the oracle recovers the base module of an extension") {
  MapFamily fam = frobenius_family(2, 1, 1);
  ExtensionContext ctx = build_context(fam.base, fam.total, fam.map);
  std::vector<Module> bases = enumerate_modules(ctx.A, 3);
  for (const Module& m : bases) {
    BaseChangeResult bc = base_change(ctx.f, m);
    OracleResult orc = decide_extended_oracle(ctx, bc.module);
    CHECK(orc.extended);
    REQUIRE(orc.base.has_value());
    // Krull-Schmidt: the base witness is unique up to isomorphism
    CHECK(is_isomorphic(*orc.base, m).verdict == IsoVerdict::yes);
  }
}

TEST_CASE("klein four group algebra enumerates like the exterior algebra") {
  FieldDescriptor f2 = make_prime_field(2);
  AlgebraPtr klein = group_algebra({{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}}, f2);
  CHECK(validate_algebra(*klein).ok());
  CHECK(check_local_augmented(*klein));
  // over F_2 this algebra is k[a,b]/(a^2, b^2): same module counts in low dim
  std::vector<Module> mods = enumerate_modules(klein, 2);
  CHECK(mods.size() == 5);
  for (const Module& m : mods) CHECK(validate_module(m).ok());
}

TEST_CASE("random module synthesis respects its budget reporting") {
  MapFamily fam = frobenius_family(2, 1, 1);
  // dimensions beyond dim(B) * anything reachable must refuse, not loop
  CHECK(code_of([&] { random_module(fam.total, 50, 1); }) == Errc::budget_exceeded);
}
