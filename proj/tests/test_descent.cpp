#include <doctest.h>

#include "descentkit/descent.hpp"
#include "descentkit/gallery.hpp"
#include "helpers.hpp"

using namespace descentkit;
using testutil::code_of;
using testutil::vec;

namespace {

// B/(x^s) over B = k[x]/(x^t)
Module cyclic(const AlgebraPtr& b, std::size_t s) {
  FieldDescriptor f = b->field();
  std::vector<Matrix> acts;
  for (std::size_t i = 0; i < b->dim(); ++i) {
    Matrix m(f, s, s);
    for (std::size_t u = 0; u < s; ++u)
      if (u + i < s) m.at(u + i, u) = Scalar::one(f);
    acts.push_back(std::move(m));
  }
  return Module(b, s, std::move(acts));
}

ExtensionContext flagship() {
  MapFamily fam = frobenius_family(2, 1, 1);
  return build_context(fam.base, fam.total, fam.map);
}

}  // namespace

TEST_CASE("context hypotheses certify for the frobenius inclusion") {
  ExtensionContext ctx = flagship();
  CHECK(ctx.A->dim() == 2);
  CHECK(ctx.B->dim() == 4);
  CHECK(ctx.C->dim() == 2);
  CHECK(ctx.K.space.dim() == 2);
  CHECK(ctx.rho == 2);
  CHECK(ctx.checks.a_local);
  CHECK(ctx.checks.b_free_over_a);
  CHECK(ctx.checks.k_two_sided);
  CHECK(ctx.checks.k_nilpotent);
  CHECK(ctx.checks.c_local);
  CHECK(ctx.graded);
  REQUIRE(ctx.K.nilpotency.has_value());
  CHECK(ctx.K.nilpotency->first);
  CHECK(ctx.K.nilpotency->second == 2);
  // the kernel ideal is x^2 B = span{x^2, x^3}
  FieldDescriptor f2 = ctx.B->field();
  CHECK(ctx.K.space.contains(vec(f2, {0, 0, 1, 0})));
  CHECK(ctx.K.space.contains(vec(f2, {0, 0, 0, 1})));
  CHECK(!ctx.K.space.contains(vec(f2, {0, 1, 0, 0})));
}

TEST_CASE("tensor presentation has the forced dimensions and unit laws") {
  ExtensionContext ctx = flagship();
  Module reg = free_module(ctx.B, 1);
  TensorPresentation fgn = compute_fgn(ctx, reg);
  CHECK(fgn.n_dim == 4);
  CHECK(fgn.ambient == 16);
  CHECK(fgn.quotient.dim() == 8);  // dim(N) * rho
  CHECK(fgn.relations.dim() == 8);
  CHECK(fgn.counit * fgn.iota == Matrix::identity(ctx.B->field(), 4));

  // counit is a module map, the unit section is linear over the base image
  for (std::size_t j = 0; j < ctx.B->dim(); ++j)
    CHECK(fgn.counit * fgn.quotient.action(j) == reg.action(j) * fgn.counit);
  for (std::size_t i = 0; i < ctx.A->dim(); ++i) {
    Vec fa = ctx.f.image_of_basis(i);
    CHECK(fgn.iota * reg.action_of(fa) == fgn.quotient.action_of(fa) * fgn.iota);
  }
}

TEST_CASE("the regular module descends to the base algebra") {
  ExtensionContext ctx = flagship();
  Module reg = free_module(ctx.B, 1);
  DescentOutcome out = descend(ctx, reg);
  CHECK(out.criterion_free);
  CHECK(out.criterion_rank == 1);
  REQUIRE(out.success);
  REQUIRE(out.certificate.has_value());
  const Certificate& cert = *out.certificate;
  CHECK(cert.y_rank == 1);
  CHECK(cert.m.dim() == 2);
  CHECK(cert.m.dim() * ctx.rho == reg.dim());
  CHECK(out.retries_used == 0);
  CHECK(out.checks.s2);
  CHECK(out.checks.s7);

  // the equalizer inside B is spanned by 1 and x^2
  FieldDescriptor f2 = ctx.B->field();
  CHECK(cert.m_basis.dim() == 2);
  CHECK(cert.m_basis.contains(vec(f2, {1, 0, 0, 0})));
  CHECK(cert.m_basis.contains(vec(f2, {0, 0, 1, 0})));
  CHECK(!cert.m_basis.contains(vec(f2, {0, 1, 0, 0})));

  CHECK(is_isomorphic(cert.m, free_module(ctx.A, 1)).verdict == IsoVerdict::yes);
  CHECK(verify_certificate(ctx, reg, cert).ok());
}

TEST_CASE("extended modules round-trip through descent") {
  ExtensionContext ctx = flagship();
  Module triv = trivial_module(ctx.A);
  BaseChangeResult bc = base_change(ctx.f, triv);
  DescentOutcome out = descend(ctx, bc.module);
  REQUIRE(out.success);
  CHECK(out.certificate->m.dim() == 1);
  CHECK(is_isomorphic(out.certificate->m, triv).verdict == IsoVerdict::yes);
  CHECK(verify_certificate(ctx, bc.module, *out.certificate).ok());
}

TEST_CASE("the cyclic quotient passes the criterion but fails descent at S4") {
  ExtensionContext ctx = flagship();
  Module n = cyclic(ctx.B, 3);
  DescentOutcome out = descend(ctx, n);
  CHECK(out.criterion_free);
  CHECK(out.criterion_rank == 1);
  CHECK(!out.success);
  REQUIRE(out.failure.has_value());
  CHECK(out.failure->step == Step::S4);
  CHECK(out.checks.s2);
  CHECK(out.checks.s3);
  CHECK(!out.checks.s4);
  CHECK(!out.checks.s5);
  CHECK(!out.checks.s6);
  CHECK(!out.checks.s7);
  CHECK(out.retries_used == 1);  // one perturbed lift exists and also fails

  // the obstruction is the class of 1 (x) x^3 = x^2 (x) x, nonzero in N (x) B
  TensorPresentation fgn = compute_fgn(ctx, n);
  FieldDescriptor f2 = ctx.B->field();
  Vec e03 = unit_vec(f2, fgn.ambient, 0 * 4 + 3);
  Vec e21 = unit_vec(f2, fgn.ambient, 2 * 4 + 1);
  CHECK(out.failure->witness == fgn.qd.project.apply(e03));
  CHECK(out.failure->witness == fgn.qd.project.apply(e21));
  CHECK(!vec_is_zero(out.failure->witness));
  CHECK(fgn.relations.contains(vec_add(e03, e21)));
}

TEST_CASE("step names are stable") {
  CHECK(std::string(step_name(Step::S1)) == "S1");
  CHECK(std::string(step_name(Step::S4)) == "S4");
  CHECK(std::string(step_name(Step::S7)) == "S7");
}

TEST_CASE("certificate verification pinpoints tampered data") {
  ExtensionContext ctx = flagship();
  Module reg = free_module(ctx.B, 1);
  DescentOutcome out = descend(ctx, reg);
  REQUIRE(out.success);
  Certificate good = *out.certificate;
  CHECK(verify_certificate(ctx, reg, good).ok());

  Certificate zero_psi = good;
  zero_psi.psi = Matrix(ctx.B->field(), good.psi.rows(), good.psi.cols());
  Report r1 = verify_certificate(ctx, reg, zero_psi);
  REQUIRE(!r1.ok());
  CHECK(r1.items.front().check == "S5");

  Certificate bad_mu = good;
  bad_mu.mu = Matrix(ctx.B->field(), good.mu.rows(), good.mu.cols());
  Report r2 = verify_certificate(ctx, reg, bad_mu);
  REQUIRE(!r2.ok());
  CHECK(r2.items.front().check == "S7");

  Certificate bad_sigma = good;
  bad_sigma.sigma = Matrix(ctx.B->field(), good.sigma.rows(), good.sigma.cols());
  Report r3 = verify_certificate(ctx, reg, bad_sigma);
  REQUIRE(!r3.ok());
  CHECK(r3.items.front().check == "S2");
}

TEST_CASE("identity extensions descend every module") {
  FieldDescriptor f2 = make_prime_field(2);
  AlgebraPtr b = truncated_polynomial(f2, 4);
  AlgebraMap id{b, b, Matrix::identity(f2, 4)};
  ExtensionContext ctx = build_context(b, b, id);
  CHECK(ctx.rho == 1);
  CHECK(ctx.C->dim() == 1);
  CHECK(ctx.K.space.dim() == 3);

  Module n = cyclic(b, 2);
  DescentOutcome out = descend(ctx, n);
  REQUIRE(out.success);
  CHECK(out.certificate->m.dim() == 2);
  CHECK(verify_certificate(ctx, n, *out.certificate).ok());
  CHECK(is_isomorphic(out.certificate->m, n).verdict == IsoVerdict::yes);
}

TEST_CASE("a semisimple base is rejected before locality") {
  FieldDescriptor f3 = make_prime_field(3);
  std::vector<MulTriple> mul{{0, 0, 0, Scalar::one(f3)},
                             {0, 1, 1, Scalar::one(f3)},
                             {1, 0, 1, Scalar::one(f3)},
                             {1, 1, 0, Scalar::one(f3)}};
  AlgebraPtr split = make_algebra(f3, 2, {}, std::move(mul), vec(f3, {1, 0}),
                                  Vec{Scalar::one(f3), Scalar::one(f3)});
  AlgebraMap id{split, split, Matrix::identity(f3, 2)};
  CHECK(code_of([&] { build_context(split, split, id); }) == Errc::kernel_not_nilpotent);
}

TEST_CASE("zero modules descend trivially") {
  ExtensionContext ctx = flagship();
  std::vector<Matrix> acts(4, Matrix(ctx.B->field(), 0, 0));
  Module zero(ctx.B, 0, std::move(acts));
  DescentOutcome out = descend(ctx, zero);
  CHECK(out.criterion_free);
  CHECK(out.criterion_rank == 0);
  REQUIRE(out.success);
  CHECK(out.certificate->m.dim() == 0);
  CHECK(verify_certificate(ctx, zero, *out.certificate).ok());
}

TEST_CASE("criterion failure reports no step failure") {
  ExtensionContext ctx = flagship();
  Module k = cyclic(ctx.B, 1);  // residue field of B, not free over C
  DescentOutcome out = descend(ctx, k);
  CHECK(!out.criterion_free);
  CHECK(!out.success);
  CHECK(!out.failure.has_value());
  CHECK(!out.certificate.has_value());
}

TEST_CASE("random modules produce internally coherent outcomes") {
  ExtensionContext ctx = flagship();
  for (std::uint64_t seed = 1; seed <= 12; ++seed) {
    std::size_t dim = 1 + static_cast<std::size_t>(seed % 5);
    Module n = random_module(ctx.B, dim, seed);
    DescentOutcome out = descend(ctx, n);
    OracleResult orc = decide_extended_oracle(ctx, n);
    if (out.success) {
      REQUIRE(out.certificate.has_value());
      CHECK(out.criterion_free);
      CHECK(out.certificate->m.dim() * ctx.rho == n.dim());
      CHECK(verify_certificate(ctx, n, *out.certificate).ok());
      CHECK(orc.extended);  // certificates are sound
      CHECK(out.checks.s2);
      CHECK(out.checks.s3);
      CHECK(out.checks.s4);
      CHECK(out.checks.s5);
      CHECK(out.checks.s6);
      CHECK(out.checks.s7);
    } else if (!out.criterion_free) {
      CHECK(!orc.extended);  // extended modules always pass the criterion
      CHECK(!out.failure.has_value());
    } else {
      REQUIRE(out.failure.has_value());
      CHECK(!orc.extended);  // a verified descent exists for every extended module
    }
  }
}

TEST_CASE("identity extensions recover random modules exactly") {
  FieldDescriptor f3 = make_prime_field(3);
  AlgebraPtr b = truncated_polynomial(f3, 3);
  AlgebraMap id{b, b, Matrix::identity(f3, 3)};
  ExtensionContext ctx = build_context(b, b, id);
  for (std::uint64_t seed = 20; seed < 26; ++seed) {
    Module n = random_module(b, 1 + static_cast<std::size_t>(seed % 4), seed);
    DescentOutcome out = descend(ctx, n);
    REQUIRE(out.success);
    CHECK(is_isomorphic(out.certificate->m, n).verdict == IsoVerdict::yes);
    CHECK(verify_certificate(ctx, n, *out.certificate).ok());
  }
}

TEST_CASE("criterion verdicts expose the quotient data consistently") {
  ExtensionContext ctx = flagship();
  for (std::uint64_t seed = 30; seed < 36; ++seed) {
    Module n = random_module(ctx.B, 1 + static_cast<std::size_t>(seed % 5), seed);
    CriterionVerdict v = descent_criterion(ctx, n);
    CHECK(v.nbar.dim() <= n.dim());
    CHECK(v.projection.rows() == v.nbar.dim());
    CHECK(v.projection.cols() == n.dim());
    CHECK(rank(v.projection) == v.nbar.dim());
    if (v.free) {
      CHECK(v.nbar.dim() == v.freeness.min_generators * ctx.C->dim());
      REQUIRE(v.freeness.witness.has_value());
      CHECK(rank(v.freeness.witness->iso) == v.nbar.dim());
    } else {
      CHECK(v.nbar.dim() != v.freeness.min_generators * ctx.C->dim());
    }
  }
}
