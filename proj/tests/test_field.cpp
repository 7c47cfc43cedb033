#include <doctest.h>

#include "descentkit/field.hpp"
#include "helpers.hpp"

using namespace descentkit;
using testutil::code_of;

TEST_CASE("prime field arithmetic matches hand values") {
  FieldDescriptor f5 = make_prime_field(5);
  Scalar two(f5, 2), three(f5, 3);
  CHECK((two * three).residue() == 1);
  CHECK((two + three).residue() == 0);
  CHECK((two - three).residue() == 4);
  CHECK(two.inv().residue() == 3);
  CHECK((-two).residue() == 3);
  CHECK((three / two).residue() == 4);
}

TEST_CASE("field axioms hold exhaustively over GF(2), GF(3), GF(5)") {
  for (std::uint64_t p : {2ull, 3ull, 5ull}) {
    FieldDescriptor f = make_prime_field(p);
    for (std::uint64_t a = 0; a < p; ++a)
      for (std::uint64_t b = 0; b < p; ++b) {
        Scalar sa(f, a), sb(f, b);
        CHECK(sa + sb == sb + sa);
        CHECK(sa * sb == sb * sa);
        CHECK(sa + (-sa) == Scalar::zero(f));
        if (b != 0) CHECK(sb * sb.inv() == Scalar::one(f));
        for (std::uint64_t c = 0; c < p; ++c) {
          Scalar sc(f, c);
          CHECK((sa + sb) + sc == sa + (sb + sc));
          CHECK((sa * sb) * sc == sa * (sb * sc));
          CHECK(sa * (sb + sc) == sa * sb + sa * sc);
        }
      }
  }
}

TEST_CASE("rational arithmetic is exact and canonical") {
  FieldDescriptor q = make_rational_field();
  Scalar a = parse_scalar(q, "-2/7");
  Scalar b = parse_scalar(q, "3/14");
  CHECK((a + b).str() == "-1/14");
  CHECK((a * b).str() == "-3/49");
  CHECK(a.inv().str() == "-7/2");
  CHECK(parse_scalar(q, "4/2").str() == "2");
  CHECK(parse_scalar(q, "-0").str() == "0");
  CHECK(Scalar::from_int(q, -12).str() == "-12");
}

TEST_CASE("scalar parse and print round-trip") {
  FieldDescriptor q = make_rational_field();
  for (const char* text : {"0", "1", "-1", "2/3", "-22/7", "17"}) {
    Scalar s = parse_scalar(q, text);
    CHECK(parse_scalar(q, s.str()) == s);
    CHECK(s.str() == text);
  }
  FieldDescriptor f7 = make_prime_field(7);
  for (const char* text : {"0", "3", "6"}) CHECK(parse_scalar(f7, text).str() == text);
  CHECK(parse_scalar(f7, "9").residue() == 2);
  CHECK(parse_scalar(f7, "-1").residue() == 6);
}

TEST_CASE("malformed scalar text is rejected") {
  FieldDescriptor q = make_rational_field();
  CHECK(code_of([&] { parse_scalar(q, ""); }) == Errc::parse_error);
  CHECK(code_of([&] { parse_scalar(q, "1/0"); }) == Errc::parse_error);
  CHECK(code_of([&] { parse_scalar(q, "2.5"); }) == Errc::parse_error);
  CHECK(code_of([&] { parse_scalar(q, "1/-2"); }) == Errc::parse_error);
  FieldDescriptor f5 = make_prime_field(5);
  CHECK(code_of([&] { parse_scalar(f5, "1/2"); }) == Errc::parse_error);
}

TEST_CASE("mixed-field arithmetic is rejected") {
  Scalar a(make_prime_field(3), 1);
  Scalar b(make_prime_field(5), 1);
  CHECK(code_of([&] { (void)(a + b); }) == Errc::field_mismatch);
  CHECK(code_of([&] { (void)(a * Scalar::one(make_rational_field())); }) == Errc::field_mismatch);
}

TEST_CASE("division by zero is rejected") {
  FieldDescriptor f3 = make_prime_field(3);
  CHECK(code_of([&] { (void)Scalar::zero(f3).inv(); }) == Errc::division_by_zero);
  CHECK(code_of([&] { (void)Scalar::zero(make_rational_field()).inv(); }) == Errc::division_by_zero);
}

TEST_CASE("composite or oversized moduli are rejected") {
  CHECK(code_of([&] { make_prime_field(6); }) == Errc::non_prime_modulus);
  CHECK(code_of([&] { make_prime_field(1); }) == Errc::non_prime_modulus);
  CHECK(code_of([&] { make_prime_field(0); }) == Errc::non_prime_modulus);
  CHECK(errc_name(Errc::non_prime_modulus) == std::string("NonPrimeModulus"));
  CHECK(is_prime_u64(2));
  CHECK(is_prime_u64(97));
  CHECK(!is_prime_u64(91));
}
