#pragma once

#include <cstdint>
#include <string>
#include <variant>

#include <gmpxx.h>

#include "descentkit/error.hpp"

namespace descentkit {

enum class FieldKind { prime, rational };

struct FieldDescriptor {
  FieldKind kind = FieldKind::rational;
  std::uint64_t p = 0;  // modulus, meaningful only for prime kind

  bool operator==(const FieldDescriptor& o) const { return kind == o.kind && p == o.p; }
  bool operator!=(const FieldDescriptor& o) const { return !(*this == o); }
  std::string name() const;
};

// Throws non_prime_modulus unless p is prime.
FieldDescriptor make_prime_field(std::uint64_t p);
FieldDescriptor make_rational_field();
bool is_prime_u64(std::uint64_t n);

// One exact field element. Prime fields store the canonical residue in
// [0, p); rationals store a GMP canonical fraction (reduced, positive
// denominator). Arithmetic between different fields throws field_mismatch.
class Scalar {
 public:
  Scalar() : field_{FieldKind::rational, 0}, v_(mpq_class(0)) {}
  Scalar(FieldDescriptor f, std::uint64_t residue);  // prime only, reduces mod p
  Scalar(FieldDescriptor f, mpq_class q);            // rational only, canonicalizes

  static Scalar zero(FieldDescriptor f);
  static Scalar one(FieldDescriptor f);
  static Scalar from_int(FieldDescriptor f, long long n);

  const FieldDescriptor& field() const { return field_; }
  bool is_zero() const;
  bool is_one() const;

  Scalar operator+(const Scalar& o) const;
  Scalar operator-(const Scalar& o) const;
  Scalar operator*(const Scalar& o) const;
  Scalar operator-() const;
  Scalar inv() const;  // throws division_by_zero on zero
  Scalar operator/(const Scalar& o) const { return *this * o.inv(); }
  bool operator==(const Scalar& o) const;
  bool operator!=(const Scalar& o) const { return !(*this == o); }

  Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
  Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
  Scalar& operator*=(const Scalar& o) { return *this = *this * o; }

  std::uint64_t residue() const;      // prime fields
  const mpq_class& rational() const;  // rational field

  std::string str() const;

 private:
  void check_same(const Scalar& o) const;
  FieldDescriptor field_;
  std::variant<std::uint64_t, mpq_class> v_;
};

// Grammar: optional '-', digits, optionally '/' and positive digits.
// Prime-field input must be a bare integer; it is reduced mod p.
Scalar parse_scalar(FieldDescriptor f, const std::string& text);

}  // namespace descentkit
