#include "descentkit/field.hpp"

#include <cctype>

namespace descentkit {

const char* errc_name(Errc c) {
  switch (c) {
    case Errc::non_prime_modulus: return "NonPrimeModulus";
    case Errc::division_by_zero: return "DivisionByZero";
    case Errc::field_mismatch: return "FieldMismatch";
    case Errc::dimension_mismatch: return "DimensionMismatch";
    case Errc::missing_augmentation: return "MissingAugmentation";
    case Errc::not_certified_local: return "NotCertifiedLocal";
    case Errc::not_augmented: return "NotAugmented";
    case Errc::not_two_sided: return "NotTwoSided";
    case Errc::kernel_not_nilpotent: return "KernelNotNilpotent";
    case Errc::base_not_local: return "BaseNotLocal";
    case Errc::not_free_over_base: return "NotFreeOverBase";
    case Errc::quotient_not_local: return "QuotientNotLocal";
    case Errc::not_a_group: return "NotAGroup";
    case Errc::bad_family_spec: return "BadFamilySpec";
    case Errc::budget_exceeded: return "BudgetExceeded";
    case Errc::parse_error: return "ParseError";
    case Errc::algebra_mismatch: return "AlgebraMismatch";
    case Errc::validation_failed: return "ValidationFailed";
  }
  return "UnknownError";
}

std::string Report::summary() const {
  if (items.empty()) return "ok";
  std::string s;
  for (const auto& it : items) {
    if (!s.empty()) s += "; ";
    s += it.check;
    if (!it.detail.empty()) s += " (" + it.detail + ")";
  }
  return s;
}

std::string FieldDescriptor::name() const {
  if (kind == FieldKind::rational) return "Q";
  return "GF(" + std::to_string(p) + ")";
}

namespace {

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  a %= m;
  while (e) {
    if (e & 1) r = mulmod(r, a, m);
    a = mulmod(a, a, m);
    e >>= 1;
  }
  return r;
}

}  // namespace

bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t q : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (n % q == 0) return n == q;
  }
  // deterministic Miller-Rabin for 64-bit with the 12 bases above
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) { d >>= 1; ++s; }
  for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    std::uint64_t x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool witness = true;
    for (int i = 1; i < s; ++i) {
      x = mulmod(x, x, n);
      if (x == n - 1) { witness = false; break; }
    }
    if (witness) return false;
  }
  return true;
}

FieldDescriptor make_prime_field(std::uint64_t p) {
  if (!is_prime_u64(p)) fail(Errc::non_prime_modulus, "modulus " + std::to_string(p) + " is not prime");
  if (p >= (1ull << 31)) fail(Errc::non_prime_modulus, "modulus too large for exact residue arithmetic");
  return FieldDescriptor{FieldKind::prime, p};
}

FieldDescriptor make_rational_field() { return FieldDescriptor{FieldKind::rational, 0}; }

Scalar::Scalar(FieldDescriptor f, std::uint64_t residue) : field_(f), v_(residue % f.p) {
  if (f.kind != FieldKind::prime) fail(Errc::field_mismatch, "residue constructor needs a prime field");
}

Scalar::Scalar(FieldDescriptor f, mpq_class q) : field_(f), v_(std::move(q)) {
  if (f.kind != FieldKind::rational) fail(Errc::field_mismatch, "rational constructor needs the rational field");
  std::get<mpq_class>(v_).canonicalize();
}

Scalar Scalar::zero(FieldDescriptor f) {
  return f.kind == FieldKind::prime ? Scalar(f, std::uint64_t{0}) : Scalar(f, mpq_class(0));
}

Scalar Scalar::one(FieldDescriptor f) {
  return f.kind == FieldKind::prime ? Scalar(f, std::uint64_t{1}) : Scalar(f, mpq_class(1));
}

Scalar Scalar::from_int(FieldDescriptor f, long long n) {
  if (f.kind == FieldKind::rational) return Scalar(f, mpq_class(static_cast<long>(n)));
  long long r = n % static_cast<long long>(f.p);
  if (r < 0) r += static_cast<long long>(f.p);
  return Scalar(f, static_cast<std::uint64_t>(r));
}

bool Scalar::is_zero() const {
  return field_.kind == FieldKind::prime ? std::get<std::uint64_t>(v_) == 0
                                         : std::get<mpq_class>(v_) == 0;
}

bool Scalar::is_one() const {
  return field_.kind == FieldKind::prime ? std::get<std::uint64_t>(v_) == 1
                                         : std::get<mpq_class>(v_) == 1;
}

void Scalar::check_same(const Scalar& o) const {
  if (field_ != o.field_)
    fail(Errc::field_mismatch, "cannot combine " + field_.name() + " with " + o.field_.name());
}

Scalar Scalar::operator+(const Scalar& o) const {
  check_same(o);
  if (field_.kind == FieldKind::prime) {
    std::uint64_t s = std::get<std::uint64_t>(v_) + std::get<std::uint64_t>(o.v_);
    if (s >= field_.p) s -= field_.p;
    return Scalar(field_, s);
  }
  return Scalar(field_, std::get<mpq_class>(v_) + std::get<mpq_class>(o.v_));
}

Scalar Scalar::operator-(const Scalar& o) const {
  check_same(o);
  if (field_.kind == FieldKind::prime) {
    std::uint64_t a = std::get<std::uint64_t>(v_), b = std::get<std::uint64_t>(o.v_);
    return Scalar(field_, a >= b ? a - b : a + field_.p - b);
  }
  return Scalar(field_, std::get<mpq_class>(v_) - std::get<mpq_class>(o.v_));
}

Scalar Scalar::operator*(const Scalar& o) const {
  check_same(o);
  if (field_.kind == FieldKind::prime)
    return Scalar(field_, mulmod(std::get<std::uint64_t>(v_), std::get<std::uint64_t>(o.v_), field_.p));
  return Scalar(field_, std::get<mpq_class>(v_) * std::get<mpq_class>(o.v_));
}

Scalar Scalar::operator-() const {
  if (field_.kind == FieldKind::prime) {
    std::uint64_t a = std::get<std::uint64_t>(v_);
    return Scalar(field_, a == 0 ? 0 : field_.p - a);
  }
  return Scalar(field_, -std::get<mpq_class>(v_));
}

Scalar Scalar::inv() const {
  if (is_zero()) fail(Errc::division_by_zero, "inverse of zero in " + field_.name());
  if (field_.kind == FieldKind::prime)
    return Scalar(field_, powmod(std::get<std::uint64_t>(v_), field_.p - 2, field_.p));
  return Scalar(field_, 1 / std::get<mpq_class>(v_));
}

bool Scalar::operator==(const Scalar& o) const {
  if (field_ != o.field_) return false;
  if (field_.kind == FieldKind::prime) return std::get<std::uint64_t>(v_) == std::get<std::uint64_t>(o.v_);
  return std::get<mpq_class>(v_) == std::get<mpq_class>(o.v_);
}

std::uint64_t Scalar::residue() const {
  if (field_.kind != FieldKind::prime) fail(Errc::field_mismatch, "residue() on rational scalar");
  return std::get<std::uint64_t>(v_);
}

const mpq_class& Scalar::rational() const {
  if (field_.kind != FieldKind::rational) fail(Errc::field_mismatch, "rational() on prime-field scalar");
  return std::get<mpq_class>(v_);
}

std::string Scalar::str() const {
  if (field_.kind == FieldKind::prime) return std::to_string(std::get<std::uint64_t>(v_));
  return std::get<mpq_class>(v_).get_str();
}

Scalar parse_scalar(FieldDescriptor f, const std::string& text) {
  if (text.empty()) fail(Errc::parse_error, "empty scalar literal");
  std::size_t i = 0;
  bool neg = false;
  if (text[i] == '-') { neg = true; ++i; }
  if (i >= text.size() || !std::isdigit(static_cast<unsigned char>(text[i])))
    fail(Errc::parse_error, "bad scalar literal '" + text + "'");
  std::size_t num_start = i;
  while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
  std::string num = text.substr(num_start, i - num_start);
  std::string den;
  if (i < text.size() && text[i] == '/') {
    ++i;
    std::size_t den_start = i;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
    den = text.substr(den_start, i - den_start);
    if (den.empty()) fail(Errc::parse_error, "bad scalar literal '" + text + "'");
  }
  if (i != text.size()) fail(Errc::parse_error, "bad scalar literal '" + text + "'");

  if (f.kind == FieldKind::prime) {
    if (!den.empty()) fail(Errc::parse_error, "prime-field scalar must be a bare integer: '" + text + "'");
    mpz_class n(num);
    mpz_class r = n % mpz_class(static_cast<unsigned long>(f.p));
    std::uint64_t residue = r.get_ui();
    if (neg && residue != 0) residue = f.p - residue;
    return Scalar(f, residue);
  }
  mpq_class q(den.empty() ? num : num + "/" + den);
  if (mpz_sgn(q.get_den().get_mpz_t()) == 0) fail(Errc::parse_error, "zero denominator in '" + text + "'");
  q.canonicalize();
  if (neg) q = -q;
  return Scalar(f, q);
}

}  // namespace descentkit
