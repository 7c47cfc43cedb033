#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace descentkit {

enum class Errc {
  non_prime_modulus,
  division_by_zero,
  field_mismatch,
  dimension_mismatch,
  missing_augmentation,
  not_certified_local,
  not_augmented,
  not_two_sided,
  kernel_not_nilpotent,
  base_not_local,
  not_free_over_base,
  quotient_not_local,
  not_a_group,
  bad_family_spec,
  budget_exceeded,
  parse_error,
  algebra_mismatch,
  validation_failed,
};

const char* errc_name(Errc c);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& msg)
      : std::runtime_error(std::string(errc_name(code)) + ": " + msg), code_(code) {}
  Errc code() const { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& msg) { throw Error(code, msg); }

// Validation result: empty item list means the object passed every check.
struct Report {
  struct Item {
    std::string check;            // which invariant was violated
    std::vector<std::size_t> witness;  // offending indices, when meaningful
    std::string detail;
  };
  std::vector<Item> items;

  bool ok() const { return items.empty(); }
  void add(std::string check, std::vector<std::size_t> witness, std::string detail) {
    items.push_back({std::move(check), std::move(witness), std::move(detail)});
  }
  std::string summary() const;
};

}  // namespace descentkit
