#pragma once

#include <optional>
#include <vector>

#include "descentkit/error.hpp"
#include "descentkit/linalg.hpp"

namespace testutil {

inline descentkit::Vec vec(descentkit::FieldDescriptor f, const std::vector<long long>& entries) {
  descentkit::Vec v;
  for (long long e : entries) v.push_back(descentkit::Scalar::from_int(f, e));
  return v;
}

inline descentkit::Matrix mat(descentkit::FieldDescriptor f,
                              const std::vector<std::vector<long long>>& rows) {
  std::size_t r = rows.size(), c = r == 0 ? 0 : rows[0].size();
  descentkit::Matrix m(f, r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m.at(i, j) = descentkit::Scalar::from_int(f, rows[i][j]);
  return m;
}

template <typename Fn>
std::optional<descentkit::Errc> code_of(Fn&& fn) {
  try {
    fn();
  } catch (const descentkit::Error& e) {
    return e.code();
  }
  return std::nullopt;
}

}  // namespace testutil
