#pragma once

#include <functional>
#include <initializer_list>

#include <gtest/gtest.h>

#include "kreinlab/errors.hpp"
#include "kreinlab/numeric.hpp"

namespace kreinlab::test {

inline CMatrix real_matrix(std::initializer_list<std::initializer_list<double>> rows) {
  const Index r = static_cast<Index>(rows.size());
  const Index c = r > 0 ? static_cast<Index>(rows.begin()->size()) : 0;
  CMatrix m(r, c);
  Index i = 0;
  for (const auto& row : rows) {
    Index j = 0;
    for (double v : row) m(i, j++) = v;
    ++i;
  }
  return m;
}

inline CMatrix column(std::initializer_list<double> v) {
  CMatrix m(static_cast<Index>(v.size()), 1);
  Index i = 0;
  for (double x : v) m(i++, 0) = x;
  return m;
}

inline CMatrix diag(std::initializer_list<double> v) {
  CMatrix m = CMatrix::Zero(static_cast<Index>(v.size()), static_cast<Index>(v.size()));
  Index i = 0;
  for (double x : v) { m(i, i) = x; ++i; }
  return m;
}

inline double dist(const CMatrix& a, const CMatrix& b) { return operator_norm(a - b); }

// Kind of the KreinError thrown by f; records a failure when nothing is thrown.
inline ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const KreinError& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no KreinError thrown";
  return ErrorKind::kInvalidArgument;
}

}  // namespace kreinlab::test
