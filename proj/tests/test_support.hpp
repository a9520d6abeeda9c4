#pragma once

#include <gtest/gtest.h>

#include <string>

#include "quivlat/io.hpp"
#include "quivlat/quivlat.hpp"

#define EXPECT_ERROR(stmt, error_kind)                                                   \
  do {                                                                                  \
    try {                                                                               \
      stmt;                                                                             \
      ADD_FAILURE() << "expected " << quivlat::error_name(error_kind) << ", no throw";  \
    } catch (const quivlat::Error& e_) {                                                \
      EXPECT_EQ(e_.name(), quivlat::error_name(error_kind)) << e_.what();               \
    }                                                                                   \
  } while (0)

namespace testing_support {

using namespace quivlat;

inline std::string data_path(const std::string& name) { return std::string(QUIVLAT_DATA_DIR) + "/" + name; }

inline Matrix ints(const Ring& r, std::size_t rows, std::size_t cols, std::initializer_list<long> e) {
  return Matrix::from_ints(r, rows, cols, e);
}

inline Quiver a2() { return Quiver::linear(2); }
inline Quiver a3() { return Quiver::linear(3); }
inline Quiver kronecker() { return Quiver::generalized_kronecker(2); }
inline Quiver loop() { return Quiver(1, {Arrow{0, 0}}); }

inline Rep s1(const Ring& r) { return Rep::simple(r, a2(), 0); }
inline Rep s2(const Ring& r) { return Rep::simple(r, a2(), 1); }
inline Rep p1(const Ring& r) { return Rep(r, a2(), {1, 1}, {ints(r, 1, 1, {1})}); }

/// Kronecker preprojective of dims (1,2): arrows (1,0)^T and (0,1)^T.
inline Rep kron_p1(const Ring& r) {
  return Rep(r, kronecker(), {1, 2}, {ints(r, 2, 1, {1, 0}), ints(r, 2, 1, {0, 1})});
}
inline Rep kron_s1(const Ring& r) { return Rep::simple(r, kronecker(), 0); }
inline Rep kron_s2(const Ring& r) { return Rep::simple(r, kronecker(), 1); }
inline Rep kron_band(const Ring& r) {
  return Rep(r, kronecker(), {1, 1}, {ints(r, 1, 1, {1}), ints(r, 1, 1, {0})});
}

inline Rep loop_rep(const Ring& r, long a) { return Rep(r, loop(), {1}, {ints(r, 1, 1, {a})}); }

}  // namespace testing_support
