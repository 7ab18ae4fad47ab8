#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

namespace trisect {

/// Arbitrary precision signed integer used for every homology coefficient,
/// matrix entry and determinant in the engine.
using Integer = boost::multiprecision::cpp_int;

inline Integer abs(const Integer &x) { return x < 0 ? Integer(-x) : x; }

inline Integer gcd(Integer a, Integer b) {
  a = abs(a);
  b = abs(b);
  while (b != 0) {
    Integer r = a % b;
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

inline std::string to_string(const Integer &x) { return x.str(); }

} // namespace trisect
