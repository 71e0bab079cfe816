#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <cstdint>
#include <string>

namespace multirank {

using BigInt = boost::multiprecision::cpp_int;

inline BigInt big_pow(std::uint64_t base, std::uint64_t exp) {
  return boost::multiprecision::pow(BigInt(base), static_cast<unsigned>(exp));
}

/// Natural log of a positive integer, accurate to double precision for any size.
double big_log(const BigInt& v);

/// log_base(v) for v >= 1, base >= 2.
inline double big_log_base(const BigInt& v, double base) { return big_log(v) / std::log(base); }

inline std::string to_string(const BigInt& v) { return v.str(); }

}  // namespace multirank
