#include "multirank/bigint.hpp"
#include "multirank/error.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>

namespace multirank {

double big_log(const BigInt& v) {
  if (v <= 0) throw DomainError("big_log of a non-positive integer");
  const boost::multiprecision::cpp_bin_float_50 x(v);
  return static_cast<double>(boost::multiprecision::log(x));
}

}  // namespace multirank
