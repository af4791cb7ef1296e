#include "tmh/precision.hpp"

#include <cmath>
#include <cstdio>
#include <vector>

namespace tmh {

std::string PrecisionReal::str(long digits) const {
  if (digits <= 0) {
    // full precision: ceil(prec * log10(2)) + 2 guard digits
    digits = static_cast<long>(std::ceil(static_cast<double>(prec_bits()) * 0.30103)) + 2;
  }
  std::vector<char> buf(static_cast<size_t>(digits) + 32);
  mpfr_snprintf(buf.data(), buf.size(), "%.*Rg", static_cast<int>(digits), v_);
  return std::string(buf.data());
}

}  // namespace tmh
