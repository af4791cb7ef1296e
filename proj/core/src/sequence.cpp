#include "tmh/sequence.hpp"

#include <bit>
#include <stdexcept>

namespace tmh {

Letter tm_letter(std::int64_t n) {
  if (n <= 0) n = 1 - n;
  auto ones = std::popcount(static_cast<std::uint64_t>(n - 1));
  return (ones % 2 == 0) ? Letter::A : Letter::B;
}

PrecisionReal tm_potential(std::int64_t n, const PrecisionReal& lambda) {
  if (lambda.is_zero()) throw std::invalid_argument("zero coupling excluded");
  return tm_letter(n) == Letter::A ? lambda : -lambda;
}

std::vector<Letter> tm_word(int level) {
  std::vector<Letter> w{Letter::A};
  w.reserve(static_cast<size_t>(1) << level);
  for (int k = 0; k < level; ++k) {
    size_t sz = w.size();
    for (size_t i = 0; i < sz; ++i) w.push_back(bar(w[i]));
  }
  return w;
}

bool check_palindrome(int n) {
  if (n < 1) throw std::invalid_argument("level must be >= 1");
  auto w = tm_word(2 * n);  // length 2^(2n)
  size_t len = w.size();
  for (size_t i = 0; i < len / 2; ++i)
    if (w[i] != w[len - 1 - i]) return false;
  size_t half = static_cast<size_t>(1) << n;
  for (size_t i = 0; i < half; ++i)
    if (w[half + i] != bar(w[i])) return false;
  return true;
}

}  // namespace tmh
