#pragma once

#include <cstdint>
#include <vector>

#include "tmh/precision.hpp"

namespace tmh {

enum class Letter : std::uint8_t { A, B };

inline Letter bar(Letter x) { return x == Letter::A ? Letter::B : Letter::A; }

/// n-th letter of the two-sided Thue-Morse sequence: the fixed point of
/// a->ab, b->ba for n >= 1, extended to the left by u_{1-n} = u_n.
/// O(1) via the parity of ones in the binary expansion of n-1.
Letter tm_letter(std::int64_t n);

/// Potential value: +lambda on letter a, -lambda on letter b.
/// Zero coupling is excluded.
PrecisionReal tm_potential(std::int64_t n, const PrecisionReal& lambda);

/// Prefix of length 2^level built by explicit substitution iteration
/// (test oracle for tm_letter).
std::vector<Letter> tm_word(int level);

/// True iff the prefix of length 2^(2n) is a palindrome and the block
/// u_{2^n+1..2^{n+1}} equals the barred prefix of length 2^n.
bool check_palindrome(int n);

}  // namespace tmh
