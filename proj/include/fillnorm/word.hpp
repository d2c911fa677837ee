#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace fillnorm {

// A letter indexes into a presentation's alphabet: generator i contributes the
// two letters 2*i (the generator) and 2*i+1 (its formal inverse). Letter order
// is the shortlex symbol order.
using Letter = std::int32_t;

using Word = std::vector<Letter>;

inline Letter inverse_letter(Letter l) { return l ^ 1; }
inline int letter_generator(Letter l) { return l >> 1; }
inline bool letter_is_inverse(Letter l) { return (l & 1) != 0; }

// Inverse of a word: reverse and invert each letter.
Word inverse_word(const Word& w);

// Strict shortlex comparison: shorter words first, then lexicographic on
// letters.
bool shortlex_less(const Word& a, const Word& b);

Word concat(const Word& a, const Word& b);

// True if no adjacent pair of letters cancels.
bool freely_reduced(const Word& w);

// True if freely reduced and the first letter is not the inverse of the last.
bool cyclically_reduced(const Word& w);

}  // namespace fillnorm
