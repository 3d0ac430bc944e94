#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace rp {

// A word over the alphabet {1,...,d}. The empty word indexes the scalar slot
// of the tensor algebra.
using Word = std::vector<int>;

// Number of Lyndon words of length k over d letters (Witt formula).
std::int64_t witt_dimension(int dim, int k);

// Dimension of the free nilpotent Lie algebra of order `level` over R^dim.
std::int64_t lie_dimension(int dim, int level);

// Graded dimension sum_{k=1..level} k * witt_dimension(dim, k).
std::int64_t graded_nu(int dim, int level);

// All Lyndon words over {1..dim} of length 1..level, graded by length and
// lexicographic within each grade (Duval's generation order).
std::vector<Word> lyndon_words(int dim, int level);

bool is_lyndon(const Word& w);

// Standard factorization w = u.v of a Lyndon word of length >= 2, where v is
// the longest proper Lyndon suffix. Both factors are Lyndon.
std::pair<Word, Word> standard_factorization(const Word& w);

// Row-major index of a word within its level block: sum (w_i - 1) d^{r-i}.
std::size_t word_index(int dim, const Word& w);

// Inverse of word_index for a given level.
Word word_at(int dim, int level, std::size_t index);

std::string word_to_string(const Word& w);

// Parses "12" or "1.12.3" (dot-separated for alphabets past 9).
Word parse_word(const std::string& text);

}  // namespace rp
