#include "roughpaths/words.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace rp {

namespace {

int mobius(int n) {
  int result = 1;
  for (int p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      n /= p;
      if (n % p == 0) return 0;
      result = -result;
    }
  }
  if (n > 1) result = -result;
  return result;
}

std::int64_t ipow(std::int64_t base, int e) {
  std::int64_t r = 1;
  for (int i = 0; i < e; ++i) r *= base;
  return r;
}

}  // namespace

std::int64_t witt_dimension(int dim, int k) {
  if (dim < 1 || k < 1) throw std::invalid_argument("witt_dimension: need dim >= 1, k >= 1");
  std::int64_t sum = 0;
  for (int m = 1; m <= k; ++m) {
    if (k % m == 0) sum += mobius(m) * ipow(dim, k / m);
  }
  return sum / k;
}

std::int64_t lie_dimension(int dim, int level) {
  std::int64_t s = 0;
  for (int k = 1; k <= level; ++k) s += witt_dimension(dim, k);
  return s;
}

std::int64_t graded_nu(int dim, int level) {
  if (level < 1) throw std::invalid_argument("graded_nu: need level >= 1");
  std::int64_t s = 0;
  for (int k = 1; k <= level; ++k) s += k * witt_dimension(dim, k);
  return s;
}

std::vector<Word> lyndon_words(int dim, int level) {
  if (dim < 1 || level < 1) throw std::invalid_argument("lyndon_words: need dim >= 1, level >= 1");
  // Duval's algorithm, then stable sort by length (lex order is preserved
  // within each grade because Duval emits in lex order overall).
  std::vector<Word> out;
  Word w{0};
  while (!w.empty()) {
    ++w.back();
    if (w.back() <= dim && static_cast<int>(w.size()) <= level) out.push_back(w);
    const std::size_t m = w.size();
    while (w.size() < static_cast<std::size_t>(level)) w.push_back(w[w.size() % m]);
    while (!w.empty() && w.back() == dim) w.pop_back();
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const Word& a, const Word& b) { return a.size() < b.size(); });
  return out;
}

bool is_lyndon(const Word& w) {
  if (w.empty()) return false;
  for (std::size_t i = 1; i < w.size(); ++i) {
    if (!std::lexicographical_compare(w.begin(), w.end(), w.begin() + i, w.end())) return false;
  }
  return true;
}

std::pair<Word, Word> standard_factorization(const Word& w) {
  if (w.size() < 2 || !is_lyndon(w))
    throw std::invalid_argument("standard_factorization: need a Lyndon word of length >= 2");
  for (std::size_t i = 1; i < w.size(); ++i) {
    Word v(w.begin() + i, w.end());
    if (is_lyndon(v)) return {Word(w.begin(), w.begin() + i), v};
  }
  throw std::logic_error("standard_factorization: no Lyndon suffix found");
}

std::size_t word_index(int dim, const Word& w) {
  std::size_t idx = 0;
  for (int letter : w) {
    if (letter < 1 || letter > dim) throw std::invalid_argument("word_index: letter out of range");
    idx = idx * dim + static_cast<std::size_t>(letter - 1);
  }
  return idx;
}

Word word_at(int dim, int level, std::size_t index) {
  Word w(level);
  for (int i = level - 1; i >= 0; --i) {
    w[i] = static_cast<int>(index % dim) + 1;
    index /= dim;
  }
  return w;
}

std::string word_to_string(const Word& w) {
  std::string s;
  bool dotted = false;
  for (int letter : w) dotted = dotted || letter > 9;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (dotted && i > 0) s += '.';
    s += std::to_string(w[i]);
  }
  return s;
}

Word parse_word(const std::string& text) {
  Word w;
  if (text.find('.') != std::string::npos) {
    std::size_t pos = 0;
    while (pos < text.size()) {
      std::size_t next = text.find('.', pos);
      if (next == std::string::npos) next = text.size();
      w.push_back(std::stoi(text.substr(pos, next - pos)));
      pos = next + 1;
    }
  } else {
    for (char c : text) {
      if (c < '1' || c > '9') throw std::invalid_argument("parse_word: bad letter in '" + text + "'");
      w.push_back(c - '0');
    }
  }
  return w;
}

}  // namespace rp
