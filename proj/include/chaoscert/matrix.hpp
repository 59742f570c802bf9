#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

#include "chaoscert/errors.hpp"

namespace chaoscert {

// Finite symbol string over 1..N. Admissibility is always relative to a
// transition matrix: consecutive symbols must be joined by an edge.
struct Word {
  std::vector<int> symbols;

  std::size_t length() const { return symbols.size(); }
  int first() const { return symbols.front(); }
  int last() const { return symbols.back(); }

  bool operator==(const Word&) const = default;
  auto operator<=>(const Word&) const = default;
};

std::string to_string(const Word& w);

// 0/1 square matrix with every row and column sum >= 1. Symbols are 1-based
// throughout the public interface.
class TransitionMatrix {
 public:
  // Checks squareness, entries in {0,1}, and the row/column sum conditions.
  // Errors name the offending index (1-based).
  static TransitionMatrix validate(const std::vector<std::vector<int>>& raw);

  int size() const { return n_; }
  int entry(int i, int j) const { return a_[idx(i, j)]; }
  bool edge(int i, int j) const { return a_[idx(i, j)] != 0; }
  int row_sum(int i) const;
  int col_sum(int j) const;

  bool operator==(const TransitionMatrix&) const = default;

 private:
  TransitionMatrix(int n, std::vector<std::uint8_t> a) : n_(n), a_(std::move(a)) {}
  std::size_t idx(int i, int j) const;

  int n_ = 0;
  std::vector<std::uint8_t> a_;  // row-major
};

inline constexpr std::size_t kDefaultWordBudget = std::size_t{1} << 20;

bool is_admissible(const TransitionMatrix& A, const Word& w);

// True iff every symbol reaches every symbol through at least one edge
// (strong connectivity of the directed graph, including i == j).
bool is_irreducible(const TransitionMatrix& A);

// (i,j) entry of A^k in exact integer arithmetic, k >= 1. Counts the
// admissible words of length k+1 from i to j. Throws Overflow instead of
// wrapping.
std::uint64_t power_entry(const TransitionMatrix& A, std::int64_t k, int i, int j);

// All admissible words of the given length from i to j in lexicographic
// order. Throws BudgetExceeded once more than `budget` words would be
// produced.
std::vector<Word> enumerate_words(const TransitionMatrix& A, std::int64_t length, int i, int j,
                                  std::size_t budget = kDefaultWordBudget);

// Smallest k >= 1 with a length-k loop through j0; at most N for an
// irreducible matrix.
int minimal_return_time(const TransitionMatrix& A, int j0);

// Shortest admissible word from i to j longer than l, lexicographic
// tie-break. Requires an irreducible matrix with some row sum >= 2.
Word find_long_word(const TransitionMatrix& A, int i, int j, std::int64_t l);

// Word length above which a distinct same-endpoint alternative is always
// available: 2N(N^2 - 2N + 2).
std::int64_t alternative_length_bound(int n);

// Lexicographically smallest admissible word w' != w with the same length and
// endpoints. Searches regardless of |w|; when no alternative exists the error
// is TooShort below the length bound and HypothesisViolated above it.
Word find_alternative_word(const TransitionMatrix& A, const Word& w);

// The three words anchoring a scrambled-set construction around j0:
//   w0 runs m0 -> t0, w1 and w2 are distinct equal-length words j0 -> t0,
//   with edges t0 -> j0 and j0 -> m0.
// Deterministic: smallest t0, then smallest m0; w0 shortest-lex; (w1, w2) the
// two lexicographically smallest words at the minimal length admitting two.
struct WordTriple {
  Word w0, w1, w2;
  int t0 = 0;
  int m0 = 0;
};

WordTriple find_word_triple(const TransitionMatrix& A, int j0);

}  // namespace chaoscert
