#include "chaoscert/matrix.hpp"

#include <algorithm>
#include <optional>
#include <queue>

namespace chaoscert {

std::string to_string(const Word& w) {
  std::string s = "(";
  for (std::size_t t = 0; t < w.symbols.size(); ++t) {
    if (t) s += ',';
    s += std::to_string(w.symbols[t]);
  }
  s += ')';
  return s;
}

std::size_t TransitionMatrix::idx(int i, int j) const {
  if (i < 1 || i > n_ || j < 1 || j > n_)
    fail(Errc::ParseError, "symbol index out of range: (" + std::to_string(i) + "," +
                               std::to_string(j) + ") for N=" + std::to_string(n_));
  return static_cast<std::size_t>(i - 1) * n_ + (j - 1);
}

TransitionMatrix TransitionMatrix::validate(const std::vector<std::vector<int>>& raw) {
  const int n = static_cast<int>(raw.size());
  if (n < 2) fail(Errc::NotSquare, "need at least 2 symbols, got " + std::to_string(n));
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(raw[i].size()) != n)
      fail(Errc::NotSquare, "row " + std::to_string(i + 1) + " has " +
                                std::to_string(raw[i].size()) + " entries, expected " +
                                std::to_string(n));
  }
  std::vector<std::uint8_t> a(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const int v = raw[i][j];
      if (v != 0 && v != 1)
        fail(Errc::NonBinaryEntry, "entry (" + std::to_string(i + 1) + "," +
                                       std::to_string(j + 1) + ") = " + std::to_string(v));
      a[static_cast<std::size_t>(i) * n + j] = static_cast<std::uint8_t>(v);
    }
  }
  for (int i = 0; i < n; ++i) {
    int s = 0;
    for (int j = 0; j < n; ++j) s += a[static_cast<std::size_t>(i) * n + j];
    if (s < 1) fail(Errc::ZeroRowOrColumn, "row " + std::to_string(i + 1) + " sums to 0");
  }
  for (int j = 0; j < n; ++j) {
    int s = 0;
    for (int i = 0; i < n; ++i) s += a[static_cast<std::size_t>(i) * n + j];
    if (s < 1) fail(Errc::ZeroRowOrColumn, "column " + std::to_string(j + 1) + " sums to 0");
  }
  return TransitionMatrix(n, std::move(a));
}

int TransitionMatrix::row_sum(int i) const {
  int s = 0;
  for (int j = 1; j <= n_; ++j) s += entry(i, j);
  return s;
}

int TransitionMatrix::col_sum(int j) const {
  int s = 0;
  for (int i = 1; i <= n_; ++i) s += entry(i, j);
  return s;
}

bool is_admissible(const TransitionMatrix& A, const Word& w) {
  if (w.symbols.empty()) return false;
  for (int s : w.symbols)
    if (s < 1 || s > A.size()) return false;
  for (std::size_t t = 0; t + 1 < w.symbols.size(); ++t)
    if (!A.edge(w.symbols[t], w.symbols[t + 1])) return false;
  return true;
}

namespace {

// reach[i][j]: a directed path of length >= 1 from i to j exists (1-based).
std::vector<std::vector<bool>> positive_length_reachability(const TransitionMatrix& A) {
  const int n = A.size();
  std::vector<std::vector<bool>> reach(n + 1, std::vector<bool>(n + 1, false));
  for (int i = 1; i <= n; ++i) {
    std::queue<int> q;
    for (int j = 1; j <= n; ++j) {
      if (A.edge(i, j) && !reach[i][j]) {
        reach[i][j] = true;
        q.push(j);
      }
    }
    while (!q.empty()) {
      int u = q.front();
      q.pop();
      for (int v = 1; v <= n; ++v) {
        if (A.edge(u, v) && !reach[i][v]) {
          reach[i][v] = true;
          q.push(v);
        }
      }
    }
  }
  return reach;
}

bool some_row_sum_at_least_two(const TransitionMatrix& A) {
  for (int i = 1; i <= A.size(); ++i)
    if (A.row_sum(i) >= 2) return true;
  return false;
}

void require_long_word_hypothesis(const TransitionMatrix& A, const char* what) {
  if (!is_irreducible(A))
    fail(Errc::HypothesisViolated, std::string(what) + ": matrix is not irreducible");
  if (!some_row_sum_at_least_two(A))
    fail(Errc::HypothesisViolated, std::string(what) + ": every row sum is 1");
}

// exists[m][s]: an admissible word with exactly m edges from s to `target`
// exists. Rows are appended on demand.
class ExactLengthReach {
 public:
  ExactLengthReach(const TransitionMatrix& A, int target) : A_(A) {
    std::vector<bool> base(A.size() + 1, false);
    base[target] = true;
    rows_.push_back(std::move(base));
  }

  bool at(std::int64_t edges, int from) {
    while (static_cast<std::int64_t>(rows_.size()) <= edges) {
      const auto& prev = rows_.back();
      std::vector<bool> next(A_.size() + 1, false);
      for (int s = 1; s <= A_.size(); ++s) {
        for (int t = 1; t <= A_.size(); ++t) {
          if (A_.edge(s, t) && prev[t]) {
            next[s] = true;
            break;
          }
        }
      }
      rows_.push_back(std::move(next));
    }
    return rows_[static_cast<std::size_t>(edges)][from];
  }

 private:
  const TransitionMatrix& A_;
  std::vector<std::vector<bool>> rows_;
};

// Lexicographic DFS over admissible words of fixed length and endpoints,
// stopping after max_count words. Returns true when the enumeration was cut
// short.
bool collect_words(const TransitionMatrix& A, std::int64_t length, int i, int j,
                   std::size_t max_count, std::vector<Word>& out) {
  if (length == 1) {
    if (i == j) {
      if (out.size() >= max_count) return true;
      out.push_back(Word{{i}});
    }
    return false;
  }
  ExactLengthReach reach(A, j);
  if (!reach.at(length - 1, i)) return false;
  Word w;
  w.symbols.reserve(static_cast<std::size_t>(length));
  w.symbols.push_back(i);
  auto dfs = [&](auto&& self, int cur) -> bool {
    const std::int64_t pos = static_cast<std::int64_t>(w.symbols.size());
    if (pos == length) {
      if (out.size() >= max_count) return true;
      out.push_back(w);
      return false;
    }
    const std::int64_t remaining = length - 1 - pos;
    for (int s = 1; s <= A.size(); ++s) {
      if (!A.edge(cur, s)) continue;
      if (remaining == 0 && s != j) continue;
      if (!reach.at(remaining, s)) continue;
      w.symbols.push_back(s);
      if (self(self, s)) return true;
      w.symbols.pop_back();
    }
    return false;
  };
  return dfs(dfs, i);
}

// Greedy lexicographic extraction of the smallest admissible word of the
// given length from i to j. Callers must ensure one exists.
Word lex_smallest_word(const TransitionMatrix& A, ExactLengthReach& reach, std::int64_t length,
                       int i, int j) {
  Word w;
  w.symbols.reserve(static_cast<std::size_t>(length));
  w.symbols.push_back(i);
  int cur = i;
  for (std::int64_t pos = 1; pos < length; ++pos) {
    const std::int64_t remaining = length - 1 - pos;  // edges still needed after this one
    bool advanced = false;
    for (int s = 1; s <= A.size(); ++s) {
      if (A.edge(cur, s) && reach.at(remaining, s) && (remaining > 0 || s == j)) {
        w.symbols.push_back(s);
        cur = s;
        advanced = true;
        break;
      }
    }
    if (!advanced) fail(Errc::HypothesisViolated, "no word of the promised length exists");
  }
  return w;
}

}  // namespace

bool is_irreducible(const TransitionMatrix& A) {
  const auto reach = positive_length_reachability(A);
  for (int i = 1; i <= A.size(); ++i)
    for (int j = 1; j <= A.size(); ++j)
      if (!reach[i][j]) return false;
  return true;
}

std::uint64_t power_entry(const TransitionMatrix& A, std::int64_t k, int i, int j) {
  if (k < 1) fail(Errc::ParseError, "power_entry needs k >= 1");
  const int n = A.size();
  if (i < 1 || i > n || j < 1 || j > n) fail(Errc::ParseError, "power_entry symbol out of range");
  // Row i of A^k by repeated vector-matrix products; entries of A are 0/1 so
  // each product is a checked sum.
  std::vector<std::uint64_t> row(n + 1, 0);
  row[i] = 1;
  for (std::int64_t step = 0; step < k; ++step) {
    std::vector<std::uint64_t> next(n + 1, 0);
    for (int s = 1; s <= n; ++s) {
      if (row[s] == 0) continue;
      for (int t = 1; t <= n; ++t) {
        if (!A.edge(s, t)) continue;
        std::uint64_t sum = 0;
        if (__builtin_add_overflow(next[t], row[s], &sum))
          fail(Errc::Overflow, "word count exceeds 64-bit range at k=" + std::to_string(step + 1));
        next[t] = sum;
      }
    }
    row = std::move(next);
  }
  return row[j];
}

std::vector<Word> enumerate_words(const TransitionMatrix& A, std::int64_t length, int i, int j,
                                  std::size_t budget) {
  if (length < 1) fail(Errc::ParseError, "word length must be >= 1");
  const int n = A.size();
  if (i < 1 || i > n || j < 1 || j > n) fail(Errc::ParseError, "enumerate_words symbol out of range");

  std::vector<Word> out;
  if (collect_words(A, length, i, j, budget, out))
    fail(Errc::BudgetExceeded, "more than " + std::to_string(budget) + " words of length " +
                                   std::to_string(length));
  return out;
}

int minimal_return_time(const TransitionMatrix& A, int j0) {
  if (j0 < 1 || j0 > A.size()) fail(Errc::ParseError, "j0 out of range");
  if (!is_irreducible(A)) fail(Errc::NotIrreducible, "minimal return time needs irreducibility");
  // Shortest directed cycle through j0: BFS distances from j0's successors.
  const int n = A.size();
  std::vector<int> dist(n + 1, -1);
  std::queue<int> q;
  for (int s = 1; s <= n; ++s) {
    if (A.edge(j0, s) && dist[s] < 0) {
      dist[s] = 1;
      q.push(s);
    }
  }
  while (!q.empty()) {
    int u = q.front();
    q.pop();
    if (u == j0) return dist[u];
    for (int v = 1; v <= n; ++v) {
      if (A.edge(u, v) && dist[v] < 0) {
        dist[v] = dist[u] + 1;
        q.push(v);
      }
    }
  }
  fail(Errc::NotIrreducible, "no return path to symbol " + std::to_string(j0));
}

std::int64_t alternative_length_bound(int n) {
  const std::int64_t N = n;
  return 2 * N * (N * N - 2 * N + 2);
}

Word find_long_word(const TransitionMatrix& A, int i, int j, std::int64_t l) {
  require_long_word_hypothesis(A, "find_long_word");
  const int n = A.size();
  if (i < 1 || i > n || j < 1 || j > n) fail(Errc::ParseError, "find_long_word symbol out of range");

  ExactLengthReach reach(A, j);
  // Achievable lengths between a fixed pair recur with period at most N; the
  // transient is bounded by N^2, so a hit must appear within this window.
  const std::int64_t cap = std::max<std::int64_t>(l, 0) + static_cast<std::int64_t>(n) * n + 2 * n + 2;
  for (std::int64_t length = std::max<std::int64_t>(l + 1, 1); length <= cap; ++length) {
    if (length == 1) {
      if (i == j) return Word{{i}};
      continue;
    }
    if (reach.at(length - 1, i)) return lex_smallest_word(A, reach, length, i, j);
  }
  fail(Errc::HypothesisViolated, "no admissible word longer than " + std::to_string(l));
}

Word find_alternative_word(const TransitionMatrix& A, const Word& w) {
  if (!is_admissible(A, w)) fail(Errc::NotAdmissible, "input word " + to_string(w));
  const std::int64_t length = static_cast<std::int64_t>(w.length());
  const int i = w.first();
  const int j = w.last();

  if (length >= 2) {
    ExactLengthReach reach(A, j);
    // Lexicographic DFS; the first completed word different from w wins.
    Word cand;
    cand.symbols.reserve(w.length());
    cand.symbols.push_back(i);
    std::optional<Word> found;
    auto dfs = [&](auto&& self, int cur) -> bool {
      const std::int64_t pos = static_cast<std::int64_t>(cand.symbols.size());
      if (pos == length) {
        if (cand != w) {
          found = cand;
          return true;
        }
        return false;
      }
      const std::int64_t remaining = length - 1 - pos;
      for (int s = 1; s <= A.size(); ++s) {
        if (!A.edge(cur, s)) continue;
        if (remaining == 0 && s != j) continue;
        if (!reach.at(remaining, s)) continue;
        cand.symbols.push_back(s);
        if (self(self, s)) return true;
        cand.symbols.pop_back();
      }
      return false;
    };
    if (dfs(dfs, i) && found) return *found;
  }

  if (length <= alternative_length_bound(A.size()))
    fail(Errc::TooShort, "no alternative for " + to_string(w) + " (length " +
                             std::to_string(length) + " <= bound " +
                             std::to_string(alternative_length_bound(A.size())) + ")");
  fail(Errc::HypothesisViolated, "no alternative above the length bound for " + to_string(w));
}

WordTriple find_word_triple(const TransitionMatrix& A, int j0) {
  require_long_word_hypothesis(A, "find_word_triple");
  if (j0 < 1 || j0 > A.size()) fail(Errc::ParseError, "j0 out of range");

  WordTriple out;
  for (int i = 1; i <= A.size(); ++i) {
    if (A.edge(i, j0)) {
      out.t0 = i;
      break;
    }
  }
  for (int j = 1; j <= A.size(); ++j) {
    if (A.edge(j0, j)) {
      out.m0 = j;
      break;
    }
  }
  // Column/row sums >= 1 guarantee both anchors exist.

  out.w0 = find_long_word(A, out.m0, out.t0, 0);

  // Minimal length with at least two words j0 -> t0; bounded by the
  // alternative-word threshold plus the reachability transient.
  const std::int64_t cap =
      alternative_length_bound(A.size()) + static_cast<std::int64_t>(A.size()) * A.size() +
      2 * A.size() + 2;
  for (std::int64_t length = 2; length <= cap; ++length) {
    std::vector<Word> words;
    collect_words(A, length, j0, out.t0, 2, words);
    if (words.size() >= 2) {
      out.w1 = words[0];
      out.w2 = words[1];
      return out;
    }
  }
  fail(Errc::HypothesisViolated, "no equal-length word pair from " + std::to_string(j0));
}

}  // namespace chaoscert
