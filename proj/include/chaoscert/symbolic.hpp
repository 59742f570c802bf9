#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "chaoscert/matrix.hpp"

namespace chaoscert {

// Infinite 0/1 sequence as finite prefix plus repeating tail; bit i >= 1
// selects the word used for block B_i (0 -> w1, 1 -> w2). Text form is
// "prefix:tail", e.g. "0110:01"; the tail defaults to "0".
struct ChoiceSeq {
  std::vector<std::uint8_t> prefix;
  std::vector<std::uint8_t> tail{0};

  bool bit(std::int64_t i) const;  // i >= 1
  static ChoiceSeq parse(const std::string& text);
  std::string str() const;

  bool operator==(const ChoiceSeq&) const = default;
};

enum class SchemeKind { Periodic, Theorem31, Theorem42, ExplicitPrefix };

// Time schedule for the complete-space construction: block j appends a copy
// of the periodic itinerary truncated at l_{i_j} = i_j * k0, and h_j marks
// where block j+1 starts. The i_j are the smallest indices satisfying the
// certified shrink condition
//   (lambda*mu^(k0-1))^(-i_j) * diam_j0 <= mu0^(h_{j-1}) * 2^(-j),
// evaluated in log space.
class Schedule31 {
 public:
  Schedule31(double lambda, double mu, int k0, double diam_j0, std::int64_t m1, std::int64_t m2);

  void extend_to(std::int64_t depth);  // number of computed blocks
  std::int64_t depth() const { return static_cast<std::int64_t>(i_.size()); }

  std::int64_t i_at(std::int64_t j) const;  // j >= 1
  std::int64_t h_at(std::int64_t j) const;  // j >= 0, h_0 = 0
  std::int64_t l_of(std::int64_t idx) const { return idx * k0_; }
  std::int64_t block_length(std::int64_t j) const;  // h_j - h_{j-1}

  double lambda() const { return lambda_; }
  double mu() const { return mu_; }
  double mu0() const { return mu0_; }
  int k0() const { return k0_; }
  std::int64_t m1() const { return m1_; }
  std::int64_t m2() const { return m2_; }
  double diam_j0() const { return diam_j0_; }

  // Caps guarding against runaway growth when mu0 < 1.
  std::int64_t max_index = std::int64_t{1} << 40;
  std::int64_t max_depth = std::int64_t{1} << 20;

 private:
  double lambda_, mu_, mu0_, diam_j0_;
  int k0_;
  std::int64_t m1_, m2_;
  double log_gain_;  // log(lambda*mu^(k0-1)) > 0
  std::vector<std::int64_t> i_;  // i_1..i_depth
  std::vector<std::int64_t> h_;  // h_0..h_depth
};

Schedule31 build_schedule31(double lambda, double mu, int k0, double diam_j0, std::int64_t m1,
                            std::int64_t m2, std::int64_t depth);

// Time schedule for the compact-space construction: segment n carries n
// leading j0 symbols and starts at
//   k_n = n(n-1)/2 + (n-1)*l1 + (n-2)(n-1)*l2/2.
struct Schedule42 {
  int j0 = 0;
  std::int64_t l1 = 0;  // |w0|
  std::int64_t l2 = 0;  // |w1| = |w2|

  std::int64_t k_at(std::int64_t n) const {
    return n * (n - 1) / 2 + (n - 1) * l1 + (n - 2) * (n - 1) * l2 / 2;
  }
  std::int64_t segment_length(std::int64_t n) const { return n + l1 + (n - 1) * l2; }
};

// Lazily evaluable infinite symbol sequence over 1..N, admissible for its
// matrix. Construction fixes the structure; symbol lookup is pure.
class ItineraryScheme {
 public:
  int symbol_at(std::int64_t n) const;
  SchemeKind kind() const;
  const TransitionMatrix& matrix() const;
  int period() const;  // Periodic schemes only

  const Schedule42& schedule42() const;  // Theorem42 schemes only
  Schedule31& schedule31() const;        // Theorem31 schemes only (extends on demand)
  const WordTriple& triple() const;      // structured schemes only
  const ChoiceSeq& choices() const;      // structured schemes only

  struct Impl;

 private:
  friend ItineraryScheme build_alpha(const TransitionMatrix&, int, int, const Word&);
  friend ItineraryScheme make_explicit_scheme(const TransitionMatrix&, std::vector<int>,
                                              std::vector<int>);
  friend ItineraryScheme build_beta_hat_31(const ItineraryScheme&, const Schedule31&,
                                           const WordTriple&, const ChoiceSeq&);
  friend std::pair<ItineraryScheme, Schedule42> build_beta_hat_42(const TransitionMatrix&, int,
                                                                  const WordTriple&,
                                                                  const ChoiceSeq&);
  explicit ItineraryScheme(std::shared_ptr<Impl> impl) : impl_(std::move(impl)) {}
  std::shared_ptr<Impl> impl_;
};

// Partial-sum bracket of the symbol-space distance sum_i d(a_i,b_i)/2^i:
// lower is the prefix sum, upper adds the exact geometric tail 2^(1-prefix).
struct SequenceDistance {
  double lower = 0.0;
  double upper = 0.0;
};

SequenceDistance sequence_distance(const ItineraryScheme& a, const ItineraryScheme& b,
                                   std::int64_t prefix);

// Periodic itinerary (j0, b_1, ..., b_{k0-1}, j0, ...) from a length-(k0+1)
// admissible cycle word through j0.
ItineraryScheme build_alpha(const TransitionMatrix& A, int j0, int k0, const Word& cycle);

// Explicit symbols followed by a repeating block; mostly for tests and
// serialized schemes.
ItineraryScheme make_explicit_scheme(const TransitionMatrix& A, std::vector<int> prefix,
                                     std::vector<int> periodic);

// Block j is (a_0..a_{l_{i_j}}, w0, B_1..B_{j-1}) starting at h_{j-1}; the
// B_i are w1 or w2 by choice bit.
ItineraryScheme build_beta_hat_31(const ItineraryScheme& alpha, const Schedule31& sched,
                                  const WordTriple& triple, const ChoiceSeq& choices);

// Segment n is (j0 x n, w0, B_1..B_{n-1}) starting at k_n; needs the j0
// self-loop.
std::pair<ItineraryScheme, Schedule42> build_beta_hat_42(const TransitionMatrix& A, int j0,
                                                         const WordTriple& triple,
                                                         const ChoiceSeq& choices);

}  // namespace chaoscert
