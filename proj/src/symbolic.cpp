#include "chaoscert/symbolic.hpp"

#include <cmath>
#include <mutex>
#include <optional>

namespace chaoscert {

// ---------------------------------------------------------------------------
// ChoiceSeq

bool ChoiceSeq::bit(std::int64_t i) const {
  if (i < 1) fail(Errc::ParseError, "choice bits are indexed from 1");
  const std::int64_t idx = i - 1;
  if (idx < static_cast<std::int64_t>(prefix.size()))
    return prefix[static_cast<std::size_t>(idx)] != 0;
  if (tail.empty()) fail(Errc::ParseError, "choice sequence has an empty tail");
  const std::int64_t t = (idx - static_cast<std::int64_t>(prefix.size())) %
                         static_cast<std::int64_t>(tail.size());
  return tail[static_cast<std::size_t>(t)] != 0;
}

ChoiceSeq ChoiceSeq::parse(const std::string& text) {
  ChoiceSeq out;
  out.tail.clear();
  auto push = [](std::vector<std::uint8_t>& v, char c) {
    if (c != '0' && c != '1') fail(Errc::ParseError, std::string("choice bit '") + c + "'");
    v.push_back(static_cast<std::uint8_t>(c - '0'));
  };
  const auto colon = text.find(':');
  const std::string head = text.substr(0, colon);
  for (char c : head) push(out.prefix, c);
  if (colon != std::string::npos)
    for (char c : text.substr(colon + 1)) push(out.tail, c);
  if (out.tail.empty()) out.tail = {0};
  return out;
}

std::string ChoiceSeq::str() const {
  std::string s;
  for (auto b : prefix) s += static_cast<char>('0' + b);
  s += ':';
  for (auto b : tail) s += static_cast<char>('0' + b);
  return s;
}

// ---------------------------------------------------------------------------
// Schedule31

Schedule31::Schedule31(double lambda, double mu, int k0, double diam_j0, std::int64_t m1,
                       std::int64_t m2)
    : lambda_(lambda), mu_(mu), diam_j0_(diam_j0), k0_(k0), m1_(m1), m2_(m2) {
  if (!(lambda > 0.0) || !(mu > 0.0)) fail(Errc::CriterionFailed, "expansion constants must be positive");
  if (k0_ < 1) fail(Errc::ParseError, "k0 must be >= 1");
  if (!(diam_j0_ > 0.0)) fail(Errc::ParseError, "diam_j0 must be positive");
  if (m1_ < 1 || m2_ < 1) fail(Errc::ParseError, "word lengths must be >= 1");
  mu0_ = std::min(lambda_, mu_);
  log_gain_ = std::log(lambda_) + static_cast<double>(k0_ - 1) * std::log(mu_);
  if (!(log_gain_ > 0.0))
    fail(Errc::CriterionFailed, "lambda*mu^(k0-1) must exceed 1");
  h_.push_back(0);
}

std::int64_t Schedule31::i_at(std::int64_t j) const {
  if (j < 1 || j > depth()) fail(Errc::ParseError, "schedule index out of range");
  return i_[static_cast<std::size_t>(j - 1)];
}

std::int64_t Schedule31::h_at(std::int64_t j) const {
  if (j < 0 || j > depth()) fail(Errc::ParseError, "schedule index out of range");
  return h_[static_cast<std::size_t>(j)];
}

std::int64_t Schedule31::block_length(std::int64_t j) const { return h_at(j) - h_at(j - 1); }

void Schedule31::extend_to(std::int64_t depth) {
  if (depth > max_depth) fail(Errc::DepthExplosion, "schedule depth beyond cap");
  const double log_mu0 = std::log(mu0_);
  const double log2 = std::log(2.0);
  const double log_diam = std::log(diam_j0_);
  while (this->depth() < depth) {
    const std::int64_t j = this->depth() + 1;
    const std::int64_t i_prev = i_.empty() ? 0 : i_.back();
    const std::int64_t h_prev = h_.back();
    // Smallest i > i_prev with log(diam) - i*log_gain <= h_prev*log(mu0) - j*log 2.
    const double rhs = static_cast<double>(h_prev) * log_mu0 - static_cast<double>(j) * log2;
    std::int64_t i = i_prev + 1;
    const double need = (log_diam - rhs) / log_gain_;
    if (need > static_cast<double>(i)) {
      if (need > static_cast<double>(max_index))
        fail(Errc::DepthExplosion, "selection index beyond cap at block " + std::to_string(j));
      i = static_cast<std::int64_t>(std::ceil(need));
    }
    while (log_diam - static_cast<double>(i) * log_gain_ > rhs) {
      if (++i > max_index)
        fail(Errc::DepthExplosion, "selection index beyond cap at block " + std::to_string(j));
    }
    i_.push_back(i);
    h_.push_back(h_prev + l_of(i) + m1_ + (j - 1) * m2_ + 1);
    // The incremental sum must reproduce the closed formula.
    std::int64_t sum_l = 0;
    for (auto iv : i_) sum_l += l_of(iv);
    const std::int64_t closed = sum_l + j * m1_ + j * (j - 1) / 2 * m2_ + j;
    if (closed != h_.back())
      fail(Errc::DepthExplosion, "schedule arithmetic mismatch at block " + std::to_string(j));
  }
}

Schedule31 build_schedule31(double lambda, double mu, int k0, double diam_j0, std::int64_t m1,
                            std::int64_t m2, std::int64_t depth) {
  if (depth < 1) fail(Errc::ParseError, "schedule depth must be >= 1");
  Schedule31 s(lambda, mu, k0, diam_j0, m1, m2);
  s.extend_to(depth);
  return s;
}

// ---------------------------------------------------------------------------
// ItineraryScheme

struct ItineraryScheme::Impl {
  SchemeKind kind;
  TransitionMatrix A;
  std::vector<int> prefix_syms;  // ExplicitPrefix
  std::vector<int> cycle;        // Periodic / ExplicitPrefix tail / alpha for T31
  WordTriple triple;             // structured schemes
  ChoiceSeq choices;             // structured schemes
  int j0 = 0;
  Schedule42 s42;
  mutable std::optional<Schedule31> s31;
  mutable std::mutex lock;

  Impl(SchemeKind k, TransitionMatrix a) : kind(k), A(std::move(a)) {}
};

SchemeKind ItineraryScheme::kind() const { return impl_->kind; }
const TransitionMatrix& ItineraryScheme::matrix() const { return impl_->A; }

int ItineraryScheme::period() const {
  if (impl_->kind != SchemeKind::Periodic) fail(Errc::ParseError, "not a periodic scheme");
  return static_cast<int>(impl_->cycle.size());
}

const Schedule42& ItineraryScheme::schedule42() const {
  if (impl_->kind != SchemeKind::Theorem42) fail(Errc::ParseError, "scheme has no segment schedule");
  return impl_->s42;
}

Schedule31& ItineraryScheme::schedule31() const {
  if (impl_->kind != SchemeKind::Theorem31) fail(Errc::ParseError, "scheme has no block schedule");
  return *impl_->s31;
}

const WordTriple& ItineraryScheme::triple() const {
  if (impl_->kind != SchemeKind::Theorem31 && impl_->kind != SchemeKind::Theorem42)
    fail(Errc::ParseError, "scheme has no word triple");
  return impl_->triple;
}

const ChoiceSeq& ItineraryScheme::choices() const {
  if (impl_->kind != SchemeKind::Theorem31 && impl_->kind != SchemeKind::Theorem42)
    fail(Errc::ParseError, "scheme has no choice bits");
  return impl_->choices;
}

int ItineraryScheme::symbol_at(std::int64_t n) const {
  if (n < 0) fail(Errc::ParseError, "symbol index must be >= 0");
  const Impl& im = *impl_;
  switch (im.kind) {
    case SchemeKind::Periodic:
      return im.cycle[static_cast<std::size_t>(n % static_cast<std::int64_t>(im.cycle.size()))];

    case SchemeKind::ExplicitPrefix: {
      const std::int64_t plen = static_cast<std::int64_t>(im.prefix_syms.size());
      if (n < plen) return im.prefix_syms[static_cast<std::size_t>(n)];
      return im.cycle[static_cast<std::size_t>((n - plen) %
                                               static_cast<std::int64_t>(im.cycle.size()))];
    }

    case SchemeKind::Theorem42: {
      // Segment index: largest m with k_m <= n.
      const Schedule42& s = im.s42;
      std::int64_t lo = 1, hi = 2;
      while (s.k_at(hi + 1) <= n) hi *= 2;
      while (lo < hi) {
        const std::int64_t mid = (lo + hi + 1) / 2;
        if (s.k_at(mid) <= n)
          lo = mid;
        else
          hi = mid - 1;
      }
      const std::int64_t m = lo;
      std::int64_t off = n - s.k_at(m);
      if (off < m) return im.j0;
      off -= m;
      if (off < s.l1) return im.triple.w0.symbols[static_cast<std::size_t>(off)];
      off -= s.l1;
      const std::int64_t b = off / s.l2 + 1;  // B_b, 1 <= b <= m-1
      const std::int64_t o = off % s.l2;
      const Word& B = im.choices.bit(b) ? im.triple.w2 : im.triple.w1;
      return B.symbols[static_cast<std::size_t>(o)];
    }

    case SchemeKind::Theorem31: {
      std::scoped_lock g(im.lock);
      Schedule31& s = *im.s31;
      while (s.h_at(s.depth()) <= n) s.extend_to(s.depth() + 1);
      // Block index: the j with h_{j-1} <= n < h_j.
      std::int64_t lo = 1, hi = s.depth();
      while (lo < hi) {
        const std::int64_t mid = (lo + hi) / 2;
        if (s.h_at(mid) <= n)
          lo = mid + 1;
        else
          hi = mid;
      }
      const std::int64_t j = lo;
      std::int64_t off = n - s.h_at(j - 1);
      const std::int64_t li = s.l_of(s.i_at(j));
      if (off <= li)
        return im.cycle[static_cast<std::size_t>(off % static_cast<std::int64_t>(im.cycle.size()))];
      off -= li + 1;
      if (off < s.m1()) return im.triple.w0.symbols[static_cast<std::size_t>(off)];
      off -= s.m1();
      const std::int64_t b = off / s.m2() + 1;  // B_b, 1 <= b <= j-1
      const std::int64_t o = off % s.m2();
      const Word& B = im.choices.bit(b) ? im.triple.w2 : im.triple.w1;
      return B.symbols[static_cast<std::size_t>(o)];
    }
  }
  fail(Errc::ParseError, "corrupt scheme");
}

SequenceDistance sequence_distance(const ItineraryScheme& a, const ItineraryScheme& b,
                                   std::int64_t prefix) {
  if (prefix < 1) fail(Errc::ParseError, "distance prefix must be >= 1");
  double lower = 0.0;
  for (std::int64_t i = 0; i < prefix; ++i) {
    if (a.symbol_at(i) != b.symbol_at(i)) {
      const int e = (i > 1060) ? -1060 : static_cast<int>(-i);
      lower += std::ldexp(1.0, e);
    }
  }
  const int te = (prefix > 1060) ? -1060 : static_cast<int>(1 - prefix);
  return {lower, lower + std::ldexp(1.0, te)};
}

ItineraryScheme build_alpha(const TransitionMatrix& A, int j0, int k0, const Word& cycle) {
  if (k0 < 1) fail(Errc::ParseError, "k0 must be >= 1");
  if (j0 < 1 || j0 > A.size()) fail(Errc::ParseError, "j0 out of range");
  if (static_cast<std::int64_t>(cycle.length()) != k0 + 1)
    fail(Errc::CycleMismatch, "cycle word must have length k0+1 = " + std::to_string(k0 + 1) +
                                  ", got " + std::to_string(cycle.length()));
  if (cycle.first() != j0 || cycle.last() != j0)
    fail(Errc::CycleMismatch, "cycle word must start and end at j0 = " + std::to_string(j0));
  if (!is_admissible(A, cycle)) fail(Errc::CycleMismatch, "cycle word " + to_string(cycle));

  auto impl = std::make_shared<ItineraryScheme::Impl>(SchemeKind::Periodic, A);
  impl->cycle.assign(cycle.symbols.begin(), cycle.symbols.end() - 1);
  impl->j0 = j0;
  return ItineraryScheme(std::move(impl));
}

ItineraryScheme make_explicit_scheme(const TransitionMatrix& A, std::vector<int> prefix,
                                     std::vector<int> periodic) {
  if (periodic.empty()) fail(Errc::ParseError, "explicit scheme needs a periodic tail");
  std::vector<int> all = prefix;
  all.insert(all.end(), periodic.begin(), periodic.end());
  all.push_back(periodic.front());  // wrap edge
  for (std::size_t t = 0; t + 1 < all.size(); ++t)
    if (all[t] < 1 || all[t] > A.size() || !A.edge(all[t], all[t + 1]))
      fail(Errc::NotAdmissible,
           "symbols " + std::to_string(all[t]) + " -> " + std::to_string(all[t + 1]));

  auto impl = std::make_shared<ItineraryScheme::Impl>(SchemeKind::ExplicitPrefix, A);
  impl->prefix_syms = std::move(prefix);
  impl->cycle = std::move(periodic);
  return ItineraryScheme(std::move(impl));
}

ItineraryScheme build_beta_hat_31(const ItineraryScheme& alpha, const Schedule31& sched,
                                  const WordTriple& triple, const ChoiceSeq& choices) {
  if (alpha.kind() != SchemeKind::Periodic)
    fail(Errc::ParseError, "beta-hat needs a periodic base itinerary");
  if (alpha.period() != sched.k0())
    fail(Errc::CycleMismatch, "base itinerary period differs from schedule k0");
  const int j0 = triple.w1.first();
  if (alpha.symbol_at(0) != j0)
    fail(Errc::CycleMismatch, "base itinerary does not start at j0");
  if (static_cast<std::int64_t>(triple.w0.length()) != sched.m1() ||
      static_cast<std::int64_t>(triple.w1.length()) != sched.m2() ||
      static_cast<std::int64_t>(triple.w2.length()) != sched.m2())
    fail(Errc::CycleMismatch, "word lengths differ from schedule m1/m2");

  auto impl = std::make_shared<ItineraryScheme::Impl>(SchemeKind::Theorem31, alpha.matrix());
  impl->cycle.resize(static_cast<std::size_t>(alpha.period()));
  for (int t = 0; t < alpha.period(); ++t) impl->cycle[static_cast<std::size_t>(t)] = alpha.symbol_at(t);
  impl->triple = triple;
  impl->choices = choices;
  impl->j0 = j0;
  impl->s31.emplace(sched);
  return ItineraryScheme(std::move(impl));
}

std::pair<ItineraryScheme, Schedule42> build_beta_hat_42(const TransitionMatrix& A, int j0,
                                                         const WordTriple& triple,
                                                         const ChoiceSeq& choices) {
  if (j0 < 1 || j0 > A.size()) fail(Errc::ParseError, "j0 out of range");
  if (!A.edge(j0, j0))
    fail(Errc::SelfLoopMissing, "symbol " + std::to_string(j0) + " has no self-loop");
  if (triple.w1.first() != j0 || triple.w2.first() != j0)
    fail(Errc::CycleMismatch, "word pair does not start at j0");
  if (triple.w1.length() != triple.w2.length() || triple.w1 == triple.w2)
    fail(Errc::CycleMismatch, "word pair must be distinct with equal lengths");

  Schedule42 s;
  s.j0 = j0;
  s.l1 = static_cast<std::int64_t>(triple.w0.length());
  s.l2 = static_cast<std::int64_t>(triple.w1.length());

  auto impl = std::make_shared<ItineraryScheme::Impl>(SchemeKind::Theorem42, A);
  impl->triple = triple;
  impl->choices = choices;
  impl->j0 = j0;
  impl->s42 = s;
  return {ItineraryScheme(std::move(impl)), s};
}

}  // namespace chaoscert
