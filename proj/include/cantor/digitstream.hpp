#pragma once
// digitstream.hpp - Q-Cantor digit streams: exact expansion of rationals,
// enclosures, the two representations of terminating points, the shift
// T_{Q,n} and the run statistic rho_P.

#include "seqcore.hpp"

#include <map>
#include <numeric>
#include <ostream>

namespace cantor {

enum class Canonicity { canonical, terminating, max_tail, unknown };

inline std::string to_string(Canonicity c) {
  switch (c) {
    case Canonicity::canonical: return "canonical";
    case Canonicity::terminating: return "terminating";
    case Canonicity::max_tail: return "max_tail";
    case Canonicity::unknown: return "unknown";
  }
  return "?";
}

// (q_n, E_n) is periodic with the given length for n >= start.
struct JointPeriod {
  Index start = 1;
  Index length = 1;
};

class DigitSource {
 public:
  virtual ~DigitSource() = default;
  virtual Int digit(Index n) const = 0;
  virtual std::optional<JointPeriod> joint_period() const { return std::nullopt; }
  // Exact T_{Q,n}(x) when the source tracks remainders.
  virtual std::optional<Rat> remainder(Index /*n*/) const { return std::nullopt; }
};

inline Index lcm_index(Index a, Index b) { return std::lcm(a, b); }

// Digits of a rational by exact multiply-and-floor: with r_{n-1} = a/d,
// E_n = floor(a q_n / d) and r_n = (a q_n mod d) / d.
class RationalSource final : public DigitSource {
 public:
  RationalSource(BasicSeq base, Rat frac) : base_(std::move(base)), den_(frac.get_den()) {
    nums_.push_back(frac.get_num());
    period_ = base_.tail_period();
  }

  Int digit(Index n) const override {
    std::lock_guard<std::mutex> lock(mu_);
    return digits_[slot(n)];
  }

  std::optional<Rat> remainder(Index n) const override {
    std::lock_guard<std::mutex> lock(mu_);
    if (n == 0) return make_rat(nums_[0], den_);
    return make_rat(nums_[slot(n) + 1], den_);
  }

  std::optional<JointPeriod> joint_period() const override {
    std::lock_guard<std::mutex> lock(mu_);
    if (!cycle_ && period_) extend_until_cycle();
    return cycle_;
  }

  // Index of the last nonzero digit once the remainder has reached zero.
  std::optional<Index> termination(Index horizon) const {
    std::lock_guard<std::mutex> lock(mu_);
    if (nums_[0] == 0) return Index{0};
    materialize(horizon);
    return terminated_at_;
  }

 private:
  // Position in the memo for digit n, folding through a detected cycle.
  std::size_t slot(Index n) const {
    if (n == 0) throw std::out_of_range("digit index must be >= 1");
    if (cycle_ && n >= cycle_->start + cycle_->length) {
      Index off = (n - cycle_->start) % cycle_->length;
      return static_cast<std::size_t>(cycle_->start + off - 1);
    }
    materialize(n);
    return static_cast<std::size_t>(n - 1);
  }

  void step() const {
    Index n = digits_.size() + 1;
    const Int& a = nums_.back();
    Int q = base_.at(n);
    Int prod = a * q;
    Int e, r;
    mpz_fdiv_qr(e.get_mpz_t(), r.get_mpz_t(), prod.get_mpz_t(), den_.get_mpz_t());
    if (e != 0) last_nonzero_ = n;
    digits_.push_back(e);
    nums_.push_back(r);
    if (r == 0 && !terminated_at_) terminated_at_ = last_nonzero_;
    record_phase(n);
  }

  // At phase boundaries of Q's periodic tail, a repeated remainder closes a cycle.
  void record_phase(Index m) const {
    if (!period_ || cycle_) return;
    Index L = period_->values.size();
    Index s = period_->start;
    if (m + 1 < s || (m + 1 - s) % L != 0) return;
    const Int& r = nums_.back();
    auto [it, inserted] = seen_.emplace(r, m);
    if (!inserted) {
      Index m1 = it->second;
      cycle_ = JointPeriod{m1 + 1, m - m1};
      seen_.clear();
    }
  }

  void materialize(Index n) const {
    while (digits_.size() < n) {
      if (cycle_ && digits_.size() >= cycle_->start + cycle_->length - 1) return;
      step();
    }
  }

  void extend_until_cycle() const {
    // Remainders live in [0, den) so a cycle appears within den * L phase steps.
    while (!cycle_) step();
  }

  BasicSeq base_;
  Int den_;
  std::optional<TailPeriod> period_;
  mutable std::mutex mu_;
  mutable std::vector<Int> digits_;
  mutable std::vector<Int> nums_;
  mutable std::map<Int, Index> seen_;
  mutable std::optional<JointPeriod> cycle_;
  mutable Index last_nonzero_ = 0;
  mutable std::optional<Index> terminated_at_;
};

class RuleSource final : public DigitSource {
 public:
  RuleSource(std::function<Int(Index)> f, std::optional<JointPeriod> period = std::nullopt)
      : f_(std::move(f)), period_(period) {}
  Int digit(Index n) const override {
    if (n == 0) throw std::out_of_range("digit index must be >= 1");
    return f_(n);
  }
  std::optional<JointPeriod> joint_period() const override { return period_; }

 private:
  std::function<Int(Index)> f_;
  std::optional<JointPeriod> period_;
};

class DigitStream {
 public:
  DigitStream(BasicSeq base, std::shared_ptr<const DigitSource> src, Int integer_part = 0,
              Canonicity canon = Canonicity::unknown)
      : base_(std::move(base)), src_(std::move(src)), integer_part_(std::move(integer_part)), canon_(canon) {}

  // The zero stream over constant(2).
  DigitStream()
      : DigitStream(BasicSeq::constant(2), std::make_shared<RuleSource>([](Index) { return Int(0); }), 0,
                    Canonicity::terminating) {
    terminates_at_ = 0;
  }

  static DigitStream from_rule(BasicSeq base, std::function<Int(Index)> f,
                               Canonicity canon = Canonicity::unknown,
                               std::optional<JointPeriod> period = std::nullopt) {
    return DigitStream(std::move(base), std::make_shared<RuleSource>(std::move(f), period), 0, canon);
  }

  // Digits given by a finite list followed by zeros.
  static DigitStream from_digits(BasicSeq base, std::vector<Int> digits, Int integer_part = 0) {
    Index last = 0;
    for (Index i = 0; i < digits.size(); ++i)
      if (digits[i] != 0) last = i + 1;
    for (Index i = 0; i < digits.size(); ++i) {
      Int q = base.at(i + 1);
      if (digits[i] < 0 || digits[i] >= q)
        throw std::invalid_argument("digit " + digits[i].get_str() + " out of range at n=" + std::to_string(i + 1));
    }
    auto shared = std::make_shared<std::vector<Int>>(std::move(digits));
    std::optional<JointPeriod> jp;
    if (auto tp = base.tail_period()) jp = JointPeriod{std::max<Index>(tp->start, last + 1), tp->values.size()};
    DigitStream d = from_rule(
        base, [shared](Index n) { return n <= shared->size() ? (*shared)[n - 1] : Int(0); },
        Canonicity::terminating, jp);
    d.integer_part_ = std::move(integer_part);
    d.terminates_at_ = last;
    d.known_prefix_len_ = shared->size();
    return d;
  }

  // Digits given by a finite list followed by q_n - 1 for every later n.
  static DigitStream from_digits_max_tail(BasicSeq base, std::vector<Int> digits, Int integer_part = 0) {
    auto shared = std::make_shared<std::vector<Int>>(std::move(digits));
    Index k = shared->size();
    BasicSeq b = base;
    std::optional<JointPeriod> jp;
    if (auto tp = base.tail_period()) jp = JointPeriod{std::max<Index>(tp->start, k + 1), tp->values.size()};
    DigitStream d = from_rule(
        base, [shared, b](Index n) -> Int { return n <= shared->size() ? (*shared)[n - 1] : b.at(n) - 1; },
        Canonicity::max_tail, jp);
    d.integer_part_ = std::move(integer_part);
    d.max_tail_from_ = k + 1;
    d.known_prefix_len_ = k;
    return d;
  }

  Int digit(Index n) const {
    if (n == 0) throw std::out_of_range("digit index must be >= 1");
    return src_->digit(n);
  }
  Int q(Index n) const { return base_.at(n); }
  const BasicSeq& base() const { return base_; }
  const Int& integer_part() const { return integer_part_; }
  Canonicity canonicity() const { return canon_; }
  std::optional<Index> terminates_at() const { return terminates_at_; }
  std::optional<Index> max_tail_from() const { return max_tail_from_; }
  Index known_prefix_len() const { return known_prefix_len_; }
  std::optional<JointPeriod> joint_period() const { return src_->joint_period(); }
  std::optional<Rat> remainder(Index n) const {
    if (auto r = src_->remainder(n)) return r;
    if (!terminates_at_) return std::nullopt;
    // finite sum over digits n+1..t
    Int num = 0, den = 1;
    for (Index j = n + 1; j <= *terminates_at_; ++j) {
      Int q = base_.at(j);
      num = num * q + src_->digit(j);
      den *= q;
    }
    return make_rat(num, den);
  }
  const std::shared_ptr<const DigitSource>& source() const { return src_; }

  std::vector<Int> digits(Index n) const {
    std::vector<Int> out;
    out.reserve(n);
    for (Index i = 1; i <= n; ++i) out.push_back(digit(i));
    return out;
  }

  DigitStream& set_canonicity(Canonicity c) {
    canon_ = c;
    return *this;
  }
  DigitStream& set_terminates_at(std::optional<Index> t) {
    terminates_at_ = t;
    return *this;
  }
  DigitStream& set_max_tail_from(std::optional<Index> m) {
    max_tail_from_ = m;
    return *this;
  }
  DigitStream& set_known_prefix_len(Index n) {
    known_prefix_len_ = std::max(known_prefix_len_, n);
    return *this;
  }
  DigitStream& set_integer_part(Int e0) {
    integer_part_ = std::move(e0);
    return *this;
  }

 private:
  BasicSeq base_;
  std::shared_ptr<const DigitSource> src_;
  Int integer_part_;
  Canonicity canon_;
  std::optional<Index> terminates_at_;
  std::optional<Index> max_tail_from_;
  Index known_prefix_len_ = 0;
};

// ---------------------------------------------------------------------------

inline DigitStream expand_rational(const Rat& x, const BasicSeq& Q, Index n = 0) {
  Int e0 = floor_of(x);
  Rat frac = x - Rat(e0);
  auto src = std::make_shared<RationalSource>(Q, frac);
  DigitStream d(Q, src, e0, Canonicity::canonical);
  if (n > 0) {
    src->digit(n);
    d.set_known_prefix_len(n);
  }
  // termination is probed over at least 64 digits
  if (auto t = src->termination(std::max<Index>(n, 64))) d.set_canonicity(Canonicity::terminating).set_terminates_at(*t);
  return d;
}

struct IntervalEnclosure {
  Rat lo;
  Rat hi;
  bool contains(const Rat& v) const { return lo <= v && v <= hi; }
  Rat width() const { return hi - lo; }
  Rat mid() const { return (lo + hi) / 2; }
};

inline IntervalEnclosure enclose_prefix(const DigitStream& D, Index n) {
  if (n == 0) throw std::out_of_range("enclose_prefix: depth must be >= 1");
  // Horner from the deepest digit: v = E_1 + (E_2 + ...)/q_2, all over q_1.
  Int num = 0, den = 1;
  for (Index j = 1; j <= n; ++j) {
    Int q = D.q(j);
    num = num * q + D.digit(j);
    den *= q;
  }
  Rat lo = make_rat(num, den) + Rat(D.integer_part());
  return {lo, lo + Rat(Int(1), den)};
}

// Exact value when the stream is terminating, has a max tail, or is jointly periodic.
inline std::optional<Rat> exact_value(const DigitStream& D) {
  if (D.terminates_at()) {
    Index t = *D.terminates_at();
    if (t == 0) return Rat(D.integer_part());
    return enclose_prefix(D, t).lo;
  }
  if (D.max_tail_from()) {
    Index m = *D.max_tail_from();
    if (m <= 1) return Rat(D.integer_part() + 1);
    return enclose_prefix(D, m - 1).hi;
  }
  auto jp = D.joint_period();
  if (!jp) return std::nullopt;
  // x = A + (1/Q_s) * C / (1 - 1/Q_L) where A sums digits before start,
  // C sums one period relative to index start-1 and Q_L is the period product.
  Index s = jp->start, L = jp->length;
  Rat A = Rat(D.integer_part());
  Int Qs = 1, num = 0;
  for (Index j = 1; j < s; ++j) {
    Int q = D.q(j);
    num = num * q + D.digit(j);
    Qs *= q;
  }
  A += make_rat(num, Qs);
  Int cn = 0, QL = 1;
  for (Index j = s; j < s + L; ++j) {
    Int q = D.q(j);
    cn = cn * q + D.digit(j);
    QL *= q;
  }
  Rat C = make_rat(cn, QL);
  Rat tail = C / (Rat(1) - make_rat(1, QL));
  return A + tail / Rat(Qs);
}

// Encloses T_{Q,n}(x) = sum_{j>n} E_j / (q_{n+1} ... q_j) using `depth` tail digits.
inline IntervalEnclosure shift_T(const DigitStream& D, Index n, Index depth = 40) {
  if (depth == 0) throw std::out_of_range("shift_T: depth must be >= 1");
  Int num = 0, den = 1;
  for (Index j = n + 1; j <= n + depth; ++j) {
    Int q = D.q(j);
    num = num * q + D.digit(j);
    den *= q;
  }
  Rat lo = make_rat(num, den);
  return {lo, lo + Rat(Int(1), den)};
}

// Detects an all-(q_j - 1) tail from the joint period, when one is known.
inline std::optional<Index> detect_max_tail(const DigitStream& D) {
  if (D.max_tail_from()) return D.max_tail_from();
  if (D.terminates_at()) return std::nullopt;
  auto jp = D.joint_period();
  if (!jp) return std::nullopt;
  for (Index j = jp->start; j < jp->start + jp->length; ++j)
    if (D.digit(j) != D.q(j) - 1) return std::nullopt;
  Index m = jp->start;
  while (m > 1 && D.digit(m - 1) == D.q(m - 1) - 1) --m;
  return m;
}

// Detects an all-zero tail from the joint period, when one is known.
inline std::optional<Index> detect_zero_tail(const DigitStream& D) {
  if (D.terminates_at()) return D.terminates_at();
  if (D.max_tail_from()) return std::nullopt;
  auto jp = D.joint_period();
  if (!jp) return std::nullopt;
  for (Index j = jp->start; j < jp->start + jp->length; ++j)
    if (D.digit(j) != 0) return std::nullopt;
  Index m = jp->start;
  while (m > 1 && D.digit(m - 1) == 0) --m;
  return m - 1;
}

struct CanonicalizeResult {
  DigitStream stream;
  std::string diagnostic;
};

// Converts between the terminating form and the all-max-tail form of a point
// with two expansions. Other streams are returned unchanged with a diagnostic.
inline CanonicalizeResult canonicalize(const DigitStream& D) {
  const BasicSeq& Q = D.base();
  if (auto t = detect_zero_tail(D)) {
    Index last = *t;
    if (last == 0) {
      return {DigitStream::from_digits_max_tail(Q, {}, D.integer_part() - 1), "terminating -> max tail"};
    }
    std::vector<Int> digits = D.digits(last);
    digits.back() -= 1;
    return {DigitStream::from_digits_max_tail(Q, std::move(digits), D.integer_part()), "terminating -> max tail"};
  }
  if (auto m = detect_max_tail(D)) {
    Index start = *m;
    if (start <= 1) return {DigitStream::from_digits(Q, {}, D.integer_part() + 1), "max tail -> terminating"};
    std::vector<Int> digits = D.digits(start - 1);
    digits.back() += 1;
    return {DigitStream::from_digits(Q, std::move(digits), D.integer_part()), "max tail -> terminating"};
  }
  if (D.canonicity() == Canonicity::unknown) return {D, "canonicity unknown and no tail detected; unchanged"};
  return {D, "canonical non-terminating; unchanged"};
}

// Upgrades an unknown stream to canonical when, in every window of `window`
// digits up to the horizon, some digit differs from q_n - 1.
inline DigitStream upgrade_canonicity(DigitStream D, Index horizon, Index window = 1000) {
  if (D.canonicity() != Canonicity::unknown) return D;
  Index since = 0;
  for (Index n = 1; n <= horizon; ++n) {
    if (D.digit(n) != D.q(n) - 1) {
      since = 0;
    } else if (++since >= window) {
      return D;
    }
  }
  if (horizon >= window) D.set_canonicity(Canonicity::canonical);
  D.set_known_prefix_len(horizon);
  return D;
}

struct ZReport {
  Index rho_prefix = 0;         // longest run of digits in {0, p_j - 1}
  Index rho_image = 0;          // same statistic for the image over Q
  std::optional<Index> digit_violation;  // first n with E_n >= min(p_n, q_n)
  bool violated = false;
};

inline Index longest_extreme_run(const std::function<Int(Index)>& digit, const BasicSeq& base, Index n) {
  Index best = 0, run = 0;
  for (Index j = 1; j <= n; ++j) {
    Int e = digit(j);
    if (e == 0 || e == base.at(j) - 1) {
      best = std::max(best, ++run);
    } else {
      run = 0;
    }
  }
  return best;
}

// Finite-horizon check of membership in Z_{P,Q}(k).
inline ZReport rho_and_zmembership(const DigitStream& D, const BasicSeq& P, const BasicSeq& Q, Index k, Index n) {
  ZReport r;
  r.rho_prefix = longest_extreme_run([&](Index j) { return D.digit(j); }, P, n);
  r.rho_image = longest_extreme_run(
      [&](Index j) {
        Int qm1 = Q.at(j) - 1;
        Int e = D.digit(j);
        return e < qm1 ? e : qm1;
      },
      Q, n);
  for (Index j = 1; j <= n; ++j) {
    if (D.digit(j) >= int_min(P.at(j), Q.at(j))) {
      r.digit_violation = j;
      break;
    }
  }
  r.violated = r.rho_prefix > k || r.rho_image > k || r.digit_violation.has_value();
  return r;
}

inline void write_digits_csv(std::ostream& os, const DigitStream& D, Index n) {
  os << "n,q_n,E_n\n";
  for (Index j = 1; j <= n; ++j) os << j << ',' << D.q(j).get_str() << ',' << D.digit(j).get_str() << '\n';
}

// Digits drawn uniformly from [0, q_n) and independently per index; the draw
// at n depends only on (seed, n), so any index can be read in any order.
inline std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline DigitStream iid_digit_stream(const BasicSeq& Q, std::uint64_t seed, std::optional<Int> cap = std::nullopt) {
  return DigitStream::from_rule(Q, [Q, seed, cap](Index n) {
    Int q = Q.at(n);
    Int range = cap ? int_min(q, *cap) : q;
    std::mt19937_64 g(mix64(seed ^ mix64(n)));
    if (mpz_sizeinbase(range.get_mpz_t(), 2) <= 63) return from_u64(detail::bounded_draw(g, to_u64(range)));
    gmp_randclass r(gmp_randinit_default);
    r.seed(static_cast<unsigned long>(g()));
    return Int(r.get_z_range(range));
  });
}

}  // namespace cantor
