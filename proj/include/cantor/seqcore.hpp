#pragma once
// seqcore.hpp - basic sequences (varying radices q_n >= 2), prefix products,
// truncation, seeded IID sampling and Birkhoff diagnostics.

#include "exact.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <memory>
#include <mutex>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace cantor {

class BasicSeq;

// Eventually periodic tail: q_n = values[(n - start) % values.size()] for n >= start.
struct TailPeriod {
  Index start = 1;
  std::vector<Int> values;
};

struct ConcatPart;

class BasicSeq {
 public:
  enum class Kind {
    constant, affine, geometric, polynomial, periodic, explicit_, concatenated,
    iid, truncated, rule, qnex, rdn
  };

  struct Impl {
    virtual ~Impl() = default;
    virtual Int at(Index n) const = 0;
    virtual Kind kind() const = 0;
    virtual std::string describe() const = 0;
    virtual std::optional<TailPeriod> tail_period() const { return std::nullopt; }
    // Upper bound on q_n for all n > after, if one is known.
    virtual std::optional<Int> bound_after(Index /*after*/) const { return std::nullopt; }
  };

  BasicSeq() : BasicSeq(constant(2)) {}
  explicit BasicSeq(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}

  Int at(Index n) const {
    if (n == 0) throw std::out_of_range("basic sequence index must be >= 1");
    Int v = impl_->at(n);
    if (v < 2) {
      throw std::domain_error("basic sequence value < 2 at n=" + std::to_string(n) + " (" + describe() + ")");
    }
    return v;
  }
  Int operator()(Index n) const { return at(n); }

  Kind kind() const { return impl_->kind(); }
  std::string describe() const { return impl_->describe(); }
  std::optional<TailPeriod> tail_period() const { return impl_->tail_period(); }
  std::optional<Int> bound_after(Index after) const { return impl_->bound_after(after); }
  const Impl& impl() const { return *impl_; }

  std::vector<Int> prefix(Index n) const {
    std::vector<Int> out;
    out.reserve(n);
    for (Index i = 1; i <= n; ++i) out.push_back(at(i));
    return out;
  }

  static BasicSeq constant(const Int& b);
  static BasicSeq affine(const Int& a, const Int& d);
  static BasicSeq geometric(const Int& a, const Int& r);
  static BasicSeq polynomial(std::vector<Int> coeffs);
  static BasicSeq periodic(std::vector<Int> values);
  static BasicSeq explicit_(std::vector<Int> prefix, BasicSeq tail);
  static BasicSeq concatenated(std::vector<ConcatPart> parts, std::optional<BasicSeq> tail);
  static BasicSeq iid(std::uint64_t lo, std::uint64_t hi, std::uint64_t seed);
  static BasicSeq truncated(BasicSeq base, Index t);
  static BasicSeq rule(std::string name, std::function<Int(Index)> f,
                       std::optional<TailPeriod> period = std::nullopt);

 private:
  std::shared_ptr<const Impl> impl_;
};

struct ConcatPart {
  BasicSeq seq;
  Int repeat;          // number of copies of the segment
  Index segment_length;  // first segment_length values of seq
};

inline std::string to_string(BasicSeq::Kind k) {
  switch (k) {
    case BasicSeq::Kind::constant: return "constant";
    case BasicSeq::Kind::affine: return "affine";
    case BasicSeq::Kind::geometric: return "geometric";
    case BasicSeq::Kind::polynomial: return "polynomial";
    case BasicSeq::Kind::periodic: return "periodic";
    case BasicSeq::Kind::explicit_: return "explicit";
    case BasicSeq::Kind::concatenated: return "concatenated";
    case BasicSeq::Kind::iid: return "iid";
    case BasicSeq::Kind::truncated: return "truncated";
    case BasicSeq::Kind::rule: return "rule";
    case BasicSeq::Kind::qnex: return "qnex";
    case BasicSeq::Kind::rdn: return "rdn";
  }
  return "?";
}

namespace detail {

inline std::string join_ints(const std::vector<Int>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    s += v[i].get_str();
  }
  return s;
}

struct ConstantSeq final : BasicSeq::Impl {
  Int b;
  explicit ConstantSeq(Int v) : b(std::move(v)) {}
  Int at(Index) const override { return b; }
  BasicSeq::Kind kind() const override { return BasicSeq::Kind::constant; }
  std::string describe() const override { return "constant(" + b.get_str() + ")"; }
  std::optional<TailPeriod> tail_period() const override { return TailPeriod{1, {b}}; }
  std::optional<Int> bound_after(Index) const override { return b; }
};

struct AffineSeq final : BasicSeq::Impl {
  Int a, d;
  AffineSeq(Int a_, Int d_) : a(std::move(a_)), d(std::move(d_)) {}
  Int at(Index n) const override { return a + d * from_u64(n); }
  BasicSeq::Kind kind() const override { return BasicSeq::Kind::affine; }
  std::string describe() const override { return "affine(" + a.get_str() + "," + d.get_str() + ")"; }
  std::optional<TailPeriod> tail_period() const override {
    if (d == 0) return TailPeriod{1, {a}};
    return std::nullopt;
  }
  std::optional<Int> bound_after(Index after) const override {
    if (d == 0) return a;
    if (d < 0) return at(after + 1);
    return std::nullopt;
  }
};

struct GeometricSeq final : BasicSeq::Impl {
  Int a, r;
  GeometricSeq(Int a_, Int r_) : a(std::move(a_)), r(std::move(r_)) {}
  Int at(Index n) const override {
    if (n - 1 > std::numeric_limits<unsigned long>::max()) throw std::overflow_error("geometric exponent too large");
    return a * pow_int(r, static_cast<unsigned long>(n - 1));
  }
  BasicSeq::Kind kind() const override { return BasicSeq::Kind::geometric; }
  std::string describe() const override { return "geometric(" + a.get_str() + "," + r.get_str() + ")"; }
  std::optional<TailPeriod> tail_period() const override {
    if (r == 1) return TailPeriod{1, {a}};
    return std::nullopt;
  }
  std::optional<Int> bound_after(Index) const override {
    if (r == 1) return a;
    return std::nullopt;
  }
};

// c_0 + c_1 n + c_2 n^2 + ...
struct PolynomialSeq final : BasicSeq::Impl {
  std::vector<Int> c;
  explicit PolynomialSeq(std::vector<Int> coeffs) : c(std::move(coeffs)) {}
  Int at(Index n) const override {
    Int x = from_u64(n), acc = 0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
    return acc;
  }
  BasicSeq::Kind kind() const override { return BasicSeq::Kind::polynomial; }
  std::string describe() const override { return "polynomial(" + join_ints(c) + ")"; }
  std::optional<TailPeriod> tail_period() const override {
    for (std::size_t i = 1; i < c.size(); ++i)
      if (c[i] != 0) return std::nullopt;
    return TailPeriod{1, {c.empty() ? Int(0) : c[0]}};
  }
};

struct PeriodicSeq final : BasicSeq::Impl {
  std::vector<Int> v;
  explicit PeriodicSeq(std::vector<Int> values) : v(std::move(values)) {}
  Int at(Index n) const override { return v[(n - 1) % v.size()]; }
  BasicSeq::Kind kind() const override { return BasicSeq::Kind::periodic; }
  std::string describe() const override { return "periodic(" + join_ints(v) + ")"; }
  std::optional<TailPeriod> tail_period() const override { return TailPeriod{1, v}; }
  std::optional<Int> bound_after(Index) const override { return *std::max_element(v.begin(), v.end()); }
};

struct ExplicitSeq final : BasicSeq::Impl {
  std::vector<Int> prefix;
  BasicSeq tail;
  ExplicitSeq(std::vector<Int> p, BasicSeq t) : prefix(std::move(p)), tail(std::move(t)) {}
  Int at(Index n) const override {
    if (n <= prefix.size()) return prefix[n - 1];
    return tail.at(n - prefix.size());
  }
  BasicSeq::Kind kind() const override { return BasicSeq::Kind::explicit_; }
  std::string describe() const override {
    return "explicit([" + join_ints(prefix) + "]," + tail.describe() + ")";
  }
  std::optional<TailPeriod> tail_period() const override {
    auto tp = tail.tail_period();
    if (!tp) return std::nullopt;
    tp->start += prefix.size();
    return tp;
  }
  std::optional<Int> bound_after(Index after) const override {
    Index k = prefix.size();
    std::optional<Int> tb = tail.bound_after(after > k ? after - k : 0);
    if (!tb) return std::nullopt;
    Int m = *tb;
    for (Index i = after; i < k; ++i) m = int_max(m, prefix[i]);
    return m;
  }
};

struct ConcatSeq final : BasicSeq::Impl {
  std::vector<ConcatPart> parts;
  std::optional<BasicSeq> tail;
  std::vector<Int> ends;  // cumulative lengths
  ConcatSeq(std::vector<ConcatPart> p, std::optional<BasicSeq> t) : parts(std::move(p)), tail(std::move(t)) {
    Int acc = 0;
    for (const auto& part : parts) {
      if (part.segment_length == 0 || part.repeat < 0) throw std::invalid_argument("concatenated: empty segment");
      acc += part.repeat * from_u64(part.segment_length);
      ends.push_back(acc);
    }
  }
  Int total() const { return ends.empty() ? Int(0) : ends.back(); }
  Int at(Index n) const override {
    Int N = from_u64(n);
    auto it = std::lower_bound(ends.begin(), ends.end(), N);
    if (it == ends.end()) {
      if (!tail) throw std::out_of_range("concatenated sequence exhausted at n=" + std::to_string(n));
      return tail->at(to_u64(N - total()));
    }
    std::size_t idx = static_cast<std::size_t>(it - ends.begin());
    Int start = idx == 0 ? Int(0) : ends[idx - 1];
    Int off = N - start - 1;
    Int within = off % from_u64(parts[idx].segment_length);
    return parts[idx].seq.at(to_u64(within) + 1);
  }
  BasicSeq::Kind kind() const override { return BasicSeq::Kind::concatenated; }
  std::string describe() const override {
    std::string s = "concatenated(";
    for (std::size_t i = 0; i < parts.size(); ++i) {
      if (i) s += ",";
      s += "(" + parts[i].seq.describe() + ")^" + parts[i].repeat.get_str() + "[" +
           std::to_string(parts[i].segment_length) + "]";
    }
    if (tail) s += ";" + tail->describe();
    return s + ")";
  }
  std::optional<TailPeriod> tail_period() const override {
    if (!tail) return std::nullopt;
    auto tp = tail->tail_period();
    if (!tp) return std::nullopt;
    tp->start += to_u64(total());
    return tp;
  }
  std::optional<Int> bound_after(Index after) const override {
    if (!tail) return std::nullopt;
    auto tb = tail->bound_after(0);
    if (!tb) return std::nullopt;
    Int m = *tb;
    Int A = from_u64(after);
    for (std::size_t i = 0; i < parts.size(); ++i) {
      if (ends[i] <= A) continue;
      for (Index j = 1; j <= parts[i].segment_length; ++j) m = int_max(m, parts[i].seq.at(j));
    }
    return m;
  }
};

// Bounded uniform draw by rejection; independent of the standard library's
// distribution implementation so sequences are portable.
inline std::uint64_t bounded_draw(std::mt19937_64& g, std::uint64_t range) {
  const std::uint64_t max = std::numeric_limits<std::uint64_t>::max();
  const std::uint64_t limit = max - (max % range + 1) % range;
  for (;;) {
    std::uint64_t r = g();
    if (r <= limit) return r % range;
  }
}

struct IidSeq final : BasicSeq::Impl {
  std::uint64_t lo, hi, seed;
  mutable std::mutex mu;
  mutable std::mt19937_64 gen;
  mutable std::vector<std::uint64_t> memo;
  IidSeq(std::uint64_t l, std::uint64_t h, std::uint64_t s) : lo(l), hi(h), seed(s), gen(s) {}
  std::uint64_t raw(Index n) const {
    std::lock_guard<std::mutex> lock(mu);
    while (memo.size() < n) memo.push_back(lo + bounded_draw(gen, hi - lo + 1));
    return memo[n - 1];
  }
  Int at(Index n) const override { return from_u64(raw(n)); }
  BasicSeq::Kind kind() const override { return BasicSeq::Kind::iid; }
  std::string describe() const override {
    return "iid(" + std::to_string(lo) + "," + std::to_string(hi) + ",seed=" + std::to_string(seed) + ")";
  }
  std::optional<TailPeriod> tail_period() const override {
    if (lo == hi) return TailPeriod{1, {from_u64(lo)}};
    return std::nullopt;
  }
  std::optional<Int> bound_after(Index) const override { return from_u64(hi); }
};

struct TruncatedSeq final : BasicSeq::Impl {
  BasicSeq base;
  Index t;
  TruncatedSeq(BasicSeq b, Index t_) : base(std::move(b)), t(t_) {}
  Int at(Index n) const override { return n <= t ? base.at(n) : Int(2); }
  BasicSeq::Kind kind() const override { return BasicSeq::Kind::truncated; }
  std::string describe() const override { return "truncated(" + base.describe() + "," + std::to_string(t) + ")"; }
  std::optional<TailPeriod> tail_period() const override { return TailPeriod{t + 1, {Int(2)}}; }
  std::optional<Int> bound_after(Index after) const override {
    Int m = 2;
    for (Index i = after + 1; i <= t; ++i) m = int_max(m, base.at(i));
    return m;
  }
};

struct RuleSeq final : BasicSeq::Impl {
  std::string name;
  std::function<Int(Index)> f;
  std::optional<TailPeriod> period;
  RuleSeq(std::string n, std::function<Int(Index)> fn, std::optional<TailPeriod> p)
      : name(std::move(n)), f(std::move(fn)), period(std::move(p)) {}
  Int at(Index n) const override { return f(n); }
  BasicSeq::Kind kind() const override { return BasicSeq::Kind::rule; }
  std::string describe() const override { return name; }
  std::optional<TailPeriod> tail_period() const override { return period; }
};

inline void require_base(const Int& v, const char* what) {
  if (v < 2) throw std::invalid_argument(std::string(what) + ": base value " + v.get_str() + " < 2");
}

}  // namespace detail

inline BasicSeq BasicSeq::constant(const Int& b) {
  detail::require_base(b, "constant");
  return BasicSeq(std::make_shared<detail::ConstantSeq>(b));
}

inline BasicSeq BasicSeq::affine(const Int& a, const Int& d) {
  if (d < 0) throw std::invalid_argument("affine: negative slope eventually drops below 2");
  detail::require_base(a + d, "affine");
  return BasicSeq(std::make_shared<detail::AffineSeq>(a, d));
}

inline BasicSeq BasicSeq::geometric(const Int& a, const Int& r) {
  if (r < 1) throw std::invalid_argument("geometric: ratio must be >= 1");
  detail::require_base(a, "geometric");
  return BasicSeq(std::make_shared<detail::GeometricSeq>(a, r));
}

inline BasicSeq BasicSeq::polynomial(std::vector<Int> coeffs) {
  if (coeffs.empty()) throw std::invalid_argument("polynomial: no coefficients");
  if (coeffs.back() < 0) throw std::invalid_argument("polynomial: negative leading coefficient");
  auto impl = std::make_shared<detail::PolynomialSeq>(std::move(coeffs));
  // values are checked lazily by at(); reject an obviously bad start
  detail::require_base(impl->at(1), "polynomial");
  return BasicSeq(impl);
}

inline BasicSeq BasicSeq::periodic(std::vector<Int> values) {
  if (values.empty()) throw std::invalid_argument("periodic: empty period");
  for (const auto& v : values) detail::require_base(v, "periodic");
  return BasicSeq(std::make_shared<detail::PeriodicSeq>(std::move(values)));
}

inline BasicSeq BasicSeq::explicit_(std::vector<Int> prefix, BasicSeq tail) {
  for (const auto& v : prefix) detail::require_base(v, "explicit");
  return BasicSeq(std::make_shared<detail::ExplicitSeq>(std::move(prefix), std::move(tail)));
}

inline BasicSeq BasicSeq::concatenated(std::vector<ConcatPart> parts, std::optional<BasicSeq> tail) {
  return BasicSeq(std::make_shared<detail::ConcatSeq>(std::move(parts), std::move(tail)));
}

inline BasicSeq BasicSeq::iid(std::uint64_t lo, std::uint64_t hi, std::uint64_t seed) {
  if (lo < 2) throw std::invalid_argument("iid: lo must be >= 2");
  if (lo > hi) throw std::invalid_argument("iid: lo > hi");
  return BasicSeq(std::make_shared<detail::IidSeq>(lo, hi, seed));
}

inline BasicSeq BasicSeq::truncated(BasicSeq base, Index t) {
  return BasicSeq(std::make_shared<detail::TruncatedSeq>(std::move(base), t));
}

inline BasicSeq BasicSeq::rule(std::string name, std::function<Int(Index)> f, std::optional<TailPeriod> period) {
  return BasicSeq(std::make_shared<detail::RuleSeq>(std::move(name), std::move(f), std::move(period)));
}

// ---------------------------------------------------------------------------

inline Int q_at(const BasicSeq& Q, Index n) { return Q.at(n); }

inline BasicSeq truncate_tail(const BasicSeq& Q, Index t) { return BasicSeq::truncated(Q, t); }

struct PrefixProducts {
  Index n = 0;
  Int prod = 1;
  std::vector<std::pair<Index, Rat>> qnk;  // (k, Q_n^{(k)})

  const Rat& order(Index k) const {
    for (const auto& [kk, v] : qnk)
      if (kk == k) return v;
    throw std::out_of_range("order not requested: " + std::to_string(k));
  }
};

namespace detail {

// Balanced product tree over v[lo, hi).
inline Int product_range(const std::vector<Int>& v, std::size_t lo, std::size_t hi) {
  if (hi <= lo) return 1;
  if (hi - lo <= 8) {
    Int p = v[lo];
    for (std::size_t i = lo + 1; i < hi; ++i) p *= v[i];
    return p;
  }
  std::size_t mid = lo + (hi - lo) / 2;
  return product_range(v, lo, mid) * product_range(v, mid, hi);
}

}  // namespace detail

// Q_n^{(k)} = sum_{j=1}^n 1/(q_j ... q_{j+k-1}).
inline PrefixProducts prefix_products(const BasicSeq& Q, Index n, const std::set<Index>& ks = {1}) {
  if (n == 0) throw std::out_of_range("prefix_products: n must be >= 1");
  PrefixProducts out;
  out.n = n;
  Index kmax = 0;
  for (Index k : ks) {
    if (k == 0) throw std::out_of_range("prefix_products: order must be >= 1");
    kmax = std::max(kmax, k);
  }
  std::vector<Int> q;
  q.reserve(n + kmax);
  for (Index i = 1; i <= n + kmax; ++i) q.push_back(Q.at(i));
  out.prod = detail::product_range(q, 0, n);
  for (Index k : ks) {
    // N_j / (q_1...q_{j+k-1}) with N_j = N_{j-1} q_{j+k-1} + q_1...q_{j-1}; reduced once
    Int num = 0, head = 1, den = 1;
    for (Index i = 0; i + 1 < k; ++i) den *= q[i];
    for (Index j = 0; j < n; ++j) {
      const Int& qn = q[j + k - 1];
      num *= qn;
      num += head;
      den *= qn;
      head *= q[j];
    }
    Rat sum = make_rat(num, den);
    out.qnk.emplace_back(k, sum);
  }
  return out;
}

struct MeasureSpec {
  std::uint64_t lo = 2;
  std::uint64_t hi = 2;
  std::uint64_t seed = 0;
};

inline BasicSeq sample_iid(const MeasureSpec& m) { return BasicSeq::iid(m.lo, m.hi, m.seed); }

struct BirkhoffCheckpoint {
  Index n = 0;
  double mean_log_p = 0;
  double mean_log_q = 0;
  double log_ratio = 0;       // log(p_1...p_n / q_1...q_n)
  double running_min = 0;     // min over m <= n of the log ratio
  double bv_partial = 0;      // sum_{k<j<=n} p_k (p_j+q_j) / (q_1...q_j)
};

struct BirkhoffReport {
  std::vector<BirkhoffCheckpoint> checkpoints;
  Index count_p_less = 0;     // #{n : p_n < q_n}
  Index count_p_greater = 0;  // #{n : p_n > q_n}
};

inline std::vector<Index> default_checkpoints(Index n) {
  std::vector<Index> cps;
  for (Index c = 10; c < n; c *= 10) cps.push_back(c);
  cps.push_back(n);
  return cps;
}

// Birkhoff averages of log p and log q, the log product ratio and its running
// minimum, and partial sums of the bounded-variation double series.
inline BirkhoffReport birkhoff_report(const BasicSeq& P, const BasicSeq& Q, Index n,
                                      std::vector<Index> checkpoints = {}) {
  if (n == 0) throw std::out_of_range("birkhoff_report: n must be >= 1");
  if (checkpoints.empty()) checkpoints = default_checkpoints(n);
  std::sort(checkpoints.begin(), checkpoints.end());
  BirkhoffReport rep;
  double slp = 0, slq = 0, run_min = 0;
  // bv double series in log space: term_j = (p_j+q_j) * S_{j-1} / (q_1...q_j), S = sum p_k
  double log_qprod = 0, log_psum = -std::numeric_limits<double>::infinity(), bv = 0;
  std::size_t ci = 0;
  for (Index i = 1; i <= n; ++i) {
    Int p = P.at(i), q = Q.at(i);
    double lp = log_approx(p), lq = log_approx(q);
    slp += lp;
    slq += lq;
    if (p < q) ++rep.count_p_less;
    if (p > q) ++rep.count_p_greater;
    double lr = slp - slq;
    if (i == 1 || lr < run_min) run_min = lr;
    log_qprod += lq;
    if (i > 1) {
      double t = log_approx(p + q) + log_psum - log_qprod;
      if (t > -745) bv += std::exp(t);
    }
    log_psum = i == 1 ? lp : std::max(log_psum, lp) + std::log1p(std::exp(-std::fabs(log_psum - lp)));
    while (ci < checkpoints.size() && checkpoints[ci] == i) {
      rep.checkpoints.push_back({i, slp / static_cast<double>(i), slq / static_cast<double>(i), lr, run_min, bv});
      ++ci;
    }
  }
  return rep;
}

}  // namespace cantor
