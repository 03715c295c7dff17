#pragma once
// foundry.hpp - explicit constructions: the digit measures nu_b and lambda_b,
// the blocks V_{b,w} (indexed without materialization), MFF streams, the
// qnex pair (P, zeta), the RDN basic sequence Q with psi(zeta) and kappa, and
// the three counterexample transforms.

#include "normstats.hpp"
#include "psi.hpp"

#include <deque>

#include <map>
#include <mutex>

namespace cantor {

// ---------------------------------------------------------------------------
// Digit measures

enum class DigitMeasureKind { lambda_b, nu_b };

struct DigitMeasure {
  DigitMeasureKind kind = DigitMeasureKind::nu_b;
  Int b = 2;
};

inline Rat nu_digit_mass(const Int& b, const Int& j) {
  if (b < 1) throw std::invalid_argument("nu_b: b must be >= 1");
  if (j < 0) throw std::invalid_argument("nu_b: negative digit");
  unsigned long bb = b.get_ui();
  if (j < b) return make_rat(1, pow2(bb));
  if (j == b) return make_rat(pow2(bb) - b, pow2(bb));
  return 0;
}

inline Rat nu_mass(const Int& b, const Block& B) {
  Rat m = 1;
  for (const auto& d : B) m *= nu_digit_mass(b, d);
  return m;
}

inline Rat lambda_mass(const Int& b, const Block& B) {
  if (b < 1) throw std::invalid_argument("lambda_b: b must be >= 1");
  for (const auto& d : B)
    if (d < 0 || d >= b) return 0;
  return make_rat(1, pow_int(b, B.size()));
}

inline Rat digit_mass(const DigitMeasure& m, const Block& B) {
  return m.kind == DigitMeasureKind::nu_b ? nu_mass(m.b, B) : lambda_mass(m.b, B);
}

// ---------------------------------------------------------------------------
// V_{b,w}: base-(b+1) blocks of length w in lexicographic order, block V
// repeated (2^b - b)^{#(digits = b)} times (= 2^{bw} nu_b(V)).

inline Int vbw_length(unsigned long b, unsigned long w) { return Int(w) * pow2(b * w); }

inline Int vbw_repeat(unsigned long b, const Block& V) {
  Int r = 1;
  Int big = pow2(b) - b;
  for (const auto& d : V) {
    if (d > Int(b)) return 0;
    if (d == Int(b)) r *= big;
  }
  return r;
}

struct VbwLocation {
  Block block;        // the block containing the index
  Int copy;           // 0-based copy of that block
  Index offset = 0;   // 0-based position inside the block
  Int b_before;       // number of digits equal to b strictly before the index
};

// sum over completions c of length m of weight(c) * #(c_i = b)
inline Int vbw_bcount_completions(unsigned long b, unsigned long m) {
  if (m == 0) return 0;
  return Int(m) * (pow2(b) - b) * pow2(b * (m - 1));
}

// Locates 1-based idx in V_{b,w} by a digit-position walk over lexicographic
// prefixes weighted by repeat counts.
inline VbwLocation vbw_locate(unsigned long b, unsigned long w, const Int& idx) {
  if (b < 1 || w < 1) throw std::invalid_argument("vbw: b and w must be >= 1");
  Int len = vbw_length(b, w);
  if (idx < 1 || idx > len) throw std::out_of_range("vbw: index " + idx.get_str() + " outside [1, " + len.get_str() + "]");
  Int i0 = idx - 1;
  Int r = i0 / Int(w);
  VbwLocation loc;
  loc.offset = static_cast<Index>(Int(i0 % Int(w)).get_ui());
  const Int heavy = pow2(b) - b;
  Int wp = 1;      // weight of the chosen prefix
  Int cb = 0;      // b-digits in the chosen prefix
  Int cnt = 0;     // b-digits in skipped repetitions
  for (unsigned long i = 1; i <= w; ++i) {
    unsigned long m = w - i;
    Int rd = wp * pow2(b * m);                         // repetitions under one light child
    Int per_child = rd * cb + wp * vbw_bcount_completions(b, m);
    Int light_total = rd * Int(b);
    if (r < light_total) {
      Int d = r / rd;
      cnt += d * per_child;
      r -= d * rd;
      loc.block.push_back(d);
    } else {
      cnt += Int(b) * per_child;
      r -= light_total;
      wp *= heavy;
      cb += 1;
      loc.block.push_back(Int(b));
    }
  }
  loc.copy = r;
  cnt += r * cb;
  for (Index j = 0; j < loc.offset; ++j)
    if (loc.block[j] == Int(b)) cnt += 1;
  loc.b_before = cnt;
  return loc;
}

inline Int vbw_digit(unsigned long b, unsigned long w, const Int& idx) {
  VbwLocation loc = vbw_locate(b, w, idx);
  return loc.block[loc.offset];
}

// 0-based index of the first digit of the first copy of block V.
inline Int vbw_rank(unsigned long b, const Block& V) {
  const unsigned long w = V.size();
  const Int heavy = pow2(b) - b;
  Int wp = 1, r = 0;
  for (unsigned long i = 1; i <= w; ++i) {
    const Int& d = V[i - 1];
    if (d < 0 || d > Int(b)) throw std::invalid_argument("vbw_rank: digit out of range");
    Int rd = wp * pow2(b * (w - i));
    r += d * rd;
    if (d == Int(b)) wp *= heavy;
  }
  return r * Int(w);
}

// Full materialization, for small parameters and oracles.
inline std::vector<Int> vbw_materialize(unsigned long b, unsigned long w) {
  std::vector<Int> out;
  for (const auto& V : all_blocks(w, b + 1)) {
    Int rep = vbw_repeat(b, V);
    for (Int c = 0; c < rep; ++c) out.insert(out.end(), V.begin(), V.end());
  }
  return out;
}

// Memoizes the last located block so consecutive indices are cheap.
class VbwIndexer {
 public:
  VbwIndexer(unsigned long b, unsigned long w) : b_(b), w_(w) {}
  VbwLocation locate(const Int& idx) const {
    std::lock_guard<std::mutex> lock(mu_);
    Int r = (idx - 1) / Int(w_);
    if (!cached_ || r != cached_r_) {
      cached_ = vbw_locate(b_, w_, idx);
      cached_r_ = r;
      return *cached_;
    }
    VbwLocation loc = *cached_;
    Index off = static_cast<Index>(Int((idx - 1) % Int(w_)).get_ui());
    // shift b_before from the cached offset to the requested one
    Int cnt = loc.b_before;
    if (off >= loc.offset) {
      for (Index j = loc.offset; j < off; ++j)
        if (loc.block[j] == Int(b_)) cnt += 1;
    } else {
      for (Index j = off; j < loc.offset; ++j)
        if (loc.block[j] == Int(b_)) cnt -= 1;
    }
    loc.offset = off;
    loc.b_before = cnt;
    return loc;
  }
  Int digit(const Int& idx) const {
    VbwLocation loc = locate(idx);
    return loc.block[loc.offset];
  }
  unsigned long b() const { return b_; }
  unsigned long w() const { return w_; }
  Int length() const { return vbw_length(b_, w_); }

 private:
  unsigned long b_, w_;
  mutable std::mutex mu_;
  mutable std::optional<VbwLocation> cached_;
  mutable Int cached_r_;
};

// ---------------------------------------------------------------------------
// MFF streams: digits X_1^{l_1} X_2^{l_2} ... with s_n = b_i on stage i.

struct MffStage {
  Int l;                                   // repetitions
  Int b;                                   // base s_n on this stage
  Rat eps;                                 // tolerance (not consumed by the digit rules)
  Int block_len;                           // |X_i|
  std::function<Int(const Int&)> digit;    // 1-based digit of X_i
};

struct MFFSpec {
  std::function<MffStage(Index)> stage;    // stage i >= 1
  std::optional<Index> last_stage;         // finite specs stop here
};

struct StagePos {
  Index stage = 0;
  Int offset;   // 0-based offset inside the stage
  Int t;        // 1-based position inside X_i
};

// Stage bookkeeping shared by Gamma and the digit stream.
class MffLayout {
 public:
  explicit MffLayout(MFFSpec spec) : spec_(std::move(spec)) {}

  StagePos locate(const Int& n) const {
    if (n < 1) throw std::out_of_range("MFF index must be >= 1");
    std::lock_guard<std::mutex> lock(mu_);
    for (std::size_t k = 0;; ++k) {
      while (k >= stages_.size()) {
        Index i = stages_.size() + 1;
        if (spec_.last_stage && i > *spec_.last_stage)
          throw std::out_of_range("MFF index " + n.get_str() + " beyond all defined stages");
        MffStage st = spec_.stage(i);
        Int start = ends_.empty() ? Int(0) : ends_.back();
        stages_.push_back(std::move(st));
        ends_.push_back(start + stages_.back().l * stages_.back().block_len);
      }
      if (n <= ends_[k]) {
        Int start = k == 0 ? Int(0) : ends_[k - 1];
        if (stages_[k].l == 0) continue;
        StagePos p;
        p.stage = k + 1;
        p.offset = n - start - 1;
        p.t = p.offset % stages_[k].block_len + 1;
        return p;
      }
    }
  }

  const MffStage& stage(Index i) const {
    std::lock_guard<std::mutex> lock(mu_);
    while (stages_.size() < i) {
      Index j = stages_.size() + 1;
      MffStage st = spec_.stage(j);
      Int start = ends_.empty() ? Int(0) : ends_.back();
      stages_.push_back(std::move(st));
      ends_.push_back(start + stages_.back().l * stages_.back().block_len);
    }
    return stages_[i - 1];
  }

  // L_i = l_1|X_1| + ... + l_i|X_i|
  Int L(Index i) const {
    stage(i);
    std::lock_guard<std::mutex> lock(mu_);
    return i == 0 ? Int(0) : ends_[i - 1];
  }

 private:
  MFFSpec spec_;
  mutable std::mutex mu_;
  mutable std::deque<MffStage> stages_;
  mutable std::vector<Int> ends_;
};

struct HandleSeq final : BasicSeq::Impl {
  BasicSeq::Kind k;
  std::string name;
  std::function<Int(Index)> f;
  HandleSeq(BasicSeq::Kind kind_, std::string n, std::function<Int(Index)> fn)
      : k(kind_), name(std::move(n)), f(std::move(fn)) {}
  Int at(Index n) const override { return f(n); }
  BasicSeq::Kind kind() const override { return k; }
  std::string describe() const override { return name; }
};

struct MffPair {
  BasicSeq gamma;
  DigitStream eta;
  std::shared_ptr<const MffLayout> layout;
};

inline MffPair mff_stream(MFFSpec spec, BasicSeq::Kind kind = BasicSeq::Kind::rule, std::string name = "mff") {
  auto layout = std::make_shared<const MffLayout>(std::move(spec));
  BasicSeq gamma(std::make_shared<HandleSeq>(kind, name, [layout](Index n) {
    StagePos p = layout->locate(from_u64(n));
    return layout->stage(p.stage).b;
  }));
  DigitStream eta = DigitStream::from_rule(gamma, [layout](Index n) {
    StagePos p = layout->locate(from_u64(n));
    return layout->stage(p.stage).digit(p.t);
  });
  return {gamma, eta, layout};
}

struct NiceDiagnostic {
  Index i = 0;
  double prev_ratio_times_i = 0;   // (l_{i-1}|X_{i-1}|)/(l_i|X_i|) * i
  double next_len_ratio = 0;       // |X_{i+1}|/(l_i|X_i|)
};

inline std::vector<NiceDiagnostic> nice_diagnostics(const MffLayout& layout, Index from, Index to) {
  std::vector<NiceDiagnostic> out;
  for (Index i = std::max<Index>(from, 2); i <= to; ++i) {
    const MffStage& a = layout.stage(i - 1);
    const MffStage& s = layout.stage(i);
    const MffStage& c = layout.stage(i + 1);
    Int cur = s.l * s.block_len;
    if (cur == 0) continue;
    NiceDiagnostic d;
    d.i = i;
    d.prev_ratio_times_i = Rat(a.l * a.block_len * Int(i), cur).get_d();
    d.next_len_ratio = Rat(c.block_len, cur).get_d();
    out.push_back(d);
  }
  return out;
}

// ---------------------------------------------------------------------------
// qnex: X_i = V_{i,w_i}, b_i = 2^i, l_i = 2^{4 i^2} for i >= first_stage.

struct QnexParams {
  Index first_stage = 6;
  std::function<unsigned long(Index)> w = [](Index i) { return static_cast<unsigned long>(i * i); };
  std::function<Int(Index)> l = [](Index i) { return pow2(static_cast<unsigned long>(4 * i * i)); };
  std::function<Int(Index)> b = [](Index i) { return pow2(static_cast<unsigned long>(i)); };
  bool scaled = false;  // true when any parameter differs from the theorem's
};

inline MFFSpec qnex_spec(const QnexParams& prm = {}) {
  MFFSpec spec;
  auto indexers = std::make_shared<std::map<Index, std::shared_ptr<VbwIndexer>>>();
  auto mu = std::make_shared<std::mutex>();
  spec.stage = [prm, indexers, mu](Index i) {
    MffStage st;
    st.eps = make_rat(1, from_u64(i));
    if (i < prm.first_stage) {
      st.l = 0;
      st.b = 2;
      st.block_len = 2;
      st.digit = [](const Int& t) { return t == 1 ? Int(0) : Int(1); };
      return st;
    }
    unsigned long w = prm.w(i);
    std::shared_ptr<VbwIndexer> ix;
    {
      std::lock_guard<std::mutex> lock(*mu);
      auto& slot = (*indexers)[i];
      if (!slot) slot = std::make_shared<VbwIndexer>(static_cast<unsigned long>(i), w);
      ix = slot;
    }
    st.l = prm.l(i);
    st.b = prm.b(i);
    st.block_len = ix->length();
    st.digit = [ix](const Int& t) { return ix->digit(t); };
    return st;
  };
  return spec;
}

inline MffPair qnex_stream(const QnexParams& prm = {}) {
  return mff_stream(qnex_spec(prm), BasicSeq::Kind::qnex, prm.scaled ? "qnex(scaled)" : "qnex");
}

// ---------------------------------------------------------------------------
// RDN stage rules on W_i = V_{i,i^2}.

struct RdnEntry {
  Int w, q, y;
  Index cls = 0;  // class 1..i for w = i, 0 otherwise
};

inline Int rdn_remaining(unsigned long i) {
  // i^2 2^{i^3} - i^3 2^{i^3 - i}: positions with w = i
  unsigned long c = i * i * i;
  return Int(i * i) * pow2(c) - Int(i * i * i) * pow2(c - i);
}

inline Int rdn_class_size(unsigned long i) {
  unsigned long c = i * i * i;
  return Int(i) * pow2(c) - Int(i * i) * pow2(c - i);
}

inline RdnEntry rdn_from_location(unsigned long i, const VbwLocation& loc) {
  RdnEntry e;
  e.w = loc.block[loc.offset];
  Int I = Int(i);
  if (e.w < I) {
    e.q = I;
    e.y = e.w;
    return e;
  }
  Int cs = rdn_class_size(i);
  Int cls = loc.b_before / cs + 1;
  e.cls = static_cast<Index>(cls.get_ui());
  if (e.cls == 1) {
    e.q = I * I * I;
    e.y = 0;
  } else {
    e.q = I * I / Int(e.cls - 1);
    e.y = Int(e.cls - 1);
  }
  return e;
}

inline RdnEntry rdn_stage(unsigned long i, const Int& t) {
  if (i < 2) throw std::invalid_argument("rdn_stage: i must be >= 2");
  if (rdn_remaining(i) % Int(i) != 0) throw std::domain_error("rdn_stage: divisibility precondition fails");
  return rdn_from_location(i, vbw_locate(i, i * i, t));
}

struct RdnStreams {
  BasicSeq P;            // qnex base
  DigitStream zeta;      // qnex digits
  BasicSeq Q;            // Q_6^{l_6} Q_7^{l_7} ...
  DigitStream psi_zeta;  // psi_{P,Q}(zeta)
  BasicSeq K;            // kappa base: k_n = i
  DigitStream kappa;     // kappa digits y_{i,t}
  std::shared_ptr<const MffLayout> layout;
  std::function<Index(Index)> stage_of;  // i(n)
};

inline RdnStreams rdn_stream() {
  QnexParams prm;
  MffPair qn = qnex_stream(prm);
  auto layout = qn.layout;
  auto indexers = std::make_shared<std::map<Index, std::shared_ptr<VbwIndexer>>>();
  auto mu = std::make_shared<std::mutex>();
  auto entry = [layout, indexers, mu](Index n) {
    StagePos p = layout->locate(from_u64(n));
    unsigned long i = static_cast<unsigned long>(p.stage);
    std::shared_ptr<VbwIndexer> ix;
    {
      std::lock_guard<std::mutex> lock(*mu);
      auto& slot = (*indexers)[p.stage];
      if (!slot) slot = std::make_shared<VbwIndexer>(i, i * i);
      ix = slot;
    }
    return std::make_pair(p.stage, rdn_from_location(i, ix->locate(p.t)));
  };
  RdnStreams r;
  r.P = qn.gamma;
  r.zeta = qn.eta;
  r.layout = layout;
  r.Q = BasicSeq(std::make_shared<HandleSeq>(BasicSeq::Kind::rdn, "rdn", [entry](Index n) { return entry(n).second.q; }));
  r.psi_zeta = psi_map(r.zeta, r.Q);
  r.K = BasicSeq::rule("kappa_base", [layout](Index n) { return from_u64(layout->locate(from_u64(n)).stage); });
  r.kappa = DigitStream::from_rule(r.K, [entry](Index n) { return entry(n).second.y; });
  r.stage_of = [layout](Index n) { return layout->locate(from_u64(n)).stage; };
  return r;
}

// Cell index alpha with v in [alpha/i, (alpha+1)/i).
inline Int delta_cell(const Rat& v, const Int& i) { return floor_of(v * Rat(i)); }

// log10 of lambda(psi_{P,Q}(R)) for the rdn pair from per-stage counts: on
// stage t only positions of class 1 (q = t^3) have min(p,q) < q, and only
// while 2^t < t^3, i.e. t <= 9.
struct Log10Value {
  Bracket value;            // the (negative) log10 itself
  double mantissa = 0;      // value = mantissa * 10^exponent
  long exponent = 0;
};

inline Log10Value rdn_log10_measure() {
  Bracket sum = Bracket::zero();
  Bracket ln10 = Bracket::log_of(Int(10));
  for (unsigned long t = 6;; ++t) {
    Int p = pow2(t), q = Int(t * t * t);
    if (p >= q) break;
    Int count = pow2(4 * t * t) * rdn_class_size(t);
    // count * ln(q/p) / ln 10, subtracted
    Bracket lg = Bracket::ratio(Bracket::log_of(make_rat(q, p)), ln10);
    Bracket term{BigFloat(), BigFloat()};
    BigFloat clo = BigFloat::from_int(count, MPFR_RNDD), chi = BigFloat::from_int(count, MPFR_RNDU);
    mpfr_mul(term.lo.get(), lg.lo.get(), clo.get(), MPFR_RNDD);
    mpfr_mul(term.hi.get(), lg.hi.get(), chi.get(), MPFR_RNDU);
    sum -= term;
  }
  Log10Value out{sum, 0, 0};
  BigFloat m;
  mpfr_add(m.get(), sum.lo.get(), sum.hi.get(), MPFR_RNDN);
  mpfr_div_2ui(m.get(), m.get(), 1, MPFR_RNDN);
  BigFloat a, e;
  mpfr_abs(a.get(), m.get(), MPFR_RNDN);
  mpfr_log10(e.get(), a.get(), MPFR_RNDN);
  mpfr_floor(e.get(), e.get());
  out.exponent = mpfr_get_si(e.get(), MPFR_RNDN);
  BigFloat scale;
  mpfr_ui_pow_ui(scale.get(), 10, static_cast<unsigned long>(out.exponent), MPFR_RNDN);
  mpfr_div(m.get(), m.get(), scale.get(), MPFR_RNDN);
  out.mantissa = m.to_double();
  return out;
}

// ---------------------------------------------------------------------------
// Counterexample transforms.

enum class CounterMode { NnotDN, RNnotN, DNnotRN };

inline std::string to_string(CounterMode m) {
  switch (m) {
    case CounterMode::NnotDN: return "NnotDN";
    case CounterMode::RNnotN: return "RNnotN";
    case CounterMode::DNnotRN: return "DNnotRN";
  }
  return "?";
}

// floor(ln v) for v >= 1, exact via a certified bracket.
inline Int floor_ln(const Int& v) {
  Bracket b = Bracket::log_of(v);
  BigFloat flo, fhi;
  mpfr_floor(flo.get(), b.lo.get());
  mpfr_floor(fhi.get(), b.hi.get());
  if (mpfr_cmp(flo.get(), fhi.get()) != 0) throw std::runtime_error("floor_ln: bracket straddles an integer");
  Int out;
  mpfr_get_z(out.get_mpz_t(), flo.get(), MPFR_RNDN);
  return out;
}

inline BasicSeq counterexample_base(CounterMode mode, const BasicSeq& Q) {
  switch (mode) {
    case CounterMode::NnotDN:
      return BasicSeq::rule("max(floor(ln q_n),2)", [Q](Index n) { return int_max(floor_ln(Q.at(n)), Int(2)); });
    case CounterMode::RNnotN:
      return BasicSeq::rule("max(floor(q_n/2),2)", [Q](Index n) { return int_max(Q.at(n) / 2, Int(2)); });
    case CounterMode::DNnotRN:
      return BasicSeq::rule("q_n-1", [Q](Index n) {
        Int p = Q.at(n) - 1;
        if (p < 2) throw std::domain_error("DNnotRN: q_n - 1 < 2 at n=" + std::to_string(n));
        return p;
      });
  }
  throw std::invalid_argument("unknown counterexample mode");
}

struct CounterexampleResult {
  BasicSeq P;
  DigitStream y;   // over Q
  bool infinite_in_limit_ok = false;   // q_n exceeded every earlier bound along the check horizon
};

// NnotDN: y = psi_{P,Q}(psi_{Q,P}(x)), digits min(E_n, p_n - 1); x over Q.
// RNnotN: x is read over P (the proof starts from a P-normal x); y = psi_{P,Q}(x).
// DNnotRN: y = psi_{P,Q}(psi_{Q,P}(x)) + sum 1/(q_1...q_n), digits min(E_n, q_n - 2) + 1; x over Q.
inline CounterexampleResult counterexample_stream(CounterMode mode, const BasicSeq& Q, const DigitStream& x,
                                                  Index check_horizon = 1000) {
  CounterexampleResult r;
  r.P = counterexample_base(mode, Q);
  {
    // infinite-in-limit diagnostic: the last-quarter minimum exceeds the first-quarter maximum
    Int first_max = 0, last_min = -1;
    for (Index n = 1; n <= check_horizon; ++n) {
      Int q = Q.at(n);
      if (n <= check_horizon / 4) first_max = int_max(first_max, q);
      if (n > 3 * check_horizon / 4) last_min = last_min < 0 ? q : int_min(last_min, q);
    }
    r.infinite_in_limit_ok = last_min > first_max;
  }
  switch (mode) {
    case CounterMode::NnotDN:
      r.y = compose_chain({Q, r.P, Q}, x);
      break;
    case CounterMode::RNnotN: {
      BasicSeq P = r.P;
      DigitStream xp = DigitStream::from_rule(P, [x, P](Index n) {
        Int e = x.digit(n);
        if (e >= P.at(n)) throw std::domain_error("RNnotN: x digit exceeds p_n - 1 at n=" + std::to_string(n));
        return e;
      });
      r.y = psi_map(xp, Q);
      break;
    }
    case CounterMode::DNnotRN: {
      DigitStream mid = compose_chain({Q, r.P, Q}, x);
      r.y = DigitStream::from_rule(Q, [mid](Index n) -> Int { return mid.digit(n) + 1; });
      break;
    }
  }
  return r;
}

// |T_{Q,n-1}(x) - T_{Q,n-1}(y)| for the DNnotRN pair, bracketed for n = 1..N.
// The difference equals sum_{j >= n} [E_j != q_j - 1] / (q_n ... q_j); it is
// evaluated backwards from N + depth with outward rounding.
struct GapBracket {
  double lo = 0, hi = 0;
};

inline std::vector<GapBracket> dnnotrn_orbit_gaps(const BasicSeq& Q, const DigitStream& x, Index N, Index depth = 64) {
  std::vector<GapBracket> out(N + 1);
  double lo = 0, hi = 1;  // the tail beyond N + depth lies in [0, 1]
  for (Index j = N + depth; j >= 1; --j) {
    Int q = Q.at(j);
    double qd = q.get_d();
    double delta = x.digit(j) == q - 1 ? 0.0 : 1.0;
    lo = std::nextafter((delta + lo) / qd, -1.0);
    hi = std::nextafter((delta + hi) / qd, 2.0);
    if (lo < 0) lo = 0;
    if (j <= N) out[j] = {lo, hi};
  }
  return out;
}

}  // namespace cantor
