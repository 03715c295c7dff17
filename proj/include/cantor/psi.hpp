#pragma once
// psi.hpp - the digit transform psi_{P,Q}, its compositions, the
// piecewise-linear approximants psi_{P_t,Q_t}, continuity, variation,
// bounded variation, monotonicity witnesses, Holder bounds and integrals.

#include "digitstream.hpp"

#include <cstdio>
#include <ostream>

namespace cantor {

class PsiSource final : public DigitSource {
 public:
  PsiSource(std::shared_ptr<const DigitSource> src, BasicSeq Q) : src_(std::move(src)), Q_(std::move(Q)) {}
  Int digit(Index n) const override {
    Int e = src_->digit(n);
    Int qm1 = Q_.at(n) - 1;
    return e < qm1 ? e : qm1;
  }
  std::optional<JointPeriod> joint_period() const override {
    auto jp = src_->joint_period();
    auto tp = Q_.tail_period();
    if (!jp || !tp) return std::nullopt;
    return JointPeriod{std::max(jp->start, tp->start), lcm_index(jp->length, tp->values.size())};
  }

 private:
  std::shared_ptr<const DigitSource> src_;
  BasicSeq Q_;
};

// psi_{P,Q}: digit-wise min(E_n, q_n - 1); the integer part is dropped (1-periodic).
inline DigitStream psi_map(const DigitStream& D, const BasicSeq& Q) {
  DigitStream out(Q, std::make_shared<PsiSource>(D.source(), Q), 0, Canonicity::unknown);
  if (D.terminates_at()) {
    Index t = *D.terminates_at();
    while (t > 0 && out.digit(t) == 0) --t;
    out.set_canonicity(Canonicity::terminating).set_terminates_at(t);
    return out;
  }
  if (auto m = detect_max_tail(out)) {
    out.set_canonicity(Canonicity::max_tail).set_max_tail_from(*m);
    return out;
  }
  if (auto z = detect_zero_tail(out)) {
    out.set_canonicity(Canonicity::terminating).set_terminates_at(*z);
    return out;
  }
  if (out.joint_period()) out.set_canonicity(Canonicity::canonical);
  return out;
}

// Psi_j = psi_{Q_{j-1},Q_j} o ... o psi_{Q_1,Q_2}; D is over Qs[0].
inline DigitStream compose_chain(const std::vector<BasicSeq>& Qs, const DigitStream& D) {
  if (Qs.size() < 2) throw std::invalid_argument("compose_chain: need at least two sequences");
  DigitStream cur = D;
  for (std::size_t i = 1; i < Qs.size(); ++i) cur = psi_map(cur, Qs[i]);
  return cur;
}

// Exact value of psi_{P,Q} at a rational, as far as the image is determined.
inline std::optional<Rat> psi_value(const BasicSeq& P, const BasicSeq& Q, const Rat& x) {
  return exact_value(psi_map(expand_rational(x, P), Q));
}

// psi_{P,Q} at a point given by finitely many P-digits (zeros afterwards).
inline Rat psi_of_digits(const BasicSeq& Q, const std::vector<Int>& digits) {
  Int num = 0, den = 1;
  for (Index j = 1; j <= digits.size(); ++j) {
    Int q = Q.at(j);
    const Int& e = digits[j - 1];
    num = num * q + (e < q - 1 ? e : q - 1);
    den *= q;
  }
  return make_rat(num, den);
}

inline Rat value_of_digits(const BasicSeq& P, const std::vector<Int>& digits) {
  Int num = 0, den = 1;
  for (Index j = 1; j <= digits.size(); ++j) {
    Int p = P.at(j);
    num = num * p + digits[j - 1];
    den *= p;
  }
  return make_rat(num, den);
}

// psi_{P_t,Q_t}(x) by the piecewise-linear closed form
// s*{x} + beta - s*alpha with s = p_1...p_t / q_1...q_t.
inline Rat approximant_eval(const BasicSeq& P, const BasicSeq& Q, Index t, const Rat& x) {
  Rat fx = frac_of(x);
  Int a = fx.get_num(), d = fx.get_den();
  Int anum = 0, bnum = 0, pp = 1, qq = 1;
  for (Index n = 1; n <= t; ++n) {
    Int p = P.at(n), q = Q.at(n);
    Int prod = a * p, e;
    mpz_fdiv_qr(e.get_mpz_t(), a.get_mpz_t(), prod.get_mpz_t(), d.get_mpz_t());
    anum = anum * p + e;
    bnum = bnum * q + (e < q - 1 ? e : q - 1);
    pp *= p;
    qq *= q;
  }
  Rat s = make_rat(pp, qq);
  Rat alpha = make_rat(anum, pp);
  Rat beta = make_rat(bnum, qq);
  return s * (fx - alpha) + beta;
}

// ---------------------------------------------------------------------------
// Continuity

enum class ContinuityStatus { continuous, jump, undecided };
enum class SetTag { A, B, none };

inline std::string to_string(ContinuityStatus s) {
  switch (s) {
    case ContinuityStatus::continuous: return "continuous";
    case ContinuityStatus::jump: return "jump";
    case ContinuityStatus::undecided: return "undecided";
  }
  return "?";
}
inline std::string to_string(SetTag t) {
  switch (t) {
    case SetTag::A: return "A";
    case SetTag::B: return "B";
    case SetTag::none: return "none";
  }
  return "?";
}

struct ContinuityReport {
  Index t = 0;                    // last nonzero digit index (0 for integers)
  std::string point;              // E_0.E_1...E_t
  std::string side = "left";      // the right side is always continuous
  ContinuityStatus status = ContinuityStatus::undecided;
  std::optional<Rat> jump;        // psi(x) - psi(x^-) when decided exactly
  Rat jump_lo, jump_hi;           // bracket for the jump
  SetTag set_tag = SetTag::none;
  bool exact_tail = false;
};

// Joint eventual period of (p_n, q_n), if both have one.
inline std::optional<JointPeriod> joint_tail(const BasicSeq& P, const BasicSeq& Q) {
  auto a = P.tail_period(), b = Q.tail_period();
  if (!a || !b) return std::nullopt;
  return JointPeriod{std::max(a->start, b->start), lcm_index(a->values.size(), b->values.size())};
}

// sum_{j>t} min(p_j-1, q_j-1) / (q_{t+1} ... q_j), exactly for eventually
// periodic (P,Q); otherwise nullopt.
inline std::optional<Rat> contlem_tail_exact(const BasicSeq& P, const BasicSeq& Q, Index t) {
  auto jp = joint_tail(P, Q);
  if (!jp) return std::nullopt;
  Index s = std::max(jp->start, t + 1), L = jp->length;
  Int num = 0, den = 1;
  for (Index j = t + 1; j < s; ++j) {
    Int q = Q.at(j);
    num = num * q + int_min(P.at(j), q) - 1;
    den *= q;
  }
  Int cn = 0, cl = 1;
  for (Index j = s; j < s + L; ++j) {
    Int q = Q.at(j);
    cn = cn * q + int_min(P.at(j), q) - 1;
    cl *= q;
  }
  Rat period = make_rat(cn, cl) / (Rat(1) - make_rat(1, cl));
  return make_rat(num, den) + period / Rat(den);
}

// Bracket for the same tail using terms up to `horizon`; the remainder past
// index H is in (0, 1/(q_{t+1}...q_H)].
inline std::pair<Rat, Rat> contlem_tail_bracket(const BasicSeq& P, const BasicSeq& Q, Index t, Index horizon) {
  Int num = 0, den = 1;
  for (Index j = t + 1; j <= std::max(horizon, t + 1); ++j) {
    Int q = Q.at(j);
    num = num * q + int_min(P.at(j), q) - 1;
    den *= q;
  }
  Rat lo = make_rat(num, den);
  return {lo, lo + make_rat(1, den)};
}

inline ContinuityReport classify_continuity(const BasicSeq& P, const BasicSeq& Q, const DigitStream& x,
                                            Index tail_horizon = 200) {
  auto term = detect_zero_tail(x);
  if (!term) throw std::invalid_argument("classify_continuity: point is not terminating");
  ContinuityReport r;
  r.t = *term;
  r.point = x.integer_part().get_str() + ".";
  for (Index j = 1; j <= r.t; ++j) r.point += (j > 1 ? " " : "") + x.digit(j).get_str();

  Int qprod = 1;
  for (Index j = 1; j <= r.t; ++j) qprod *= Q.at(j);

  Rat d = 0;
  if (r.t > 0) {
    Int e = x.digit(r.t), qt = Q.at(r.t);
    d = (e < qt) ? Rat(1) : Rat(0);
  }
  Rat tail_lo, tail_hi;
  if (auto ex = contlem_tail_exact(P, Q, r.t)) {
    tail_lo = tail_hi = *ex;
    r.exact_tail = true;
  } else {
    std::tie(tail_lo, tail_hi) = contlem_tail_bracket(P, Q, r.t, r.t + tail_horizon);
  }
  Rat scale = make_rat(1, qprod);
  if (r.t == 0) {
    // integer point: psi(x) = 0 while psi(x^-) is the full tail sum
    r.jump_lo = -tail_hi;
    r.jump_hi = -tail_lo;
  } else {
    r.jump_lo = (d - tail_hi) * scale;
    r.jump_hi = (d - tail_lo) * scale;
  }
  if (r.jump_lo == r.jump_hi) {
    r.jump = r.jump_lo;
    r.status = *r.jump == 0 ? ContinuityStatus::continuous : ContinuityStatus::jump;
  } else if (r.jump_lo > 0 || r.jump_hi < 0) {
    r.status = ContinuityStatus::jump;
  } else {
    r.status = ContinuityStatus::undecided;
  }
  if (r.status == ContinuityStatus::jump && r.t > 0) r.set_tag = d == 0 ? SetTag::A : SetTag::B;
  return r;
}

// ---------------------------------------------------------------------------
// Variation

struct VariationReport {
  Rat v;
  Rat upper_bound;
  bool formula_path = true;  // false when the breakpoint enumeration was used
};

// psi_{P_t,Q_t}(1^-) = sum_{j<=t} min(p_j-1,q_j-1)/(q_1...q_j) + 1/(q_1...q_t).
inline Rat psi_t_one_minus(const std::vector<Int>& p, const std::vector<Int>& q) {
  Int num = 0, den = 1;
  for (std::size_t j = 0; j < p.size(); ++j) {
    num = num * q[j] + int_min(p[j], q[j]) - 1;
    den *= q[j];
  }
  return make_rat(num + 1, den);
}

// Variation of psi_{P_t,Q_t} on [0,1] by summing jumps: every point whose last
// nonzero digit is E at position k contributes the same jump, and there are
// p_1...p_{k-1} such points.
inline Rat variation_formula(const std::vector<Int>& p, const std::vector<Int>& q) {
  const std::size_t t = p.size();
  std::vector<Int> qpre(t + 1, 1), ppre(t + 1, 1);
  for (std::size_t j = 0; j < t; ++j) {
    qpre[j + 1] = qpre[j] * q[j];
    ppre[j + 1] = ppre[j] * p[j];
  }
  // mid[k] = sum_{j=k+1}^t min(p_j-1,q_j-1)/(q_1...q_j)
  std::vector<Rat> mid(t + 1, Rat(0));
  for (std::size_t k = t; k-- > 0;) mid[k] = mid[k + 1] + make_rat(int_min(p[k], q[k]) - 1, qpre[k + 1]);
  Rat last = make_rat(1, qpre[t]);
  Rat total = 0;
  for (std::size_t k = 1; k <= t; ++k) {
    Rat rest = mid[k] + last;
    Rat unit = make_rat(1, qpre[k]);
    // E < q_k gives difference 1, E >= q_k gives 0
    Int e_hi = int_min(p[k - 1] - 1, q[k - 1] - 1);   // count of E in [1, q_k - 1]
    Int e_lo = p[k - 1] - 1 - e_hi;                   // count of E in [q_k, p_k - 1]
    Rat a = unit - rest;
    if (a < 0) a = -a;
    Rat contrib = Rat(e_hi) * a + Rat(e_lo) * rest;
    total += contrib * Rat(ppre[k - 1]);
  }
  return total + psi_t_one_minus(p, q) + make_rat(ppre[t], qpre[t]);
}

// Breakpoint enumeration over all t-level cells (left endpoints beta(E)).
inline Rat variation_breakpoints(const std::vector<Int>& p, const std::vector<Int>& q) {
  const std::size_t t = p.size();
  Int pp = 1, qq = 1;
  for (std::size_t j = 0; j < t; ++j) {
    pp *= p[j];
    qq *= q[j];
  }
  if (pp > 50000000) throw std::length_error("variation_breakpoints: too many cells");
  std::vector<Int> E(t, 0);
  // betas are integers over qq
  Rat v = make_rat(pp, qq);
  Int prev_end;
  bool first = true;
  Int total = 0;
  for (;;) {
    Int b = 0;
    for (std::size_t j = 0; j < t; ++j) b = b * q[j] + int_min(E[j], q[j] - 1);
    if (!first) {
      Int diff = b - prev_end;
      total += diff < 0 ? Int(-diff) : diff;
    }
    prev_end = b + 1;
    first = false;
    std::size_t j = t;
    while (j > 0) {
      --j;
      if (++E[j] < p[j]) break;
      E[j] = 0;
      if (j == 0) {
        j = t + 1;
        break;
      }
    }
    if (j == t + 1 || t == 0) break;
  }
  total += prev_end;
  return v + make_rat(total, qq);
}

inline Rat variation_upper_bound(const std::vector<Int>& p, const std::vector<Int>& q) {
  const std::size_t t = p.size();
  Rat s = 0;
  Int qq = 1, pp = 1;
  Int psum = 0;  // sum_{k<j} p_k
  for (std::size_t j = 0; j < t; ++j) {
    qq *= q[j];
    pp *= p[j];
    if (j > 0) s += make_rat(psum * (p[j] + q[j]), qq);
    psum += p[j];
  }
  return Rat(2) * s + Rat(2) * make_rat(pp, qq) + Rat(1);
}

inline VariationReport variation_exact(const BasicSeq& P, const BasicSeq& Q, Index t) {
  std::vector<Int> p = P.prefix(t), q = Q.prefix(t);
  VariationReport r;
  r.upper_bound = variation_upper_bound(p, q);
  if (t >= 2 && p[t - 1] != q[t - 1]) {
    r.v = variation_formula(p, q);
    r.formula_path = true;
  } else {
    if (t == 0) {
      r.v = 2;  // identity sawtooth on [0,1]
    } else {
      r.v = variation_breakpoints(p, q);
    }
    r.formula_path = false;
  }
  return r;
}

// ---------------------------------------------------------------------------
// Bounded variation (sufficient condition)

enum class BVVerdict { condition_met, not_proven };
inline std::string to_string(BVVerdict v) { return v == BVVerdict::condition_met ? "condition_met" : "not_proven"; }

struct BVReport {
  std::vector<std::pair<Index, Rat>> double_sum_partials;
  std::optional<Rat> tail_bound;     // certified bound on the remaining series
  std::vector<std::pair<Index, double>> log_ratio_running_min;
  bool ratio_bounded = false;
  std::string ratio_basis;           // "periodic" or "window"
  BVVerdict verdict = BVVerdict::not_proven;
};

inline BVReport bv_check(const BasicSeq& P, const BasicSeq& Q, Index horizon = 200) {
  if (horizon < 2) horizon = 2;
  BVReport r;
  Rat s = 0;
  Int qq = 1, psum = 0;
  double lr = 0, run_min = 0, min_first = 0, min_second = 0;
  for (Index j = 1; j <= horizon; ++j) {
    Int p = P.at(j), q = Q.at(j);
    qq *= q;
    if (j > 1) s += make_rat(psum * (p + q), qq);
    psum += p;
    lr += log_approx(p) - log_approx(q);
    if (j == 1 || lr < run_min) run_min = lr;
    if (j <= horizon / 2) min_first = run_min;
    else if (j == horizon / 2 + 1 || lr < min_second) min_second = lr;
    if ((j & (j - 1)) == 0 || j == horizon) {
      r.double_sum_partials.emplace_back(j, s);
      r.log_ratio_running_min.emplace_back(j, run_min);
    }
  }
  if (auto bp = P.bound_after(horizon)) {
    // term_j <= S_{j-1} (Bp + 2) / (Q_H 2^{j-H}) with S_{j-1} <= S_H + (j-1-H) Bp
    r.tail_bound = make_rat((*bp + 2) * (psum + *bp), qq);
  }
  if (auto jp = joint_tail(P, Q)) {
    Int pn = 1, qn = 1;
    for (Index j = jp->start; j < jp->start + jp->length; ++j) {
      pn *= P.at(j);
      qn *= Q.at(j);
    }
    r.ratio_bounded = pn <= qn;
    r.ratio_basis = "periodic";
  } else {
    r.ratio_bounded = min_second <= min_first + 1e-12;
    r.ratio_basis = "window";
  }
  r.verdict = (r.tail_bound && r.ratio_bounded) ? BVVerdict::condition_met : BVVerdict::not_proven;
  return r;
}

// ---------------------------------------------------------------------------
// Monotonicity witness

struct MonotoneWitness {
  Index m = 0;
  Rat c, x, y;
  Rat psi_c, psi_x, psi_y;
};

inline std::optional<MonotoneWitness> monotonicity_witness(const BasicSeq& P, const BasicSeq& Q,
                                                           const std::vector<Int>& cell, Index horizon) {
  for (Index j = 1; j <= cell.size(); ++j) {
    if (cell[j - 1] < 0 || cell[j - 1] >= P.at(j))
      throw std::invalid_argument("monotonicity_witness: cell digit out of range at position " + std::to_string(j));
  }
  for (Index m = cell.size() + 1; m <= horizon; ++m) {
    Int pm = P.at(m), qm = Q.at(m);
    if (pm <= qm) continue;
    std::vector<Int> xd = cell, yd = cell;
    xd.resize(m + 1, Int(0));
    yd.resize(m, Int(0));
    xd[m - 1] = qm - 1;
    xd[m] = 1;
    yd[m - 1] = qm;
    MonotoneWitness w;
    w.m = m;
    w.c = value_of_digits(P, cell);
    w.x = value_of_digits(P, xd);
    w.y = value_of_digits(P, yd);
    w.psi_c = psi_of_digits(Q, cell);
    w.psi_x = psi_of_digits(Q, xd);
    w.psi_y = psi_of_digits(Q, yd);
    if (w.psi_c < w.psi_x && w.x < w.y && w.psi_x > w.psi_y) return w;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Holder bounds

enum class HolderVerdict { bounded_so_far, diverging };
inline std::string to_string(HolderVerdict v) {
  return v == HolderVerdict::diverging ? "diverging" : "bounded_so_far";
}

struct HolderCheckpoint {
  Index n = 0;
  double log_e1 = 0, log_e2 = 0;       // logs of the two expressions at n
  double log_sup1 = 0, log_sup2 = 0;   // running suprema
};

struct HolderReport {
  std::vector<HolderCheckpoint> checkpoints;
  bool hypothesis_ok = false;          // min(p_n,q_n) >= 3 on the second half of the horizon
  std::optional<Index> last_small_min; // last n with min(p_n,q_n) < 3
  bool e1_increasing_tail = false;     // certified increase over the last tenth
  bool e2_increasing_tail = false;
  HolderVerdict verdict = HolderVerdict::bounded_so_far;
};

// Logs of (P_n)^a/Q_n * min(p_n,q_n)^{1-a} and
// (P_{n+k})^a/Q_n * (p_{n+k+1}/max(1,p_{n+k+1}-q_{n+k+1}))^a as certified brackets.
inline HolderReport holder_report(const BasicSeq& P, const BasicSeq& Q, Index k, const Rat& alpha, Index horizon,
                                  std::vector<Index> checkpoints = {}) {
  if (alpha <= 0 || alpha > 1) throw std::invalid_argument("holder_report: alpha must lie in (0,1]");
  if (horizon < 10) throw std::invalid_argument("holder_report: horizon must be >= 10");
  if (checkpoints.empty()) checkpoints = default_checkpoints(horizon);
  std::sort(checkpoints.begin(), checkpoints.end());
  HolderReport r;
  Rat one_minus = Rat(1) - alpha;
  // log P_m for m up to horizon + k + 1
  std::vector<Bracket> logP;
  logP.reserve(horizon + k + 2);
  logP.push_back(Bracket::zero());
  for (Index m = 1; m <= horizon + k + 1; ++m) logP.push_back(logP.back() + Bracket::log_of(P.at(m)));
  Bracket logQ = Bracket::zero();
  Index tail_from = horizon - horizon / 10;
  std::optional<Bracket> prev1, prev2;
  bool inc1 = true, inc2 = true;
  double sup1 = -1e308, sup2 = -1e308;
  std::size_t ci = 0;
  for (Index n = 1; n <= horizon; ++n) {
    Int p = P.at(n), q = Q.at(n);
    if (int_min(p, q) < 3) r.last_small_min = n;
    logQ += Bracket::log_of(q);
    Bracket e1 = logP[n].scaled(alpha) - logQ;
    if (one_minus > 0) e1 += Bracket::log_of(int_min(p, q)).scaled(one_minus);
    Int pk = P.at(n + k + 1), qk = Q.at(n + k + 1);
    Int den = int_max(Int(1), pk - qk);
    Bracket e2 = logP[n + k].scaled(alpha) - logQ + Bracket::log_of(make_rat(pk, den)).scaled(alpha);
    sup1 = std::max(sup1, e1.mid());
    sup2 = std::max(sup2, e2.mid());
    if (n >= tail_from) {
      if (prev1 && !prev1->certainly_less(e1)) inc1 = false;
      if (prev2 && !prev2->certainly_less(e2)) inc2 = false;
      prev1 = e1;
      prev2 = e2;
    }
    while (ci < checkpoints.size() && checkpoints[ci] == n) {
      r.checkpoints.push_back({n, e1.mid(), e2.mid(), sup1, sup2});
      ++ci;
    }
  }
  r.hypothesis_ok = !r.last_small_min || *r.last_small_min <= horizon / 2;
  r.e1_increasing_tail = inc1;
  r.e2_increasing_tail = inc2;
  r.verdict = (inc1 || inc2) ? HolderVerdict::diverging : HolderVerdict::bounded_so_far;
  return r;
}

// ---------------------------------------------------------------------------
// Integral of the approximant: on each t-level cell psi_{P_t,Q_t} rises
// linearly from beta(E) by 1/(q_1...q_t), so the integral is
// 1/(2 q_1...q_t) + (1/(p_1...p_t)) sum_E beta(E), and the sum factorizes.
inline Rat integral_approximant(const BasicSeq& P, const BasicSeq& Q, Index t) {
  Int qq = 1;
  Rat acc = 0;
  for (Index n = 1; n <= t; ++n) {
    Int p = P.at(n), q = Q.at(n);
    qq *= q;
    Int s;  // sum_{e=0}^{p-1} min(e, q-1)
    if (p <= q) {
      s = p * (p - 1) / 2;
    } else {
      s = q * (q - 1) / 2 + (p - q) * (q - 1);
    }
    acc += make_rat(s, p * qq);
  }
  return acc + make_rat(1, 2 * qq);
}

// ---------------------------------------------------------------------------
// Pixel grid of the graph of psi_{P,Q} via the level-`depth` approximant.

struct PsiGrid {
  Index pixels = 0;
  std::vector<Rat> xs;
  std::vector<Rat> values;
  std::vector<Index> rows;  // 0 = bottom
};

inline PsiGrid render_psi_grid(const BasicSeq& P, const BasicSeq& Q, Index pixels, Index depth = 64) {
  if (pixels < 2) throw std::invalid_argument("render_psi_grid: pixels must be >= 2");
  PsiGrid g;
  g.pixels = pixels;
  for (Index i = 0; i < pixels; ++i) {
    Rat x = make_rat(2 * from_u64(i) + 1, 2 * from_u64(pixels));
    Rat v = approximant_eval(P, Q, depth, x);
    Int row = floor_of(v * Rat(from_u64(pixels)));
    if (row < 0) row = 0;
    if (row >= from_u64(pixels)) row = from_u64(pixels - 1);
    g.xs.push_back(x);
    g.values.push_back(v);
    g.rows.push_back(to_u64(row));
  }
  return g;
}

inline std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline void write_grid_csv(std::ostream& os, const PsiGrid& g) {
  os << "x,psi\n";
  for (std::size_t i = 0; i < g.xs.size(); ++i)
    os << format_double(g.xs[i].get_d()) << ',' << format_double(g.values[i].get_d()) << '\n';
}

inline void write_grid_pgm(std::ostream& os, const PsiGrid& g) {
  os << "P2\n" << g.pixels << ' ' << g.pixels << "\n255\n";
  for (Index r = g.pixels; r-- > 0;) {
    for (Index c = 0; c < g.pixels; ++c) {
      if (c) os << ' ';
      os << (g.rows[c] == r ? 0 : 255);
    }
    os << '\n';
  }
}

}  // namespace cantor
