#pragma once
// fracdim.hpp - finite-horizon evaluators for the measure and dimension
// formulas: Wegmann ratios, the range of psi, level sets, the level-measure
// sum, the multifractal witness, rationality, Z_{P,Q}(k) bounds and the
// E_{D,(t_n)} transform.

#include "foundry.hpp"

namespace cantor {

// Per-index digit restriction I_n; only |I_n| is needed by the ratio formulas.
struct RestrictionSpec {
  std::string name;
  std::function<Int(Index)> size;                           // |I_n|
  std::function<bool(Index, const Int&)> contains = nullptr;  // optional membership
};

struct DimCheckpoint {
  Index n = 0;
  Bracket num_log;   // log prod |I_j|
  Bracket den_log;   // log prod q_j
  Bracket value;     // num_log / den_log
  bool empty = false;  // some factor was 0 (log = -infinity)
};

struct DimHypothesis {
  bool ok = false;
  std::vector<std::pair<Index, double>> trend;  // log q_n / log(q_1...q_n)
};

struct DimEstimate {
  std::vector<DimCheckpoint> checkpoints;
  double running_min = 0;                  // minimum of the ratio over all evaluated n
  std::vector<std::pair<Index, double>> running_min_at;  // running minimum at each checkpoint
  DimHypothesis hypothesis;
  bool empty = false;
};

// Ratio log prod_{j in [from,n]} num(j) / log prod_{j in [from,n]} den(j).
inline DimEstimate estimate_ratio(const std::function<Int(Index)>& num, const std::function<Int(Index)>& den,
                                  Index horizon, std::vector<Index> checkpoints = {}, Index from = 1) {
  if (horizon < from) throw std::invalid_argument("estimate_ratio: horizon before start index");
  if (checkpoints.empty()) checkpoints = default_checkpoints(horizon);
  std::sort(checkpoints.begin(), checkpoints.end());
  DimEstimate est;
  Bracket nl = Bracket::zero(), dl = Bracket::zero();
  double rmin = std::numeric_limits<double>::infinity();
  std::size_t ci = 0;
  std::vector<std::pair<Index, double>> trend;
  while (ci < checkpoints.size() && checkpoints[ci] < from) ++ci;
  for (Index n = from; n <= horizon; ++n) {
    Int a = num(n), b = den(n);
    if (b < 2) throw std::domain_error("estimate_ratio: denominator base < 2 at n=" + std::to_string(n));
    if (a < 0) throw std::domain_error("estimate_ratio: negative count at n=" + std::to_string(n));
    if (a == 0) est.empty = true;
    if (!est.empty) nl += Bracket::log_of(a);
    Bracket lb = Bracket::log_of(b);
    dl += lb;
    double v = est.empty ? -std::numeric_limits<double>::infinity() : Bracket::ratio(nl, dl).mid();
    rmin = std::min(rmin, v);
    bool at_cp = ci < checkpoints.size() && checkpoints[ci] == n;
    if (at_cp) {
      DimCheckpoint cp;
      cp.n = n;
      cp.num_log = nl;
      cp.den_log = dl;
      cp.empty = est.empty;
      if (!est.empty) cp.value = Bracket::ratio(nl, dl);
      est.checkpoints.push_back(cp);
      est.running_min_at.emplace_back(n, rmin);
      trend.emplace_back(n, Bracket::ratio(lb, dl).mid());
      while (ci < checkpoints.size() && checkpoints[ci] == n) ++ci;
    }
  }
  est.running_min = rmin;
  est.hypothesis.trend = trend;
  bool decreasing = true;
  for (std::size_t i = 1; i < trend.size(); ++i)
    if (trend[i].second > trend[i - 1].second + 1e-15) decreasing = false;
  est.hypothesis.ok = !trend.empty() && decreasing && trend.back().second < 0.1;
  return est;
}

inline double final_value(const DimEstimate& e) {
  if (e.checkpoints.empty()) throw std::logic_error("DimEstimate has no checkpoints");
  const auto& c = e.checkpoints.back();
  return c.empty ? -std::numeric_limits<double>::infinity() : c.value.mid();
}

// ---------------------------------------------------------------------------
// Wegmann-type estimate and the equality condition for dim_H = dim_P = dim_B.

struct DimSameCheck {
  double lower_liminf = 0;   // min of the left expression over the second half
  double upper_limsup = 0;   // max of the right expression over the second half
  bool equal = false;        // agree within `tolerance`
  double tolerance = 1e-3;
};

struct WegmannReport {
  DimEstimate dim;
  DimSameCheck dimsame;
  std::optional<Index> first_empty;
};

inline WegmannReport wegmann_estimate(const BasicSeq& Q, const RestrictionSpec& I, Index horizon,
                                      std::vector<Index> checkpoints = {}, double tolerance = 1e-3) {
  WegmannReport r;
  r.dim = estimate_ratio(I.size, [&Q](Index n) { return Q.at(n); }, horizon, checkpoints);
  // left:  log prod_{<=n}|I| / (log prod_{<=n+1} q - log|I_{n+1}|)
  // right: log prod_{<=n+1}|I| / (log prod_{<=n} q + log|I_{n+1}|)
  Bracket li = Bracket::zero(), lq = Bracket::zero();
  double lo = std::numeric_limits<double>::infinity(), hi = -std::numeric_limits<double>::infinity();
  for (Index n = 1; n <= horizon; ++n) {
    Int s = I.size(n);
    if (s == 0) {
      r.first_empty = n;
      break;
    }
    li += Bracket::log_of(s);
    lq += Bracket::log_of(Q.at(n));
    if (n < horizon / 2) continue;
    Int s1 = I.size(n + 1);
    if (s1 == 0) break;
    Bracket ls1 = Bracket::log_of(s1);
    Bracket lq1 = Bracket::log_of(Q.at(n + 1));
    Bracket left = Bracket::ratio(li, lq + lq1 - ls1);
    Bracket right = Bracket::ratio(li + ls1, lq + ls1);
    lo = std::min(lo, left.mid());
    hi = std::max(hi, right.mid());
  }
  r.dimsame.lower_liminf = lo;
  r.dimsame.upper_limsup = hi;
  r.dimsame.tolerance = tolerance;
  r.dimsame.equal = !r.first_empty && std::fabs(hi - lo) <= tolerance;
  return r;
}

// ---------------------------------------------------------------------------
// Range of psi: the Moran set with |I_j| = min(p_j, q_j).

struct RangeReport {
  std::optional<Rat> measure_partial;   // prod min(p_j,q_j)/q_j (exact)
  bool partial_nonincreasing = true;
  Log10Value log10_measure;             // bracket of log10 of the partial (or the closed form)
  bool closed_form = false;             // rdn per-stage formula used
  DimEstimate dim;
};

inline RangeReport range_report(const BasicSeq& P, const BasicSeq& Q, Index horizon, bool exact_product = true) {
  RangeReport r;
  if (Q.kind() == BasicSeq::Kind::rdn) {
    r.log10_measure = rdn_log10_measure();
    r.closed_form = true;
  } else {
    Bracket lg = Bracket::zero();
    Int num = 1, den = 1;
    for (Index j = 1; j <= horizon; ++j) {
      Int p = P.at(j), q = Q.at(j);
      Int m = int_min(p, q);
      lg += Bracket::log_of(make_rat(m, q));
      if (exact_product) {
        num *= m;
        den *= q;
      }
    }
    if (exact_product) r.measure_partial = make_rat(num, den);
    Bracket ln10 = Bracket::log_of(Int(10));
    // log10 = ln / ln10 with a non-positive numerator
    Bracket neg{BigFloat(), BigFloat()};
    mpfr_neg(neg.lo.get(), lg.hi.get(), MPFR_RNDD);
    mpfr_neg(neg.hi.get(), lg.lo.get(), MPFR_RNDU);
    Bracket q10 = Bracket::ratio(neg, ln10);
    Bracket v{BigFloat(), BigFloat()};
    mpfr_neg(v.lo.get(), q10.hi.get(), MPFR_RNDD);
    mpfr_neg(v.hi.get(), q10.lo.get(), MPFR_RNDU);
    r.log10_measure.value = v;
    double m = v.mid();
    if (m == 0) {
      r.log10_measure.mantissa = 0;
      r.log10_measure.exponent = 0;
    } else {
      long e = static_cast<long>(std::floor(std::log10(std::fabs(m))));
      r.log10_measure.exponent = e;
      r.log10_measure.mantissa = m / std::pow(10.0, static_cast<double>(e));
    }
  }
  r.dim = estimate_ratio([&](Index n) { return int_min(P.at(n), Q.at(n)); }, [&](Index n) { return Q.at(n); },
                         horizon);
  return r;
}

// ---------------------------------------------------------------------------
// Level sets L_{P,Q}(w).

inline Int omega_digit(const Int& e, const Int& p, const Int& q) {
  if (e >= p) return 0;
  if (e <= q - 2) return 1;
  return p - q + 1;  // e = q - 1
}

enum class LevelTag { empty, single_point, finite, infinite_proxy };

inline std::string to_string(LevelTag t) {
  switch (t) {
    case LevelTag::empty: return "empty";
    case LevelTag::single_point: return "at_most_one_point";
    case LevelTag::finite: return "finite";
    case LevelTag::infinite_proxy: return "infinite_proxy";
  }
  return "?";
}

struct LevelSetReport {
  bool terminating = false;      // w in NU_Q (finite digit form)
  Index M = 0;                   // last nonzero digit for terminating w
  bool empty = false;
  std::optional<Index> first_zero;  // first n with omega_n = 0
  Rat measure_partial;           // theorem's product at depth `horizon`
  Rat finite_branch_partial;     // terminating w: measure of the depth-`horizon` cylinders of the finite representation
  DimEstimate dim;
  LevelTag tag = LevelTag::infinite_proxy;
  bool p_le_q_everywhere = false;
  std::vector<Int> omega;        // omega_1..omega_horizon (max-tail digits past M for terminating w)
};

inline LevelSetReport level_set_report(const BasicSeq& P, const BasicSeq& Q, const DigitStream& w, Index horizon) {
  if (horizon == 0) throw std::invalid_argument("level_set_report: horizon must be >= 1");
  LevelSetReport r;
  auto term = detect_zero_tail(w);
  r.terminating = term.has_value() && *term > 0;
  r.M = r.terminating ? *term : 0;
  r.p_le_q_everywhere = true;
  std::vector<Int> p(horizon + 1), q(horizon + 1), e(horizon + 1);
  for (Index j = 1; j <= horizon; ++j) {
    p[j] = P.at(j);
    q[j] = Q.at(j);
    e[j] = w.digit(j);
    if (e[j] >= q[j]) throw std::invalid_argument("level_set_report: w digit >= q_n at n=" + std::to_string(j));
    if (p[j] > q[j]) r.p_le_q_everywhere = false;
  }
  r.omega.assign(horizon + 1, Int(0));
  Int num = 1, den = 1;
  if (!r.terminating) {
    for (Index j = 1; j <= horizon; ++j) {
      r.omega[j] = omega_digit(e[j], p[j], q[j]);
      if (r.omega[j] == 0 && !r.first_zero) r.first_zero = j;
      num *= r.omega[j];
      den *= p[j];
    }
    r.measure_partial = make_rat(num, den);
    r.empty = r.first_zero.has_value();
    r.dim = estimate_ratio([&r](Index n) { return r.omega[n]; }, [&p](Index n) { return p[n]; }, horizon);
  } else {
    // max-tail representation: E_1..E_{M-1} (E_M - 1) (q_j - 1)...
    Int fnum = 1;
    for (Index j = 1; j <= horizon; ++j) {
      Int d;
      if (j < r.M) d = e[j];
      else if (j == r.M) d = e[j] - 1;
      else d = q[j] - 1;
      r.omega[j] = omega_digit(d, p[j], q[j]);
      if (r.omega[j] == 0 && !r.first_zero) r.first_zero = j;
      num *= r.omega[j];
      den *= p[j];
      fnum *= omega_digit(e[j], p[j], q[j]);
    }
    r.measure_partial = make_rat(num, den);
    r.finite_branch_partial = make_rat(fnum, den);
    r.empty = r.measure_partial == 0 && r.finite_branch_partial == 0;
    Index M = r.M;
    if (M < horizon)
      r.dim = estimate_ratio([&r](Index n) { return r.omega[n]; }, [&p](Index n) { return p[n]; }, horizon, {}, M + 1);
  }
  if (r.empty) {
    r.tag = LevelTag::empty;
  } else if (r.p_le_q_everywhere) {
    r.tag = LevelTag::single_point;
  } else {
    bool big_late = false;
    for (Index j = horizon / 2 + 1; j <= horizon; ++j)
      if (r.omega[j] > 1) big_late = true;
    r.tag = big_late ? LevelTag::infinite_proxy : LevelTag::finite;
  }
  return r;
}

// Exact measure of the depth-d P-cylinders whose digit-wise image matches the
// first d digits of `image` (brute-force enumeration, for oracles).
inline Rat cylinder_measure(const BasicSeq& P, const BasicSeq& Q, const std::vector<Int>& image) {
  const std::size_t d = image.size();
  std::vector<Int> p(d), q(d);
  Int total = 1;
  for (std::size_t j = 0; j < d; ++j) {
    p[j] = P.at(j + 1);
    q[j] = Q.at(j + 1);
    total *= p[j];
  }
  // enumerate all cells; count matches
  Int hits = 0;
  std::vector<Int> G(d, Int(0));
  for (;;) {
    bool ok = true;
    for (std::size_t j = 0; j < d && ok; ++j)
      if (int_min(G[j], q[j] - 1) != image[j]) ok = false;
    if (ok) hits += 1;
    std::size_t j = d;
    bool done = true;
    while (j > 0) {
      --j;
      if (++G[j] < p[j]) {
        done = false;
        break;
      }
      G[j] = 0;
    }
    if (done) break;
  }
  return make_rat(hits, total);
}

// ---------------------------------------------------------------------------
// sum_k a_k prod_{j>k} (1 - a_j), a_k = (q_k - 1)/p_k.

struct LevelMeasureSum {
  Rat partial;        // products truncated at K
  Rat telescoped;     // 1 - prod_{j<=K} (1 - a_j)
  bool hypothesis_ok = false;          // p_n >= q_n for n <= K
  std::optional<Index> violation;      // first n with p_n < q_n
  std::vector<std::pair<Index, double>> qp_partials;  // sum q_n/p_n at checkpoints
  bool qp_converges_proxy = false;
  std::optional<Rat> tail_bound;       // bound on the infinite-product correction
};

inline LevelMeasureSum level_measure_sum(const BasicSeq& P, const BasicSeq& Q, Index K) {
  if (K == 0) throw std::invalid_argument("level_measure_sum: K must be >= 1");
  LevelMeasureSum r;
  std::vector<Rat> a(K + 1);
  r.hypothesis_ok = true;
  double qp = 0, qp_half = 0;
  for (Index j = 1; j <= K; ++j) {
    Int p = P.at(j), q = Q.at(j);
    if (p < q && !r.violation) {
      r.violation = j;
      r.hypothesis_ok = false;
    }
    a[j] = make_rat(q - 1, p);
    qp += make_rat(q, p).get_d();
    if (j == K / 2) qp_half = qp;
    if ((j & (j - 1)) == 0 || j == K) r.qp_partials.emplace_back(j, qp);
  }
  r.qp_converges_proxy = (qp - qp_half) < 1e-3;
  // backward: suffix products prod_{k<j<=K}(1 - a_j)
  Rat suffix = 1, partial = 0;
  for (Index k = K; k >= 1; --k) {
    partial += a[k] * suffix;
    suffix *= Rat(1) - a[k];
  }
  r.partial = partial;
  r.telescoped = Rat(1) - suffix;
  // the infinite products differ from the truncated ones by at most sum_{j>K} a_j;
  // bounded when a_{j+1}/a_j stays below r < 1 on a window past K
  Rat worst = 0;
  Rat prev = make_rat(Q.at(K + 1) - 1, P.at(K + 1));
  Rat sum = prev;
  for (Index j = K + 2; j <= K + 32; ++j) {
    Rat cur = make_rat(Q.at(j) - 1, P.at(j));
    if (prev > 0) {
      Rat ratio = cur / prev;
      if (ratio > worst) worst = ratio;
    }
    sum += cur;
    prev = cur;
  }
  if (worst < 1) r.tail_bound = sum + prev * worst / (Rat(1) - worst);
  return r;
}

// ---------------------------------------------------------------------------
// Multifractal witness set S from the proof construction.

struct MultifractalReport {
  Rat a;                              // alpha / gamma
  std::vector<Index> c;               // block starts c_1, c_2, ...
  std::vector<bool> free_digit;       // per n: I_n = {0..q_n-2} (true) or {q_n-1} (false)
  DimEstimate dim_L;                  // log prod omega / log prod p
  DimEstimate dim_S;                  // log prod upsilon / log prod q
  bool p_gt_q = true;                 // p_n > q_n over the horizon
  std::optional<Index> p_gt_q_violation;
  std::vector<std::pair<Index, double>> gamma_trend;  // log r_n / log p_n
};

inline Int ceil_rat(const Rat& x) {
  Int q;
  mpz_cdiv_q(q.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  return q;
}

inline MultifractalReport multifractal_witness(const BasicSeq& P, const BasicSeq& Q, const Rat& alpha,
                                               const Rat& gamma, Index horizon, std::vector<Index> checkpoints = {}) {
  if (!(alpha >= 0 && alpha < gamma && gamma <= 1)) throw std::invalid_argument("multifractal_witness: need 0 <= alpha < gamma <= 1");
  MultifractalReport r;
  r.a = alpha / gamma;
  r.free_digit.assign(horizon + 1, true);
  Index c = 1;
  for (Index t = 1; c <= horizon; ++t) {
    r.c.push_back(c);
    Index free_len = to_u64(ceil_rat((Rat(1) - r.a) * Rat(from_u64(t))));
    Index fixed_len = to_u64(ceil_rat(r.a * Rat(from_u64(t))));
    for (Index n = c + free_len; n < c + free_len + fixed_len && n <= horizon; ++n) r.free_digit[n] = false;
    c += free_len + fixed_len;
  }
  for (Index n = 1; n <= horizon; ++n) {
    Int p = P.at(n), q = Q.at(n);
    if (p <= q && !r.p_gt_q_violation) {
      r.p_gt_q_violation = n;
      r.p_gt_q = false;
    }
    if ((n & (n - 1)) == 0 || n == horizon) {
      if (p > q) r.gamma_trend.emplace_back(n, log_approx(p - q) / log_approx(p));
    }
  }
  auto omega = [&](Index n) -> Int {
    if (r.free_digit[n]) return 1;
    Int d = P.at(n) - Q.at(n) + 1;
    return d > 0 ? d : Int(0);
  };
  auto upsilon = [&](Index n) -> Int { return r.free_digit[n] ? Q.at(n) - 1 : Int(1); };
  r.dim_L = estimate_ratio(omega, [&](Index n) { return P.at(n); }, horizon, checkpoints);
  r.dim_S = estimate_ratio(upsilon, [&](Index n) { return Q.at(n); }, horizon, checkpoints);
  return r;
}

// ---------------------------------------------------------------------------
// Rationality.

struct DivisibilityDiag {
  Index bound = 0;
  Index all_divide_up_to = 0;   // every m <= this divides some q_n with n in the second half
  bool ok = false;
};

inline DivisibilityDiag divisibility_diag(const BasicSeq& Q, Index horizon, Index bound = 20) {
  DivisibilityDiag d;
  d.bound = bound;
  std::vector<bool> hit(bound + 1, false);
  for (Index n = horizon / 2 + 1; n <= horizon; ++n) {
    Int q = Q.at(n);
    for (Index m = 1; m <= bound; ++m)
      if (!hit[m] && mpz_divisible_ui_p(q.get_mpz_t(), m)) hit[m] = true;
  }
  Index m = 1;
  while (m <= bound && hit[m]) ++m;
  d.all_divide_up_to = m - 1;
  d.ok = d.all_divide_up_to == bound;
  return d;
}

enum class RatCase { case2, case3, case4, undetermined };

inline std::string to_string(RatCase c) {
  switch (c) {
    case RatCase::case2: return "p_n<=q_n infinitely often (psi maps irrationals to irrationals)";
    case RatCase::case3: return "p_n=q_n eventually (S countable, S in [0,1) finite)";
    case RatCase::case4: return "p_n>=q_n eventually, p_n>q_n infinitely often (S uncountable dense)";
    case RatCase::undetermined: return "undetermined";
  }
  return "?";
}

struct RationalityReport {
  DivisibilityDiag div_p, div_q;
  RatCase rat_case = RatCase::undetermined;
  bool also_case2 = false;       // case 3 also meets the case-2 hypothesis (p_n = q_n infinitely often)
  Index M = 1;                   // p_n >= q_n for all M <= n <= horizon
  std::vector<std::pair<Index, double>> qp_partials;
  std::optional<int> s_measure;  // lambda(S cap [0,1)) in {0,1} when decided
  std::string s_measure_basis;
  std::optional<DimEstimate> dim_lower, dim_upper;
  // point query
  std::optional<Rat> x_value;
  std::optional<bool> image_rational_form;  // image digits eventually 0 or eventually q_n - 1 on the horizon tail
  std::string flag;
};

inline RationalityReport rationality_report(const BasicSeq& P, const BasicSeq& Q, Index horizon,
                                            const DigitStream* x = nullptr) {
  RationalityReport r;
  r.div_p = divisibility_diag(P, horizon);
  r.div_q = divisibility_diag(Q, horizon);
  Index last_less = 0;
  bool any_greater_late = false, any_equal_late = false;
  double qp = 0, qp_half = 0;
  for (Index n = 1; n <= horizon; ++n) {
    Int p = P.at(n), q = Q.at(n);
    if (p < q) last_less = n;
    if (n > horizon / 2) {
      if (p > q) any_greater_late = true;
      if (p == q) any_equal_late = true;
    }
    qp += make_rat(q, p).get_d();
    if (n == horizon / 2) qp_half = qp;
    if ((n & (n - 1)) == 0 || n == horizon) r.qp_partials.emplace_back(n, qp);
  }
  r.M = last_less + 1;
  if (last_less > horizon / 2) {
    r.rat_case = RatCase::case2;
  } else if (!any_greater_late) {
    r.rat_case = RatCase::case3;
    r.also_case2 = any_equal_late;
  } else {
    r.rat_case = RatCase::case4;
    double inc = qp - qp_half;
    if (inc >= 1.0) {
      r.s_measure = 0;
      r.s_measure_basis = "sum q_j/p_j grows by " + format_double(inc) + " over the second half (divergent proxy)";
    } else if (inc < 1e-3) {
      r.s_measure = 1;
      r.s_measure_basis = "sum q_j/p_j flat over the second half (convergent proxy)";
    } else {
      r.s_measure_basis = "undecided at horizon";
    }
    Index M = r.M;
    if (M <= horizon) {
      r.dim_lower = estimate_ratio([&](Index n) -> Int { return P.at(n) - Q.at(n); }, [&](Index n) { return P.at(n); },
                                   horizon, {}, M);
      r.dim_upper = estimate_ratio([&](Index n) -> Int { return P.at(n) - Q.at(n) + 1; },
                                   [&](Index n) { return P.at(n); }, horizon, {}, M);
    }
  }
  if (x) {
    if (auto v = exact_value(*x)) r.x_value = *v;
    DigitStream img = psi_map(*x, Q);
    bool all_zero = true, all_max = true;
    for (Index n = horizon / 2 + 1; n <= horizon; ++n) {
      Int d = img.digit(n);
      if (d != 0) all_zero = false;
      if (d != Q.at(n) - 1) all_max = false;
    }
    r.image_rational_form = all_zero || all_max;
    if (r.x_value && !*r.image_rational_form) {
      r.flag = "rational input, irrational-form image";
      if (!r.div_p.ok) r.flag += " (P lacks the divisibility property)";
    } else if (r.x_value) {
      r.flag = "rational input, rational image";
    } else {
      r.flag = *r.image_rational_form ? "image rational-form" : "image irrational-form";
    }
  }
  return r;
}

// ---------------------------------------------------------------------------
// Z_{P,Q}(k) dimension bounds.

struct ZpqBounds {
  DimEstimate lower, upper;
  bool hypothesis_ok = true;           // min(p_n,q_n) >= 3 on the horizon
  std::optional<Index> violation;
};

inline ZpqBounds zpq_dim_bounds(const BasicSeq& P, const BasicSeq& Q, Index /*k*/, Index horizon,
                                std::vector<Index> checkpoints = {}) {
  ZpqBounds z;
  for (Index n = 1; n <= horizon; ++n) {
    if (int_min(P.at(n), Q.at(n)) < 3) {
      z.hypothesis_ok = false;
      z.violation = n;
      break;
    }
  }
  auto den = [&](Index n) { return P.at(n); };
  z.lower = estimate_ratio(
      [&](Index n) {
        Int v = int_min(P.at(n) - 2, Q.at(n) - 1);
        return v > 0 ? v : Int(0);
      },
      den, horizon, checkpoints);
  z.upper = estimate_ratio([&](Index n) { return int_min(P.at(n), Q.at(n)); }, den, horizon, checkpoints);
  return z;
}

// ---------------------------------------------------------------------------
// E_{D,(t_n)}(Q) = psi_{P,Q}(E_D(P)) with p_n = q_n - t_n.

struct EdTransform {
  BasicSeq P;
  DigitStream image;               // over Q, same digits
  bool base_ok = true;             // q_n - t_n >= 3 on the horizon
  std::optional<Index> base_violation;
  std::vector<std::pair<Index, double>> t_over_q_partials;   // sum t_n/q_n (also sum (q_n-p_n)/q_n)
  std::vector<std::pair<Index, double>> logprod_trend;       // log q_{n+2} / log(q_1...q_n)
};

inline BasicSeq ed_base(const BasicSeq& Q, const std::function<Int(Index)>& t) {
  return BasicSeq::rule("q_n-t_n", [Q, t](Index n) -> Int { return Q.at(n) - t(n); });
}

inline EdTransform ed_transform(const BasicSeq& Q, const std::function<Int(Index)>& t, const DigitStream& D,
                                Index horizon = 1000) {
  EdTransform e;
  e.P = D.base();
  double s = 0, lq = 0;
  for (Index n = 1; n <= horizon; ++n) {
    Int q = Q.at(n), tn = t(n);
    if (q - tn < 3 && !e.base_violation) {
      e.base_ok = false;
      e.base_violation = n;
    }
    s += make_rat(tn, q).get_d();
    lq += log_approx(q);
    if ((n & (n - 1)) == 0 || n == horizon) {
      e.t_over_q_partials.emplace_back(n, s);
      e.logprod_trend.emplace_back(n, log_approx(Q.at(n + 2)) / lq);
    }
  }
  e.image = psi_map(D, Q);
  return e;
}

}  // namespace cantor
