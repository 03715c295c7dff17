#include <cantor/psi.hpp>
#include <cantor/normstats.hpp>

#include <gtest/gtest.h>

#include <cmath>

using namespace cantor;

namespace {

std::vector<Int> ints(std::initializer_list<int> v) {
  std::vector<Int> out;
  for (int x : v) out.emplace_back(x);
  return out;
}

// psi_{P_t,Q_t}(x) digit by digit: t image digits, then the P-remainder
// passes through unchanged because p_n = q_n = 2 beyond t.
Rat approximant_by_digits(const BasicSeq& P, const BasicSeq& Q, Index t, const Rat& x) {
  Rat r = frac_of(x), v = 0, scale = 1;
  for (Index n = 1; n <= t; ++n) {
    Int p = P.at(n), q = Q.at(n);
    r *= Rat(p);
    Int e = floor_of(r);
    r -= Rat(e);
    scale /= Rat(q);
    v += Rat(e < q - 1 ? e : q - 1) * scale;
  }
  return v + r * scale;
}

// Left endpoints of the level-t cells, in increasing order.
std::vector<Rat> cell_starts(const BasicSeq& P, Index t) {
  std::vector<Rat> out{Rat(0)};
  Rat w = 1;
  for (Index n = 1; n <= t; ++n) {
    Int p = P.at(n);
    w /= Rat(p);
    std::vector<Rat> next;
    for (const auto& c : out)
      for (Int e = 0; e < p; ++e) next.push_back(c + Rat(e) * w);
    out.swap(next);
  }
  return out;
}

// Total variation on [0,1] from the linear pieces and the jumps between them,
// including the jump to psi(1) = psi(0) at the right endpoint.
Rat variation_oracle(const BasicSeq& P, const BasicSeq& Q, Index t) {
  std::vector<Rat> cs = cell_starts(P, t);
  Int pp = 1, qq = 1;
  for (Index n = 1; n <= t; ++n) {
    pp *= P.at(n);
    qq *= Q.at(n);
  }
  Rat rise = Rat(1) / Rat(qq);
  Rat v = 0;
  for (std::size_t i = 0; i < cs.size(); ++i) {
    Rat start = approximant_eval(P, Q, t, cs[i]);
    Rat left_limit_next = start + rise;
    Rat next = i + 1 < cs.size() ? approximant_eval(P, Q, t, cs[i + 1]) : approximant_eval(P, Q, t, Rat(1));
    v += rise + abs(next - left_limit_next);
  }
  return v;
}

Rat trapezoid_oracle(const BasicSeq& P, const BasicSeq& Q, Index t) {
  std::vector<Rat> cs = cell_starts(P, t);
  Int pp = 1, qq = 1;
  for (Index n = 1; n <= t; ++n) {
    pp *= P.at(n);
    qq *= Q.at(n);
  }
  Rat w = Rat(1) / Rat(pp), rise = Rat(1) / Rat(qq), acc = 0;
  for (const auto& c : cs) {
    Rat a = approximant_eval(P, Q, t, c);
    acc += w * (a + a + rise) / 2;
  }
  return acc;
}

// Exact left limit of psi at a terminating x for periodic P, Q: psi along the
// approach points y_m = x - 1/(p_1...p_{t+m}) moves by a factor
// r = 1/(q over one joint period) per period, so the limit is a geometric sum.
Rat left_limit_oracle(const BasicSeq& P, const BasicSeq& Q, const std::vector<Int>& digits, Index L) {
  Index t = digits.size();
  auto psi_at_m = [&](Index m) {
    std::vector<Int> d = digits;
    d.back() -= 1;
    for (Index j = t + 1; j <= t + m; ++j) d.push_back(P.at(j) - 1);
    return psi_of_digits(Q, d);
  };
  Index m = 4 * L;
  Rat a = psi_at_m(m), b = psi_at_m(m - L);
  Int qper = 1;
  for (Index j = t + m + 1; j <= t + m + L; ++j) qper *= Q.at(j);
  Rat r = Rat(1) / Rat(qper);
  return a + (a - b) * r / (Rat(1) - r);
}

BasicSeq small_periodic(std::mt19937_64& g, Index len, int lo, int hi) {
  std::vector<Int> v;
  for (Index i = 0; i < len; ++i) v.push_back(Int(lo + static_cast<int>(g() % (hi - lo + 1))));
  return BasicSeq::periodic(v);
}

}  // namespace

TEST(PsiMap, FootnoteImageIsOne) {
  BasicSeq P = BasicSeq::constant(3), Q = BasicSeq::periodic(ints({3, 2}));
  DigitStream Y = psi_map(expand_rational(Rat(7, 8), P), Q);
  EXPECT_EQ(Y.digits(6), ints({2, 1, 2, 1, 2, 1}));
  EXPECT_EQ(exact_value(Y), Rat(1));
  EXPECT_EQ(psi_value(P, Q, Rat(7, 8)).value(), Rat(1));
}

TEST(PsiMap, IdentityWhenBasesAgree) {
  BasicSeq P = BasicSeq::affine(1, 1);
  DigitStream X = iid_digit_stream(P, 4);
  DigitStream Y = psi_map(X, P);
  EXPECT_EQ(Y.digits(300), X.digits(300));
}

TEST(PsiMap, AllOnesGivesEMinusTwo) {
  BasicSeq P = BasicSeq::constant(3), Q = BasicSeq::affine(1, 1);
  DigitStream X = DigitStream::from_rule(P, [](Index) { return Int(1); });
  IntervalEnclosure e = enclose_prefix(psi_map(X, Q), 25);
  EXPECT_NEAR(e.lo.get_d(), std::exp(1.0) - 2.0, 1e-15);
  EXPECT_LT(e.width(), Rat(1, 1000000000));
}

TEST(PsiMap, DigitContract) {
  std::mt19937_64 g(2);
  for (int trial = 0; trial < 20; ++trial) {
    BasicSeq P = BasicSeq::iid(2, 12, g()), Q = BasicSeq::iid(2, 12, g());
    DigitStream X = iid_digit_stream(P, g());
    DigitStream Y = psi_map(X, Q);
    for (Index n = 1; n <= 500; ++n) ASSERT_EQ(Y.digit(n), int_min(X.digit(n), Q.at(n) - 1));
  }
}

TEST(ComposeChain, SameBaseIsIdentity) {
  BasicSeq Q = BasicSeq::periodic(ints({4, 7}));
  DigitStream X = iid_digit_stream(Q, 8);
  EXPECT_EQ(compose_chain({Q, Q}, X).digits(100), X.digits(100));
}

TEST(ComposeChain, ThroughSmallerBaseClampsDigits) {
  BasicSeq Q = BasicSeq::affine(3, 2);
  BasicSeq P = BasicSeq::rule("half", [Q](Index n) -> Int { return int_max(Q.at(n) / 2, Int(2)); });
  DigitStream X = iid_digit_stream(Q, 12);
  DigitStream Y = compose_chain({Q, P, Q}, X);
  for (Index n = 1; n <= 400; ++n) EXPECT_EQ(Y.digit(n), int_min(X.digit(n), P.at(n) - 1));
}

TEST(ComposeChain, SmallDigitBlockCountsUnchanged) {
  BasicSeq P = BasicSeq::iid(5, 20, 1), Q = BasicSeq::iid(5, 20, 2);
  DigitStream X = iid_digit_stream(P, 3);
  DigitStream Y = compose_chain({P, Q}, X);
  const Index N = 100000;
  std::vector<Int> xd = X.digits(N + 2), yd = Y.digits(N + 2);
  for (Index k = 1; k <= 2; ++k) {
    auto cx = count_all_blocks(xd, k, N), cy = count_all_blocks(yd, k, N);
    for (const auto& B : all_blocks(k, 3)) {
      Index a = cx.count(B) ? cx[B] : 0, b = cy.count(B) ? cy[B] : 0;
      EXPECT_EQ(a, b) << block_to_string(B);
    }
  }
}

TEST(Approximant, IdentityReturnsFractionalPart) {
  BasicSeq Q = BasicSeq::periodic(ints({3, 5}));
  for (Index t : {0u, 1u, 4u})
    for (const Rat& x : {Rat(1, 3), Rat(7, 5), Rat(22, 7)}) EXPECT_EQ(approximant_eval(Q, Q, t, x), frac_of(x));
}

TEST(Approximant, WorkedValue) {
  BasicSeq P = BasicSeq::explicit_(ints({3}), BasicSeq::constant(2)), Q = BasicSeq::constant(2);
  EXPECT_EQ(approximant_eval(P, Q, 1, Rat(1, 2)), Rat(3, 4));
}

TEST(Approximant, ClosedFormMatchesDigitOracle) {
  std::mt19937_64 g(6);
  for (int trial = 0; trial < 300; ++trial) {
    BasicSeq P = BasicSeq::iid(2, 9, g()), Q = BasicSeq::iid(2, 9, g());
    Index t = g() % 7;
    Int den = 1 + g() % 10000;
    Rat x = make_rat(from_u64(g()) % (3 * den), den);
    ASSERT_EQ(approximant_eval(P, Q, t, x), approximant_by_digits(truncate_tail(P, t), truncate_tail(Q, t), t, x))
        << "trial " << trial;
  }
}

TEST(Approximant, UniformBoundOnGrid) {
  std::mt19937_64 g(10);
  for (int trial = 0; trial < 3; ++trial) {
    BasicSeq P = BasicSeq::iid(2, 10, g()), Q = BasicSeq::iid(2, 10, g());
    for (Index t : {4u, 8u}) {
      Rat bound = Rat(1) / Rat(pow2(t - 1));
      for (Index i = 0; i < 1000; ++i) {
        Rat x = make_rat(2 * from_u64(i) + 1, 2000);
        ASSERT_LE(abs(approximant_eval(P, Q, t, x) - approximant_eval(P, Q, t + 10, x)), bound);
      }
    }
  }
}

TEST(Continuity, WorkedJumpMinusThird) {
  BasicSeq P = BasicSeq::constant(5), Q = BasicSeq::constant(3);
  ContinuityReport r = classify_continuity(P, Q, expand_rational(Rat(3, 5), P));
  EXPECT_EQ(r.status, ContinuityStatus::jump);
  ASSERT_TRUE(r.jump);
  EXPECT_EQ(*r.jump, Rat(-1, 3));
  EXPECT_EQ(r.set_tag, SetTag::A);
  EXPECT_EQ(*r.jump, psi_of_digits(Q, ints({3})) - left_limit_oracle(P, Q, ints({3}), 1));
}

TEST(Continuity, WorkedJumpFourFortyFifths) {
  BasicSeq P = BasicSeq::constant(2), Q = BasicSeq::constant(10);
  ContinuityReport r = classify_continuity(P, Q, expand_rational(Rat(1, 2), P));
  EXPECT_EQ(r.status, ContinuityStatus::jump);
  ASSERT_TRUE(r.jump);
  EXPECT_EQ(*r.jump, Rat(4, 45));
  EXPECT_EQ(r.set_tag, SetTag::B);
}

TEST(Continuity, IdentityIsContinuous) {
  BasicSeq Q = BasicSeq::periodic(ints({3, 4}));
  for (const Rat& x : {Rat(1, 3), Rat(5, 12), Rat(11, 12)}) {
    ContinuityReport r = classify_continuity(Q, Q, expand_rational(x, Q));
    EXPECT_EQ(r.status, ContinuityStatus::continuous) << x;
  }
}

TEST(Continuity, RightSideAlwaysContinuous) {
  BasicSeq P = BasicSeq::constant(5), Q = BasicSeq::constant(3);
  std::vector<Int> d = ints({3});
  Rat at = psi_of_digits(Q, d);
  for (Index m = 5; m <= 40; m += 5) {
    std::vector<Int> e = d;
    e.resize(m, Int(0));
    e.back() = 1;
    EXPECT_LE(psi_of_digits(Q, e) - at, Rat(1) / Rat(pow_int(3, m - 1)));
  }
}

TEST(Continuity, AgreesWithApproachSequenceOracle) {
  std::mt19937_64 g(2024);
  int jumps = 0, points = 0;
  for (int pair = 0; pair < 20; ++pair) {
    Index lp = 1 + g() % 2, lq = 1 + g() % 2;
    BasicSeq P = small_periodic(g, lp, 2, 7), Q = small_periodic(g, lq, 2, 7);
    Index L = std::lcm(lp, lq);
    for (int k = 0; k < 5; ++k) {
      Index t = 1 + g() % 4;
      std::vector<Int> d;
      for (Index j = 1; j <= t; ++j) d.push_back(from_u64(g()) % P.at(j));
      if (d.back() == 0) d.back() = 1;
      DigitStream X = DigitStream::from_digits(P, d);
      ContinuityReport r = classify_continuity(P, Q, X);
      Rat jump = psi_of_digits(Q, d) - left_limit_oracle(P, Q, d, L);
      ++points;
      ASSERT_NE(r.status, ContinuityStatus::undecided);
      ASSERT_TRUE(r.jump);
      EXPECT_EQ(*r.jump, jump) << "pair " << pair << " point " << r.point;
      EXPECT_EQ(r.status == ContinuityStatus::jump, jump != 0);
      if (jump != 0) ++jumps;
    }
  }
  EXPECT_EQ(points, 100);
  EXPECT_GT(jumps, 0);
}

TEST(Continuity, IntegerPointsJump) {
  BasicSeq P = BasicSeq::constant(5), Q = BasicSeq::constant(3);
  ContinuityReport r = classify_continuity(P, Q, expand_rational(Rat(1), P));
  EXPECT_EQ(r.status, ContinuityStatus::jump);
  EXPECT_LT(*r.jump, 0);
}

TEST(Variation, WorkedCases) {
  BasicSeq P3 = BasicSeq::constant(3), Q2 = BasicSeq::constant(2);
  EXPECT_EQ(variation_exact(P3, Q2, 1).v, 3);
  BasicSeq Q = BasicSeq::periodic(ints({3, 2}));
  for (Index t = 1; t <= 4; ++t) {
    VariationReport r = variation_exact(Q, Q, t);
    EXPECT_EQ(r.v, 2);
    EXPECT_FALSE(r.formula_path);
  }
}

TEST(Variation, FormulaMatchesBreakpointOracle) {
  std::mt19937_64 g(77);
  int cases = 0;
  for (int trial = 0; trial < 400; ++trial) {
    Index t = 2 + g() % 3;
    std::vector<Int> p, q;
    for (Index i = 0; i < t; ++i) {
      p.push_back(Int(2 + static_cast<int>(g() % 4)));
      q.push_back(Int(2 + static_cast<int>(g() % 4)));
    }
    if (p.back() == q.back()) continue;
    BasicSeq P = BasicSeq::explicit_(p, BasicSeq::constant(2)), Q = BasicSeq::explicit_(q, BasicSeq::constant(2));
    VariationReport r = variation_exact(P, Q, t);
    EXPECT_TRUE(r.formula_path);
    ASSERT_EQ(r.v, variation_oracle(P, Q, t)) << "p=" << detail::join_ints(p) << " q=" << detail::join_ints(q);
    EXPECT_LE(r.v, r.upper_bound);
    ++cases;
  }
  EXPECT_GT(cases, 250);
}

TEST(BoundedVariation, Verdicts) {
  EXPECT_EQ(bv_check(BasicSeq::constant(2), BasicSeq::constant(3), 200).verdict, BVVerdict::condition_met);
  EXPECT_EQ(bv_check(BasicSeq::constant(3), BasicSeq::constant(2), 200).verdict, BVVerdict::not_proven);
  EXPECT_EQ(bv_check(BasicSeq::constant(2), BasicSeq::constant(2), 200).verdict, BVVerdict::condition_met);
}

TEST(BoundedVariation, PartialSumsIncreaseTowardClosedForm) {
  // P = Q = 2: sum_k sum_{j>k} 2*4/2^j = sum_k 8/2^k = 8
  BVReport r = bv_check(BasicSeq::constant(2), BasicSeq::constant(2), 200);
  ASSERT_FALSE(r.double_sum_partials.empty());
  Rat prev = 0;
  for (const auto& [n, v] : r.double_sum_partials) {
    EXPECT_GE(v, prev);
    EXPECT_LT(v, 8);
    prev = v;
  }
  ASSERT_TRUE(r.tail_bound);
  EXPECT_GE(prev + *r.tail_bound, 8);
}

TEST(Monotone, WorkedWitness) {
  auto w = monotonicity_witness(BasicSeq::constant(5), BasicSeq::constant(3), {}, 10);
  ASSERT_TRUE(w);
  EXPECT_EQ(w->m, 1u);
  EXPECT_EQ(w->x, Rat(11, 25));
  EXPECT_EQ(w->y, Rat(3, 5));
  EXPECT_EQ(w->psi_x, Rat(7, 9));
  EXPECT_EQ(w->psi_y, Rat(2, 3));
}

TEST(Monotone, NoneWhenPNeverExceedsQ) {
  EXPECT_FALSE(monotonicity_witness(BasicSeq::constant(3), BasicSeq::affine(2, 1), ints({1}), 200));
}

TEST(Monotone, WitnessInEveryShallowCell) {
  BasicSeq P = BasicSeq::iid(2, 10, 7), Q = BasicSeq::iid(2, 10, 8);
  for (Index depth = 0; depth <= 3; ++depth) {
    std::vector<Rat> cells = cell_starts(P, depth);
    for (std::size_t i = 0; i < cells.size(); ++i) {
      std::vector<Int> cell;
      Rat r = cells[i];
      for (Index n = 1; n <= depth; ++n) {
        r *= Rat(P.at(n));
        cell.push_back(floor_of(r));
        r -= Rat(cell.back());
      }
      auto w = monotonicity_witness(P, Q, cell, 200);
      ASSERT_TRUE(w) << "depth " << depth << " cell " << i;
      EXPECT_LT(w->x, w->y);
      EXPECT_GT(w->psi_x, w->psi_y);
      EXPECT_EQ(psi_value(P, Q, w->x).value(), w->psi_x);
    }
  }
}

TEST(Monotone, InjectiveAndIncreasingWhenPAtMostQ) {
  BasicSeq P = BasicSeq::periodic(ints({2, 3, 3, 4})), Q = BasicSeq::periodic(ints({3, 3, 5, 4}));
  std::vector<Rat> xs = cell_starts(P, 4);
  Rat prev = -1;
  for (const auto& x : xs) {
    std::vector<Int> d;
    Rat r = x;
    for (Index n = 1; n <= 4; ++n) {
      r *= Rat(P.at(n));
      d.push_back(floor_of(r));
      r -= Rat(d.back());
    }
    Rat v = psi_of_digits(Q, d);
    EXPECT_GT(v, prev);
    prev = v;
  }
}

TEST(Holder, IdentityIsBounded) {
  BasicSeq Q = BasicSeq::constant(3);
  HolderReport r = holder_report(Q, Q, 2, Rat(1), 500);
  EXPECT_TRUE(r.hypothesis_ok);
  EXPECT_EQ(r.verdict, HolderVerdict::bounded_so_far);
}

TEST(Holder, NearIdentityRegimeIsBounded) {
  BasicSeq Q = BasicSeq::geometric(4, 2);
  BasicSeq P = BasicSeq::rule("q-1", [Q](Index n) -> Int { return Q.at(n) - 1; });
  HolderReport r = holder_report(P, Q, 0, Rat(3, 4), 2000);
  EXPECT_EQ(r.verdict, HolderVerdict::bounded_so_far);
}

TEST(Holder, ExponentialOverLinearDiverges) {
  HolderReport r = holder_report(BasicSeq::geometric(2, 2), BasicSeq::affine(1, 1), 1, Rat(1), 300);
  EXPECT_EQ(r.verdict, HolderVerdict::diverging);
}

TEST(Holder, SmallBasesReportHypothesis) {
  HolderReport r = holder_report(BasicSeq::constant(2), BasicSeq::constant(5), 1, Rat(1, 2), 100);
  EXPECT_FALSE(r.hypothesis_ok);
}

TEST(Integral, IdentityIsHalf) {
  BasicSeq Q = BasicSeq::periodic(ints({3, 5, 2}));
  for (Index t = 0; t <= 5; ++t) EXPECT_EQ(integral_approximant(Q, Q, t), Rat(1, 2));
}

TEST(Integral, MatchesTrapezoidOracle) {
  BasicSeq P = BasicSeq::explicit_(ints({3}), BasicSeq::constant(2)), Q = BasicSeq::constant(2);
  EXPECT_EQ(integral_approximant(P, Q, 1), trapezoid_oracle(P, Q, 1));
  std::mt19937_64 g(13);
  for (int trial = 0; trial < 60; ++trial) {
    Index t = 1 + g() % 4;
    BasicSeq A = BasicSeq::iid(2, 6, g()), B = BasicSeq::iid(2, 6, g());
    EXPECT_EQ(integral_approximant(A, B, t), trapezoid_oracle(A, B, t)) << trial;
  }
}

TEST(Integral, ConvergesWithinUniformBound) {
  BasicSeq P = BasicSeq::iid(2, 8, 1), Q = BasicSeq::iid(2, 8, 2);
  for (Index t = 1; t <= 12; ++t)
    EXPECT_LE(abs(integral_approximant(P, Q, t) - integral_approximant(P, Q, t + 1)), Rat(1) / Rat(pow2(t - 1)));
}

TEST(Grid, IdentityIsDiagonal) {
  BasicSeq Q = BasicSeq::constant(2);
  PsiGrid g = render_psi_grid(Q, Q, 500);
  for (Index i = 0; i < 500; ++i) EXPECT_EQ(g.rows[i], i);
}

TEST(Grid, NondecreasingWhenPAtMostQ) {
  PsiGrid g = render_psi_grid(BasicSeq::constant(2), BasicSeq::constant(3), 500);
  for (Index i = 1; i < 500; ++i) EXPECT_GE(g.rows[i], g.rows[i - 1]);
}

TEST(Grid, PixelErrorBound) {
  BasicSeq P = BasicSeq::geometric(2, 2), Q = BasicSeq::affine(1, 1);
  PsiGrid g = render_psi_grid(P, Q, 200, 64);
  for (Index i = 0; i < 200; ++i) {
    Rat exact_ish = approximant_eval(P, Q, 90, g.xs[i]);
    EXPECT_LE(abs(g.values[i] - exact_ish), Rat(1) / Rat(pow2(63)));
  }
}
