// Acceptance run: one PASS/FAIL line per criterion.

#include <cantor/cantor.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <numeric>
#include <sstream>

using namespace cantor;

namespace {

struct Outcome {
  bool ok = true;
  std::ostringstream note;
  void require(bool c, const std::string& what) {
    if (!c) {
      if (ok) note << "failed: ";
      else note << "; ";
      note << what;
      ok = false;
    }
  }
};

int failures = 0;

void criterion(int id, const char* name, const std::function<void(Outcome&)>& body, double time_limit = 0) {
  Outcome o;
  auto t0 = std::chrono::steady_clock::now();
  try {
    body(o);
  } catch (const std::exception& e) {
    o.require(false, std::string("exception: ") + e.what());
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (time_limit > 0) {
    std::ostringstream w;
    w << "took " << secs << " s, limit " << time_limit << " s";
    o.require(secs < time_limit, w.str());
  }
  if (!o.ok) ++failures;
  std::printf("%s %2d %s (%.2f s)%s%s\n", o.ok ? "PASS" : "FAIL", id, name, secs, o.note.str().empty() ? "" : " | ",
              o.note.str().c_str());
  std::fflush(stdout);
}

std::vector<Int> ints(std::initializer_list<long> v) { return {v.begin(), v.end()}; }

// left limit of psi at a terminating point for periodic (P,Q), summed as a geometric tail
Rat left_limit(const BasicSeq& P, const BasicSeq& Q, const std::vector<Int>& digits, Index L) {
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

// total variation of the level-t approximant, scaled by q_1...q_t, summed cell by cell
long variation_scaled(const std::vector<long>& p, const std::vector<long>& q) {
  const std::size_t t = p.size();
  std::vector<long> E(t, 0);
  long total = 0, prev_end = 0;
  bool first = true;
  for (;;) {
    long start = 0;
    for (std::size_t j = 0; j < t; ++j) start = start * q[j] + std::min(E[j], q[j] - 1);
    if (!first) total += std::labs(start - prev_end);
    total += 1;
    prev_end = start + 1;
    first = false;
    std::size_t j = t;
    while (j > 0 && ++E[j - 1] == p[j - 1]) E[--j] = 0;
    if (j == 0) break;
  }
  return total + prev_end;  // drop to psi(1) = 0
}

Rat brute_cells(const std::vector<long>& p, const std::vector<long>& q, const std::vector<long>& d) {
  std::vector<long> G(p.size(), 0);
  long hits = 0, total = 0;
  for (;;) {
    ++total;
    bool ok = true;
    for (std::size_t j = 0; j < p.size() && ok; ++j) ok = std::min(G[j], q[j] - 1) == d[j];
    if (ok) ++hits;
    std::size_t j = p.size();
    while (j > 0 && ++G[j - 1] == p[j - 1]) G[--j] = 0;
    if (j == 0) break;
  }
  return make_rat(Int(hits), Int(total));
}

std::vector<Int> vbw_by_definition(unsigned long b, unsigned long w) {
  std::vector<Int> out;
  Block V(w, Int(0));
  for (;;) {
    Rat reps = Rat(pow2(b * w)) * nu_mass(Int(b), V);
    for (Int c = 0; c < reps.get_num(); ++c) out.insert(out.end(), V.begin(), V.end());
    std::size_t i = w;
    while (i > 0 && V[i - 1] == Int(b)) V[--i] = 0;
    if (i == 0) break;
    V[i - 1] += 1;
  }
  return out;
}

BasicSeq seq_of(const std::vector<long>& v) { return BasicSeq::explicit_({v.begin(), v.end()}, BasicSeq::constant(2)); }

}  // namespace

int main() {
  criterion(1, "footnote counterexample, block (1) counts to 10^6", [](Outcome& o) {
    const Index N = 1000000;
    BasicSeq P = BasicSeq::constant(3), Q = BasicSeq::periodic(ints({3, 2}));
    DigitStream X = expand_rational(Rat(7, 8), P);
    DigitStream Y = psi_map(X, Q);
    // the image digits are the all-(q_n-1) tail; count on the canonical expansion of the value
    std::optional<Rat> v = exact_value(Y);
    o.require(v == Rat(1), "psi(7/8) != 1");
    DigitStream Yc = expand_rational(v.value_or(Rat(0)), Q);
    o.require(Yc.integer_part() == 1, "canonical image is not 1.000...");
    std::vector<Int> xd = X.digits(N), yd = Yc.digits(N);
    Index nx = 0, ny = 0, bad = 0;
    for (Index n = 1; n <= N; ++n) {
      if (xd[n - 1] != (n % 2 ? 2 : 1)) ++bad;
      if (xd[n - 1] == 1) ++nx;
      if (yd[n - 1] == 1) ++ny;
      if (nx != n / 2 || ny != 0) ++bad;
    }
    o.require(bad == 0, std::to_string(bad) + " positions disagree");
    o.note << "N(1,x)=" << nx << " N(1,psi x)=" << ny;
  }, 5.0);

  criterion(2, "chained psi block counts differ by O(1)", [](Outcome& o) {
    const Index N = 100000;
    std::vector<BasicSeq> chain = {BasicSeq::affine(2, 1), BasicSeq::affine(1, 1), BasicSeq::affine(2, 2)};
    long overall = 0;
    Index latest = 0, runs = 0;
    for (std::uint64_t seed = 11; seed <= 15; ++seed) {
      DigitStream X = iid_digit_stream(chain[0], seed);
      std::vector<Int> xd = X.digits(N + 1);
      for (Index j : {2u, 3u}) {
        std::vector<BasicSeq> qs(chain.begin(), chain.begin() + j);
        std::vector<Int> yd = compose_chain(qs, X).digits(N + 1);
        std::vector<long> diff(30, 0);
        long best = 0;
        Index best_at = 0;
        auto idx = [](const std::vector<Int>& d, Index m, Index k) -> int {
          int v = 0;
          for (Index i = 0; i < k; ++i) {
            if (d[m - 1 + i] > 4) return -1;
            v = v * 5 + static_cast<int>(d[m - 1 + i].get_si());
          }
          return k == 1 ? v : 5 + v;
        };
        for (Index n = 1; n <= N; ++n) {
          for (Index k = 1; k <= 2; ++k) {
            int a = idx(xd, n, k), b = idx(yd, n, k);
            if (a >= 0) --diff[a];
            if (b >= 0) ++diff[b];
          }
          for (long d : diff)
            if (std::labs(d) > best) best = std::labs(d), best_at = n;
        }
        // cross-check the final tallies against the library counter
        BlockStats sx = count_blocks(X, all_blocks(2, 5), N, std::nullopt, false);
        BlockStats sy = count_blocks(compose_chain(qs, X), all_blocks(2, 5), N, std::nullopt, false);
        for (const auto& B : all_blocks(2, 5)) {
          long d = static_cast<long>(sy.counts[B]) - static_cast<long>(sx.counts[B]);
          o.require(d == diff[idx(B, 1, 2)], "tally mismatch for " + block_to_string(B));
        }
        o.require(best_at < 10000, "max first reached at n=" + std::to_string(best_at));
        overall = std::max(overall, best);
        latest = std::max(latest, best_at);
        ++runs;
      }
    }
    o.note << runs << " runs, max difference " << overall << ", last reached at n=" << latest;
  });

  criterion(3, "variation formula equals breakpoint oracle, entries 2..5, t=2..4", [](Outcome& o) {
    Index cases = 0, bad = 0;
    for (Index t = 2; t <= 4; ++t) {
      std::vector<long> p(t, 2), q(t, 2);
      for (;;) {
        if (p[t - 1] != q[t - 1]) {
          std::vector<Int> pi(p.begin(), p.end()), qi(q.begin(), q.end());
          long qq = 1;
          for (long v : q) qq *= v;
          if (variation_formula(pi, qi) != make_rat(Int(variation_scaled(p, q)), Int(qq))) ++bad;
          ++cases;
        }
        // odometer over (p, q) in {2..5}^{2t}
        Index i = 2 * t;
        while (i > 0) {
          long& v = i > t ? q[i - t - 1] : p[i - 1];
          if (++v <= 5) break;
          v = 2;
          --i;
        }
        if (i == 0) break;
      }
    }
    o.require(bad == 0, std::to_string(bad) + " mismatches");
    o.note << cases << " cases";
  }, 60.0);

  criterion(4, "continuity classifier equals one-sided limit oracle", [](Outcome& o) {
    {
      BasicSeq P = BasicSeq::constant(5), Q = BasicSeq::constant(3);
      ContinuityReport r = classify_continuity(P, Q, expand_rational(Rat(3, 5), P));
      o.require(r.jump && *r.jump == Rat(-1, 3) && r.set_tag == SetTag::A, "jump at 3/5 with P=5, Q=3");
    }
    {
      BasicSeq P = BasicSeq::constant(2), Q = BasicSeq::constant(10);
      ContinuityReport r = classify_continuity(P, Q, expand_rational(Rat(1, 2), P));
      o.require(r.jump && *r.jump == Rat(4, 45) && r.set_tag == SetTag::B, "jump at 1/2 with P=2, Q=10");
    }
    std::mt19937_64 g(2024);
    auto periodic = [&](Index len) {
      std::vector<Int> v;
      for (Index i = 0; i < len; ++i) v.push_back(from_u64(2 + g() % 6));
      return BasicSeq::periodic(v);
    };
    Index points = 0, jumps = 0, bad = 0;
    for (int pair = 0; pair < 20; ++pair) {
      Index lp = 1 + g() % 2, lq = 1 + g() % 2;
      BasicSeq P = periodic(lp), Q = periodic(lq);
      for (int k = 0; k < 5; ++k) {
        Index t = 1 + g() % 4;
        std::vector<Int> d;
        for (Index j = 1; j <= t; ++j) d.push_back(from_u64(g()) % P.at(j));
        if (d.back() == 0) d.back() = 1;
        ContinuityReport r = classify_continuity(P, Q, DigitStream::from_digits(P, d));
        Rat jump = psi_of_digits(Q, d) - left_limit(P, Q, d, std::lcm(lp, lq));
        ContinuityStatus expect = jump == 0 ? ContinuityStatus::continuous : ContinuityStatus::jump;
        if (!r.jump || *r.jump != jump || r.status != expect) ++bad;
        if (jump != 0) ++jumps;
        ++points;
      }
    }
    o.require(bad == 0, std::to_string(bad) + " disagreements");
    o.note << points << " points, " << jumps << " jumps";
  });

  criterion(5, "approximant uniform bound 2^-(t-1) on 10^3-point grids", [](Outcome& o) {
    std::mt19937_64 g(5);
    double worst = 0;
    for (int trial = 0; trial < 5; ++trial) {
      BasicSeq P = BasicSeq::iid(2, 10, g()), Q = BasicSeq::iid(2, 10, g());
      for (Index t : {4u, 8u, 16u}) {
        Rat bound = Rat(1) / Rat(pow2(t - 1));
        for (Index i = 0; i < 1000; ++i) {
          Rat x = make_rat(2 * from_u64(i) + 1, 2000);
          Rat d = abs(approximant_eval(P, Q, t, x) - approximant_eval(P, Q, t + 20, x));
          worst = std::max(worst, Rat(d / bound).get_d());
          if (d > bound) o.require(false, "bound exceeded at t=" + std::to_string(t));
        }
      }
    }
    o.note << "worst error/bound " << worst;
  });

  criterion(6, "Wegmann closed forms and level-set cylinder measures", [](Outcome& o) {
    double worst = 0;
    for (auto [a, b] : std::vector<std::pair<long, long>>{{2, 3}, {2, 10}, {5, 7}, {3, 64}}) {
      RestrictionSpec I{"const", [a = a](Index) { return Int(a); }};
      WegmannReport r = wegmann_estimate(BasicSeq::constant(b), I, 10000);
      double err = std::abs(final_value(r.dim) - std::log(double(a)) / std::log(double(b)));
      worst = std::max(worst, err);
      o.require(err < 1e-9, "log " + std::to_string(a) + "/log " + std::to_string(b));
    }
    std::mt19937_64 g(44);
    Index bad = 0;
    for (int trial = 0; trial < 25; ++trial) {
      const Index depth = 8;
      std::vector<long> p(depth), q(depth);
      for (Index j = 0; j < depth; ++j) {
        p[j] = 2 + static_cast<long>(g() % 6);
        q[j] = 2 + static_cast<long>(g() % 6);
      }
      BasicSeq P = seq_of(p), Q = seq_of(q);
      Index M = 1 + g() % 5;
      std::vector<Int> wd(M);
      for (Index j = 0; j < M; ++j) wd[j] = from_u64(g() % q[j]);
      if (wd.back() == 0) wd.back() = 1;
      LevelSetReport r = level_set_report(P, Q, DigitStream::from_digits(Q, wd), depth);
      std::vector<long> fin(depth, 0), tail(depth);
      for (Index j = 0; j < depth; ++j) {
        fin[j] = j < M ? wd[j].get_si() : 0;
        tail[j] = j + 1 < M ? wd[j].get_si() : (j + 1 == M ? wd[j].get_si() - 1 : q[j] - 1);
      }
      if (r.finite_branch_partial != brute_cells(p, q, fin) || r.measure_partial != brute_cells(p, q, tail)) ++bad;
    }
    o.require(bad == 0, std::to_string(bad) + " cylinder mismatches");
    o.note << "worst closed-form error " << worst << ", 25 cylinder sweeps";
  });

  criterion(7, "construction identities for V_{b,w} and the RDN stages", [](Outcome& o) {
    for (unsigned long b = 1; b <= 64; ++b) {
      Int per_digit = 0;  // sum_j 2^b nu_b(j)
      for (unsigned long j = 0; j <= b; ++j) per_digit += Int(Rat(Rat(pow2(b)) * nu_digit_mass(Int(b), Int(j))).get_num());
      for (unsigned long w = 1; w <= 64; ++w)
        if (Int(w) * pow_int(per_digit, w) != vbw_length(b, w) || vbw_length(b, w) != Int(w) * pow2(b * w))
          o.require(false, "length b=" + std::to_string(b) + " w=" + std::to_string(w));
    }
    for (unsigned long b = 1; b <= 4; ++b)
      for (unsigned long w = 1; w <= 4; ++w) {
        std::vector<Int> full = vbw_by_definition(b, w);
        if (vbw_materialize(b, w) != full) o.require(false, "materialize " + std::to_string(b) + "," + std::to_string(w));
        VbwIndexer ix(b, w);
        for (std::size_t i = 0; i < full.size(); ++i)
          if (ix.digit(from_u64(i + 1)) != full[i]) {
            o.require(false, "unrank " + std::to_string(b) + "," + std::to_string(w));
            break;
          }
        for (const auto& V : all_blocks(w, b + 1)) {
          Int r = vbw_rank(b, V);
          VbwLocation loc = vbw_locate(b, w, r + 1);
          std::size_t at = r.get_ui();
          bool same = loc.block == V && loc.copy == 0 && loc.offset == 0 &&
                      std::equal(V.begin(), V.end(), full.begin() + static_cast<std::ptrdiff_t>(at));
          if (!same) o.require(false, "rank of " + block_to_string(V));
        }
      }
    for (unsigned long i = 2; i <= 12; ++i) {
      unsigned long c = i * i * i;
      Int W = vbw_length(i, i * i), light = Int(i * i) * pow2(c - i);
      Int heavy = Int(i * i) * pow2(c) - Int(i * i * i) * pow2(c - i);
      o.require(W == Int(i * i) * pow2(c) && light * pow2(i) == W, "stage size i=" + std::to_string(i));
      o.require(heavy == W - Int(i) * light && heavy == rdn_remaining(i), "heavy count i=" + std::to_string(i));
      o.require(Int(i) * rdn_class_size(i) == heavy, "class size i=" + std::to_string(i));
    }
    std::vector<Int> W2 = vbw_materialize(2, 4);
    o.require(W2.size() == 1024, "|W_2| != 1024");
    std::map<Int, Index> wc;
    std::map<Index, Index> cls;
    for (Index t = 1; t <= W2.size(); ++t) {
      RdnEntry e = rdn_stage(2, from_u64(t));
      if (e.w != W2[t - 1]) o.require(false, "stage 2 digit at " + std::to_string(t));
      ++wc[e.w];
      if (e.w == 2) ++cls[e.cls];
    }
    o.require(wc[Int(0)] == 256 && wc[Int(1)] == 256 && wc[Int(2)] == 512, "stage 2 digit counts");
    o.require(cls[1] == 256 && cls[2] == 256 && rdn_remaining(2) == 512, "stage 2 classes");
    for (unsigned long i = 2; i <= 64; ++i) {
      Int v = Int(i * i) * pow2(i * i * i) - Int(i * i * i) * pow2(i * i * i - i);
      if (v % Int(i) != 0 || v != rdn_remaining(i)) o.require(false, "divisibility i=" + std::to_string(i));
    }
    for (std::int64_t i = 2; i <= 2000; ++i)
      for (std::int64_t a = 1; a <= i - 1; ++a) {
        std::int64_t f = i * i / a;
        if (!(a * f <= i * i && i * i < (a + 1) * f) || delta_cell(make_rat(Int(i), Int(f)), Int(i)) != a) {
          o.require(false, "inDelta i=" + std::to_string(i) + " a=" + std::to_string(a));
          i = 2001;
          break;
        }
      }
  });

  criterion(8, "RDN digit ratios share Delta cells; DNnotRN orbit bound 1/q_n", [](Outcome& o) {
    RdnStreams r = rdn_stream();
    Index misaligned = 0;
    for (Index n = 1; n <= 100000; ++n) {
      Int i = from_u64(r.stage_of(n));
      if (delta_cell(make_rat(r.psi_zeta.digit(n), r.Q.at(n)), i) != delta_cell(make_rat(r.kappa.digit(n), r.K.at(n)), i))
        ++misaligned;
    }
    o.require(misaligned == 0, std::to_string(misaligned) + " misaligned positions");
    BasicSeq Q = BasicSeq::affine(3, 1);
    DigitStream x = iid_digit_stream(Q, 4);
    auto gaps = dnnotrn_orbit_gaps(Q, x, 10000);
    Index over_q = 0, over_q1 = 0, first_over = 0;
    for (Index n = 1; n <= 10000; ++n) {
      double q = Q.at(n).get_d();
      if (gaps[n].lo > 1.0 / q) {
        ++over_q;
        if (!first_over) first_over = n;
      }
      if (gaps[n].hi >= 1.0 / (q - 1)) ++over_q1;
    }
    o.require(over_q == 0, "orbit gap exceeds 1/q_n at " + std::to_string(over_q) + " of 10^4 indices (first n=" +
                               std::to_string(first_over) + "); stays below 1/(q_n-1) at " +
                               std::to_string(10000 - over_q1) + " of 10^4");
  });

  criterion(9, "log10 of the RDN range measure", [](Outcome& o) {
    Log10Value v = rdn_log10_measure();
    o.require(v.exponent == 317, "exponent " + std::to_string(v.exponent));
    o.require(std::abs(v.mantissa + 1.3095) <= 0.013095, "mantissa off by more than 1%");
    o.note << v.mantissa << "e" << v.exponent;
  }, 1.0);

  criterion(10, "star discrepancy oracle, uniform grid, golden digits", [](Outcome& o) {
    std::mt19937_64 g(99);
    for (int trial = 0; trial < 100; ++trial) {
      Index n = 1 + g() % 200;
      Int den = from_u64(2 + g() % 50);
      std::vector<Rat> pts;
      for (Index i = 0; i < n; ++i) pts.push_back(make_rat(from_u64(g()) % den, den));
      Rat best = 0;
      auto consider = [&](const Rat& t, bool inclusive) {
        Index c = 0;
        for (const auto& x : pts)
          if (x < t || (inclusive && x == t)) ++c;
        Rat d = abs(make_rat(from_u64(c), from_u64(n)) - t);
        if (d > best) best = d;
      };
      for (const auto& x : pts) consider(x, false), consider(x, true);
      consider(Rat(1), false);
      if (star_discrepancy(pts) != best) o.require(false, "oracle mismatch in trial " + std::to_string(trial));
    }
    for (Index N = 1; N <= 500; ++N) {
      std::vector<Rat> grid;
      for (Index k = 0; k < N; ++k) grid.push_back(make_rat(from_u64(k), from_u64(N)));
      if (star_discrepancy(grid) != make_rat(1, from_u64(N))) o.require(false, "grid N=" + std::to_string(N));
    }
    UdReport r = ud_report(golden_stream(BasicSeq::affine(3, 1)), UdMode::digit_ratio, 10000, {10000});
    double d = r.checkpoints.back().dstar.get_d();
    o.require(d < 0.02, "golden discrepancy " + std::to_string(d));
    o.note << "golden D* at 10^4 = " << d;
  });

  criterion(11, "multifractal witness with p_n=2^n, q_n=n+1", [](Outcome& o) {
    BasicSeq P = BasicSeq::geometric(2, 2), Q = BasicSeq::affine(1, 1);
    MultifractalReport h = multifractal_witness(P, Q, Rat(1, 2), 1, 10000);
    double L = final_value(h.dim_L), S = final_value(h.dim_S);
    o.require(h.dim_L.checkpoints.back().n == 10000, "last checkpoint is not 10^4");
    o.require(std::abs(L - 0.5) <= 0.05 && std::abs(S - 0.5) <= 0.05, "alpha=1/2 outside 0.05");
    MultifractalReport z = multifractal_witness(P, Q, 0, 1, 10000);
    for (const auto& c : z.dim_L.checkpoints)
      if (c.n > 1 && !(c.num_log.is_exact_zero() && c.value.mid() == 0.0))
        o.require(false, "alpha=0 nonzero at n=" + std::to_string(c.n));
    o.note << "dim_L " << L << ", dim_S " << S;
  });

  criterion(12, "telescoped level-measure sum within tail bound at K=60", [](Outcome& o) {
    const Index K = 60;
    for (auto [name, P] : std::vector<std::pair<std::string, BasicSeq>>{{"2^n", BasicSeq::geometric(2, 2)},
                                                                        {"4^n", BasicSeq::geometric(4, 4)}}) {
      BasicSeq Q = BasicSeq::constant(2);
      LevelMeasureSum r = level_measure_sum(P, Q, K);
      Rat prod = 1, series = 0;
      for (Index j = 1; j <= K; ++j) {
        Rat a = make_rat(Q.at(j) - 1, P.at(j));
        series += a * prod;
        prod *= Rat(1) - a;
      }
      o.require(r.telescoped == Rat(1) - prod, name + ": product mismatch");
      o.require(r.partial == series, name + ": series mismatch");
      o.require(r.tail_bound.has_value(), name + ": no tail bound");
      if (r.tail_bound) {
        o.require(abs(r.partial - r.telescoped) <= *r.tail_bound, name + ": partial vs product");
        LevelMeasureSum deep = level_measure_sum(P, Q, K + 60);
        o.require(abs(deep.telescoped - r.telescoped) <= *r.tail_bound, name + ": truncation beyond bound");
      }
      o.note << name << " " << r.telescoped.get_d() << "; ";
    }
  });

  criterion(13, "IID product-measure proxies", [](Outcome& o) {
    const Index N = 100000;
    BasicSeq P = sample_iid({2, 10, 1}), Q = sample_iid({2, 10, 2});
    BirkhoffReport r = birkhoff_report(P, Q, N);
    double m1 = 0, m2 = 0;
    for (int v = 2; v <= 10; ++v) m1 += std::log(v) / 9, m2 += std::log(v) * std::log(v) / 9;
    double sigma = std::sqrt((m2 - m1 * m1) / N);
    double got = r.checkpoints.back().mean_log_q;
    o.require(std::abs(got - m1) <= 3 * sigma, "Birkhoff mean of log q outside 3 sigma");
    BirkhoffReport e = birkhoff_report(sample_iid({3, 10, 1}), sample_iid({3, 10, 2}), N);
    o.require(e.checkpoints.back().running_min < -10, "running minimum did not reach -10");
    o.require(r.count_p_less >= 1000 && r.count_p_greater >= 1000, "p<q or p>q too rare");
    o.note << "mean " << got << " vs " << m1 << " (sigma " << sigma << "), running min "
           << e.checkpoints.back().running_min << ", p<q " << r.count_p_less << ", p>q " << r.count_p_greater;
  });

  std::printf("%d criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
