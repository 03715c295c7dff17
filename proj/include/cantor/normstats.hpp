#pragma once
// normstats.hpp - block counts, normality ratios, exact star discrepancy,
// uniform distribution reports and accumulation-set estimates.

#include "digitstream.hpp"

#include <map>
#include <set>

namespace cantor {

using Block = std::vector<Int>;

inline std::string block_to_string(const Block& b) { return "(" + detail::join_ints(b) + ")"; }

struct BlockStats {
  Index n = 0;
  std::map<Block, Index> counts;
  std::map<Index, Rat> qnk;               // k -> Q_n^{(k)}
  std::optional<std::vector<Index>> positions;
};

// Digits 1..n of D as a vector (index 0 holds digit 1).
inline std::vector<Int> digit_prefix(const DigitStream& D, Index n) { return D.digits(n); }

// N_{M,n}(B, x): occurrences of B starting at a position m <= n (m in M when given).
inline BlockStats count_blocks(const DigitStream& D, const std::vector<Block>& blocks, Index n,
                               std::optional<std::vector<Index>> M = std::nullopt, bool with_qnk = true) {
  if (n == 0) throw std::invalid_argument("count_blocks: n must be >= 1");
  Index kmax = 0;
  std::set<Index> ks;
  for (const auto& b : blocks) {
    if (b.empty()) throw std::invalid_argument("count_blocks: empty block");
    kmax = std::max<Index>(kmax, b.size());
    ks.insert(b.size());
  }
  std::vector<Int> d = D.digits(n + kmax);
  BlockStats st;
  st.n = n;
  st.positions = M;
  auto match = [&](const Block& b, Index m) {
    for (Index i = 0; i < b.size(); ++i)
      if (d[m - 1 + i] != b[i]) return false;
    return true;
  };
  for (const auto& b : blocks) {
    Index c = 0;
    if (M) {
      for (Index m : *M) {
        if (m == 0 || m > n) continue;
        if (match(b, m)) ++c;
      }
    } else {
      for (Index m = 1; m <= n; ++m)
        if (match(b, m)) ++c;
    }
    st.counts[b] = c;
  }
  if (with_qnk && !ks.empty()) {
    PrefixProducts pp = prefix_products(D.base(), n, ks);
    for (const auto& [k, v] : pp.qnk) st.qnk[k] = v;
  }
  return st;
}

// Counts for every block over digits at positions 1..n in a single pass;
// useful when many blocks of the same length are needed.
inline std::map<Block, Index> count_all_blocks(const std::vector<Int>& d, Index k, Index n) {
  std::map<Block, Index> out;
  for (Index m = 1; m <= n && m + k - 1 <= d.size(); ++m) {
    Block b(d.begin() + static_cast<std::ptrdiff_t>(m - 1), d.begin() + static_cast<std::ptrdiff_t>(m - 1 + k));
    ++out[b];
  }
  return out;
}

inline std::vector<Block> all_blocks(Index k, Index b) {
  std::vector<Block> out;
  Block cur(k, Int(0));
  for (;;) {
    out.push_back(cur);
    Index i = k;
    while (i > 0) {
      --i;
      if (++cur[i] < b) break;
      cur[i] = 0;
      if (i == 0) return out;
    }
    if (k == 0) return out;
  }
}

struct NormalityEntry {
  Block block;
  Index count = 0;
  Rat ratio;  // N / Q_n^{(k)}
};

struct NormalityReport {
  Index n = 0, k = 0, digit_bound = 0;
  Rat qnk;
  std::vector<NormalityEntry> entries;
  // pairwise[i][j] = N(B_i)/N(B_j); nullopt marks a zero denominator (0/0 or c/0)
  std::vector<std::vector<std::optional<Rat>>> pairwise;
};

inline NormalityReport normality_report(const DigitStream& D, Index k, Index b, Index n, bool with_matrix = true) {
  if (k == 0 || b == 0) throw std::invalid_argument("normality_report: k and b must be >= 1");
  NormalityReport r;
  r.n = n;
  r.k = k;
  r.digit_bound = b;
  std::vector<Block> blocks = all_blocks(k, b);
  std::vector<Int> d = D.digits(n + k);
  auto counts = count_all_blocks(d, k, n);
  PrefixProducts pp = prefix_products(D.base(), n, {k});
  r.qnk = pp.order(k);
  if (r.qnk <= 0) throw std::domain_error("normality_report: Q_n^{(k)} must be positive");
  for (const auto& B : blocks) {
    auto it = counts.find(B);
    Index c = it == counts.end() ? 0 : it->second;
    r.entries.push_back({B, c, Rat(from_u64(c)) / r.qnk});
  }
  if (with_matrix) {
    r.pairwise.resize(r.entries.size());
    for (std::size_t i = 0; i < r.entries.size(); ++i) {
      for (std::size_t j = 0; j < r.entries.size(); ++j) {
        if (r.entries[j].count == 0) r.pairwise[i].push_back(std::nullopt);
        else r.pairwise[i].push_back(make_rat(from_u64(r.entries[i].count), from_u64(r.entries[j].count)));
      }
    }
  }
  return r;
}

// ---------------------------------------------------------------------------
// Star discrepancy D*_N = max_i max(i/N - x_(i), x_(i) - (i-1)/N).

inline Rat star_discrepancy(std::vector<Rat> points) {
  if (points.empty()) throw std::invalid_argument("star_discrepancy: empty point set");
  for (const auto& p : points)
    if (p < 0 || p >= 1) throw std::invalid_argument("star_discrepancy: point outside [0,1): " + to_string(p));
  std::sort(points.begin(), points.end());
  const Int N = from_u64(points.size());
  Rat best = 0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    Int ii = from_u64(i + 1);
    Rat a = make_rat(ii, N) - points[i];
    Rat b = points[i] - make_rat(ii - 1, N);
    if (a > best) best = a;
    if (b > best) best = b;
  }
  return best;
}

enum class UdMode { T_orbit, digit_ratio };
inline std::string to_string(UdMode m) { return m == UdMode::T_orbit ? "T_orbit" : "digit_ratio"; }

struct UdCheckpoint {
  Index n = 0;
  Rat dstar;
  Rat err;                 // enclosure error bar (0 when every point is exact)
  double salat_mean = 0;   // (1/n) sum 1/q_j, reported in digit_ratio mode
};

struct UdReport {
  UdMode mode = UdMode::digit_ratio;
  std::vector<UdCheckpoint> checkpoints;
};

// Points of the selected sequence for m = 1..n. In T_orbit mode the m-th point
// is T_{Q,m-1}(x); exact when the stream knows its remainders, otherwise the
// midpoint of a depth-limited enclosure (half-width goes into the error bar).
inline UdReport ud_report(const DigitStream& D, UdMode mode, Index n, std::vector<Index> checkpoints = {},
                          Index tail_depth = 40) {
  if (n == 0) throw std::invalid_argument("ud_report: n must be >= 1");
  if (checkpoints.empty()) checkpoints = default_checkpoints(n);
  std::sort(checkpoints.begin(), checkpoints.end());
  UdReport r;
  r.mode = mode;
  std::vector<Rat> pts;
  pts.reserve(n);
  Rat err = 0;
  double inv_q_sum = 0;
  std::size_t ci = 0;
  for (Index m = 1; m <= n; ++m) {
    Int q = D.q(m);
    inv_q_sum += 1.0 / q.get_d();
    if (mode == UdMode::digit_ratio) {
      pts.push_back(make_rat(D.digit(m), q));
    } else {
      Index s = m - 1;
      std::optional<Rat> exact = D.remainder(s);
      if (exact) {
        pts.push_back(*exact);
      } else {
        IntervalEnclosure e = shift_T(D, s, tail_depth);
        Rat mid = e.mid();
        if (mid >= 1) mid = e.lo;
        pts.push_back(mid);
        Rat h = e.width() / 2;
        if (h > err) err = h;
      }
    }
    while (ci < checkpoints.size() && checkpoints[ci] == m) {
      r.checkpoints.push_back({m, star_discrepancy(pts), err, inv_q_sum / static_cast<double>(m)});
      ++ci;
    }
  }
  return r;
}

// E_n = floor(theta_n q_n) with theta_n = frac(n (sqrt 5 - 1)/2), exactly.
inline Int golden_digit(Index n, const Int& q) {
  // floor(c (n sqrt5 - n)/2) for an integer c >= 1; c n sqrt5 is irrational for n >= 1
  auto floor_scaled = [n](const Int& c) {
    Int cn = c * from_u64(n);
    Int sq = 5 * cn * cn, a;
    mpz_sqrt(a.get_mpz_t(), sq.get_mpz_t());
    Int v = a - cn, out;
    mpz_fdiv_q_2exp(out.get_mpz_t(), v.get_mpz_t(), 1);
    return out;
  };
  if (n == 0) return 0;
  // floor(q {y}) = floor(q y) - q floor(y)
  return floor_scaled(q) - q * floor_scaled(Int(1));
}

inline DigitStream golden_stream(const BasicSeq& Q) {
  return DigitStream::from_rule(Q, [Q](Index n) { return golden_digit(n, Q.at(n)); });
}

struct AccumulationEstimate {
  Index grid = 0;
  Index window_from = 0, window_to = 0;  // positions scanned
  std::set<Index> cells;                 // cell c covers [c/grid, (c+1)/grid)
};

inline AccumulationEstimate accumulation_estimate(const DigitStream& D, Index n, Index grid) {
  if (grid < 2) throw std::invalid_argument("accumulation_estimate: grid must be >= 2");
  if (n == 0) throw std::invalid_argument("accumulation_estimate: n must be >= 1");
  AccumulationEstimate a;
  a.grid = grid;
  a.window_from = n / 2 + 1;
  a.window_to = n;
  Int g = from_u64(grid);
  for (Index m = a.window_from; m <= n; ++m) {
    Int c = D.digit(m) * g / D.q(m);
    if (c >= g) c = g - 1;
    a.cells.insert(to_u64(c));
  }
  return a;
}

}  // namespace cantor
