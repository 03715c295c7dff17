// cantor_cli - command-line front end for the Q-Cantor toolkit.

#include <cantor/cantor.hpp>

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

using namespace cantor;

namespace {

enum Exit { ok = 0, spec_error = 2, hypothesis_violation = 3, undecided = 4 };

std::string read_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw SpecError(path, "cannot open file");
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

// "@file" reads the spec from a file; anything else is inline JSON.
std::string spec_text(const std::string& s) { return !s.empty() && s[0] == '@' ? read_file(s.substr(1)) : s; }

struct Common {
  std::string P, Q, x;
  std::string spec_file;
  Index horizon = 1000;
  std::string out;
  std::string format;

  Json file;
  void load() {
    if (spec_file.empty()) return;
    file = detail::parse_text(read_file(spec_file));
    if (!file.is_object()) throw SpecError(spec_file, "spec file must hold a JSON object");
  }
  std::string pick(const std::string& flag, const char* key) const {
    if (!flag.empty()) return spec_text(flag);
    if (file.contains(key)) return file.at(key).dump();
    throw SpecError(std::string("--") + key, "required spec missing");
  }
  BasicSeq seqP() const { return parse_seq_spec(pick(P, "P")); }
  BasicSeq seqQ() const { return parse_seq_spec(pick(Q, "Q")); }
  DigitStream point(const BasicSeq& base) const {
    if (!x.empty()) return parse_digit_spec(spec_text(x), base);
    if (file.contains("x")) return parse_digit_spec(file.at("x"), base);
    throw SpecError("--x", "required point missing");
  }
};

class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty() && path != "-") {
      file_.open(path);
      if (!file_) throw std::runtime_error("cannot write " + path);
    }
  }
  std::ostream& os() { return file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout; }

 private:
  std::ofstream file_;
};

// The first allowed format is the default.
void need_format(std::string& f, std::initializer_list<const char*> allowed) {
  if (f.empty()) f = *allowed.begin();
  for (const char* a : allowed)
    if (f == a) return;
  std::string list;
  for (const char* a : allowed) list += std::string(list.empty() ? "" : ", ") + a;
  throw SpecError("--format", "\"" + f + "\" not supported here (use " + list + ")");
}

Json digits_json(const DigitStream& D, Index n) {
  Json a = Json::array();
  for (Index j = 1; j <= n; ++j) a.push_back({{"n", j}, {"q_n", D.q(j).get_str()}, {"E_n", D.digit(j).get_str()}});
  return a;
}

std::vector<Int> parse_int_list(const std::string& s, const char* what) {
  std::vector<Int> v;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    Int x;
    if (tok.empty() || x.set_str(tok, 10) != 0) throw SpecError(what, "bad integer list \"" + s + "\"");
    v.push_back(x);
  }
  return v;
}

Rat parse_rat(const std::string& s, const char* what) {
  try {
    return rat_from_string(s);
  } catch (const std::exception&) {
    throw SpecError(what, "bad rational \"" + s + "\"");
  }
}

void write_dim_csv(std::ostream& os, const DimEstimate& e) {
  os << "n,ratio_num_log,ratio_den_log,value\n";
  for (const auto& c : e.checkpoints)
    os << c.n << ',' << (c.empty ? std::string("-inf") : format_double(c.num_log.mid())) << ','
       << format_double(c.den_log.mid()) << ',' << (c.empty ? std::string("-inf") : format_double(c.value.mid())) << '\n';
}

void emit_json(Output& out, const Json& j) { out.os() << j.dump(2) << '\n'; }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Q-Cantor series toolkit"};
  app.require_subcommand(1);
  Common c;
  int rc = ok;

  auto common = [&](CLI::App* s, bool p, bool q, bool x) {
    if (p) s->add_option("--P", c.P, "P base spec (JSON or @file)");
    if (q) s->add_option("--Q", c.Q, "Q base spec (JSON or @file)");
    if (x) s->add_option("--x", c.x, "point: rational like 7/8, digit spec JSON, or @file");
    s->add_option("--spec-file", c.spec_file, "JSON object with P, Q, x entries");
    s->add_option("-n,--horizon", c.horizon, "horizon")->check(CLI::PositiveNumber);
    s->add_option("-o,--out", c.out, "output path (default stdout)");
    s->add_option("-f,--format", c.format, "output format (csv, json or pgm where supported)");
  };

  // digits
  auto* s_digits = app.add_subcommand("digits", "digit expansion of x over Q");
  common(s_digits, false, true, true);
  s_digits->callback([&] {
    c.load();
    need_format(c.format, {"csv", "json"});
    BasicSeq Q = c.seqQ();
    DigitStream D = c.point(Q);
    Output out(c.out);
    if (c.format == "csv") return write_digits_csv(out.os(), D, c.horizon);
    Json j;
    j["base"] = Q.describe();
    j["integer_part"] = D.integer_part().get_str();
    j["canonicity"] = to_string(D.canonicity());
    if (auto t = D.terminates_at()) j["terminates_at"] = *t;
    j["digits"] = digits_json(D, c.horizon);
    emit_json(out, j);
  });

  // psi-eval
  bool continuity = false;
  Index tail_horizon = 200;
  auto* s_eval = app.add_subcommand("psi-eval", "image of x (read over P) under psi_{P,Q}");
  common(s_eval, true, true, true);
  s_eval->add_flag("--continuity", continuity, "classify left/right continuity at a terminating x");
  s_eval->add_option("--tail-horizon", tail_horizon, "tail horizon for the continuity jump");
  s_eval->callback([&] {
    c.load();
    need_format(c.format, {"csv", "json"});
    BasicSeq P = c.seqP(), Q = c.seqQ();
    DigitStream X = c.point(P);
    DigitStream Y = psi_map(X, Q);
    Output out(c.out);
    std::optional<ContinuityReport> cr;
    if (continuity) {
      cr = classify_continuity(P, Q, X, tail_horizon);
      if (cr->status == ContinuityStatus::undecided) rc = undecided;
    }
    if (c.format == "csv") {
      out.os() << "n,p_n,E_n,q_n,F_n\n";
      for (Index j = 1; j <= c.horizon; ++j)
        out.os() << j << ',' << P.at(j).get_str() << ',' << X.digit(j).get_str() << ',' << Q.at(j).get_str() << ','
                 << Y.digit(j).get_str() << '\n';
      return;
    }
    Json j;
    IntervalEnclosure ex = enclose_prefix(X, c.horizon), ey = enclose_prefix(Y, c.horizon);
    j["x_enclosure"] = {to_string(ex.lo), to_string(ex.hi)};
    j["psi_enclosure"] = {to_string(ey.lo), to_string(ey.hi)};
    if (auto v = exact_value(Y)) j["psi_exact"] = to_string(*v);
    if (cr) {
      Json k;
      k["t"] = cr->t;
      k["point"] = cr->point;
      k["side"] = cr->side;
      k["status"] = to_string(cr->status);
      if (cr->jump) k["jump"] = to_string(*cr->jump);
      k["jump_bracket"] = {to_string(cr->jump_lo), to_string(cr->jump_hi)};
      k["set_tag"] = to_string(cr->set_tag);
      k["right_side"] = "continuous";
      j["continuity"] = k;
    }
    emit_json(out, j);
  });

  // psi-plot
  Index pixels = 500, depth = 64;
  auto* s_plot = app.add_subcommand("psi-plot", "pixel grid of the psi_{P,Q} graph");
  common(s_plot, true, true, false);
  s_plot->add_option("--pixels", pixels, "grid resolution")->check(CLI::Range(2, 100000));
  s_plot->add_option("--depth", depth, "approximant level");
  s_plot->callback([&] {
    c.load();
    need_format(c.format, {"csv", "pgm"});
    PsiGrid g = render_psi_grid(c.seqP(), c.seqQ(), pixels, depth);
    Output out(c.out);
    if (c.format == "csv") write_grid_csv(out.os(), g);
    else write_grid_pgm(out.os(), g);
  });

  // normality
  Index k = 1, digit_bound = 2;
  std::string ud_mode = "none";
  bool matrix = false;
  auto* s_norm = app.add_subcommand("normality", "block counts N_n(B,x) against Q_n^{(k)}");
  common(s_norm, false, true, true);
  s_norm->add_option("-k,--block-length", k, "block length")->check(CLI::PositiveNumber);
  s_norm->add_option("-b,--digit-bound", digit_bound, "blocks over digits 0..b-1")->check(CLI::PositiveNumber);
  s_norm->add_option("--discrepancy", ud_mode, "none, T_orbit or digit_ratio")
      ->check(CLI::IsMember({"none", "T_orbit", "digit_ratio"}));
  s_norm->add_flag("--pairwise", matrix, "include the pairwise count-ratio matrix");
  s_norm->callback([&] {
    c.load();
    need_format(c.format, {"csv", "json"});
    BasicSeq Q = c.seqQ();
    DigitStream D = c.point(Q);
    NormalityReport r = normality_report(D, k, digit_bound, c.horizon, matrix);
    Output out(c.out);
    if (c.format == "csv") {
      out.os() << "B,count,ratio\n";
      for (const auto& e : r.entries)
        out.os() << detail::join_ints(e.block) << ',' << e.count << ',' << to_string(e.ratio) << '\n';
      return;
    }
    std::optional<UdReport> ud;
    if (ud_mode != "none") ud = ud_report(D, ud_mode == "T_orbit" ? UdMode::T_orbit : UdMode::digit_ratio, c.horizon);
    Json j = normstats_json(c.horizon, r.entries, ud ? &*ud : nullptr);
    j["qnk"] = to_string(r.qnk);
    if (matrix) {
      Json m = Json::array();
      for (const auto& row : r.pairwise) {
        Json jr = Json::array();
        for (const auto& v : row) jr.push_back(v ? Json(to_string(*v)) : Json(nullptr));
        m.push_back(jr);
      }
      j["pairwise"] = m;
    }
    emit_json(out, j);
  });

  // discrepancy
  std::string mode = "T_orbit";
  Index tail_depth = 40;
  auto* s_disc = app.add_subcommand("discrepancy", "exact star discrepancy of the orbit or digit ratios");
  common(s_disc, false, true, true);
  s_disc->add_option("--mode", mode, "T_orbit or digit_ratio")->check(CLI::IsMember({"T_orbit", "digit_ratio"}));
  s_disc->add_option("--tail-depth", tail_depth, "enclosure depth for irrational orbits");
  s_disc->callback([&] {
    c.load();
    need_format(c.format, {"csv", "json"});
    BasicSeq Q = c.seqQ();
    DigitStream D = c.point(Q);
    UdReport r = ud_report(D, mode == "T_orbit" ? UdMode::T_orbit : UdMode::digit_ratio, c.horizon, {}, tail_depth);
    Output out(c.out);
    if (c.format == "csv") {
      out.os() << "n,dstar,err,mean_inv_q\n";
      for (const auto& cp : r.checkpoints)
        out.os() << cp.n << ',' << to_string(cp.dstar) << ',' << to_string(cp.err) << ',' << format_double(cp.salat_mean)
                 << '\n';
      return;
    }
    Json j = normstats_json(c.horizon, {}, &r);
    j["mode"] = to_string(r.mode);
    emit_json(out, j);
  });

  // construct
  std::string which, stream = "digits";
  bool measure = false, gaps = false;
  Index first_stage = 6;
  unsigned long w_power = 2, l_coeff = 4;
  auto* s_con = app.add_subcommand("construct", "explicit constructions");
  common(s_con, false, true, true);
  s_con->add_option("which", which, "qnex, rdn, nnotdn, rnnotn, dnnotrn or mff")
      ->required()
      ->check(CLI::IsMember({"qnex", "rdn", "nnotdn", "rnnotn", "dnnotrn", "mff"}));
  s_con->add_option("--stream", stream, "rdn: zeta, psi_zeta or kappa; others: digits or base");
  s_con->add_flag("--measure", measure, "rdn: log10 of the range measure");
  s_con->add_flag("--gaps", gaps, "dnnotrn: orbit gaps |T(x)-T(y)|");
  s_con->add_option("--first-stage", first_stage, "mff: first stage index");
  s_con->add_option("--w-power", w_power, "mff: w_i = i^power");
  s_con->add_option("--l-coeff", l_coeff, "mff: l_i = 2^(coeff i^2)");
  s_con->callback([&] {
    c.load();
    need_format(c.format, {"csv", "json"});
    Output out(c.out);
    auto dump = [&](const DigitStream& D, const std::string& label) {
      if (c.format == "csv") {
        if (stream == "base") {
          out.os() << "n,q_n\n";
          for (Index j = 1; j <= c.horizon; ++j) out.os() << j << ',' << D.q(j).get_str() << '\n';
        } else {
          write_digits_csv(out.os(), D, c.horizon);
        }
        return;
      }
      Json j;
      j["construction"] = which;
      j["stream"] = label;
      j["digits"] = digits_json(D, c.horizon);
      emit_json(out, j);
    };
    if (which == "qnex" || which == "mff") {
      QnexParams prm;
      if (which == "mff") {
        prm.first_stage = first_stage;
        unsigned long wp = w_power, lc = l_coeff;
        prm.w = [wp](Index i) {
          unsigned long v = 1;
          for (unsigned long e = 0; e < wp; ++e) v *= static_cast<unsigned long>(i);
          return v;
        };
        prm.l = [lc](Index i) { return pow2(lc * static_cast<unsigned long>(i * i)); };
        prm.scaled = true;
      }
      MffPair m = qnex_stream(prm);
      return dump(m.eta, "zeta");
    }
    if (which == "rdn") {
      RdnStreams r = rdn_stream();
      if (measure) {
        Log10Value v = rdn_log10_measure();
        Json j;
        j["log10_measure"] = format_double(v.mantissa) + "e" + std::to_string(v.exponent);
        j["mantissa"] = v.mantissa;
        j["exponent"] = v.exponent;
        return emit_json(out, j);
      }
      if (stream == "psi_zeta") return dump(r.psi_zeta, "psi_zeta");
      if (stream == "kappa") return dump(r.kappa, "kappa");
      return dump(r.zeta, "zeta");
    }
    CounterMode m = which == "nnotdn" ? CounterMode::NnotDN : which == "rnnotn" ? CounterMode::RNnotN : CounterMode::DNnotRN;
    BasicSeq Q = c.seqQ();
    DigitStream x = c.point(m == CounterMode::RNnotN ? counterexample_base(m, Q) : Q);
    CounterexampleResult res = counterexample_stream(m, Q, x, std::min<Index>(c.horizon, 1000));
    if (!res.infinite_in_limit_ok) {
      std::cerr << "warning: q_n does not appear to tend to infinity on the horizon\n";
      rc = hypothesis_violation;
    }
    if (gaps && m == CounterMode::DNnotRN) {
      auto g = dnnotrn_orbit_gaps(Q, x, c.horizon);
      if (c.format == "csv") {
        out.os() << "n,gap_lo,gap_hi,inv_q_n\n";
        for (Index j = 1; j <= c.horizon; ++j)
          out.os() << j << ',' << format_double(g[j].lo) << ',' << format_double(g[j].hi) << ','
                   << format_double(1.0 / Q.at(j).get_d()) << '\n';
        return;
      }
      Json a = Json::array();
      for (Index j = 1; j <= c.horizon; ++j) a.push_back({{"n", j}, {"lo", g[j].lo}, {"hi", g[j].hi}});
      return emit_json(out, Json{{"construction", which}, {"gaps", a}});
    }
    if (stream == "base") {
      DigitStream pd = DigitStream::from_rule(res.P, [](Index) { return Int(0); });
      return dump(pd, "P");
    }
    dump(res.y, "y");
  });

  // dimension
  std::string dkind;
  std::string allowed, w_spec, alpha_s = "1/2", gamma_s = "1";
  Index K = 100, zk = 1;
  bool exact_product = true;
  auto* s_dim = app.add_subcommand("dimension", "Hausdorff dimension estimates");
  common(s_dim, true, true, false);
  s_dim->add_option("which", dkind, "wegmann, range, level, levelsum, multifractal or zpq")
      ->required()
      ->check(CLI::IsMember({"wegmann", "range", "level", "levelsum", "multifractal", "zpq"}));
  s_dim->add_option("--allowed", allowed, "wegmann: allowed digits, comma separated");
  s_dim->add_option("--w", w_spec, "level: level value w (rational or digit spec over Q)");
  s_dim->add_option("-K", K, "levelsum: truncation depth");
  s_dim->add_option("--alpha", alpha_s, "multifractal/holder exponent");
  s_dim->add_option("--gamma", gamma_s, "multifractal: gamma");
  s_dim->add_option("-k", zk, "zpq: run bound");
  s_dim->add_flag("!--float-product", exact_product, "range: skip the exact measure product");
  s_dim->callback([&] {
    c.load();
    need_format(c.format, {"csv", "json"});
    Output out(c.out);
    Json j;
    DimEstimate main;
    BasicSeq Q = c.seqQ();
    if (dkind == "wegmann") {
      std::vector<Int> digs = parse_int_list(allowed, "--allowed");
      RestrictionSpec I{"allowed", [Q, digs](Index n) {
                          Int q = Q.at(n), cnt = 0;
                          for (const auto& d : digs)
                            if (d >= 0 && d < q) ++cnt;
                          return cnt;
                        }};
      WegmannReport r = wegmann_estimate(Q, I, c.horizon);
      main = r.dim;
      j = dimension_json(r.dim);
      j["dimsame"] = {{"lower_liminf", r.dimsame.lower_liminf},
                      {"upper_limsup", r.dimsame.upper_limsup},
                      {"equal", r.dimsame.equal}};
      if (r.first_empty) j["first_empty"] = *r.first_empty;
    } else if (dkind == "levelsum") {
      LevelMeasureSum r = level_measure_sum(c.seqP(), Q, K);
      if (!r.hypothesis_ok) rc = hypothesis_violation;
      if (c.format == "csv") {
        out.os() << "n,sum_q_over_p\n";
        for (const auto& [n, v] : r.qp_partials) out.os() << n << ',' << format_double(v) << '\n';
        return;
      }
      j["partial"] = to_string(r.partial);
      j["telescoped"] = to_string(r.telescoped);
      j["partial_double"] = r.partial.get_d();
      j["hypothesis_ok"] = r.hypothesis_ok;
      if (r.violation) j["violation"] = *r.violation;
      j["qp_partials"] = to_json(r.qp_partials);
      j["qp_converges_proxy"] = r.qp_converges_proxy;
      if (r.tail_bound) j["tail_bound"] = r.tail_bound->get_d();
      return emit_json(out, j);
    } else {
      BasicSeq P = c.seqP();
      if (dkind == "range") {
        RangeReport r = range_report(P, Q, c.horizon, exact_product);
        main = r.dim;
        j = dimension_json(r.dim);
        if (r.measure_partial) j["measure_partial"] = r.measure_partial->get_d();
        j["partial_nonincreasing"] = r.partial_nonincreasing;
        j["log10_measure"] = format_double(r.log10_measure.mantissa) + "e" + std::to_string(r.log10_measure.exponent);
        j["closed_form"] = r.closed_form;
      } else if (dkind == "level") {
        if (w_spec.empty() && !c.file.contains("w")) throw SpecError("--w", "required level value missing");
        DigitStream w = w_spec.empty() ? parse_digit_spec(c.file.at("w"), Q) : parse_digit_spec(spec_text(w_spec), Q);
        LevelSetReport r = level_set_report(P, Q, w, c.horizon);
        main = r.dim;
        j = dimension_json(r.dim);
        j["terminating"] = r.terminating;
        j["M"] = r.M;
        j["empty"] = r.empty;
        if (r.first_zero) j["first_zero"] = *r.first_zero;
        j["measure_partial"] = to_string(r.measure_partial);
        j["finite_branch_partial"] = to_string(r.finite_branch_partial);
        j["tag"] = to_string(r.tag);
        j["p_le_q_everywhere"] = r.p_le_q_everywhere;
      } else if (dkind == "multifractal") {
        MultifractalReport r = multifractal_witness(P, Q, parse_rat(alpha_s, "--alpha"), parse_rat(gamma_s, "--gamma"), c.horizon);
        if (!r.p_gt_q) rc = hypothesis_violation;
        main = r.dim_L;
        j = dimension_json(r.dim_L);
        j["a"] = to_string(r.a);
        j["dim_S"] = dimension_json(r.dim_S);
        j["p_gt_q"] = r.p_gt_q;
        if (r.p_gt_q_violation) j["p_gt_q_violation"] = *r.p_gt_q_violation;
        j["gamma_trend"] = to_json(r.gamma_trend);
      } else {
        ZpqBounds r = zpq_dim_bounds(P, Q, zk, c.horizon);
        if (!r.hypothesis_ok) rc = hypothesis_violation;
        main = r.lower;
        j = dimension_json(r.lower);
        j["upper"] = dimension_json(r.upper);
        j["hypothesis_ok"] = r.hypothesis_ok;
        if (r.violation) j["violation"] = *r.violation;
      }
    }
    if (c.format == "csv") return write_dim_csv(out.os(), main);
    emit_json(out, j);
  });

  // rationality
  auto* s_rat = app.add_subcommand("rationality", "rationality-preservation case analysis");
  common(s_rat, true, true, true);
  s_rat->callback([&] {
    c.load();
    need_format(c.format, {"json"});
    BasicSeq P = c.seqP(), Q = c.seqQ();
    std::optional<DigitStream> x;
    if (!c.x.empty() || c.file.contains("x")) x = c.point(P);
    RationalityReport r = rationality_report(P, Q, c.horizon, x ? &*x : nullptr);
    if (r.rat_case == RatCase::undetermined) rc = undecided;
    Json j;
    j["case"] = to_string(r.rat_case);
    j["also_case2"] = r.also_case2;
    j["M"] = r.M;
    j["divisibility_P"] = {{"bound", r.div_p.bound}, {"all_divide_up_to", r.div_p.all_divide_up_to}, {"ok", r.div_p.ok}};
    j["divisibility_Q"] = {{"bound", r.div_q.bound}, {"all_divide_up_to", r.div_q.all_divide_up_to}, {"ok", r.div_q.ok}};
    j["qp_partials"] = to_json(r.qp_partials);
    if (r.s_measure) j["s_measure"] = *r.s_measure;
    j["s_measure_basis"] = r.s_measure_basis;
    if (r.dim_lower) j["dim_lower"] = dimension_json(*r.dim_lower);
    if (r.dim_upper) j["dim_upper"] = dimension_json(*r.dim_upper);
    if (r.x_value) j["x"] = to_string(*r.x_value);
    if (r.image_rational_form) j["image_rational_form"] = *r.image_rational_form;
    j["flag"] = r.flag;
    Output out(c.out);
    emit_json(out, j);
  });

  // variation
  Index t = 1, t_max = 0;
  auto* s_var = app.add_subcommand("variation", "exact total variation of the level-t approximant");
  common(s_var, true, true, false);
  s_var->add_option("-t", t, "approximant level")->check(CLI::PositiveNumber);
  s_var->add_option("--t-max", t_max, "sweep t = 1..t-max");
  s_var->callback([&] {
    c.load();
    need_format(c.format, {"csv", "json"});
    BasicSeq P = c.seqP(), Q = c.seqQ();
    Index lo = t_max ? 1 : t, hi = t_max ? t_max : t;
    Output out(c.out);
    Json a = Json::array();
    if (c.format == "csv") out.os() << "t,variation,upper_bound,method\n";
    for (Index tt = lo; tt <= hi; ++tt) {
      VariationReport r = variation_exact(P, Q, tt);
      std::string method = r.formula_path ? "formula" : "breakpoints";
      if (c.format == "csv")
        out.os() << tt << ',' << to_string(r.v) << ',' << to_string(r.upper_bound) << ',' << method << '\n';
      else
        a.push_back({{"t", tt}, {"variation", to_string(r.v)}, {"upper_bound", to_string(r.upper_bound)}, {"method", method}});
    }
    if (c.format == "json") emit_json(out, Json{{"levels", a}});
  });

  // bv
  auto* s_bv = app.add_subcommand("bv", "bounded-variation sufficient conditions");
  common(s_bv, true, true, false);
  s_bv->callback([&] {
    c.load();
    need_format(c.format, {"json"});
    BVReport r = bv_check(c.seqP(), c.seqQ(), c.horizon);
    if (r.verdict == BVVerdict::not_proven) rc = undecided;
    Json j;
    Json ps = Json::array();
    for (const auto& [n, v] : r.double_sum_partials) ps.push_back({{"n", n}, {"partial", v.get_d()}});
    j["double_sum_partials"] = ps;
    if (r.tail_bound) j["tail_bound"] = r.tail_bound->get_d();
    j["log_ratio_running_min"] = to_json(r.log_ratio_running_min);
    j["ratio_bounded"] = r.ratio_bounded;
    j["ratio_basis"] = r.ratio_basis;
    j["verdict"] = to_string(r.verdict);
    Output out(c.out);
    emit_json(out, j);
  });

  // holder
  Index hk = 1;
  std::string halpha = "1/2";
  auto* s_hol = app.add_subcommand("holder", "Holder-condition expressions along the horizon");
  common(s_hol, true, true, false);
  s_hol->add_option("-k", hk, "run bound");
  s_hol->add_option("--alpha", halpha, "exponent in (0,1]");
  s_hol->callback([&] {
    c.load();
    need_format(c.format, {"csv", "json"});
    HolderReport r = holder_report(c.seqP(), c.seqQ(), hk, parse_rat(halpha, "--alpha"), c.horizon);
    if (!r.hypothesis_ok) rc = hypothesis_violation;
    Output out(c.out);
    if (c.format == "csv") {
      out.os() << "n,log_e1,log_e2,log_sup1,log_sup2\n";
      for (const auto& cp : r.checkpoints)
        out.os() << cp.n << ',' << format_double(cp.log_e1) << ',' << format_double(cp.log_e2) << ','
                 << format_double(cp.log_sup1) << ',' << format_double(cp.log_sup2) << '\n';
      return;
    }
    Json a = Json::array();
    for (const auto& cp : r.checkpoints)
      a.push_back({{"n", cp.n}, {"log_e1", cp.log_e1}, {"log_e2", cp.log_e2}, {"log_sup1", cp.log_sup1}, {"log_sup2", cp.log_sup2}});
    Json j;
    j["checkpoints"] = a;
    j["hypothesis_ok"] = r.hypothesis_ok;
    if (r.last_small_min) j["last_small_min"] = *r.last_small_min;
    j["e1_increasing_tail"] = r.e1_increasing_tail;
    j["e2_increasing_tail"] = r.e2_increasing_tail;
    j["verdict"] = to_string(r.verdict);
    emit_json(out, j);
  });

  // monotone-witness
  std::string cell;
  auto* s_mon = app.add_subcommand("monotone-witness", "non-monotonicity witness inside a cylinder");
  common(s_mon, true, true, false);
  s_mon->add_option("--cell", cell, "cylinder digits over P, comma separated")->required();
  s_mon->callback([&] {
    c.load();
    need_format(c.format, {"json"});
    auto w = monotonicity_witness(c.seqP(), c.seqQ(), parse_int_list(cell, "--cell"), c.horizon);
    Json j;
    j["found"] = w.has_value();
    if (w) {
      j["m"] = w->m;
      j["c"] = to_string(w->c);
      j["x"] = to_string(w->x);
      j["y"] = to_string(w->y);
      j["psi_c"] = to_string(w->psi_c);
      j["psi_x"] = to_string(w->psi_x);
      j["psi_y"] = to_string(w->psi_y);
    } else {
      rc = undecided;
    }
    Output out(c.out);
    emit_json(out, j);
  });

  // sample
  std::uint64_t lo = 2, hi = 10, seed = 42;
  auto* s_smp = app.add_subcommand("sample", "seeded IID base sequence");
  s_smp->add_option("--lo", lo, "lowest value (>= 2)");
  s_smp->add_option("--hi", hi, "highest value");
  s_smp->add_option("--seed", seed, "seed");
  s_smp->add_option("-n,--horizon", c.horizon, "number of values")->check(CLI::PositiveNumber);
  s_smp->add_option("-o,--out", c.out, "output path");
  s_smp->add_option("-f,--format", c.format, "csv or json");
  s_smp->callback([&] {
    need_format(c.format, {"csv", "json"});
    if (lo < 2) throw SpecError("--lo", "base value " + std::to_string(lo) + " < 2");
    if (lo > hi) throw SpecError("--hi", "lo > hi");
    BasicSeq Q = sample_iid({lo, hi, seed});
    Output out(c.out);
    if (c.format == "csv") {
      out.os() << "n,q_n\n";
      for (Index j = 1; j <= c.horizon; ++j) out.os() << j << ',' << Q.at(j).get_str() << '\n';
      return;
    }
    Json a = Json::array();
    for (Index j = 1; j <= c.horizon; ++j) a.push_back(Q.at(j).get_ui());
    emit_json(out, Json{{"lo", lo}, {"hi", hi}, {"seed", seed}, {"values", a}});
  });

  // birkhoff
  auto* s_bk = app.add_subcommand("birkhoff", "Birkhoff averages and product-ratio statistics");
  common(s_bk, true, true, false);
  s_bk->callback([&] {
    c.load();
    need_format(c.format, {"csv", "json"});
    BirkhoffReport r = birkhoff_report(c.seqP(), c.seqQ(), c.horizon);
    Output out(c.out);
    if (c.format == "csv") {
      out.os() << "n,mean_log_p,mean_log_q,log_ratio,running_min,bv_partial\n";
      for (const auto& cp : r.checkpoints)
        out.os() << cp.n << ',' << format_double(cp.mean_log_p) << ',' << format_double(cp.mean_log_q) << ','
                 << format_double(cp.log_ratio) << ',' << format_double(cp.running_min) << ','
                 << format_double(cp.bv_partial) << '\n';
      return;
    }
    Json a = Json::array();
    for (const auto& cp : r.checkpoints)
      a.push_back({{"n", cp.n},
                   {"mean_log_p", cp.mean_log_p},
                   {"mean_log_q", cp.mean_log_q},
                   {"log_ratio", cp.log_ratio},
                   {"running_min", cp.running_min},
                   {"bv_partial", cp.bv_partial}});
    emit_json(out, Json{{"checkpoints", a}, {"count_p_less", r.count_p_less}, {"count_p_greater", r.count_p_greater}});
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? ok : spec_error;
  } catch (const SpecError& e) {
    std::cerr << e.what() << '\n';
    return spec_error;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return spec_error;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  if (rc == hypothesis_violation) std::cerr << "hypothesis violation (see report)\n";
  if (rc == undecided) std::cerr << "undecided at the given horizon\n";
  return rc;
}
