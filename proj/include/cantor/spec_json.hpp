#pragma once
// spec_json.hpp - JSON sequence/digit specs and report emitters.

#include "foundry.hpp"
#include "fracdim.hpp"
#include "normstats.hpp"

#include <json.hpp>

namespace cantor {

using Json = nlohmann::ordered_json;

struct SpecIssue {
  std::string path;  // JSON pointer, or "byte N" for syntax errors
  std::string message;
};

class SpecError : public std::runtime_error {
 public:
  explicit SpecError(std::vector<SpecIssue> issues) : std::runtime_error(render(issues)), issues_(std::move(issues)) {}
  SpecError(std::string path, std::string message) : SpecError(std::vector<SpecIssue>{{std::move(path), std::move(message)}}) {}
  const std::vector<SpecIssue>& issues() const { return issues_; }

 private:
  static std::string render(const std::vector<SpecIssue>& is) {
    std::string s = "spec error";
    for (const auto& i : is) s += "\n  at " + (i.path.empty() ? std::string("/") : i.path) + ": " + i.message;
    return s;
  }
  std::vector<SpecIssue> issues_;
};

namespace detail {

struct SpecReader {
  std::vector<SpecIssue> issues;

  void fail(const std::string& path, std::string msg) { issues.push_back({path, std::move(msg)}); }

  std::optional<Int> integer(const Json& j, const std::string& path) {
    if (j.is_number_integer()) return j.is_number_unsigned() ? from_u64(j.get<std::uint64_t>()) : Int(j.get<long>());
    if (j.is_string()) {
      Int v;
      if (v.set_str(j.get<std::string>(), 10) == 0) return v;
    }
    fail(path, "expected an integer (number or decimal string), got " + j.dump());
    return std::nullopt;
  }

  std::optional<Int> field_int(const Json& o, const char* key, const std::string& path) {
    if (!o.contains(key)) {
      fail(path, std::string("missing field \"") + key + "\"");
      return std::nullopt;
    }
    return integer(o.at(key), path + "/" + key);
  }

  std::optional<std::uint64_t> field_u64(const Json& o, const char* key, const std::string& path) {
    auto v = field_int(o, key, path);
    if (!v) return std::nullopt;
    if (*v < 0 || !v->fits_ulong_p()) {
      fail(path + "/" + key, "out of range for a 64-bit unsigned value");
      return std::nullopt;
    }
    return to_u64(*v);
  }

  std::optional<std::vector<Int>> int_array(const Json& o, const char* key, const std::string& path, bool nonempty) {
    if (!o.contains(key)) {
      fail(path, std::string("missing field \"") + key + "\"");
      return std::nullopt;
    }
    const Json& a = o.at(key);
    std::string p = path + "/" + key;
    if (!a.is_array()) {
      fail(p, "expected an array");
      return std::nullopt;
    }
    if (nonempty && a.empty()) {
      fail(p, "must not be empty");
      return std::nullopt;
    }
    std::vector<Int> out;
    bool ok = true;
    for (std::size_t i = 0; i < a.size(); ++i) {
      auto v = integer(a[i], p + "/" + std::to_string(i));
      if (v) out.push_back(*v);
      else ok = false;
    }
    if (!ok) return std::nullopt;
    return out;
  }

  bool check_bases(const std::vector<Int>& v, const std::string& path) {
    bool ok = true;
    for (std::size_t i = 0; i < v.size(); ++i)
      if (v[i] < 2) {
        fail(path + "/" + std::to_string(i), "base value " + v[i].get_str() + " < 2");
        ok = false;
      }
    return ok;
  }

  void allow_only(const Json& o, std::initializer_list<const char*> keys, const std::string& path) {
    for (auto it = o.begin(); it != o.end(); ++it) {
      bool known = false;
      for (const char* k : keys)
        if (it.key() == k) known = true;
      if (!known) fail(path + "/" + it.key(), "unknown field for this kind");
    }
  }

  std::optional<BasicSeq> seq(const Json& j, const std::string& path) {
    if (!j.is_object()) {
      fail(path, "expected an object with a \"kind\" field");
      return std::nullopt;
    }
    if (!j.contains("kind") || !j.at("kind").is_string()) {
      fail(path, "missing string field \"kind\"");
      return std::nullopt;
    }
    const std::string kind = j.at("kind").get<std::string>();
    const std::size_t before = issues.size();
    auto done = [&](auto make) -> std::optional<BasicSeq> {
      if (issues.size() != before) return std::nullopt;
      try {
        return make();
      } catch (const std::exception& e) {
        fail(path, e.what());
        return std::nullopt;
      }
    };
    if (kind == "constant") {
      allow_only(j, {"kind", "value"}, path);
      auto v = field_int(j, "value", path);
      if (v && *v < 2) fail(path + "/value", "base value " + v->get_str() + " < 2");
      return done([&] { return BasicSeq::constant(*v); });
    }
    if (kind == "affine") {
      allow_only(j, {"kind", "a", "d"}, path);
      auto a = field_int(j, "a", path);
      auto d = field_int(j, "d", path);
      if (a && d) {
        if (*d < 0) fail(path + "/d", "negative slope eventually gives values < 2");
        else if (*a + *d < 2) fail(path, "first value a+d = " + Int(*a + *d).get_str() + " < 2");
      }
      return done([&] { return BasicSeq::affine(*a, *d); });
    }
    if (kind == "geometric") {
      allow_only(j, {"kind", "a", "r"}, path);
      auto a = field_int(j, "a", path);
      auto r = field_int(j, "r", path);
      if (a && *a < 2) fail(path + "/a", "base value " + a->get_str() + " < 2");
      if (r && *r < 1) fail(path + "/r", "ratio must be >= 1");
      return done([&] { return BasicSeq::geometric(*a, *r); });
    }
    if (kind == "polynomial") {
      allow_only(j, {"kind", "coeffs"}, path);
      auto c = int_array(j, "coeffs", path, true);
      if (c) {
        for (std::size_t i = 0; i < c->size(); ++i)
          if ((*c)[i] < 0) fail(path + "/coeffs/" + std::to_string(i), "coefficients must be nonnegative");
        Int first = 0;
        for (const auto& v : *c) first += v;
        if (first < 2) fail(path + "/coeffs", "value at n=1 is " + first.get_str() + " < 2");
      }
      return done([&] { return BasicSeq::polynomial(*c); });
    }
    if (kind == "periodic") {
      allow_only(j, {"kind", "values"}, path);
      auto v = int_array(j, "values", path, true);
      if (v) check_bases(*v, path + "/values");
      return done([&] { return BasicSeq::periodic(*v); });
    }
    if (kind == "explicit") {
      allow_only(j, {"kind", "prefix", "tail"}, path);
      auto p = int_array(j, "prefix", path, false);
      if (p) check_bases(*p, path + "/prefix");
      std::optional<BasicSeq> tail;
      if (!j.contains("tail")) fail(path, "missing field \"tail\"");
      else tail = seq(j.at("tail"), path + "/tail");
      return done([&] { return BasicSeq::explicit_(*p, *tail); });
    }
    if (kind == "concatenated") {
      allow_only(j, {"kind", "parts", "tail"}, path);
      std::vector<ConcatPart> parts;
      if (!j.contains("parts") || !j.at("parts").is_array() || j.at("parts").empty()) {
        fail(path + "/parts", "expected a nonempty array of {seq, repeat, length}");
      } else {
        for (std::size_t i = 0; i < j.at("parts").size(); ++i) {
          const Json& pj = j.at("parts")[i];
          std::string pp = path + "/parts/" + std::to_string(i);
          if (!pj.is_object()) {
            fail(pp, "expected an object");
            continue;
          }
          allow_only(pj, {"seq", "repeat", "length"}, pp);
          std::optional<BasicSeq> s;
          if (!pj.contains("seq")) fail(pp, "missing field \"seq\"");
          else s = seq(pj.at("seq"), pp + "/seq");
          auto rep = field_int(pj, "repeat", pp);
          auto len = field_u64(pj, "length", pp);
          if (rep && *rep < 1) fail(pp + "/repeat", "must be >= 1");
          if (len && *len < 1) fail(pp + "/length", "must be >= 1");
          if (s && rep && len) parts.push_back({*s, *rep, *len});
        }
      }
      std::optional<BasicSeq> tail;
      if (j.contains("tail")) tail = seq(j.at("tail"), path + "/tail");
      return done([&] { return BasicSeq::concatenated(parts, tail); });
    }
    if (kind == "iid") {
      allow_only(j, {"kind", "lo", "hi", "seed"}, path);
      auto lo = field_u64(j, "lo", path);
      auto hi = field_u64(j, "hi", path);
      auto seed = field_u64(j, "seed", path);
      if (lo && *lo < 2) fail(path + "/lo", "base value " + std::to_string(*lo) + " < 2");
      if (lo && hi && *lo > *hi) fail(path, "lo > hi");
      return done([&] { return BasicSeq::iid(*lo, *hi, *seed); });
    }
    if (kind == "truncated") {
      allow_only(j, {"kind", "base", "t"}, path);
      std::optional<BasicSeq> b;
      if (!j.contains("base")) fail(path, "missing field \"base\"");
      else b = seq(j.at("base"), path + "/base");
      auto t = field_u64(j, "t", path);
      return done([&] { return BasicSeq::truncated(*b, *t); });
    }
    if (kind == "qnex") {
      allow_only(j, {"kind"}, path);
      return done([&] { return qnex_stream().gamma; });
    }
    if (kind == "rdn") {
      allow_only(j, {"kind"}, path);
      return done([&] { return rdn_stream().Q; });
    }
    fail(path + "/kind", "unknown kind \"" + kind +
                             "\" (expected constant, affine, geometric, polynomial, periodic, explicit, "
                             "concatenated, iid, truncated, qnex, rdn)");
    return std::nullopt;
  }
};

inline Json parse_text(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw SpecError("byte " + std::to_string(e.byte), e.what());
  }
}

}  // namespace detail

inline BasicSeq parse_seq_spec(const Json& j) {
  detail::SpecReader r;
  auto s = r.seq(j, "");
  if (!s || !r.issues.empty()) throw SpecError(r.issues);
  return *s;
}

inline BasicSeq parse_seq_spec(const std::string& text) { return parse_seq_spec(detail::parse_text(text)); }

// Digit specs for a point x over base Q:
//   "7/8" or {"kind":"rational","value":"7/8"}
//   {"kind":"digits","digits":[...],"tail":"zero"|"max","integer":0}
//   {"kind":"constant_digit","digit":1}   (clamped to q_n-1)
//   {"kind":"iid","seed":7}                (uniform on [0,q_n))
//   {"kind":"golden"}                      (E_n = floor(q_n frac(n(sqrt5-1)/2)))
inline DigitStream parse_digit_spec(const Json& j, const BasicSeq& Q) {
  detail::SpecReader r;
  auto rational = [&](const Json& v, const std::string& path) -> std::optional<Rat> {
    if (v.is_number_integer()) return Rat(Int(v.get<long>()));
    if (v.is_string()) {
      try {
        return rat_from_string(v.get<std::string>());
      } catch (const std::exception&) {
      }
    }
    r.fail(path, "expected a rational \"num/den\", got " + v.dump());
    return std::nullopt;
  };
  std::optional<DigitStream> out;
  if (j.is_string() || j.is_number_integer()) {
    if (auto x = rational(j, "")) out = expand_rational(*x, Q);
  } else if (!j.is_object() || !j.contains("kind") || !j.at("kind").is_string()) {
    r.fail("", "expected a rational string or an object with a \"kind\" field");
  } else {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "rational") {
      r.allow_only(j, {"kind", "value"}, "");
      if (!j.contains("value")) r.fail("", "missing field \"value\"");
      else if (auto x = rational(j.at("value"), "/value")) out = expand_rational(*x, Q);
    } else if (kind == "digits") {
      r.allow_only(j, {"kind", "digits", "tail", "integer"}, "");
      auto d = r.int_array(j, "digits", "", false);
      std::string tail = j.value("tail", std::string("zero"));
      if (tail != "zero" && tail != "max") r.fail("/tail", "expected \"zero\" or \"max\"");
      Int ip = 0;
      if (j.contains("integer"))
        if (auto v = r.integer(j.at("integer"), "/integer")) ip = *v;
      if (d) {
        for (std::size_t i = 0; i < d->size(); ++i) {
          Int q = Q.at(i + 1);
          if ((*d)[i] < 0 || (*d)[i] >= q)
            r.fail("/digits/" + std::to_string(i), "digit " + (*d)[i].get_str() + " outside [0," + q.get_str() + ")");
        }
      }
      if (r.issues.empty())
        out = tail == "zero" ? DigitStream::from_digits(Q, *d, ip) : DigitStream::from_digits_max_tail(Q, *d, ip);
    } else if (kind == "constant_digit") {
      r.allow_only(j, {"kind", "digit"}, "");
      auto v = r.field_int(j, "digit", "");
      if (v && *v < 0) r.fail("/digit", "must be >= 0");
      if (r.issues.empty()) {
        Int e = *v;
        out = DigitStream::from_rule(Q, [Q, e](Index n) -> Int { return int_min(e, Q.at(n) - 1); });
      }
    } else if (kind == "iid") {
      r.allow_only(j, {"kind", "seed"}, "");
      auto s = r.field_u64(j, "seed", "");
      if (s) out = iid_digit_stream(Q, *s);
    } else if (kind == "golden") {
      r.allow_only(j, {"kind"}, "");
      out = golden_stream(Q);
    } else {
      r.fail("/kind", "unknown digit kind \"" + kind + "\" (expected rational, digits, constant_digit, iid, golden)");
    }
  }
  if (!out || !r.issues.empty()) throw SpecError(r.issues);
  return *out;
}

inline DigitStream parse_digit_spec(const std::string& text, const BasicSeq& Q) {
  // bare rationals such as 7/8 are accepted without quotes
  std::string t = text;
  t.erase(0, t.find_first_not_of(" \t\n"));
  if (!t.empty() && t[0] != '{' && t[0] != '"') return parse_digit_spec(Json(t), Q);
  return parse_digit_spec(detail::parse_text(text), Q);
}

// ---------------------------------------------------------------------------
// Report emitters

inline Json to_json(const Rat& r) { return to_string(r); }

inline Json to_json(const Bracket& b) {
  Json j;
  j["lo"] = b.lo_d();
  j["hi"] = b.hi_d();
  return j;
}

inline Json to_json(const std::vector<std::pair<Index, double>>& v) {
  Json a = Json::array();
  for (const auto& [n, x] : v) a.push_back({{"n", n}, {"value", x}});
  return a;
}

inline Json dimension_json(const DimEstimate& e) {
  Json j;
  Json cps = Json::array();
  for (const auto& c : e.checkpoints) {
    Json cj;
    cj["n"] = c.n;
    if (c.empty) {
      cj["ratio_num_log"] = nullptr;
      cj["ratio_den_log"] = c.den_log.mid();
      cj["value"] = nullptr;
    } else {
      cj["ratio_num_log"] = c.num_log.mid();
      cj["ratio_den_log"] = c.den_log.mid();
      cj["value"] = c.value.mid();
      cj["value_bracket"] = {c.value.lo_d(), c.value.hi_d()};
    }
    cps.push_back(cj);
  }
  j["checkpoints"] = cps;
  if (e.empty) j["running_min"] = nullptr;
  else j["running_min"] = e.running_min;
  j["hypothesis"] = {{"ok", e.hypothesis.ok}, {"trend", to_json(e.hypothesis.trend)}};
  return j;
}

inline Json normstats_json(Index horizon, const std::vector<NormalityEntry>& blocks, const UdReport* ud) {
  Json j;
  j["horizon"] = horizon;
  Json bs = Json::array();
  for (const auto& e : blocks) {
    Json b;
    Json digits = Json::array();
    for (const auto& d : e.block) digits.push_back(d.fits_slong_p() ? Json(d.get_si()) : Json(d.get_str()));
    b["B"] = digits;
    b["count"] = e.count;
    b["ratio"] = to_string(e.ratio);
    bs.push_back(b);
  }
  j["blocks"] = bs;
  Json ds = Json::array();
  if (ud)
    for (const auto& c : ud->checkpoints) ds.push_back({{"n", c.n}, {"dstar", to_string(c.dstar)}, {"err", to_string(c.err)}});
  j["discrepancy"] = ds;
  return j;
}

}  // namespace cantor
