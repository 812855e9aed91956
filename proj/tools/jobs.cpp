#include "jobs.hpp"

#include <chrono>
#include <functional>
#include <map>
#include <optional>
#include <random>

#include "stransfer/nilpotent.hpp"
#include "stransfer/orbit_matching.hpp"
#include "stransfer/orbital.hpp"

namespace jobs {

using namespace stransfer;

namespace {

// ---- spec reading ----

const json& at(const json& spec, const std::string& key, const std::string& path) {
  if (!spec.is_object() || !spec.contains(key))
    throw UsageError(path + "/" + key, "missing field '" + key + "'");
  return spec.at(key);
}

int64_t get_int(const json& spec, const std::string& key, int64_t def, const std::string& path = "") {
  if (!spec.is_object() || !spec.contains(key)) return def;
  const json& v = spec.at(key);
  if (!v.is_number_integer()) throw UsageError(path + "/" + key, "expected an integer");
  return v.get<int64_t>();
}

double get_double(const json& spec, const std::string& key, double def) {
  if (!spec.is_object() || !spec.contains(key)) return def;
  const json& v = spec.at(key);
  if (!v.is_number()) throw UsageError("/" + key, "expected a number");
  return v.get<double>();
}

std::string get_string(const json& spec, const std::string& key, const std::string& def) {
  if (!spec.is_object() || !spec.contains(key)) return def;
  const json& v = spec.at(key);
  if (!v.is_string()) throw UsageError("/" + key, "expected a string");
  return v.get<std::string>();
}

FieldConfig read_field(const json& spec) {
  const int64_t p = get_int(spec, "p", 3);
  const int64_t prec = get_int(spec, "precision", 12);
  if (p < 3 || p % 2 == 0) throw UsageError("/p", "p must be an odd prime");
  for (int64_t d = 3; d * d <= p; d += 2)
    if (p % d == 0) throw UsageError("/p", "p must be an odd prime");
  if (prec < 2) throw UsageError("/precision", "precision must be at least 2");
  static const std::map<std::string, DeltaClass> classes{
      {"unramified", DeltaClass::Unramified},
      {"ramified", DeltaClass::Ramified},
      {"ramified-u0", DeltaClass::RamifiedU0}};
  const std::string cls = get_string(spec, "delta_class", "unramified");
  auto it = classes.find(cls);
  if (it == classes.end())
    throw UsageError("/delta_class", "expected unramified, ramified or ramified-u0");
  int64_t gnum = 1, gden = 1;
  if (spec.is_object() && spec.contains("gamma")) {
    const json& g = spec.at("gamma");
    if (g.is_number_integer()) {
      gnum = g.get<int64_t>();
    } else if (g.is_string()) {
      const std::string s = g.get<std::string>();
      try {
        auto slash = s.find('/');
        gnum = std::stoll(s.substr(0, slash));
        if (slash != std::string::npos) gden = std::stoll(s.substr(slash + 1));
      } catch (const std::exception&) {
        throw UsageError("/gamma", "expected an integer or a fraction a/b");
      }
    } else {
      throw UsageError("/gamma", "expected an integer or a fraction a/b");
    }
    if (gnum == 0 || gden == 0) throw UsageError("/gamma", "gamma must be nonzero");
  }
  try {
    return FieldConfig::make(p, static_cast<int>(prec), it->second, gnum, gden);
  } catch (const DomainError& e) {
    throw UsageError("/precision", e.what());
  }
}

PadicNumber read_num(const json& v, const FieldConfig& cfg, const std::string& path) {
  try {
    if (v.is_number_integer()) return cfg.num(v.get<int64_t>());
    if (v.is_string()) return cfg.parse(v.get<std::string>());
  } catch (const std::exception& e) {
    throw UsageError(path, std::string("cannot parse number: ") + e.what());
  }
  throw UsageError(path, "expected a number as an integer or a string");
}

std::vector<PadicNumber> read_vec(const json& v, const FieldConfig& cfg, const std::string& path) {
  if (!v.is_array()) throw UsageError(path, "expected an array");
  std::vector<PadicNumber> out;
  for (size_t i = 0; i < v.size(); ++i) out.push_back(read_num(v[i], cfg, path + "/" + std::to_string(i)));
  return out;
}

MatF read_matf(const json& v, const FieldConfig& cfg, const std::string& path) {
  if (!v.is_array() || v.empty()) throw UsageError(path, "expected a square matrix");
  const int n = static_cast<int>(v.size());
  MatF m(n, n, cfg.zero());
  for (int i = 0; i < n; ++i) {
    const std::string row = path + "/" + std::to_string(i);
    if (!v[i].is_array() || static_cast<int>(v[i].size()) != n)
      throw UsageError(row, "expected a row of length " + std::to_string(n));
    for (int j = 0; j < n; ++j) m(i, j) = read_num(v[i][j], cfg, row + "/" + std::to_string(j));
  }
  return m;
}

ExtElement read_ext(const json& v, const FieldConfig& cfg, const std::string& path) {
  if (!v.is_array() || v.size() != 2) throw UsageError(path, "expected [re, im]");
  return ExtElement(read_num(v[0], cfg, path + "/0"), read_num(v[1], cfg, path + "/1"),
                    cfg.extension().delta_sq);
}

LieSElement read_s(const json& v, const FieldConfig& cfg, const std::string& path) {
  if (!v.is_object()) throw UsageError(path, "expected {x, y} or {a1, a2}");
  if (v.contains("x") || v.contains("y"))
    return LieSElement::n1(read_num(at(v, "x", path), cfg, path + "/x"),
                           read_num(at(v, "y", path), cfg, path + "/y"));
  MatF a1 = read_matf(at(v, "a1", path), cfg, path + "/a1");
  MatF a2 = read_matf(at(v, "a2", path), cfg, path + "/a2");
  if (a1.rows() != a2.rows()) throw UsageError(path + "/a2", "a1 and a2 differ in size");
  return {a1, a2};
}

LieSPrimeElement read_sprime(const json& v, const FieldConfig& cfg, const std::string& path) {
  const json& b = at(v, "b", path);
  const std::string bp = path + "/b";
  if (b.is_array() && b.size() == 2 && !b[0].is_array())
    return LieSPrimeElement::n1(read_ext(b, cfg, bp), cfg.gamma);
  if (!b.is_array() || b.empty()) throw UsageError(bp, "expected [re, im] or a matrix of them");
  const int n = static_cast<int>(b.size());
  const PadicNumber z = cfg.zero();
  MatE m(n, n, ExtElement(z, z, cfg.extension().delta_sq));
  for (int i = 0; i < n; ++i) {
    const std::string row = bp + "/" + std::to_string(i);
    if (!b[i].is_array() || static_cast<int>(b[i].size()) != n)
      throw UsageError(row, "expected a row of length " + std::to_string(n));
    for (int j = 0; j < n; ++j) m(i, j) = read_ext(b[i][j], cfg, row + "/" + std::to_string(j));
  }
  return {m, cfg.gamma};
}

Side read_side(const json& spec) {
  const std::string s = get_string(spec, "side", "s");
  if (s == "s") return Side::S;
  if (s == "s'" || s == "sprime") return Side::SPrime;
  throw UsageError("/side", "expected s or s'");
}

MeasureConvention read_measure(const json& spec) {
  const std::string m = get_string(spec, "measure", "integral-model");
  if (m == "integral-model") return MeasureConvention::IntegralModel;
  if (m == "self-dual-exp") return MeasureConvention::SelfDualExp;
  throw UsageError("/measure", "expected integral-model or self-dual-exp");
}

// "standard", {"ball": {"center": [...], "scale": a}} or {"terms": [...]}.
CosetFunction read_function(const json& spec, const LatticeSpace& sp, const std::string& path) {
  if (!spec.is_object() || !spec.contains("f")) return CosetFunction::standard(sp);
  const json& f = spec.at("f");
  const std::string fp = path + "/f";
  if (f.is_string()) {
    if (f.get<std::string>() != "standard") throw UsageError(fp, "unknown function name");
    return CosetFunction::standard(sp);
  }
  auto read_coords = [&](const json& v, const std::string& p) {
    Vec c = read_vec(v, sp.cfg, p);
    if (static_cast<int>(c.size()) != sp.dim())
      throw UsageError(p, "expected " + std::to_string(sp.dim()) + " coordinates");
    return c;
  };
  if (f.contains("ball")) {
    const json& b = f.at("ball");
    return CosetFunction::ball(sp, read_coords(at(b, "center", fp + "/ball"), fp + "/ball/center"),
                               static_cast<int>(get_int(b, "scale", 0, fp + "/ball")));
  }
  const json& terms = at(f, "terms", fp);
  if (!terms.is_array()) throw UsageError(fp + "/terms", "expected an array");
  CosetFunction out(sp);
  for (size_t i = 0; i < terms.size(); ++i) {
    const std::string tp = fp + "/terms/" + std::to_string(i);
    const json& t = terms[i];
    CosetTerm term;
    Rational q = 1;
    if (t.contains("coeff")) {
      try {
        q = rational_from_string(t.at("coeff").get<std::string>());
      } catch (const std::exception&) {
        throw UsageError(tp + "/coeff", "expected a rational string");
      }
    }
    term.coeff = ExactScalar::rational(sp.prime(), q);
    term.center = read_coords(at(t, "center", tp), tp + "/center");
    term.chi = t.contains("chi") ? read_coords(t.at("chi"), tp + "/chi") : sp.zero_vec();
    term.scale.assign(static_cast<size_t>(sp.dim()), static_cast<int>(get_int(t, "scale", 0, tp)));
    out.add(std::move(term));
  }
  return out;
}

// ---- report writing ----

json padic_json(const PadicNumber& x) {
  if (x.is_zero()) return {{"val", nullptr}, {"unit", "0"}};
  return {{"val", x.valuation()}, {"unit", std::to_string(x.unit())}};
}

json matf_json(const MatF& m) {
  json rows = json::array();
  for (int i = 0; i < m.rows(); ++i) {
    json r = json::array();
    for (int j = 0; j < m.cols(); ++j) r.push_back(padic_json(m(i, j)));
    rows.push_back(r);
  }
  return rows;
}

json ext_json(const ExtElement& e) { return json::array({padic_json(e.re()), padic_json(e.im())}); }

json s_json(const LieSElement& x) { return {{"a1", matf_json(x.a1)}, {"a2", matf_json(x.a2)}}; }

json sprime_json(const LieSPrimeElement& y) {
  json rows = json::array();
  for (int i = 0; i < y.n(); ++i) {
    json r = json::array();
    for (int j = 0; j < y.n(); ++j) r.push_back(ext_json(y.b(i, j)));
    rows.push_back(r);
  }
  return {{"b", rows}};
}

json complex_json(std::complex<double> z) { return json::array({z.real(), z.imag()}); }

json cyclotomic_json(const Cyclotomic& c) {
  json out = json::array();
  for (const auto& t : c.terms())
    out.push_back({{"rational", rational_to_string(t.coeff)}, {"zeta_pk", t.num}, {"k", t.level}, {"mu8", 0}});
  return out;
}

json mu8_json(const Mu8Value& m) {
  return {{"rational", "1"}, {"zeta_pk", 0}, {"k", 0}, {"mu8", m.index()}, {"complex", complex_json(m.value())}};
}

json value_json(const IntegralValue& v) {
  json j{{"exact", v.exact},
         {"terms", cyclotomic_json(v.value.a())},
         {"sqrt_p_terms", cyclotomic_json(v.value.b())},
         {"p_quarter_exp", v.quarter_exp},
         {"complete", v.complete},
         {"complex", complex_json(v.to_complex())}};
  if (!v.exact || !v.complete) j["error_bound"] = v.complete ? v.error_bound : -1.0;
  return j;
}

json abs_json(const AbsValue& a) {
  return {{"p", a.p}, {"twice_exponent", a.twice_exponent}, {"text", a.to_string()}};
}

json pass_json(CheckStatus s) {
  if (s == CheckStatus::Pass) return true;
  if (s == CheckStatus::Fail) return false;
  return nullptr;
}

json field_json(const FieldConfig& cfg) {
  static const char* names[] = {"unramified", "ramified", "ramified-u0"};
  return {{"p", cfg.p},
          {"precision", cfg.precision},
          {"delta_class", names[static_cast<int>(cfg.delta_class)]},
          {"delta", padic_json(cfg.extension().delta_sq)},
          {"gamma", padic_json(cfg.gamma)}};
}

using Results = json;  // array of result objects, each carrying "pass": true | false | null

// ---- commands ----

Results cmd_hilbert(const json& spec, const FieldConfig& cfg, const Options&) {
  auto a = read_num(at(spec, "a", ""), cfg, "/a");
  auto b = read_num(at(spec, "b", ""), cfg, "/b");
  if (a.is_zero() || b.is_zero()) throw UsageError("/a", "arguments must be nonzero");
  const int v = hilbert_symbol(a, b);
  json r{{"a", padic_json(a)}, {"b", padic_json(b)}, {"value", v}, {"pass", true}};
  if (spec.contains("expect")) r["pass"] = get_int(spec, "expect", 0) == v;
  return json::array({r});
}

Results cmd_eta(const json& spec, const FieldConfig& cfg, const Options&) {
  auto a = read_num(at(spec, "a", ""), cfg, "/a");
  if (a.is_zero()) throw UsageError("/a", "argument must be nonzero");
  const auto ext = cfg.extension();
  const int v = eta(a, ext);
  json r{{"a", padic_json(a)}, {"value", v}, {"in_norm_group", v == 1}};
  if (v == 1) {
    auto b = norm_preimage(a, ext);
    r["norm_preimage"] = b ? ext_json(*b) : json(nullptr);
    r["pass"] = b && b->norm() == a;
  } else {
    r["pass"] = true;
  }
  return json::array({r});
}

Results cmd_weil_gamma(const json& spec, const FieldConfig& cfg, const Options&) {
  auto d = read_vec(at(spec, "diag", ""), cfg, "/diag");
  if (d.empty()) throw UsageError("/diag", "expected a nonempty diagonal");
  for (size_t i = 0; i < d.size(); ++i)
    if (d[i].is_zero()) throw UsageError("/diag/" + std::to_string(i), "entries must be nonzero");
  const int shrink = static_cast<int>(get_int(spec, "shrink", 0));
  auto w = weil_index_sum(d, shrink);
  json r{{"diag", json::array()}, {"gamma", mu8_json(w.gamma)}, {"integral", complex_json(w.integral)}};
  for (const auto& x : d) r["diag"].push_back(padic_json(x));
  r["pass"] = true;
  if (shrink == 0) r["pass"] = weil_index_sum(d, 1).gamma == w.gamma;
  r["lattice_independent"] = r["pass"];
  return json::array({r});
}

Results cmd_classify(const json& spec, const FieldConfig& cfg, const Options&) {
  json r;
  auto fill = [&](const OrbitInvariant& inv, bool rss, const std::optional<AbsValue>& disc) {
    r["invariant"] = json::array();
    for (const auto& c : inv.coeffs) r["invariant"].push_back(padic_json(c));
    r["regular_semisimple"] = rss;
    r["disc_factor"] = disc ? abs_json(*disc) : json(nullptr);
    r["pass"] = true;
  };
  if (read_side(spec) == Side::S) {
    auto x = read_s(at(spec, "X", ""), cfg, "/X");
    const bool rss = is_regular_semisimple(x);
    fill(invariant(x), rss, rss ? std::optional<AbsValue>(disc_factor(x)) : std::nullopt);
    r["kappa"] = rss ? json(kappa(x, cfg.extension())) : json(nullptr);
  } else {
    auto y = read_sprime(at(spec, "Y", ""), cfg, "/Y");
    const bool rss = is_regular_semisimple(y);
    fill(invariant(y), rss, rss ? std::optional<AbsValue>(disc_factor(y)) : std::nullopt);
  }
  return json::array({r});
}

Results cmd_match(const json& spec, const FieldConfig& cfg, const Options&) {
  auto x = read_s(at(spec, "X", ""), cfg, "/X");
  auto y = read_sprime(at(spec, "Y", ""), cfg, "/Y");
  if (x.n() != y.n()) throw UsageError("/Y", "X and Y differ in size");
  json r{{"matches", matches(x, y)}};
  MatF a = x.a1 * x.a2;
  r["A_in_gamma_norm"] = to_string(is_in_gamma_norm(a, cfg.gamma, cfg.extension()));
  const bool m = matches(x, y);
  r["disc_equal"] = m ? json(disc_factor(x) == disc_factor(y)) : json(nullptr);
  r["pass"] = m ? json(disc_factor(x) == disc_factor(y)) : json(true);
  if (spec.contains("expect")) {
    const json& e = spec.at("expect");
    if (!e.is_boolean()) throw UsageError("/expect", "expected a boolean");
    r["pass"] = r["pass"].get<bool>() && e.get<bool>() == m;
  }
  return json::array({r});
}

MatF random_invertible(std::mt19937_64& rng, const FieldConfig& cfg, int n) {
  std::uniform_int_distribution<int> dv(-2, 2);
  std::uniform_int_distribution<int64_t> du(1, cfg.p * cfg.p - 1);
  for (;;) {
    MatF m(n, n, cfg.zero());
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        int64_t u = du(rng);
        if (u % cfg.p == 0) continue;
        m(i, j) = PadicNumber::from_parts(dv(rng), u, cfg.p, cfg.precision);
      }
    if (!m.det().is_zero()) return m;
  }
}

Results cmd_kappa(const json& spec, const FieldConfig& cfg, const Options& opt) {
  const auto ext = cfg.extension();
  Results out = json::array();
  auto check = [&](const LieSElement& x, const HElement* h) {
    json r{{"X", s_json(x)}, {"kappa", kappa(x, ext)}, {"pass", true}};
    if (h) {
      auto hx = act(*h, x);
      const int eh = eta_h(*h, ext);
      r["eta_h"] = eh;
      r["kappa_hX"] = kappa(hx, ext);
      r["pass"] = kappa(hx, ext) == eh * kappa(x, ext);
    }
    out.push_back(r);
  };
  if (spec.contains("random")) {
    const int64_t count = get_int(spec, "random", 0);
    const int n = static_cast<int>(get_int(spec, "n", 1));
    if (count < 0 || n < 1 || n > 3) throw UsageError("/random", "need count >= 0 and 1 <= n <= 3");
    std::mt19937_64 rng(opt.seed);
    for (int64_t i = 0; i < count; ++i) {
      LieSElement x{random_invertible(rng, cfg, n), random_invertible(rng, cfg, n)};
      HElement h{random_invertible(rng, cfg, n), random_invertible(rng, cfg, n)};
      check(x, &h);
    }
    return out;
  }
  auto x = read_s(at(spec, "X", ""), cfg, "/X");
  if (spec.contains("h")) {
    const json& hj = spec.at("h");
    HElement h{read_matf(at(hj, "h1", "/h"), cfg, "/h/h1"), read_matf(at(hj, "h2", "/h"), cfg, "/h/h2")};
    if (h.h1.rows() != x.n() || h.h2.rows() != x.n()) throw UsageError("/h", "size mismatch");
    if (h.h1.det().is_zero() || h.h2.det().is_zero()) throw UsageError("/h", "h must be invertible");
    check(x, &h);
  } else {
    check(x, nullptr);
  }
  return out;
}

json nilp_json(const NilpotentInvariants& inv) {
  return {{"r", inv.r}, {"twice_m", inv.twice_m}, {"m", inv.m_string()}};
}

TableReading read_reading(const json& spec) {
  const std::string s = get_string(spec, "reading", "printed");
  if (s == "printed") return TableReading::Printed;
  if (s == "grading-exact") return TableReading::GradingExact;
  throw UsageError("/reading", "expected printed or grading-exact");
}

Results cmd_nilp_table(const json& spec, const FieldConfig&, const Options&) {
  const TableReading reading = read_reading(spec);
  std::vector<SignedPartition> parts;
  if (spec.contains("partition")) {
    try {
      parts.push_back(SignedPartition::parse(get_string(spec, "partition", "")));
    } catch (const std::exception& e) {
      throw UsageError("/partition", e.what());
    }
  } else {
    const int64_t n = get_int(spec, "n", 2);
    if (n < 1 || n > 8) throw UsageError("/n", "expected 1 <= n <= 8");
    parts = signed_partitions(static_cast<int>(n));
  }
  const bool with_oracle = spec.value("oracle", true);
  Results out = json::array();
  for (const auto& sp : parts) {
    auto t = table_invariants(sp, reading);
    json r{{"partition", sp.to_string()}, {"table", nilp_json(t)}, {"pass", true}};
    if (with_oracle && sp.n() <= 6) {
      auto o = matrix_oracle(sp);
      r["oracle"] = nilp_json(o);
      r["pass"] = t.same_totals(o);
    }
    out.push_back(r);
  }
  return out;
}

Results cmd_nilp_verify(const json& spec, const FieldConfig&, const Options&) {
  const int64_t n_max = get_int(spec, "n_max", 5);
  const int64_t n_min = get_int(spec, "n_min", 1);
  const int64_t oracle_max = get_int(spec, "oracle_max", std::min<int64_t>(n_max, 5));
  if (n_min < 1 || n_max < n_min || n_max > 8) throw UsageError("/n_max", "expected 1 <= n_min <= n_max <= 8");
  const TableReading reading = read_reading(spec);
  auto rows = nilpotent_scan(static_cast<int>(n_min), static_cast<int>(n_max),
                             static_cast<int>(oracle_max), default_exec());
  Results out = json::array();
  for (const auto& row : rows) {
    const auto& table = reading == TableReading::Printed ? row.printed : row.exact;
    const bool table_ok = !row.has_oracle || table.same_totals(row.oracle.s);
    json r{{"partition", row.sp.to_string()},
           {"table", nilp_json(table)},
           {"inequalities", row.ineq.ok()},
           {"twice_slack", row.ineq.twice_slack}};
    if (row.has_oracle) {
      r["oracle"] = nilp_json(row.oracle.s);
      r["sl2_identity"] = row.oracle.sl2_identity();
    }
    r["pass"] = table_ok && row.ineq.ok() && (!row.has_oracle || row.oracle.sl2_identity());
    out.push_back(r);
  }
  return out;
}

Results cmd_orbital(const json& spec, const FieldConfig& cfg, const Options&) {
  const Side side = read_side(spec);
  const MeasureConvention m = read_measure(spec);
  json r{{"measure", to_string(m)}, {"pass", true}};
  if (side == Side::S) {
    auto x = read_s(at(spec, "X", ""), cfg, "/X");
    if (spec.contains("depth")) {
      const int depth = static_cast<int>(get_int(spec, "depth", 0));
      auto t = truncated_orbital(x, depth);
      r["engine"] = "lattice-count";
      r["value"] = value_json(t.value);
      r["needed_depth"] = t.needed_depth;
      r["lattices"] = t.lattices;
      r["pass"] = t.value.complete ? json(true) : json(nullptr);
      return json::array({r});
    }
    if (x.n() != 1) throw UnsupportedError("exact orbital engine is n = 1 only; pass depth for n = 2");
    auto sp = LatticeSpace::make(Side::S, 1, cfg);
    auto f = read_function(spec, sp, "");
    const bool twisted = spec.value("twisted", true);
    auto v = orbital_n1(x, f, twisted, m);
    r["engine"] = "shell-sum";
    r["value"] = value_json(v);
    r["normalized"] = value_json(normalized(v, disc_factor(x)));
    r["kappa"] = kappa(x, cfg.extension());
  } else {
    auto y = read_sprime(at(spec, "Y", ""), cfg, "/Y");
    if (y.n() != 1) throw UnsupportedError("exact orbital engine on s' is n = 1 only");
    auto sp = LatticeSpace::make(Side::SPrime, 1, cfg);
    auto f = read_function(spec, sp, "");
    auto v = orbital_n1_prime(y, f, m);
    r["engine"] = "unit-circle-sum";
    r["value"] = value_json(v);
    r["normalized"] = value_json(normalized(v, disc_factor(y)));
  }
  return json::array({r});
}

Results cmd_fourier_orbital(const json& spec, const FieldConfig& cfg, const Options&) {
  const Side side = read_side(spec);
  const MeasureConvention m = read_measure(spec);
  json r{{"measure", to_string(m)}, {"pass", true}};
  if (side == Side::S) {
    auto x = read_s(at(spec, "X", ""), cfg, "/X");
    if (x.n() != 1) throw UnsupportedError("fourier_orbital is n = 1 only");
    auto sp = LatticeSpace::make(Side::S, 1, cfg);
    r["value"] = value_json(fourier_orbital(x, read_function(spec, sp, ""), m));
  } else {
    auto y = read_sprime(at(spec, "Y", ""), cfg, "/Y");
    if (y.n() != 1) throw UnsupportedError("fourier_orbital is n = 1 only");
    auto sp = LatticeSpace::make(Side::SPrime, 1, cfg);
    r["value"] = value_json(fourier_orbital(y, read_function(spec, sp, ""), m));
  }
  return json::array({r});
}

Results cmd_fund_lemma(const json& spec, const FieldConfig& cfg, const Options&) {
  Results out = json::array();
  auto row_json = [&](const FundLemmaRow& row) {
    json r{{"n", row.n}, {"a", json::array()}, {"in_norm", row.in_norm}, {"lhs", value_json(row.lhs)},
           {"rhs", row.rhs ? value_json(*row.rhs) : json(nullptr)}, {"status", to_string(row.status)},
           {"pass", pass_json(row.status)}};
    for (const auto& a : row.a) r["a"].push_back(padic_json(a));
    if (!row.note.empty()) r["note"] = row.note;
    out.push_back(r);
  };
  if (spec.contains("split2")) {
    const json& pairs = spec.at("split2");
    if (!pairs.is_array()) throw UsageError("/split2", "expected an array of [a1, a2]");
    const int depth = static_cast<int>(get_int(spec, "depth", 8));
    for (size_t i = 0; i < pairs.size(); ++i) {
      auto v = read_vec(pairs[i], cfg, "/split2/" + std::to_string(i));
      if (v.size() != 2) throw UsageError("/split2/" + std::to_string(i), "expected [a1, a2]");
      row_json(fund_lemma_check_split2(v[0], v[1], cfg, depth));
    }
    return out;
  }
  int64_t j_min = -2, j_max = 6;
  if (spec.contains("j_range")) {
    const json& jr = spec.at("j_range");
    if (!jr.is_array() || jr.size() != 2 || !jr[0].is_number_integer() || !jr[1].is_number_integer())
      throw UsageError("/j_range", "expected [j_min, j_max]");
    j_min = jr[0].get<int64_t>();
    j_max = jr[1].get<int64_t>();
  }
  std::vector<int64_t> units{1, cfg.u0(), cfg.p + 1, 2 * cfg.p - 1};
  if (spec.contains("units")) {
    units.clear();
    const json& u = spec.at("units");
    if (!u.is_array()) throw UsageError("/units", "expected an array of integers");
    for (size_t i = 0; i < u.size(); ++i) {
      if (!u[i].is_number_integer() || u[i].get<int64_t>() % cfg.p == 0)
        throw UsageError("/units/" + std::to_string(i), "expected an integer prime to p");
      units.push_back(u[i].get<int64_t>());
    }
  }
  for (const auto& row : fund_lemma_grid(cfg, static_cast<int>(j_min), static_cast<int>(j_max), units))
    row_json(row);
  return out;
}

json point_json(const LimitPoint& pt) {
  return {{"v_mu", pt.v_mu},          {"conjugate", pt.conjugate}, {"lhs", complex_json(pt.lhs)},
          {"rhs", complex_json(pt.rhs)}, {"deviation", pt.deviation}, {"ball_scale", pt.ball_scale},
          {"lhs_exact_zero", pt.lhs_exact_zero}, {"stabilized", pt.stabilized}, {"pass", pt.pass}};
}

Results cmd_limit_check(const json& spec, const FieldConfig& cfg, const Options&) {
  const Side side = read_side(spec);
  const int64_t mu_unit = get_int(spec, "mu_unit", 1);
  if (mu_unit % cfg.p == 0) throw UsageError("/mu_unit", "must be prime to p");
  const int v_max = static_cast<int>(get_int(spec, "v_max", 8));
  const double tol = get_double(spec, "tol", 1e-9);
  LimitSearch s;
  json r;
  if (side == Side::S) {
    auto x = read_s(at(spec, "X", ""), cfg, "/X");
    auto y = read_s(at(spec, "Y", ""), cfg, "/Y");
    s = limit_formula_check(x, y, mu_unit, v_max, cfg, tol);
    if (spec.contains("scaling_v")) {
      const int v = static_cast<int>(get_int(spec, "scaling_v", -2));
      auto sc = limit_scaling_check(x, y, PadicNumber::from_parts(v, mu_unit, cfg.p, cfg.precision), cfg, tol);
      r["scaling"] = {{"direct", complex_json(sc.direct)}, {"predicted", complex_json(sc.predicted)},
                      {"deviation", sc.deviation}, {"pass", sc.pass}};
    }
  } else {
    auto x = read_sprime(at(spec, "X", ""), cfg, "/X");
    auto y = read_sprime(at(spec, "Y", ""), cfg, "/Y");
    s = limit_formula_check(x, y, mu_unit, v_max, cfg, tol);
  }
  r["trail"] = json::array();
  for (const auto& pt : s.trail) r["trail"].push_back(point_json(pt));
  r["found"] = s.found;
  r["N"] = s.found ? json(s.N) : json(nullptr);
  r["status"] = to_string(s.status);
  json pass = pass_json(s.status);
  if (r.contains("scaling") && !r["scaling"]["pass"].get<bool>()) pass = false;
  r["pass"] = pass;
  if (!s.found) r["suggestion"] = "increase v_max beyond " + std::to_string(v_max);
  return json::array({r});
}

json cross_json(const CrossSideReport& c) {
  return {{"X", s_json(c.x)},
          {"U", s_json(c.u)},
          {"Y", sprime_json(c.y)},
          {"V", sprime_json(c.v)},
          {"conjugator_ok", c.conjugator_ok},
          {"pairing_equal", c.pairing_equal},
          {"disc_equal", c.disc_equal},
          {"gamma_XU", mu8_json(c.gamma_xu)},
          {"gamma_YV", mu8_json(c.gamma_yv)},
          {"space_ratio", mu8_json(c.space_ratio)},
          {"eta_alpha", c.eta_alpha},
          {"gamma_identity", c.gamma_identity},
          {"gamma_identity_with_eta_alpha", c.gamma_identity_eta},
          {"pass", c.conjugator_ok && c.pairing_equal && c.disc_equal && c.gamma_identity}};
}

Results cmd_gamma_pair(const json& spec, const FieldConfig& cfg, const Options& opt) {
  Results out = json::array();
  if (spec.contains("cross")) {
    const json& c = spec.at("cross");
    if (c.is_object() && c.contains("random")) {
      const int64_t count = get_int(c, "random", 50, "/cross");
      std::mt19937_64 rng(opt.seed);
      std::uniform_int_distribution<int> dv(-2, 2);
      std::uniform_int_distribution<int64_t> du(1, cfg.p * cfg.p - 1);
      auto draw = [&]() {
        for (;;) {
          int64_t u = du(rng);
          if (u % cfg.p) return PadicNumber::from_parts(dv(rng), u, cfg.p, cfg.precision);
        }
      };
      for (int64_t i = 0; i < count; ++i) {
        ExtElement b(draw(), draw(), cfg.extension().delta_sq);
        out.push_back(cross_json(cross_side_check(b, draw(), cfg)));
      }
      return out;
    }
    auto b = read_ext(at(c, "b", "/cross"), cfg, "/cross/b");
    auto r = read_num(at(c, "r", "/cross"), cfg, "/cross/r");
    if (b.is_zero() || r.is_zero()) throw UsageError("/cross", "b and r must be nonzero");
    out.push_back(cross_json(cross_side_check(b, r, cfg)));
    return out;
  }
  json r;
  Mu8Value g, gs;
  if (read_side(spec) == Side::S) {
    auto x = read_s(at(spec, "X", ""), cfg, "/X");
    auto y = read_s(at(spec, "Y", ""), cfg, "/Y");
    g = gamma_pair(x, y);
    gs = gamma_pair(y, x);
  } else {
    auto x = read_sprime(at(spec, "X", ""), cfg, "/X");
    auto y = read_sprime(at(spec, "Y", ""), cfg, "/Y");
    g = gamma_pair(x, y);
    gs = gamma_pair(y, x);
  }
  r["gamma"] = mu8_json(g);
  r["symmetric"] = g == gs;
  r["pass"] = g == gs;
  out.push_back(r);
  return out;
}

using Handler = std::function<Results(const json&, const FieldConfig&, const Options&)>;

const std::map<std::string, Handler>& handlers() {
  static const std::map<std::string, Handler> h{
      {"hilbert", cmd_hilbert},       {"eta", cmd_eta},
      {"weil-gamma", cmd_weil_gamma}, {"classify", cmd_classify},
      {"match", cmd_match},           {"kappa", cmd_kappa},
      {"nilp-table", cmd_nilp_table}, {"nilp-verify", cmd_nilp_verify},
      {"orbital", cmd_orbital},       {"fund-lemma", cmd_fund_lemma},
      {"fourier-orbital", cmd_fourier_orbital},
      {"limit-check", cmd_limit_check},
      {"gamma-pair", cmd_gamma_pair}};
  return h;
}

}  // namespace

const std::vector<CommandInfo>& commands() {
  static const std::vector<CommandInfo> list{
      {"hilbert", "padic_core::hilbert_symbol", "Hilbert symbol (a, b)"},
      {"eta", "padic_core::eta", "quadratic character of E/F and a norm preimage"},
      {"weil-gamma", "weil_index::weil_index_sum", "Weil index of a diagonal form, checked on two lattices"},
      {"classify", "orbit_matching::invariant", "invariant, regularity, |D| and kappa of an element"},
      {"match", "orbit_matching::matches", "whether X in s and Y in s' match"},
      {"kappa", "orbit_matching::kappa", "transfer factor and its equivariance under H"},
      {"nilp-table", "nilpotent_invariants::table_invariants", "(r, m) from the table, with the matrix oracle"},
      {"nilp-verify", "nilpotent_invariants::nilpotent_scan", "table vs oracle and the inequalities up to n_max"},
      {"orbital", "orbital_integrals::orbital_n1 / orbital_n1_prime / truncated_orbital", "orbital integral of a coset function"},
      {"fund-lemma", "orbital_integrals::fund_lemma_check", "f0 against f0' over an invariant grid"},
      {"fourier-orbital", "orbital_integrals::fourier_orbital", "normalized orbital integral of the Fourier transform"},
      {"limit-check", "orbital_integrals::limit_formula_check", "measured kernel against the Weyl-type sum"},
      {"gamma-pair", "orbital_integrals::gamma_pair / cross_side_check", "Weil index of q_{X,Y} and the cross-side comparison"}};
  return list;
}

Outcome run(const std::string& command, const json& spec, const Options& opt) {
  Outcome out;
  json& rep = out.report;
  rep["meta"] = {{"tool", "padic-transfer"}, {"schema", kSchemaVersion}, {"command", command},
                 {"seed", opt.seed}};
  rep["inputs"] = spec;
  rep["results"] = json::array();
  auto it = handlers().find(command);
  if (it == handlers().end()) {
    rep["error"] = {{"kind", "usage"}, {"path", ""}, {"message", "unknown command '" + command + "'"}};
    rep["pass"] = false;
    out.exit_code = kUsage;
    return out;
  }
  const auto t0 = std::chrono::steady_clock::now();
  try {
    if (!spec.is_object()) throw UsageError("", "job spec must be a JSON object");
    FieldConfig cfg = read_field(spec);
    rep["meta"]["field"] = field_json(cfg);
    rep["results"] = it->second(spec, cfg, opt);
  } catch (const UsageError& e) {
    rep["error"] = {{"kind", "usage"}, {"path", e.path()}, {"message", e.what()}};
    rep["pass"] = false;
    out.exit_code = kUsage;
    return out;
  } catch (const UnsupportedError& e) {
    rep["error"] = {{"kind", "unsupported"}, {"message", e.what()}};
    rep["pass"] = nullptr;
    out.exit_code = kInconclusive;
    return out;
  } catch (const PrecisionError& e) {
    rep["error"] = {{"kind", "precision"}, {"message", e.what()}};
    rep["pass"] = nullptr;
    out.exit_code = kInconclusive;
    return out;
  } catch (const DomainError& e) {
    rep["error"] = {{"kind", "domain"}, {"message", e.what()}};
    rep["pass"] = false;
    out.exit_code = kUsage;
    return out;
  }
  if (opt.timing)
    rep["meta"]["seconds"] =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  bool any_fail = false, any_open = false;
  for (const auto& r : rep["results"]) {
    const json& p = r.at("pass");
    if (p.is_null()) any_open = true;
    else if (!p.get<bool>()) any_fail = true;
  }
  if (rep["results"].empty()) rep["warnings"] = json::array({"no results; pass is vacuous"});
  rep["summary"] = {{"results", rep["results"].size()}};
  if (any_fail) {
    rep["pass"] = false;
    out.exit_code = kFail;
  } else if (any_open) {
    rep["pass"] = nullptr;
    out.exit_code = kInconclusive;
  } else {
    rep["pass"] = true;
  }
  return out;
}

}  // namespace jobs
