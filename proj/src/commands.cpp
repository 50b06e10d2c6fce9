#include "wallcross/commands.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include "wallcross/coeff.hpp"
#include "wallcross/errors.hpp"
#include "wallcross/hall.hpp"
#include "wallcross/integrate.hpp"
#include "wallcross/selftest.hpp"
#include "wallcross/series.hpp"
#include "wallcross/stability.hpp"

namespace wallcross {

namespace {

std::string str(const Rational& x) { return to_string(x); }

Json beta_json(const Beta& b) { return Json(b); }

Json class_json(const NumClass& v) { return Json{{"r", v.r}, {"beta", v.beta}, {"n", v.n}}; }

std::string tuple_string(const std::vector<NumClass>& t) {
  std::string out;
  for (std::size_t i = 0; i < t.size(); ++i) out += (i ? " " : "") + to_string(t[i]);
  return out;
}

const Rational& need(const std::optional<Rational>& x, const char* field) {
  if (!x) throw ConfigError(std::string(field) + ": missing, required by this command");
  return *x;
}

const NumClass& need(const std::optional<NumClass>& x, const char* field) {
  if (!x) throw ConfigError(std::string(field) + ": missing, required by this command");
  return *x;
}

CommandOutput run_coeff(const RunConfig& cfg, bool is_s) {
  if (cfg.tuple.empty()) throw ConfigError("options.tuple: missing, required by this command");
  const StabilityParam kz(need(cfg.k, "stability.k")), kzp(need(cfg.k_prime, "stability.k_prime"));
  for (const auto& v : cfg.tuple) cfg.model.require_dimension(v.beta);
  const Rational value = is_s ? Rational(s_coeff(cfg.tuple, kz, kzp, cfg.model)) : u_coeff(cfg.tuple, kz, kzp, cfg.model);
  CommandOutput out;
  Json tuple = Json::array();
  for (const auto& v : cfg.tuple) tuple.push_back(class_json(v));
  out.doc = {{"command", is_s ? "coeff-s" : "coeff-u"}, {"k", str(kz.k())}, {"k_prime", str(kzp.k())},
             {"tuple", tuple}, {"value", str(value)}};
  out.header = {"tuple", "k", "k_prime", "value"};
  out.rows.push_back({tuple_string(cfg.tuple), str(kz.k()), str(kzp.k()), str(value)});
  return out;
}

CommandOutput run_decomp(const RunConfig& cfg) {
  const NumClass& v = need(cfg.target, "options.class");
  const StabilityParam k(need(cfg.k, "stability.k"));
  cfg.model.require_dimension(v.beta);
  const auto tuples = decompositions(v, k, cfg.model);
  CommandOutput out;
  Json list = Json::array();
  out.header = {"index", "length", "tuple"};
  for (std::size_t i = 0; i < tuples.size(); ++i) {
    Json t = Json::array();
    for (const auto& p : tuples[i]) t.push_back(class_json(p));
    list.push_back(t);
    out.rows.push_back({std::to_string(i), std::to_string(tuples[i].size()), tuple_string(tuples[i])});
  }
  out.doc = {{"command", "decomp"}, {"class", class_json(v)}, {"k", str(k.k())},
             {"count", tuples.size()}, {"tuples", list}};
  return out;
}

CommandOutput run_walls(const RunConfig& cfg) {
  const Beta beta = cfg.walls_beta.value_or(cfg.beta_cutoff);
  const WallSet w = walls(beta, cfg.model);
  CommandOutput out;
  Json list = Json::array();
  out.header = {"wall", "chamber_below", "chamber_above"};
  for (const auto& k0 : w.walls_in(cfg.walls_range.first, cfg.walls_range.second)) {
    const auto [lo, hi] = w.chamber_samples(k0);
    list.push_back({{"wall", str(k0)}, {"chamber_below", str(lo)}, {"chamber_above", str(hi)}});
    out.rows.push_back({str(k0), str(lo), str(hi)});
  }
  out.doc = {{"command", "walls"},
             {"beta", beta_json(beta)},
             {"denominators", std::vector<std::int64_t>(w.denominators.begin(), w.denominators.end())},
             {"range", {str(cfg.walls_range.first), str(cfg.walls_range.second)}},
             {"walls", list}};
  return out;
}

GeneratorSet closed_generators(const NumClass& v, const StabilityParam& kz, const StabilityParam& kzp,
                               const RunConfig& cfg) {
  std::set<NumClass> parts;
  for (const auto& t : decompositions(v, kz, cfg.model)) parts.insert(t.begin(), t.end());
  GeneratorSet gens{{parts.begin(), parts.end()}, Truncation{cfg.v_max, cfg.max_word_length}};
  for (;;) {
    const std::size_t before = gens.classes.size();
    gens.classes = reachable_classes(gens, kz, cfg.model);
    gens.classes = reachable_classes(gens, kzp, cfg.model);
    if (gens.classes.size() == before) return gens;
  }
}

CommandOutput run_hall_verify(const RunConfig& cfg) {
  const NumClass& v = need(cfg.target, "options.class");
  const StabilityParam kz(need(cfg.k, "stability.k")), kzp(need(cfg.k_prime, "stability.k_prime"));
  cfg.model.require_dimension(v.beta);
  const GeneratorSet gens = closed_generators(v, kz, kzp, cfg);
  const bool dominant = dominates_below(v, kz, kzp, cfg.model);
  const auto policy = dominant ? Dominance::Require : Dominance::Skip;
  const auto has = [&](const NumClass& w) {
    return std::find(gens.classes.begin(), gens.classes.end(), w) != gens.classes.end();
  };

  CommandOutput out;
  out.header = {"check", "class", "status"};
  Json checks = Json::array();
  std::map<std::string, std::size_t> passed, failed, skipped;
  const auto record = [&](const std::string& name, const NumClass& w, const char* status) {
    checks.push_back({{"check", name}, {"class", class_json(w)}, {"status", status}});
    out.rows.push_back({name, to_string(w), status});
    if (std::string(status) == "fail") out.ok = false;
  };
  const auto expect = [&](const std::string& name, const NumClass& w, const HallExpr& got, const HallExpr& want) {
    record(name, w, got == want ? "pass" : "fail");
  };

  for (const auto& w : phase_block(v, gens, kz, cfg.model)) {
    const HallExpr back = substitute(
        delta_from_eps(w, gens, kz, cfg.model),
        [&](const Symbol& s) { return eps_from_delta(s.cls, gens, kz, cfg.model); }, gens.truncation);
    expect("log_exp", w, back, has(w) ? HallExpr::of(Symbol::delta(w, kz)) : HallExpr());
  }
  for (const auto& w : phase_block(v, gens, kzp, cfg.model)) {
    expect("invert_then_transform", w,
           substitute(invert_delta(w, gens, kz, kzp, cfg.model, policy),
                      [&](const Symbol& s) { return transform_delta(s.cls, gens, kz, kzp, cfg.model, policy); },
                      gens.truncation),
           has(w) ? HallExpr::of(Symbol::delta(w, kz)) : HallExpr());
    expect("transform_then_invert", w,
           substitute(transform_delta(w, gens, kz, kzp, cfg.model, policy),
                      [&](const Symbol& s) { return invert_delta(s.cls, gens, kz, kzp, cfg.model, policy); },
                      gens.truncation),
           HallExpr::of(Symbol::delta(w, kzp)));
    if (!dominant) {
      record("eps_transform", w, "skipped");
      record("s_path", w, "skipped");
      continue;
    }
    const HallExpr via_delta = substitute(
        substitute(eps_from_delta(w, gens, kzp, cfg.model),
                   [&](const Symbol& s) { return transform_delta(s.cls, gens, kz, kzp, cfg.model); },
                   gens.truncation),
        [&](const Symbol& s) { return delta_from_eps(s.cls, gens, kz, cfg.model); }, gens.truncation);
    expect("eps_transform", w, transform_eps(w, gens, kz, kzp, cfg.model), via_delta);
    expect("s_path", w, transform_delta_via_s(w, gens, kz, kzp, cfg.model),
           transform_delta(w, gens, kz, kzp, cfg.model));
  }
  Json gen_list = Json::array();
  for (const auto& g : gens.classes) gen_list.push_back(class_json(g));
  out.doc = {{"command", "hall-verify"}, {"class", class_json(v)},  {"k", str(kz.k())},
             {"k_prime", str(kzp.k())},  {"dominates", dominant},    {"generators", gen_list},
             {"checks", checks},         {"passed", out.ok}};
  return out;
}

CommandOutput run_transform(const RunConfig& cfg) {
  CommandOutput out;
  out.header = {"beta", "n", "takek", "l_wallcross", "l_from_pn"};
  Json rows = Json::array();
  for (const auto& beta : classes_below(cfg.beta_cutoff)) {
    for (std::int64_t n = cfg.n_range.first; n <= cfg.n_range.second; ++n) {
      if (beta_is_zero(beta) && n != 0) continue;
      const StabilityParam k = choose_takek(n, beta, cfg.model);
      const Rational star = l_wallcross(n, beta, k, cfg.p_table, cfg.n_table, cfg.model);
      const Rational chains = l_from_pn(n, beta, cfg.p_table, cfg.n_table, cfg.model);
      if (star != chains) out.ok = false;
      const Json row = {{"beta", beta_json(beta)}, {"n", n}, {"takek", str(k.k())},
                  {"l_wallcross", str(star)}, {"l_from_pn", str(chains)}};
      const std::vector<std::string> csv{beta_to_string(beta), std::to_string(n), str(k.k()), str(star), str(chains)};
      rows.push_back(row);
      out.rows.push_back(csv);
    }
  }
  out.doc = {{"command", "transform"}, {"agree", out.ok}, {"rows", rows}};
  return out;
}

std::map<Beta, LaurentPoly> l_series_of(const RunConfig& cfg) {
  std::map<Beta, LaurentPoly> out;
  for (const auto& beta : classes_below(cfg.beta_cutoff)) {
    LaurentPoly l;
    if (cfg.l_table.has_row(beta)) {
      for (const auto& [n, x] : cfg.l_table.row(beta)) l.add_term(n, x);
    } else if (beta_is_zero(beta)) {
      l.add_term(0, cfg.l_table.value(0, beta));
    } else {
      throw InputError("L_{n," + beta_to_string(beta) + "}: the L table has no row for beta = " +
                       beta_to_string(beta));
    }
    out[beta] = std::move(l);
  }
  return out;
}

CommandOutput run_series(const RunConfig& cfg) {
  const auto s = expan_build(l_series_of(cfg), cfg.n_table, cfg.model, cfg.beta_cutoff, cfg.mode, cfg.q_window);
  CommandOutput out;
  Json coeffs = Json::array();
  if (cfg.mode == SeriesMode::Window) {
    out.header = {"beta", "n", "value"};
    for (const auto& [beta, series] : s.window_coeffs) {
      Json values = Json::object();
      for (std::int64_t n = cfg.q_window.lo; n <= cfg.q_window.hi; ++n) {
        const Rational x = series.coefficient(n);
        if (x == 0) continue;
        values[std::to_string(n)] = str(x);
        out.rows.push_back({beta_to_string(beta), std::to_string(n), str(x)});
      }
      coeffs.push_back({{"beta", beta_json(beta)}, {"values", values}});
    }
  } else {
    out.header = {"beta", "numerator", "denominator", "q_symmetric"};
    for (const auto& [beta, f] : s.closed_coeffs) {
      const bool sym = q_symmetry_check(f);
      coeffs.push_back({{"beta", beta_json(beta)},
                        {"numerator", to_string(f.num())},
                        {"denominator", to_string(f.den())},
                        {"q_symmetric", sym}});
      out.rows.push_back({beta_to_string(beta), to_string(f.num()), to_string(f.den()), sym ? "true" : "false"});
    }
  }
  out.doc = {{"command", "series"},
             {"mode", cfg.mode == SeriesMode::Window ? "window" : "closed"},
             {"cutoff", beta_json(cfg.beta_cutoff)},
             {"coefficients", coeffs}};
  if (cfg.mode == SeriesMode::Window) out.doc["q_window"] = {cfg.q_window.lo, cfg.q_window.hi};
  return out;
}

CommandOutput run_verify(const RunConfig& cfg) {
  const auto report = verify_roundtrip(cfg.p_table, cfg.n_table, cfg.model, cfg.beta_cutoff, cfg.q_window);
  CommandOutput out;
  out.ok = report.passed();
  Json checks = Json::array();
  for (const auto& c : report.checks) {
    Json j = {{"name", c.name}, {"passed", c.passed}};
    if (c.beta) j["beta"] = beta_json(*c.beta);
    if (c.degree) j["degree"] = *c.degree;
    if (!c.detail.empty()) j["detail"] = c.detail;
    checks.push_back(j);
  }
  out.header = {"beta", "n", "value"};
  Json recovered = Json::array();
  for (const auto& [beta, l] : report.recovered_l) {
    Json values = Json::object();
    for (const auto& [n, x] : l.terms()) {
      values[std::to_string(n)] = str(x);
      out.rows.push_back({beta_to_string(beta), std::to_string(n), str(x)});
    }
    recovered.push_back({{"beta", beta_json(beta)}, {"values", values}});
  }
  Json closed = Json::array();
  for (const auto& [beta, f] : report.closed.closed_coeffs) {
    closed.push_back({{"beta", beta_json(beta)}, {"numerator", to_string(f.num())}, {"denominator", to_string(f.den())}});
  }
  out.doc = {{"command", "verify"}, {"passed", out.ok}, {"checks", checks}, {"recovered_l", recovered},
             {"closed_p", closed}};
  if (!out.ok) out.log = report.summary();
  return out;
}

CommandOutput run_selftest() {
  auto results = run_suite();
  results.push_back(criterion_determinism(format_report(results)));
  CommandOutput out;
  out.header = {"criterion", "name", "passed", "checks", "detail"};
  Json list = Json::array();
  std::size_t total = 0;
  for (const auto& r : results) {
    list.push_back({{"criterion", r.id}, {"name", r.name}, {"passed", r.passed}, {"checks", r.checks},
                    {"detail", r.detail}});
    out.rows.push_back({std::to_string(r.id), r.name, r.passed ? "true" : "false", std::to_string(r.checks), r.detail});
    out.ok = out.ok && r.passed;
    total += r.checks;
    out.log += format_result(r) + '\n';
  }
  out.doc = {{"command", "selftest"}, {"passed", out.ok}, {"total_checks", total}, {"criteria", list}};
  return out;
}

}  // namespace

static std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string render(const CommandOutput& out, std::string_view format) {
  if (format == "json") return out.doc.dump(2) + "\n";
  std::ostringstream os;
  const auto line = [&](const std::vector<std::string>& fields) {
    for (std::size_t i = 0; i < fields.size(); ++i) os << (i ? "," : "") << csv_field(fields[i]);
    os << '\n';
  };
  line(out.header);
  for (const auto& r : out.rows) line(r);
  return os.str();
}


const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names{"coeff-s",   "coeff-u",   "decomp", "walls",   "hall-verify",
                                              "transform", "series",    "verify", "selftest"};
  return names;
}

CommandOutput run_command(const std::string& command, const RunConfig* cfg) {
  if (command == "selftest") return run_selftest();
  static const std::map<std::string, std::function<CommandOutput(const RunConfig&)>> commands{
      {"coeff-s", [](const RunConfig& c) { return run_coeff(c, true); }},
      {"coeff-u", [](const RunConfig& c) { return run_coeff(c, false); }},
      {"decomp", run_decomp},
      {"walls", run_walls},
      {"hall-verify", run_hall_verify},
      {"transform", run_transform},
      {"series", run_series},
      {"verify", run_verify},
  };
  const auto it = commands.find(command);
  if (it == commands.end()) throw ConfigError("command: unknown command " + command);
  if (!cfg) throw ConfigError("--config: required by command " + command);
  return it->second(*cfg);
}

}  // namespace wallcross
