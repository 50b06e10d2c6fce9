#include "wallcross/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"
#include "wallcross/errors.hpp"

namespace wallcross {

namespace {

using nlohmann::json;

[[noreturn]] void bad(const std::string& path, const std::string& what) {
  throw ConfigError(path + ": " + what);
}

void only_keys(const json& obj, const std::string& path, std::initializer_list<const char*> allowed) {
  if (!obj.is_object()) bad(path, "expected an object");
  const std::set<std::string> ok(allowed.begin(), allowed.end());
  for (const auto& [key, _] : obj.items()) {
    if (!ok.count(key)) bad(path.empty() ? key : path + "." + key, "unknown field");
  }
}

std::string join(const std::string& path, const std::string& key) {
  return path.empty() ? key : path + "." + key;
}

std::string index(const std::string& path, std::size_t i) { return path + "[" + std::to_string(i) + "]"; }

std::int64_t to_int(const json& j, const std::string& path) {
  if (!j.is_number_integer()) bad(path, "expected an integer");
  return j.get<std::int64_t>();
}

Rational to_rational(const json& j, const std::string& path) {
  if (!j.is_string()) bad(path, "expected a rational as a string, e.g. \"-3/4\"");
  try {
    return parse_rational(j.get<std::string>());
  } catch (const std::invalid_argument& e) {
    bad(path, e.what());
  }
}

Beta to_beta(const json& j, const std::string& path) {
  if (!j.is_array()) bad(path, "expected an array of integers");
  Beta b;
  for (std::size_t i = 0; i < j.size(); ++i) b.push_back(to_int(j[i], index(path, i)));
  return b;
}

NumClass to_class(const json& j, const std::string& path) {
  only_keys(j, path, {"r", "beta", "n"});
  for (const char* key : {"r", "beta", "n"}) {
    if (!j.contains(key)) bad(join(path, key), "missing");
  }
  const NumClass v{static_cast<int>(to_int(j["r"], join(path, "r"))), to_beta(j["beta"], join(path, "beta")),
                   to_int(j["n"], join(path, "n"))};
  if (!v.is_valid()) bad(path, "invalid numerical class " + to_string(v));
  return v;
}

std::map<std::int64_t, Rational> to_values(const json& j, const std::string& path) {
  if (!j.is_object()) bad(path, "expected an object mapping n to a rational string");
  std::map<std::int64_t, Rational> out;
  for (const auto& [key, value] : j.items()) {
    std::int64_t n = 0;
    std::size_t used = 0;
    try {
      n = std::stoll(key, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != key.size() || key.empty()) bad(join(path, key), "key must be an integer n");
    out[n] = to_rational(value, join(path, key));
  }
  return out;
}

const json* find(const json& obj, const char* key) {
  auto it = obj.find(key);
  return it == obj.end() ? nullptr : &*it;
}

ConeModel to_model(const json& j) {
  only_keys(j, "model", {"rank", "omega", "beta_bound", "m_table", "n_floor_table"});
  for (const char* key : {"rank", "omega", "beta_bound"}) {
    if (!j.contains(key)) bad(join("model", key), "missing");
  }
  const std::int64_t rank = to_int(j["rank"], "model.rank");
  if (rank <= 0) bad("model.rank", "must be a positive integer");
  const Beta omega = to_beta(j["omega"], "model.omega");
  const Beta bound = to_beta(j["beta_bound"], "model.beta_bound");
  if (static_cast<std::int64_t>(omega.size()) != rank) bad("model.omega", "length differs from model.rank");
  if (static_cast<std::int64_t>(bound.size()) != rank) bad("model.beta_bound", "length differs from model.rank");
  for (std::size_t i = 0; i < bound.size(); ++i) {
    if (bound[i] < 0) bad(index("model.beta_bound", i), "must be nonnegative");
  }

  // Unlisted classes default to m = 0 and N = 0.
  std::map<Beta, std::int64_t> m, floors;
  for (const auto& b : classes_below(bound)) {
    m[b] = 0;
    floors[b] = 0;
  }
  const auto read_table = [&](const char* key, const char* value_key, std::map<Beta, std::int64_t>& into) {
    const json* t = find(j, key);
    if (!t) return;
    const std::string path = join("model", key);
    if (!t->is_array()) bad(path, "expected an array of entries");
    for (std::size_t i = 0; i < t->size(); ++i) {
      const std::string at = index(path, i);
      only_keys((*t)[i], at, {"beta", value_key});
      if (!(*t)[i].contains("beta")) bad(join(at, "beta"), "missing");
      if (!(*t)[i].contains(value_key)) bad(join(at, value_key), "missing");
      const Beta b = to_beta((*t)[i]["beta"], join(at, "beta"));
      if (b.size() != bound.size() || !beta_leq(Beta(b.size(), 0), b) || !beta_leq(b, bound)) {
        bad(join(at, "beta"), "class " + beta_to_string(b) + " is not between 0 and the bound");
      }
      into[b] = to_int((*t)[i][value_key], join(at, value_key));
    }
  };
  read_table("m_table", "m", m);
  read_table("n_floor_table", "n_floor", floors);
  try {
    return ConeModel(omega, bound, m, floors);
  } catch (const ConfigError& e) {
    bad("model", e.what());
  }
}

void read_tables(const json& j, RunConfig& cfg) {
  only_keys(j, "tables", {"N", "P", "L", "L00"});
  const auto rows = [&](const char* key) -> std::vector<std::pair<std::string, const json*>> {
    std::vector<std::pair<std::string, const json*>> out;
    const json* t = find(j, key);
    if (!t) return out;
    const std::string path = join("tables", key);
    if (!t->is_array()) bad(path, "expected an array of rows");
    for (std::size_t i = 0; i < t->size(); ++i) out.emplace_back(index(path, i), &(*t)[i]);
    return out;
  };
  const auto row_beta = [&](const json& row, const std::string& at) {
    if (!row.contains("beta")) bad(join(at, "beta"), "missing");
    const Beta b = to_beta(row["beta"], join(at, "beta"));
    if (b.size() != cfg.model.rank()) bad(join(at, "beta"), "dimension differs from model.rank");
    if (!beta_leq(b, cfg.model.bound())) bad(join(at, "beta"), "class lies outside model.beta_bound");
    return b;
  };
  try {
    for (const auto& [at, row] : rows("N")) {
      only_keys(*row, at, {"beta", "period"});
      const Beta b = row_beta(*row, at);
      if (!row->contains("period") || !(*row)["period"].is_array()) bad(join(at, "period"), "expected an array");
      std::vector<Rational> period;
      for (std::size_t i = 0; i < (*row)["period"].size(); ++i) {
        period.push_back(to_rational((*row)["period"][i], index(join(at, "period"), i)));
      }
      try {
        cfg.n_table.set_period(b, std::move(period), cfg.model);
      } catch (const ConfigError& e) {
        bad(at, e.what());
      }
    }
    for (const auto& [at, row] : rows("P")) {
      only_keys(*row, at, {"beta", "max_n", "values"});
      const Beta b = row_beta(*row, at);
      if (!row->contains("max_n")) bad(join(at, "max_n"), "missing");
      const auto values = row->contains("values") ? to_values((*row)["values"], join(at, "values"))
                                                   : std::map<std::int64_t, Rational>{};
      try {
        cfg.p_table.set_window(b, values, to_int((*row)["max_n"], join(at, "max_n")), cfg.model);
      } catch (const ConfigError& e) {
        bad(at, e.what());
      }
    }
    for (const auto& [at, row] : rows("L")) {
      only_keys(*row, at, {"beta", "values"});
      const Beta b = row_beta(*row, at);
      cfg.l_table.set_support(b, row->contains("values") ? to_values((*row)["values"], join(at, "values"))
                                                         : std::map<std::int64_t, Rational>{});
      cfg.has_l_table = true;
    }
  } catch (const DomainError& e) {
    throw ConfigError(std::string("tables: ") + e.what());
  }
  if (const json* origin = find(j, "L00")) cfg.l_table.set_origin_value(to_rational(*origin, "tables.L00"));
}

std::pair<std::int64_t, std::int64_t> int_pair(const json& j, const std::string& path) {
  if (!j.is_array() || j.size() != 2) bad(path, "expected [lo, hi]");
  const auto lo = to_int(j[0], index(path, 0)), hi = to_int(j[1], index(path, 1));
  if (lo > hi) bad(path, "lo exceeds hi");
  return {lo, hi};
}

}  // namespace

RunConfig parse_config(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  only_keys(doc, "", {"model", "stability", "cutoffs", "tables", "mode", "options"});
  if (!doc.contains("model")) bad("model", "missing");

  RunConfig cfg;
  cfg.model = to_model(doc["model"]);
  cfg.beta_cutoff = cfg.model.bound();
  cfg.v_max = cfg.model.bound();

  if (const json* s = find(doc, "stability")) {
    only_keys(*s, "stability", {"k", "k_prime", "wall"});
    if (const json* x = find(*s, "k")) cfg.k = to_rational(*x, "stability.k");
    if (const json* x = find(*s, "k_prime")) cfg.k_prime = to_rational(*x, "stability.k_prime");
    if (const json* x = find(*s, "wall")) cfg.wall = to_rational(*x, "stability.wall");
  }

  if (const json* c = find(doc, "cutoffs")) {
    only_keys(*c, "cutoffs", {"beta_cutoff", "q_window", "v_max", "max_word_length"});
    const auto inside = [&](const char* key, Beta& into) {
      const json* x = find(*c, key);
      if (!x) return;
      const std::string path = join("cutoffs", key);
      into = to_beta(*x, path);
      if (into.size() != cfg.model.rank()) bad(path, "dimension differs from model.rank");
      if (!beta_leq(into, cfg.model.bound())) bad(path, "exceeds model.beta_bound");
      if (!beta_leq(Beta(into.size(), 0), into)) bad(path, "must be nonnegative");
    };
    inside("beta_cutoff", cfg.beta_cutoff);
    inside("v_max", cfg.v_max);
    if (const json* x = find(*c, "q_window")) {
      const auto [lo, hi] = int_pair(*x, "cutoffs.q_window");
      cfg.q_window = QWindow{lo, hi};
    }
    if (const json* x = find(*c, "max_word_length")) {
      const auto len = to_int(*x, "cutoffs.max_word_length");
      if (len < 0) bad("cutoffs.max_word_length", "must be nonnegative");
      cfg.max_word_length = static_cast<std::size_t>(len);
    }
  }

  if (const json* t = find(doc, "tables")) read_tables(*t, cfg);

  if (const json* m = find(doc, "mode")) {
    if (!m->is_string()) bad("mode", "expected \"window\" or \"closed\"");
    const auto s = m->get<std::string>();
    if (s == "window") {
      cfg.mode = SeriesMode::Window;
    } else if (s == "closed") {
      cfg.mode = SeriesMode::Closed;
    } else {
      bad("mode", "expected \"window\" or \"closed\", got \"" + s + "\"");
    }
  }

  if (const json* o = find(doc, "options")) {
    only_keys(*o, "options", {"tuple", "class", "walls_beta", "walls_range", "n_range"});
    if (const json* x = find(*o, "tuple")) {
      if (!x->is_array() || x->empty()) bad("options.tuple", "expected a nonempty array of classes");
      for (std::size_t i = 0; i < x->size(); ++i) cfg.tuple.push_back(to_class((*x)[i], index("options.tuple", i)));
    }
    if (const json* x = find(*o, "class")) cfg.target = to_class(*x, "options.class");
    if (const json* x = find(*o, "walls_beta")) {
      cfg.walls_beta = to_beta(*x, "options.walls_beta");
      if (cfg.walls_beta->size() != cfg.model.rank()) bad("options.walls_beta", "dimension differs from model.rank");
    }
    if (const json* x = find(*o, "walls_range")) {
      if (!x->is_array() || x->size() != 2) bad("options.walls_range", "expected [lo, hi]");
      cfg.walls_range = {to_rational((*x)[0], "options.walls_range[0]"),
                         to_rational((*x)[1], "options.walls_range[1]")};
      if (cfg.walls_range.first > cfg.walls_range.second) bad("options.walls_range", "lo exceeds hi");
    }
    if (const json* x = find(*o, "n_range")) cfg.n_range = int_pair(*x, "options.n_range");
  }
  return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config(text.str());
}

}  // namespace wallcross
