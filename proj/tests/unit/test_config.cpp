#include <string>

#include "doctest.h"
#include "wallcross/config.hpp"
#include "wallcross/errors.hpp"

using namespace wallcross;

namespace {

const char* kBase = R"({
  "model": {"rank": 1, "omega": [1], "beta_bound": [2],
            "m_table": [{"beta": [1], "m": 1}],
            "n_floor_table": [{"beta": [1], "n_floor": -1}, {"beta": [2], "n_floor": -2}]},
  "stability": {"k": "-3/4", "k_prime": "0"},
  "cutoffs": {"beta_cutoff": [1], "q_window": [-4, 6], "max_word_length": 3},
  "tables": {
    "N": [{"beta": [1], "period": ["2"]}, {"beta": [2], "period": ["1", "-1/2"]}],
    "P": [{"beta": [1], "max_n": 6, "values": {"-1": "1/3", "2": "4"}}],
    "L": [{"beta": [1], "values": {"0": "5"}}],
    "L00": "2"
  },
  "mode": "closed",
  "options": {"tuple": [{"r": 0, "beta": [1], "n": 1}, {"r": -1, "beta": [0], "n": 0}],
              "class": {"r": -1, "beta": [2], "n": 2}, "n_range": [-2, 3]}
})";

std::string error_of(const std::string& text) {
  try {
    parse_config(text);
  } catch (const ConfigError& e) {
    return e.what();
  }
  return "";
}

std::string replaced(std::string text, const std::string& from, const std::string& to) {
  const auto at = text.find(from);
  REQUIRE(at != std::string::npos);
  return text.replace(at, from.size(), to);
}

}  // namespace

TEST_CASE("a full config parses losslessly") {
  const RunConfig cfg = parse_config(kBase);
  CHECK(cfg.model.omega() == Beta{1});
  CHECK(cfg.model.m(Beta{1}) == 1);
  CHECK(cfg.model.m(Beta{2}) == 0);
  CHECK(cfg.model.n_floor(Beta{2}) == -2);
  CHECK(*cfg.k == make_rational(-3, 4));
  CHECK(*cfg.k_prime == 0);
  CHECK_FALSE(cfg.wall.has_value());
  CHECK(cfg.beta_cutoff == Beta{1});
  CHECK(cfg.v_max == Beta{2});
  CHECK(cfg.q_window.lo == -4);
  CHECK(cfg.q_window.hi == 6);
  CHECK(cfg.max_word_length == 3);
  CHECK(cfg.n_table.value(7, Beta{2}) == make_rational(-1, 2));
  CHECK(cfg.p_table.value(-1, Beta{1}) == make_rational(1, 3));
  CHECK(cfg.p_table.value(0, Beta{1}) == 0);
  CHECK(cfg.l_table.value(0, Beta{1}) == 5);
  CHECK(cfg.l_table.value(0, Beta{0}) == 2);
  CHECK(cfg.mode == SeriesMode::Closed);
  CHECK(cfg.tuple.size() == 2);
  CHECK(*cfg.target == NumClass{-1, {2}, 2});
  CHECK(cfg.n_range == std::pair<std::int64_t, std::int64_t>{-2, 3});
}

TEST_CASE("minimal config") {
  const RunConfig cfg = parse_config(R"({"model": {"rank": 2, "omega": [1, 2], "beta_bound": [1, 1]}})");
  CHECK(cfg.model.m(Beta{1, 1}) == 0);
  CHECK(cfg.beta_cutoff == Beta{1, 1});
  CHECK(cfg.mode == SeriesMode::Window);
}

TEST_CASE("unknown fields are rejected by path") {
  CHECK(error_of(replaced(kBase, "\"mode\": \"closed\"", "\"mode\": \"closed\", \"speed\": 3")) ==
        "speed: unknown field");
  CHECK(error_of(replaced(kBase, "\"k_prime\": \"0\"", "\"k_prime\": \"0\", \"kz\": \"1\"")) ==
        "stability.kz: unknown field");
  CHECK(error_of(replaced(kBase, "\"L00\": \"2\"", "\"L00\": \"2\", \"Q\": []")) == "tables.Q: unknown field");
  CHECK(error_of(replaced(kBase, "{\"beta\": [1], \"m\": 1}", "{\"beta\": [1], \"m\": 1, \"x\": 0}")) ==
        "model.m_table[0].x: unknown field");
}

TEST_CASE("malformed values name the field") {
  CHECK(error_of(replaced(kBase, "\"k\": \"-3/4\"", "\"k\": -0.75")).rfind("stability.k:", 0) == 0);
  CHECK(error_of(replaced(kBase, "\"k\": \"-3/4\"", "\"k\": \"-3/0\"")).rfind("stability.k:", 0) == 0);
  CHECK(error_of(replaced(kBase, "\"omega\": [1]", "\"omega\": [0]")).rfind("model", 0) == 0);
  CHECK(error_of(replaced(kBase, "\"period\": [\"2\"]", "\"period\": [\"2\", \"3\"]"))
            .rfind("tables.N[0]", 0) == 0);
  CHECK(error_of(replaced(kBase, "\"-1\": \"1/3\"", "\"-2\": \"1/3\"")).rfind("tables.P[0]", 0) == 0);
  CHECK(error_of(replaced(kBase, "\"-1\": \"1/3\"", "\"x\": \"1/3\"")) == "tables.P[0].values.x: key must be an integer n");
  CHECK(error_of(replaced(kBase, "\"q_window\": [-4, 6]", "\"q_window\": [6, -4]")) ==
        "cutoffs.q_window: lo exceeds hi");
  CHECK(error_of(replaced(kBase, "\"n\": 2}", "\"n\": 2, \"s\": 1}")) == "options.class.s: unknown field");
  CHECK(error_of(replaced(kBase, "{\"r\": -1, \"beta\": [0], \"n\": 0}", "{\"r\": -1, \"beta\": [0], \"n\": 1}"))
            .rfind("options.tuple[1]: invalid numerical class", 0) == 0);
  CHECK(error_of(replaced(kBase, "\"beta_cutoff\": [1]", "\"beta_cutoff\": [3]")) ==
        "cutoffs.beta_cutoff: exceeds model.beta_bound");
  CHECK(error_of("{\"model\": ").rfind("config is not valid JSON", 0) == 0);
  CHECK(error_of("{}") == "model: missing");
}
