#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "wallcross/cone.hpp"
#include "wallcross/integrate.hpp"
#include "wallcross/rational.hpp"
#include "wallcross/series.hpp"

namespace wallcross {

/// Everything one CLI run needs, parsed from a single JSON document.
///
/// Rationals are strings ("-3/4"), classes are {"r": .., "beta": [..], "n": ..}.
/// Unknown keys anywhere are rejected with a ConfigError naming the key path.
struct RunConfig {
  ConeModel model = ConeModel::orthant(Beta{1}, Beta{0});

  // stability.k / k_prime / wall
  std::optional<Rational> k;
  std::optional<Rational> k_prime;
  std::optional<Rational> wall;

  // cutoffs
  Beta beta_cutoff;
  QWindow q_window{-12, 12};
  Beta v_max;
  std::size_t max_word_length = 0;

  InvariantTable n_table{TableKind::N};
  InvariantTable p_table{TableKind::P};
  InvariantTable l_table{TableKind::L};
  bool has_l_table = false;

  SeriesMode mode = SeriesMode::Window;

  // command options
  std::vector<NumClass> tuple;                       // coeff-s, coeff-u
  std::optional<NumClass> target;                    // decomp, hall-verify
  std::optional<Beta> walls_beta;                    // walls
  std::pair<Rational, Rational> walls_range{-3, 0};  // walls
  std::pair<std::int64_t, std::int64_t> n_range{-4, 8};  // transform
};

// Throws ConfigError with the offending field in the message.
RunConfig parse_config(std::string_view json_text);
RunConfig load_config(const std::filesystem::path& path);

}  // namespace wallcross
