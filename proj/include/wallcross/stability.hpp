#pragma once

#include <set>
#include <utility>
#include <vector>

#include "wallcross/cone.hpp"
#include "wallcross/rational.hpp"

namespace wallcross {

/// sigma = k omega + i omega. The dual parameter negates k.
class StabilityParam {
 public:
  StabilityParam() = default;
  explicit StabilityParam(Rational k) : k_(std::move(k)) {}
  static StabilityParam parse(std::string_view text) { return StabilityParam(parse_rational(text)); }

  const Rational& k() const { return k_; }
  StabilityParam dual() const { return StabilityParam(-k_); }

  friend bool operator==(const StabilityParam& a, const StabilityParam& b) { return a.k_ == b.k_; }

 private:
  Rational k_{0};
};

enum class PhaseOrder { Lt, Eq, Gt };

PhaseOrder reverse(PhaseOrder order);
const char* to_string(PhaseOrder order);

/// Position of Z_{mu_sigma}(v) in the phase order, as an exact rational.
///
/// Torsion classes sit at their slope n / (omega . beta); every rank -1 class
/// sits at the threshold -2k. Comparing keys reproduces the leading-term
/// comparison of the central charges, including Eq on the wall.
Rational phase_key(const NumClass& v, const StabilityParam& k, const ConeModel& model);

PhaseOrder compare(const NumClass& v, const NumClass& w, const StabilityParam& k,
                   const ConeModel& model);

inline bool is_preceq(PhaseOrder o) { return o != PhaseOrder::Gt; }
inline bool is_succeq(PhaseOrder o) { return o != PhaseOrder::Lt; }

/// Wall set S(beta) = union over 0 != beta' <= beta of (1 / (2 omega . beta')) Z.
struct WallSet {
  Beta beta;
  std::set<std::int64_t> denominators;

  bool contains(const Rational& k) const;
  // Nearest walls strictly below / above k.
  Rational wall_below(const Rational& k) const;
  Rational wall_above(const Rational& k) const;
  // Points inside the chambers adjacent to the wall k0 (midpoints to the neighbouring walls).
  std::pair<Rational, Rational> chamber_samples(const Rational& k0) const;
  // All walls in the closed interval [lo, hi].
  std::vector<Rational> walls_in(const Rational& lo, const Rational& hi) const;
};

WallSet walls(const Beta& beta, const ConeModel& model);

/// True iff Z_A(v1) >= Z_A(v2) implies Z_B(v1) >= Z_B(v2) on every ordered pair.
bool check_dominance(const StabilityParam& k_a, const StabilityParam& k_b,
                     const std::vector<NumClass>& classes, const ConeModel& model);

// The same implication over every class in C_{<= v} (classes w with v - w also a
// class), decided exactly even though that set is infinite in n.
bool dominates_below(const NumClass& v, const StabilityParam& k_a, const StabilityParam& k_b,
                     const ConeModel& model);

}  // namespace wallcross
