#include "wallcross/stability.hpp"

#include <numeric>

#include "wallcross/errors.hpp"

namespace wallcross {

PhaseOrder reverse(PhaseOrder order) {
  switch (order) {
    case PhaseOrder::Lt:
      return PhaseOrder::Gt;
    case PhaseOrder::Gt:
      return PhaseOrder::Lt;
    case PhaseOrder::Eq:
      break;
  }
  return PhaseOrder::Eq;
}

const char* to_string(PhaseOrder order) {
  switch (order) {
    case PhaseOrder::Lt:
      return "Lt";
    case PhaseOrder::Eq:
      return "Eq";
    case PhaseOrder::Gt:
      return "Gt";
  }
  return "?";
}

Rational phase_key(const NumClass& v, const StabilityParam& k, const ConeModel& model) {
  require_valid(v);
  if (v.is_torsion()) return slope(v, model);
  return Rational(-2 * k.k());
}

PhaseOrder compare(const NumClass& v, const NumClass& w, const StabilityParam& k,
                   const ConeModel& model) {
  const int c = cmp(phase_key(v, k, model), phase_key(w, k, model));
  if (c < 0) return PhaseOrder::Lt;
  if (c > 0) return PhaseOrder::Gt;
  return PhaseOrder::Eq;
}

bool WallSet::contains(const Rational& k) const {
  for (auto d : denominators) {
    Rational scaled = k * d;
    if (scaled.get_den() == 1) return true;
  }
  return false;
}

Rational WallSet::wall_below(const Rational& k) const {
  bool first = true;
  Rational best;
  for (auto d : denominators) {
    // Largest multiple of 1/d strictly below k.
    Rational candidate = make_rational(ceil_to_int(k * d) - 1, d);
    if (first || candidate > best) {
      best = candidate;
      first = false;
    }
  }
  return best;
}

Rational WallSet::wall_above(const Rational& k) const {
  bool first = true;
  Rational best;
  for (auto d : denominators) {
    Rational candidate = make_rational(floor_to_int(k * d) + 1, d);
    if (first || candidate < best) {
      best = candidate;
      first = false;
    }
  }
  return best;
}

std::pair<Rational, Rational> WallSet::chamber_samples(const Rational& k0) const {
  if (!contains(k0)) throw DomainError("k = " + to_string(k0) + " is not a wall of S" + beta_to_string(beta));
  Rational below = (wall_below(k0) + k0) / 2;
  Rational above = (wall_above(k0) + k0) / 2;
  return {below, above};
}

std::vector<Rational> WallSet::walls_in(const Rational& lo, const Rational& hi) const {
  std::vector<Rational> out;
  if (lo > hi) return out;
  Rational k = contains(lo) ? lo : wall_above(lo);
  while (k <= hi) {
    out.push_back(k);
    k = wall_above(k);
  }
  return out;
}

WallSet walls(const Beta& beta, const ConeModel& model) {
  model.require_dimension(beta);
  if (beta_is_zero(beta)) throw DomainError("the wall set S(beta) needs beta != 0");
  WallSet out{beta, {}};
  for (const auto& sub : nonzero_classes_below(beta)) out.denominators.insert(2 * deg(sub, model));
  return out;
}

bool check_dominance(const StabilityParam& k_a, const StabilityParam& k_b,
                     const std::vector<NumClass>& classes, const ConeModel& model) {
  for (const auto& v1 : classes) {
    for (const auto& v2 : classes) {
      if (is_succeq(compare(v1, v2, k_a, model)) && !is_succeq(compare(v1, v2, k_b, model))) {
        return false;
      }
    }
  }
  return true;
}

bool dominates_below(const NumClass& v, const StabilityParam& k_a, const StabilityParam& k_b,
                     const ConeModel& model) {
  require_valid(v);
  // Torsion pairs compare by slope alone and rank -1 classes all tie, so only a
  // torsion slope landing between the two thresholds can break the implication.
  if (v.is_torsion()) return true;
  const Rational a = -2 * k_a.k(), b = -2 * k_b.k();
  if (a == b) return true;
  // a < b fails on a slope in [a, b); a > b on a slope in (b, a].
  const auto between = [&](const Rational& s) { return a < b ? (a <= s && s < b) : (b < s && s <= a); };
  for (const auto& sub : nonzero_classes_below(v.beta)) {
    const std::int64_t d = deg(sub, model);
    if (sub == v.beta) {
      // the rank part left over is (-1, 0, 0)
      if (between(make_rational(v.n, d))) return false;
      continue;
    }
    const Rational lo = a < b ? a : b;
    const std::int64_t first = a < b ? ceil_to_int(lo * d) : floor_to_int(lo * d) + 1;
    if (between(make_rational(first, d))) return false;
  }
  return true;
}

}  // namespace wallcross
