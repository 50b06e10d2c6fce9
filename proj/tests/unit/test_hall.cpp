#include <algorithm>
#include <set>

#include "doctest.h"
#include "wallcross/errors.hpp"
#include "wallcross/hall.hpp"

using namespace wallcross;

namespace {

StabilityParam at(long p, long q = 1) { return StabilityParam(make_rational(p, q)); }

Symbol d(const NumClass& v, const StabilityParam& k) { return Symbol::delta(v, k); }
Symbol e(const NumClass& v, const StabilityParam& k) { return Symbol::epsilon(v, k); }

GeneratorSet parts_of(const NumClass& v, const StabilityParam& k, const ConeModel& model,
                      const Truncation& trunc) {
  std::set<NumClass> parts;
  for (const auto& t : decompositions(v, k, model)) parts.insert(t.begin(), t.end());
  return GeneratorSet{{parts.begin(), parts.end()}, trunc};
}

// Generators closed under same-phase sums at both parameters, so that the delta
// symbols on either side range over the same classes.
GeneratorSet closed(GeneratorSet gens, const StabilityParam& k1, const StabilityParam& k2,
                    const ConeModel& model) {
  for (;;) {
    const std::size_t before = gens.classes.size();
    gens.classes = reachable_classes(gens, k1, model);
    gens.classes = reachable_classes(gens, k2, model);
    if (gens.classes.size() == before) return gens;
  }
}

bool has(const std::vector<NumClass>& xs, const NumClass& v) {
  return std::find(xs.begin(), xs.end(), v) != xs.end();
}

}  // namespace

TEST_CASE("words multiply associatively under truncation") {
  const Truncation trunc{{3}, 4};
  const StabilityParam k = at(-1);
  const NumClass a{0, {1}, 1}, b{-1, {1}, 0}, c{0, {1}, -2};
  const HallExpr x = HallExpr::of(d(a, k), 2) + HallExpr::of(e(c, k), make_rational(-1, 3));
  const HallExpr y = HallExpr::of(d(b, k)) + HallExpr::unit();
  const HallExpr z = HallExpr::of(d(a, k), make_rational(1, 2)) + HallExpr::of(d(b, k), 5);
  CHECK(multiply(multiply(x, y, trunc), z, trunc) == multiply(x, multiply(y, z, trunc), trunc));
  CHECK(multiply(HallExpr::unit(), x, trunc) == x);
}

TEST_CASE("truncation drops oversized words") {
  const StabilityParam k = at(-1);
  const Truncation trunc{{2}, 2};
  CHECK(trunc.admits({d(NumClass{0, {1}, 1}, k), d(NumClass{0, {1}, 0}, k)}));
  CHECK_FALSE(trunc.admits({d(NumClass{0, {2}, 1}, k), d(NumClass{0, {1}, 0}, k)}));
  CHECK_FALSE(trunc.admits({d(NumClass{-1, {0}, 0}, k), d(NumClass{-1, {1}, 0}, k)}));
  CHECK_FALSE(Truncation{{3}, 2}.admits(
      {d(NumClass{0, {1}, 1}, k), d(NumClass{0, {1}, 1}, k), d(NumClass{0, {1}, 1}, k)}));
}

TEST_CASE("log of a single-class block") {
  const auto model = ConeModel::orthant(Beta{1}, Beta{2});
  const NumClass v{0, {2}, 1};
  const GeneratorSet gens{{v}, Truncation{{2}, 0}};
  CHECK(eps_from_delta(v, gens, at(0), model) == HallExpr::of(d(v, at(0))));
  CHECK(delta_from_eps(v, gens, at(0), model) == HallExpr::of(e(v, at(0))));
}

TEST_CASE("log and exp on a two-part block") {
  const auto model = ConeModel::orthant(Beta{1}, Beta{3});
  const StabilityParam k = at(0);
  const NumClass w{0, {1}, 1}, w2{0, {2}, 2};
  const GeneratorSet gens{{w, w2}, Truncation{{3}, 0}};
  HallExpr eps = HallExpr::of(d(w2, k));
  eps.add_term({d(w, k), d(w, k)}, make_rational(-1, 2));
  CHECK(eps_from_delta(w2, gens, k, model) == eps);
  HallExpr del = HallExpr::of(e(w2, k));
  del.add_term({e(w, k), e(w, k)}, make_rational(1, 2));
  CHECK(delta_from_eps(w2, gens, k, model) == del);
}

TEST_CASE("three equal-slope parts carry 1/3") {
  const auto model = ConeModel::orthant(Beta{1}, Beta{3});
  const StabilityParam k = at(0);
  const NumClass w{0, {1}, 1};
  const GeneratorSet gens{{w}, Truncation{{3}, 0}};
  const HallExpr eps = eps_from_delta(NumClass{0, {3}, 3}, gens, k, model);
  CHECK(eps.coefficient({d(w, k), d(w, k), d(w, k)}) == make_rational(1, 3));
  CHECK(eps.size() == 1);
}

TEST_CASE("log and exp invert each other") {
  const auto model = ConeModel::orthant(Beta{1, 1}, Beta{2, 2});
  const StabilityParam k = at(0);
  const GeneratorSet gens{{NumClass{0, {1, 0}, 1}, NumClass{0, {0, 1}, 1}, NumClass{0, {1, 1}, 2},
                           NumClass{0, {2, 0}, 2}},
                          Truncation{{2, 2}, 4}};
  for (const auto& v : reachable_classes(gens, k, model)) {
    const HallExpr back = substitute(
        delta_from_eps(v, gens, k, model),
        [&](const Symbol& s) { return eps_from_delta(s.cls, gens, k, model); }, gens.truncation);
    HallExpr want;
    if (has(gens.classes, v)) want = HallExpr::of(d(v, k));
    CHECK_MESSAGE(back == want, to_string(v));
  }
}

TEST_CASE("transform_delta is the identity at Z' = Z") {
  const auto model = ConeModel::orthant(Beta{1}, Beta{2});
  const StabilityParam k = at(-1);
  const NumClass v{-1, {2}, 2};
  const auto gens = parts_of(v, k, model, Truncation{{2}, 0});
  for (const auto& w : gens.classes) {
    CHECK(transform_delta(w, gens, k, k, model) == HallExpr::of(d(w, k)));
    CHECK(invert_delta(w, gens, k, k, model) == HallExpr::of(d(w, k)));
  }
}

TEST_CASE("transform_delta onto the wall") {
  const auto model = ConeModel::orthant(Beta{1}, Beta{2});
  const StabilityParam kz = at(-1), kzp = at(-1, 2);
  const NumClass v{-1, {1}, 1}, rank{-1, {0}, 0}, tors{0, {1}, 1};
  const auto gens = parts_of(v, kz, model, Truncation{{1}, 0});
  const HallExpr x = transform_delta(v, gens, kz, kzp, model);
  // Z phases descend along the word: the rank part (phase 2) precedes slope 1.
  CHECK(x.coefficient({d(rank, kz), d(tors, kz)}) == 1);
  CHECK(x.coefficient({d(tors, kz), d(rank, kz)}) == 0);
  CHECK(x.coefficient({d(v, kz)}) == 1);
  CHECK(x.size() == 2);

  // off the wall the slope-1 part no longer ties with the rank part
  const HallExpr y = transform_delta(v, gens, kz, at(-3, 4), model);
  CHECK(y == HallExpr::of(d(v, kz)));
}

TEST_CASE("transform_delta word count matches a filter recount") {
  const auto model = ConeModel::orthant(Beta{1}, Beta{2});
  const StabilityParam kz = at(-5, 8), kzp = at(-1, 2);
  const NumClass v{-1, {2}, 2};
  const auto gens = parts_of(v, kz, model, Truncation{{2}, 0});
  // every ordered generator tuple summing to v, filtered directly
  std::size_t count = 0;
  std::vector<std::vector<NumClass>> stack{{}};
  while (!stack.empty()) {
    auto t = stack.back();
    stack.pop_back();
    if (!t.empty()) {
      const NumClass s = sum_classes(t);
      if (s == v) {
        bool ok = true;
        for (std::size_t i = 0; i < t.size(); ++i) {
          if (compare(t[i], v, kzp, model) != PhaseOrder::Eq) ok = false;
          if (i > 0 && compare(t[i - 1], t[i], kz, model) != PhaseOrder::Gt) ok = false;
        }
        count += ok;
        continue;
      }
      if (s.r < -1 || !beta_leq(s.beta, v.beta) || s.r < v.r - 0) continue;
    }
    if (t.size() >= 4) continue;
    for (const auto& g : gens.classes) {
      auto u = t;
      u.push_back(g);
      stack.push_back(std::move(u));
    }
  }
  CHECK(transform_delta(v, gens, kz, kzp, model).size() == count);
}

TEST_CASE("invert_delta signs on a three-part block") {
  const auto model = ConeModel::orthant(Beta{1}, Beta{2});
  const StabilityParam kz = at(-5, 8), kzp = at(-1, 2);
  const NumClass rank{-1, {0}, 0}, tors{0, {1}, 1};
  const NumClass v{-1, {2}, 2};
  const GeneratorSet gens{{rank, tors, NumClass{-1, {1}, 1}}, Truncation{{2}, 0}};
  const HallExpr x = invert_delta(v, gens, kz, kzp, model);
  // Under Z the rank part sits at 5/4 and tors at 1. Every cut of (rank, tors, tors)
  // leaves a rank -1 sum on the left, so it survives; a leading tors never does.
  CHECK(x.coefficient({d(rank, kzp), d(tors, kzp), d(tors, kzp)}) == 1);
  CHECK(x.coefficient({d(NumClass{-1, {1}, 1}, kzp), d(tors, kzp)}) == -1);
  CHECK(x.coefficient({d(rank, kzp), d(NumClass{0, {2}, 2}, kzp)}) == -1);
  CHECK(x.coefficient({d(tors, kzp), d(NumClass{-1, {1}, 1}, kzp)}) == 0);
  CHECK(x.coefficient({d(tors, kzp), d(rank, kzp), d(tors, kzp)}) == 0);
  CHECK(x.coefficient({d(v, kzp)}) == 1);
}

TEST_CASE("transform and invert compose to the identity") {
  const auto model = ConeModel::orthant(Beta{1}, Beta{2});
  const StabilityParam kz = at(-5, 8), kzp = at(-1, 2);
  const NumClass v{-1, {2}, 2};
  auto gens = parts_of(v, kz, model, Truncation{{2}, 0});
  gens.classes = reachable_classes(gens, kzp, model);
  for (const auto& w : phase_block(v, gens, kzp, model)) {
    const HallExpr there_back = substitute(
        invert_delta(w, gens, kz, kzp, model),
        [&](const Symbol& s) { return transform_delta(s.cls, gens, kz, kzp, model); }, gens.truncation);
    CHECK(there_back == HallExpr::of(d(w, kz)));
  }
}

TEST_CASE("transform_eps at Z' = Z is the identity") {
  const auto model = ConeModel::orthant(Beta{1}, Beta{2});
  const StabilityParam k = at(-3, 4);
  const auto gens = parts_of(NumClass{-1, {2}, 1}, k, model, Truncation{{2}, 0});
  for (const auto& v : reachable_classes(gens, k, model))
    CHECK(transform_eps(v, gens, k, k, model) == HallExpr::of(e(v, k)));
}

// The delta route needs dominance on all of C_{<= v}, so Z sits inside a chamber.
TEST_CASE("transform_eps agrees with the delta route") {
  const auto model = ConeModel::orthant(Beta{1}, Beta{2});
  const StabilityParam kz = at(-5, 8), kzp = at(-1, 2);
  const NumClass v{-1, {2}, 2};
  const auto gens = closed(parts_of(v, kz, model, Truncation{{2}, 0}), kz, kzp, model);
  for (const auto& w : phase_block(v, gens, kzp, model)) {
    // eps(Z') -> delta(Z') -> delta(Z) -> eps(Z)
    const HallExpr via_delta = substitute(
        substitute(eps_from_delta(w, gens, kzp, model),
                   [&](const Symbol& s) { return transform_delta(s.cls, gens, kz, kzp, model); },
                   gens.truncation),
        [&](const Symbol& s) { return delta_from_eps(s.cls, gens, kz, model); }, gens.truncation);
    CHECK_MESSAGE(via_delta == transform_eps(w, gens, kz, kzp, model),
                  to_string(w) << "\n" << via_delta.dump() << "\nvs\n" << transform_eps(w, gens, kz, kzp, model).dump());
  }
}

TEST_CASE("S path agrees with the dominant formula") {
  const auto model = ConeModel::orthant(Beta{1}, Beta{2});
  const StabilityParam kz = at(-5, 8), kzp = at(-1, 2);
  const NumClass v{-1, {2}, 2};
  auto gens = parts_of(v, kz, model, Truncation{{2}, 0});
  for (const auto& w : phase_block(v, gens, kzp, model))
    CHECK_MESSAGE(transform_delta_via_s(w, gens, kz, kzp, model) == transform_delta(w, gens, kz, kzp, model),
                  to_string(w) << "\n" << transform_delta_via_s(w, gens, kz, kzp, model).dump() << "\nvs\n"
                               << transform_delta(w, gens, kz, kzp, model).dump());
}

TEST_CASE("S path across a wall in two steps") {
  const auto model = ConeModel::orthant(Beta{1}, Beta{2});
  const StabilityParam below = at(-5, 8), wall = at(-1, 2), above = at(-3, 8);
  const NumClass v{-1, {2}, 2};
  auto gens = parts_of(v, below, model, Truncation{{2}, 0});
  for (const auto& p : parts_of(v, above, model, Truncation{{2}, 0}).classes) gens.classes.push_back(p);
  std::sort(gens.classes.begin(), gens.classes.end());
  gens.classes.erase(std::unique(gens.classes.begin(), gens.classes.end()), gens.classes.end());
  gens.classes = reachable_classes(gens, wall, model);
  // delta(above) -> delta(wall) -> delta(below)
  const HallExpr two_step = substitute(
      invert_delta(v, gens, above, wall, model),
      [&](const Symbol& s) { return transform_delta(s.cls, gens, below, wall, model); }, gens.truncation);
  CHECK(transform_delta_via_s(v, gens, below, above, model) == two_step);
}

TEST_CASE("dominance failures are reported") {
  const auto model = ConeModel::orthant(Beta{1}, Beta{2});
  const NumClass v{-1, {1}, 1};
  const auto gens = parts_of(v, at(-1), model, Truncation{{1}, 0});
  CHECK_THROWS_AS(transform_delta(v, gens, at(-1, 2), at(-1), model), PreconditionError);
}

TEST_CASE("skipping the dominance check keeps the inversion") {
  const auto model = ConeModel::orthant(Beta{1}, Beta{2});
  const StabilityParam kz = at(-1), kzp = at(-1, 2);
  const NumClass v{-1, {2}, 2};
  auto gens = parts_of(v, kz, model, Truncation{{2}, 0});
  gens.classes = reachable_classes(gens, kzp, model);
  CHECK_THROWS_AS(transform_delta(v, gens, kz, kzp, model), PreconditionError);
  const HallExpr back = substitute(
      transform_delta(v, gens, kz, kzp, model, Dominance::Skip),
      [&](const Symbol& s) { return invert_delta(s.cls, gens, kz, kzp, model, Dominance::Skip); },
      gens.truncation);
  CHECK(back == HallExpr::of(d(v, kzp)));
}

TEST_CASE("self updates") {
  HallExpr x = HallExpr::of(d(NumClass{0, {1}, 1}, at(0)), 3);
  x += x;
  CHECK(x == HallExpr::of(d(NumClass{0, {1}, 1}, at(0)), 6));
  x -= x;
  CHECK(x.is_zero());
}
