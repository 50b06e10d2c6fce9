#include <random>
#include <set>

#include "doctest.h"
#include "wallcross/errors.hpp"
#include "wallcross/integrate.hpp"
#include "wallcross/selftest.hpp"

using namespace wallcross;

namespace {

StabilityParam at(long p, long q = 1) { return StabilityParam(make_rational(p, q)); }

LieElement random_element(std::mt19937_64& rng) {
  LieElement x;
  const int terms = 1 + static_cast<int>(rng() % 5);
  for (int i = 0; i < terms; ++i) {
    NumClass v{-static_cast<int>(rng() % 2), {static_cast<std::int64_t>(rng() % 3)},
               static_cast<std::int64_t>(rng() % 9) - 4};
    x.add(v, make_rational(static_cast<long>(rng() % 7) - 3, 1 + static_cast<long>(rng() % 3)));
  }
  return x;
}

}  // namespace

TEST_CASE("bracket is antisymmetric and satisfies Jacobi") {
  std::mt19937_64 rng(17);
  for (int i = 0; i < 100; ++i) {
    const auto a = random_element(rng), b = random_element(rng), c = random_element(rng);
    CHECK((bracket(a, b) + bracket(b, a)).is_zero());
    const auto jacobi =
        bracket(a, bracket(b, c)) + bracket(b, bracket(c, a)) + bracket(c, bracket(a, b));
    CHECK(jacobi.is_zero());
  }
}

TEST_CASE("bracket of basis elements") {
  const NumClass t{0, {1}, 5}, r{-1, {0}, 0};
  const auto x = bracket(LieElement::basis(t), LieElement::basis(r));
  CHECK(x == LieElement::basis(t + r, 5));
  CHECK(bracket(LieElement::basis(t), LieElement::basis(NumClass{0, {2}, 7})).is_zero());
}

TEST_CASE("labeled tree counts") {
  CHECK(labeled_trees(1).size() == 1);
  CHECK(labeled_trees(1)[0].empty());
  CHECK(labeled_trees(3).size() == 3);
  CHECK(labeled_trees(4).size() == 16);
  CHECK(labeled_trees(5).size() == 125);
}

TEST_CASE("labeled trees are distinct spanning trees") {
  for (std::size_t l = 2; l <= 6; ++l) {
    const auto trees = labeled_trees(l);
    std::set<std::vector<Edge>> distinct(trees.begin(), trees.end());
    CHECK(distinct.size() == trees.size());
    for (const auto& tree : trees) {
      REQUIRE(tree.size() == l - 1);
      std::vector<std::size_t> root(l);
      for (std::size_t i = 0; i < l; ++i) root[i] = i;
      const auto find = [&](std::size_t x) {
        while (root[x] != x) x = root[x];
        return x;
      };
      for (const auto& [i, j] : tree) {
        CHECK(i < j);
        root[find(i)] = find(j);
      }
      for (std::size_t i = 1; i < l; ++i) CHECK(find(i) == find(0));
    }
  }
}

TEST_CASE("invariant table validation") {
  const auto model = ConeModel(Beta{1}, Beta{2}, {{Beta{0}, 0}, {Beta{1}, 0}, {Beta{2}, 0}},
                               {{Beta{0}, 0}, {Beta{1}, 0}, {Beta{2}, -1}});
  InvariantTable n(TableKind::N);
  CHECK_THROWS_AS(n.set_period(Beta{2}, {1}, model), ConfigError);
  n.set_period(Beta{2}, {1, 2}, model);
  CHECK(n.value(5, Beta{2}) == 2);
  CHECK(n.value(-4, Beta{2}) == 1);
  CHECK(n.is_symmetric(Beta{2}));
  CHECK_THROWS_AS(n.value(0, Beta{0}), DomainError);
  CHECK_THROWS_AS(n.value(0, Beta{1}), InputError);

  InvariantTable p(TableKind::P);
  CHECK_THROWS_AS(p.set_window(Beta{2}, {{-2, 1}}, 4, model), ConfigError);
  p.set_window(Beta{2}, {{-1, 3}, {2, 1}}, 4, model);
  CHECK(p.value(-5, Beta{2}) == 0);
  CHECK(p.value(0, Beta{2}) == 0);
  CHECK(p.value(2, Beta{2}) == 1);
  CHECK_THROWS_AS(p.value(5, Beta{2}), InputError);
  CHECK(p.value(0, Beta{0}) == 1);
  CHECK(p.value(3, Beta{0}) == 0);

  InvariantTable l(TableKind::L);
  CHECK(l.value(0, Beta{0}) == 1);
  l.set_origin_value(7);
  CHECK(l.value(0, Beta{0}) == 7);
}

TEST_CASE("tree sum with a single admissible tuple returns J") {
  const auto model = ConeModel::orthant(Beta{1}, Beta{2});
  const JFunction j = [](const NumClass& v) { return make_rational(3 + v.n, 2); };
  // a torsion class alone in its slope window
  CHECK(j_transform(NumClass{0, {1}, 1}, j, at(-1, 4), at(-1, 8), model) == 2);
  // all-torsion parts pair to zero
  CHECK(j_transform(NumClass{0, {2}, 3}, j, at(-2), at(0), model) == 3);
}

TEST_CASE("tree sum and star sum agree on random tables") {
  sample::Rng rng(41);
  const auto pair = sample::random_pair(rng, 1, 8);
  InvariantTable l_sigma(TableKind::L);
  for (const auto& [beta, series] : pair.l_series) {
    if (beta_is_zero(beta)) continue;
    l_sigma.set_support(beta, {series.terms().begin(), series.terms().end()});
  }
  const JFunction j = pair_j(pair.n_table, l_sigma);
  for (const Rational& kv : {Rational(-1), make_rational(-3, 4)}) {
    for (const auto& beta : classes_below(pair.cutoff)) {
      for (std::int64_t n = -3; n <= 3; ++n) {
        if (beta_is_zero(beta) && n != 0) continue;
        CHECK(j_transform(NumClass{-1, beta, n}, j, StabilityParam(kv), at(0), pair.model) ==
              l_wallcross(n, beta, StabilityParam(kv), l_sigma, pair.n_table, pair.model));
      }
    }
  }
}

TEST_CASE("micro-model") {
  const Rational a(3), c(-2);
  const auto micro = sample::micro_model(a, c, 10);
  for (std::int64_t n = -3; n <= 6; ++n) {
    const Rational want = n == 0 ? c : Rational(0);
    CHECK(l_from_pn(n, Beta{1}, micro.p_table, micro.n_table, micro.model) == want);
    CHECK(l_from_pn(n, Beta{1}, micro.p_table, micro.n_table, micro.model, RunWeight::SurjectionSum) ==
          want);
    const StabilityParam k = choose_takek(n, Beta{1}, micro.model);
    CHECK(l_wallcross(n, Beta{1}, k, micro.p_table, micro.n_table, micro.model) == want);
  }
  CHECK(l_wallcross(0, Beta{0}, at(-1), micro.p_table, micro.n_table, micro.model) == 1);
}

TEST_CASE("l_wallcross does not move inside a chamber") {
  sample::Rng rng(43);
  const auto pair = sample::random_pair(rng, 1, 8);
  InvariantTable l_sigma(TableKind::L);
  for (const auto& [beta, series] : pair.l_series)
    if (!beta_is_zero(beta)) l_sigma.set_support(beta, {series.terms().begin(), series.terms().end()});
  const auto w = walls(pair.cutoff, pair.model);
  const Rational k1 = make_rational(-7, 5);
  const Rational hi = w.wall_above(k1), lo = w.wall_below(k1);
  const Rational k2 = (2 * lo + hi) / 3;
  for (const auto& beta : nonzero_classes_below(pair.cutoff)) {
    for (std::int64_t n = -4; n <= 4; ++n) {
      CHECK(l_wallcross(n, beta, StabilityParam(k1), l_sigma, pair.n_table, pair.model) ==
            l_wallcross(n, beta, StabilityParam(k2), l_sigma, pair.n_table, pair.model));
    }
  }
}

TEST_CASE("l_from_pn vanishes below the support") {
  const auto micro = sample::micro_model(Rational(1), Rational(1), 6);
  CHECK(l_from_pn(-1, Beta{1}, micro.p_table, micro.n_table, micro.model) == 0);
  CHECK(l_from_pn(-5, Beta{1}, micro.p_table, micro.n_table, micro.model) == 0);
}

TEST_CASE("run weights agree and the recovered L is symmetric") {
  sample::Rng rng(47);
  for (int round = 0; round < 4; ++round) {
    const auto pair = sample::random_pair(rng, 1 + round % 2, 8);
    for (const auto& beta : nonzero_classes_below(pair.cutoff)) {
      for (std::int64_t n = -4; n <= 4; ++n) {
        const Rational x = l_from_pn(n, beta, pair.p_table, pair.n_table, pair.model);
        CHECK(x == l_from_pn(n, beta, pair.p_table, pair.n_table, pair.model, RunWeight::SurjectionSum));
        CHECK(x == l_from_pn(-n, beta, pair.p_table, pair.n_table, pair.model));
        CHECK(x == pair.l_series.at(beta).coefficient(n));
      }
    }
  }
}

TEST_CASE("chosen k sits off the walls and below the bound") {
  const auto micro = sample::micro_model(Rational(1), Rational(1), 6);
  for (std::int64_t n = -3; n <= 6; ++n) {
    const StabilityParam k = choose_takek(n, Beta{1}, micro.model);
    CHECK(k.k() < 0);
    CHECK_FALSE(walls(Beta{1}, micro.model).contains(k.k()));
    CHECK(k.k() < -make_rational(n, 2));
  }
}

TEST_CASE("missing entries name the class") {
  const auto micro = sample::micro_model(Rational(1), Rational(1), 4);
  try {
    l_from_pn(8, Beta{1}, micro.p_table, micro.n_table, micro.model);
    FAIL("expected an input error");
  } catch (const InputError& e) {
    CHECK(std::string(e.what()).find("(1)") != std::string::npos);
  }
}

TEST_CASE("self updates") {
  LieElement x = LieElement::basis(NumClass{0, {1}, 1}, 3);
  x += x;
  CHECK(x == LieElement::basis(NumClass{0, {1}, 1}, 6));
}
