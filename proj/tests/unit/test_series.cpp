#include <random>

#include "doctest.h"
#include "wallcross/errors.hpp"
#include "wallcross/selftest.hpp"
#include "wallcross/series.hpp"

using namespace wallcross;

namespace {

Polynomial poly(std::initializer_list<long> cs) {
  std::vector<Rational> v;
  for (long c : cs) v.emplace_back(c);
  return Polynomial(std::move(v));
}

// q / (1 - q)^2
RationalFn kernel() { return RationalFn(poly({0, 1}), poly({1, -2, 1})); }

ConeModel line_model(std::int64_t omega, std::int64_t bound, std::int64_t floor) {
  std::map<Beta, std::int64_t> m, f;
  for (const auto& b : classes_below(Beta{bound})) {
    m[b] = 0;
    f[b] = beta_is_zero(b) ? 0 : floor;
  }
  return ConeModel(Beta{omega}, Beta{bound}, m, f);
}

}  // namespace

TEST_CASE("laurent polynomial arithmetic") {
  LaurentPoly a = LaurentPoly::monomial(-2, 3) + LaurentPoly::monomial(1, -1);
  const LaurentPoly b = LaurentPoly::monomial(2, 2);
  CHECK((a * b).coefficient(0) == 6);
  CHECK((a * b).coefficient(3) == -2);
  CHECK(a.min_exponent() == -2);
  CHECK(a.max_exponent() == 1);
  CHECK(a.reflected().coefficient(2) == 3);
  CHECK(a.truncated(0) == LaurentPoly::monomial(-2, 3));
  CHECK(multiply_truncated(a, b, 0) == LaurentPoly::monomial(0, 6));
  LaurentPoly twice = a;
  twice += twice;
  CHECK(twice.coefficient(-2) == 6);
  a -= a;
  CHECK(a.is_zero());
}

TEST_CASE("polynomial division and gcd") {
  const Polynomial f = poly({-1, 0, 1});  // q^2 - 1
  const Polynomial g = poly({-1, 1});     // q - 1
  const auto [quo, rem] = divmod(f, g);
  CHECK(quo == poly({1, 1}));
  CHECK(rem.is_zero());
  CHECK(gcd(f * poly({2, 1}), g * poly({2, 1}) * Polynomial::constant(3)) == poly({-2, 1, 1}));
  CHECK(gcd(Polynomial(), Polynomial()).is_zero());
  CHECK_THROWS_AS(divmod(f, Polynomial()), DomainError);
}

TEST_CASE("rational functions are kept reduced with monic denominators") {
  const RationalFn f(poly({-1, 0, 1}), poly({-2, 2}));  // (q^2 - 1) / (2q - 2)
  CHECK(f.num() == Polynomial(std::vector<Rational>{make_rational(1, 2), make_rational(1, 2)}));
  CHECK(f.den() == Polynomial::constant(1));
  CHECK(RationalFn(Polynomial(), poly({3, 1})).den() == Polynomial::constant(1));
  CHECK_THROWS_AS(RationalFn(poly({1}), Polynomial()), DomainError);
  CHECK(kernel().inverted() == kernel());
}

TEST_CASE("laurent expansions") {
  const auto e = laurent_expansion(kernel(), 50);
  for (std::int64_t n = 1; n <= 50; ++n) CHECK(e.coefficient(n) == n);
  CHECK(e.coefficient(51) == 0);
  // q^-2 / (1 - q)
  const RationalFn g(poly({1}), poly({0, 0, 1, -1}));
  const auto ge = laurent_expansion(g, 3);
  CHECK(ge.min_exponent() == -2);
  for (std::int64_t n = -2; n <= 3; ++n) CHECK(ge.coefficient(n) == 1);
}

TEST_CASE("q symmetry") {
  CHECK(q_symmetry_check(kernel()));
  CHECK_FALSE(q_symmetry_check(RationalFn(poly({0, 0, 1}), poly({1, -2, 1}))));
  std::mt19937_64 rng(5);
  for (int i = 0; i < 20; ++i) {
    LaurentPoly p;
    for (std::int64_t n = 0; n <= 4; ++n) {
      const Rational c(static_cast<long>(rng() % 7) - 3);
      p.add_term(n, c);
      if (n != 0) p.add_term(-n, c);
    }
    CHECK(q_symmetry_check(RationalFn::from_laurent(p)));
  }
}

TEST_CASE("series matching") {
  LaurentPoly window;
  for (std::int64_t n = 1; n <= 50; ++n) window.add_term(n, n);
  CHECK(series_matches_expansion(kernel(), window, 50));
  LaurentPoly off = window;
  off.add_term(1, 1);
  CHECK_FALSE(series_matches_expansion(kernel(), off, 50));
  CHECK(first_mismatch(kernel(), off, 50) == std::optional<std::int64_t>(1));
  CHECK(series_matches_expansion(RationalFn(), LaurentPoly(), 10));
}

TEST_CASE("closed forms of N") {
  const auto m1 = line_model(1, 1, 0);
  InvariantTable n1(TableKind::N);
  n1.set_period(Beta{1}, {Rational(4)}, m1);
  RationalFn want = kernel();
  want *= Rational(4);
  CHECK(n_closed_form(n1, Beta{1}, m1) == want);

  const auto m2 = line_model(2, 1, 0);
  InvariantTable n2(TableKind::N);
  n2.set_period(Beta{1}, {Rational(0), Rational(5)}, m2);
  // 5 (q + q^3) / (1 - q^2)^2
  CHECK(n_closed_form(n2, Beta{1}, m2) == RationalFn(poly({0, 5, 0, 5}), poly({1, 0, -2, 0, 1})));

  InvariantTable zero(TableKind::N);
  zero.set_period(Beta{1}, {Rational(0), Rational(0)}, m2);
  CHECK(n_closed_form(zero, Beta{1}, m2).is_zero());
}

TEST_CASE("closed forms match the direct series") {
  sample::Rng rng(13);
  for (std::int64_t d = 1; d <= 5; ++d) {
    const auto model = line_model(d, 1, 0);
    InvariantTable n(TableKind::N);
    const auto period = sample::symmetric_period(rng, d);
    n.set_period(Beta{1}, period, model);
    const auto f = n_closed_form(n, Beta{1}, model);
    CHECK(series_matches_expansion(f, oracle::n_series_direct(period, 40), 40));
    CHECK(q_symmetry_check(f));
    CHECK(n_prime_window(n, Beta{1}, model, 40) == oracle::n_series_direct(period, 40));
  }
}

TEST_CASE("expan_build with N = 0 returns L") {
  const auto model = line_model(1, 2, -1);
  InvariantTable n(TableKind::N);
  n.set_period(Beta{1}, {Rational(0)}, model);
  n.set_period(Beta{2}, {Rational(0), Rational(0)}, model);
  const std::map<Beta, LaurentPoly> l{{Beta{0}, LaurentPoly::monomial(0)},
                                      {Beta{1}, LaurentPoly::monomial(1, 2) + LaurentPoly::monomial(-1, 2)},
                                      {Beta{2}, LaurentPoly::monomial(0, -3)}};
  const auto s = expan_build(l, n, model, Beta{2}, SeriesMode::Window, QWindow{-5, 5});
  for (const auto& [beta, series] : l) CHECK(s.window_coeffs.at(beta) == series);
}

TEST_CASE("expan_build low degrees") {
  const Rational a(2), c(7);
  const auto model = line_model(1, 2, 0);
  InvariantTable n(TableKind::N);
  n.set_period(Beta{1}, {a}, model);
  n.set_period(Beta{2}, {Rational(-1), Rational(1)}, model);
  const std::map<Beta, LaurentPoly> l{{Beta{0}, LaurentPoly::monomial(0)},
                                      {Beta{1}, LaurentPoly::monomial(0, c)},
                                      {Beta{2}, LaurentPoly::monomial(0, 3)}};
  const auto closed = expan_build(l, n, model, Beta{2}, SeriesMode::Closed);
  const RationalFn n1 = n_closed_form(n, Beta{1}, model), n2 = n_closed_form(n, Beta{2}, model);
  CHECK(closed.closed_coeffs.at(Beta{0}) == RationalFn::from_laurent(LaurentPoly::monomial(0)));
  CHECK(closed.closed_coeffs.at(Beta{1}) == RationalFn::from_laurent(LaurentPoly::monomial(0, c)) + n1);
  RationalFn half_sq = n1 * n1;
  half_sq *= make_rational(1, 2);
  const RationalFn want2 = RationalFn::from_laurent(LaurentPoly::monomial(0, 3)) +
                           RationalFn::from_laurent(LaurentPoly::monomial(0, c)) * n1 + n2 + half_sq;
  CHECK(closed.closed_coeffs.at(Beta{2}) == want2);

  // the window mode agrees with the closed mode up to its top
  const auto window = expan_build(l, n, model, Beta{2}, SeriesMode::Window, QWindow{0, 20});
  for (const auto& [beta, f] : closed.closed_coeffs)
    CHECK(series_matches_expansion(f, window.window_coeffs.at(beta), 20));
}

TEST_CASE("expan_build is linear in L") {
  sample::Rng rng(21);
  const auto pair = sample::random_pair(rng, 2, 8);
  std::map<Beta, LaurentPoly> l2, sum, scaled;
  for (const auto& [beta, series] : pair.l_series) {
    LaurentPoly other;
    for (const auto& [n, x] : sample::symmetric_support(rng, 2)) other.add_term(n, x);
    l2[beta] = other;
    sum[beta] = series + other;
    scaled[beta] = series;
    scaled[beta] *= make_rational(-3, 2);
  }
  const QWindow w{-6, 6};
  const auto build = [&](const std::map<Beta, LaurentPoly>& l) {
    return expan_build(l, pair.n_table, pair.model, pair.cutoff, SeriesMode::Window, w);
  };
  const auto s1 = build(pair.l_series), s2 = build(l2), s12 = build(sum), s3 = build(scaled);
  for (const auto& beta : classes_below(pair.cutoff)) {
    CHECK(s12.window_coeffs.at(beta).truncated(w.hi) ==
          (s1.window_coeffs.at(beta) + s2.window_coeffs.at(beta)).truncated(w.hi));
    LaurentPoly want = s1.window_coeffs.at(beta);
    want *= make_rational(-3, 2);
    CHECK(s3.window_coeffs.at(beta).truncated(w.hi) == want.truncated(w.hi));
  }
}

TEST_CASE("roundtrip on the micro-model") {
  const auto micro = sample::micro_model(Rational(2), Rational(5), 12);
  const auto report = verify_roundtrip(micro.p_table, micro.n_table, micro.model, micro.cutoff, QWindow{-12, 12});
  CHECK(report.passed());
  CHECK(report.checks.size() == 3);
  CHECK(report.recovered_l.at(Beta{1}) == LaurentPoly::monomial(0, 5));
}

TEST_CASE("roundtrip on random tables up to (3)") {
  sample::Rng rng(23);
  for (int round = 0; round < 3; ++round) {
    std::map<Beta, LaurentPoly> l{{Beta{0}, LaurentPoly::monomial(0)}};
    const auto model = line_model(1, 3, -3);
    InvariantTable n(TableKind::N);
    for (std::int64_t b = 1; b <= 3; ++b) {
      LaurentPoly lb;
      for (const auto& [k, x] : sample::symmetric_support(rng, 3)) lb.add_term(k, x);
      l[Beta{b}] = lb;
      n.set_period(Beta{b}, sample::symmetric_period(rng, b), model);
    }
    const auto p = expan_build(l, n, model, Beta{3}, SeriesMode::Window, QWindow{-10, 10});
    InvariantTable p_table(TableKind::P);
    for (const auto& [beta, s] : p.window_coeffs)
      p_table.set_window(beta, {s.terms().begin(), s.terms().end()}, 10, model);
    const auto report = verify_roundtrip(p_table, n, model, Beta{3}, QWindow{-10, 10});
    CHECK_MESSAGE(report.passed(), report.summary());
    for (std::int64_t b = 1; b <= 3; ++b) CHECK(report.recovered_l.at(Beta{b}) == l.at(Beta{b}));
  }
}

TEST_CASE("broken N symmetry is caught and located") {
  const auto model = line_model(3, 1, 0);
  InvariantTable n(TableKind::N);
  n.set_period(Beta{1}, {Rational(0), Rational(1), Rational(2)}, model);
  const std::map<Beta, LaurentPoly> l{{Beta{0}, LaurentPoly::monomial(0)}, {Beta{1}, LaurentPoly()}};
  const auto p = expan_build(l, n, model, Beta{1}, SeriesMode::Window, QWindow{-12, 12});
  InvariantTable p_table(TableKind::P);
  for (const auto& [beta, s] : p.window_coeffs)
    p_table.set_window(beta, {s.terms().begin(), s.terms().end()}, 12, model);
  const auto report = verify_roundtrip(p_table, n, model, Beta{1}, QWindow{-12, 12});
  CHECK_FALSE(report.passed());
  const auto& closed = report.checks.at(2);
  CHECK(closed.name == "closed_rational_symmetric");
  CHECK_FALSE(closed.passed);
  REQUIRE(closed.beta.has_value());
  CHECK(*closed.beta == Beta{1});
  REQUIRE(closed.degree.has_value());
  CHECK(*closed.degree >= 1);
  CHECK(report.summary().find("beta=(1)") != std::string::npos);
}

TEST_CASE("roundtrip input errors") {
  const auto micro = sample::micro_model(Rational(1), Rational(1), 6);
  CHECK_THROWS_AS(verify_roundtrip(micro.p_table, micro.n_table, micro.model, micro.cutoff, QWindow{-8, 8}),
                  InputError);
  CHECK_THROWS_AS(verify_roundtrip(micro.p_table, micro.n_table, micro.model, micro.cutoff, QWindow{3, 1}),
                  ConfigError);
}
