#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "wallcross/cone.hpp"
#include "wallcross/integrate.hpp"
#include "wallcross/rational.hpp"

namespace wallcross {

/// Finite Laurent polynomial in q; zero coefficients are never stored.
class LaurentPoly {
 public:
  using TermMap = std::map<std::int64_t, Rational>;

  LaurentPoly() = default;
  static LaurentPoly monomial(std::int64_t exponent, Rational coeff = 1);

  void add_term(std::int64_t exponent, const Rational& coeff);
  Rational coefficient(std::int64_t exponent) const;
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::int64_t min_exponent() const;
  std::int64_t max_exponent() const;

  LaurentPoly& operator+=(const LaurentPoly& other);
  LaurentPoly& operator-=(const LaurentPoly& other);
  LaurentPoly& operator*=(const Rational& scalar);

  // q -> 1/q
  LaurentPoly reflected() const;
  // Terms with exponent > max_exponent dropped.
  LaurentPoly truncated(std::int64_t max_exponent) const;

  friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) { return a.terms_ == b.terms_; }

 private:
  TermMap terms_;
};

LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b);
LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b);
LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b);
// Product keeping only exponents <= max_exponent.
LaurentPoly multiply_truncated(const LaurentPoly& a, const LaurentPoly& b, std::int64_t max_exponent);

/// Dense polynomial in q with rational coefficients, c[i] the coefficient of q^i.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<Rational> coeffs);
  static Polynomial constant(Rational c);
  static Polynomial monomial(std::size_t exponent, Rational coeff = 1);

  bool is_zero() const { return c_.empty(); }
  // -1 for the zero polynomial.
  std::int64_t degree() const { return static_cast<std::int64_t>(c_.size()) - 1; }
  const std::vector<Rational>& coeffs() const { return c_; }
  Rational coefficient(std::size_t i) const { return i < c_.size() ? c_[i] : Rational(0); }
  const Rational& leading() const { return c_.back(); }
  // Largest s with q^s dividing the polynomial (0 for the zero polynomial).
  std::size_t low_order() const;

  Polynomial& operator+=(const Polynomial& other);
  Polynomial& operator-=(const Polynomial& other);
  Polynomial& operator*=(const Rational& scalar);

  // Coefficients reversed against a fixed length: q^width p(1/q).
  Polynomial reversed(std::size_t width) const;
  Polynomial shifted_down(std::size_t s) const;

  friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.c_ == b.c_; }

 private:
  void trim();
  std::vector<Rational> c_;
};

Polynomial operator+(Polynomial a, const Polynomial& b);
Polynomial operator-(Polynomial a, const Polynomial& b);
Polynomial operator*(const Polynomial& a, const Polynomial& b);
// Quotient and remainder; throws DomainError on division by zero.
std::pair<Polynomial, Polynomial> divmod(const Polynomial& a, const Polynomial& b);
// Monic gcd (zero only when both inputs are zero).
Polynomial gcd(Polynomial a, Polynomial b);

/// num / den in lowest terms with den monic.
class RationalFn {
 public:
  RationalFn() : num_(), den_(Polynomial::constant(1)) {}
  RationalFn(Polynomial num, Polynomial den);
  static RationalFn from_laurent(const LaurentPoly& p);

  const Polynomial& num() const { return num_; }
  const Polynomial& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }

  RationalFn& operator+=(const RationalFn& other);
  RationalFn& operator*=(const RationalFn& other);
  RationalFn& operator*=(const Rational& scalar);

  // f(1/q) in canonical form.
  RationalFn inverted() const;

  friend bool operator==(const RationalFn& a, const RationalFn& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }

 private:
  Polynomial num_;
  Polynomial den_;
};

RationalFn operator+(RationalFn a, const RationalFn& b);
RationalFn operator*(RationalFn a, const RationalFn& b);

// Display form "(c0 + c1 q + ...) / (...)".
std::string to_string(const Polynomial& p);
std::string to_string(const RationalFn& f);
std::string to_string(const LaurentPoly& p);

// Laurent expansion at q = 0 of every exponent up to max_exponent.
LaurentPoly laurent_expansion(const RationalFn& f, std::int64_t max_exponent);

bool q_symmetry_check(const RationalFn& f);

// First exponent <= degree_bound where the expansion of f and the window differ.
std::optional<std::int64_t> first_mismatch(const RationalFn& f, const LaurentPoly& window,
                                           std::int64_t degree_bound);
bool series_matches_expansion(const RationalFn& f, const LaurentPoly& window,
                              std::int64_t degree_bound);

// sum_{n >= 1} n N_{n,beta} q^n in closed form, from one period of N.
RationalFn n_closed_form(const InvariantTable& n_table, const Beta& beta, const ConeModel& model);
// The same series cut at max_exponent.
LaurentPoly n_prime_window(const InvariantTable& n_table, const Beta& beta, const ConeModel& model,
                           std::int64_t max_exponent);

struct QWindow {
  std::int64_t lo = 0;
  std::int64_t hi = 0;
};

enum class SeriesMode { Window, Closed };

/// Coefficients of v^beta for every beta <= cutoff.
struct ConeSeries {
  Beta cutoff;
  SeriesMode mode = SeriesMode::Window;
  QWindow window;  // Window mode only; coefficients are exact for exponents <= window.hi.
  std::map<Beta, LaurentPoly> window_coeffs;
  std::map<Beta, RationalFn> closed_coeffs;
};

// (sum_beta L_beta v^beta) * exp(sum_beta N'_beta v^beta) on the classes below cutoff.
ConeSeries expan_build(const std::map<Beta, LaurentPoly>& l_series, const InvariantTable& n_table,
                       const ConeModel& model, const Beta& cutoff, SeriesMode mode,
                       QWindow window = {});

// Smallest N(beta') over beta' <= beta (including beta' = 0).
std::int64_t lowest_floor(const Beta& beta, const ConeModel& model);

// L_beta(q) for every beta <= cutoff, coefficients n in [lo, hi], from P and N.
std::map<Beta, LaurentPoly> l_series_from_pn(const InvariantTable& p_table,
                                             const InvariantTable& n_table, const ConeModel& model,
                                             const Beta& cutoff, std::int64_t lo, std::int64_t hi);

struct RoundtripCheck {
  std::string name;
  bool passed = true;
  std::optional<Beta> beta;
  std::optional<std::int64_t> degree;
  std::string detail;
};

struct RoundtripReport {
  std::vector<RoundtripCheck> checks;
  std::map<Beta, LaurentPoly> recovered_l;
  ConeSeries closed;

  bool passed() const;
  std::string summary() const;
};

RoundtripReport verify_roundtrip(const InvariantTable& p_table, const InvariantTable& n_table,
                                 const ConeModel& model, const Beta& cutoff, QWindow window);

}  // namespace wallcross
