#include "wallcross/series.hpp"

#include <algorithm>
#include <sstream>

#include "wallcross/errors.hpp"

namespace wallcross {

LaurentPoly LaurentPoly::monomial(std::int64_t exponent, Rational coeff) {
  LaurentPoly p;
  p.add_term(exponent, coeff);
  return p;
}

void LaurentPoly::add_term(std::int64_t exponent, const Rational& coeff) {
  if (coeff == 0) return;
  auto [it, inserted] = terms_.try_emplace(exponent, coeff);
  if (!inserted) {
    it->second += coeff;
    if (it->second == 0) terms_.erase(it);
  }
}

Rational LaurentPoly::coefficient(std::int64_t exponent) const {
  auto it = terms_.find(exponent);
  return it == terms_.end() ? Rational(0) : it->second;
}

std::int64_t LaurentPoly::min_exponent() const {
  if (terms_.empty()) throw DomainError("zero Laurent polynomial has no lowest term");
  return terms_.begin()->first;
}

std::int64_t LaurentPoly::max_exponent() const {
  if (terms_.empty()) throw DomainError("zero Laurent polynomial has no highest term");
  return terms_.rbegin()->first;
}

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& other) {
  if (this == &other) return *this *= Rational(2);
  for (const auto& [e, c] : other.terms_) add_term(e, c);
  return *this;
}

LaurentPoly& LaurentPoly::operator-=(const LaurentPoly& other) {
  if (this == &other) {
    terms_.clear();
    return *this;
  }
  for (const auto& [e, c] : other.terms_) add_term(e, -c);
  return *this;
}

LaurentPoly& LaurentPoly::operator*=(const Rational& scalar) {
  if (scalar == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, c] : terms_) c *= scalar;
  return *this;
}

LaurentPoly LaurentPoly::reflected() const {
  LaurentPoly out;
  for (const auto& [e, c] : terms_) out.terms_.emplace(-e, c);
  return out;
}

LaurentPoly LaurentPoly::truncated(std::int64_t max_exponent) const {
  LaurentPoly out;
  for (const auto& [e, c] : terms_) {
    if (e > max_exponent) break;
    out.terms_.emplace(e, c);
  }
  return out;
}

LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }

LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
  LaurentPoly out;
  for (const auto& [ea, ca] : a.terms()) {
    for (const auto& [eb, cb] : b.terms()) out.add_term(ea + eb, ca * cb);
  }
  return out;
}

LaurentPoly multiply_truncated(const LaurentPoly& a, const LaurentPoly& b,
                               std::int64_t max_exponent) {
  LaurentPoly out;
  for (const auto& [ea, ca] : a.terms()) {
    for (const auto& [eb, cb] : b.terms()) {
      if (ea + eb > max_exponent) break;
      out.add_term(ea + eb, ca * cb);
    }
  }
  return out;
}

Polynomial::Polynomial(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }

Polynomial Polynomial::constant(Rational c) { return Polynomial(std::vector<Rational>{std::move(c)}); }

Polynomial Polynomial::monomial(std::size_t exponent, Rational coeff) {
  std::vector<Rational> c(exponent + 1, Rational(0));
  c[exponent] = std::move(coeff);
  return Polynomial(std::move(c));
}

void Polynomial::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

std::size_t Polynomial::low_order() const {
  std::size_t s = 0;
  while (s < c_.size() && c_[s] == 0) ++s;
  return s == c_.size() ? 0 : s;
}

Polynomial& Polynomial::operator+=(const Polynomial& other) {
  if (other.c_.size() > c_.size()) c_.resize(other.c_.size(), Rational(0));
  for (std::size_t i = 0; i < other.c_.size(); ++i) c_[i] += other.c_[i];
  trim();
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& other) {
  if (other.c_.size() > c_.size()) c_.resize(other.c_.size(), Rational(0));
  for (std::size_t i = 0; i < other.c_.size(); ++i) c_[i] -= other.c_[i];
  trim();
  return *this;
}

Polynomial& Polynomial::operator*=(const Rational& scalar) {
  for (auto& x : c_) x *= scalar;
  trim();
  return *this;
}

Polynomial Polynomial::reversed(std::size_t width) const {
  if (static_cast<std::int64_t>(width) < degree()) {
    throw DomainError("reversal width below the polynomial degree");
  }
  std::vector<Rational> out(width + 1, Rational(0));
  for (std::size_t i = 0; i < c_.size(); ++i) out[width - i] = c_[i];
  return Polynomial(std::move(out));
}

Polynomial Polynomial::shifted_down(std::size_t s) const {
  if (s >= c_.size()) return {};
  return Polynomial(std::vector<Rational>(c_.begin() + static_cast<std::ptrdiff_t>(s), c_.end()));
}

Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<Rational> out(a.coeffs().size() + b.coeffs().size() - 1, Rational(0));
  for (std::size_t i = 0; i < a.coeffs().size(); ++i) {
    if (a.coeffs()[i] == 0) continue;
    for (std::size_t j = 0; j < b.coeffs().size(); ++j) out[i + j] += a.coeffs()[i] * b.coeffs()[j];
  }
  return Polynomial(std::move(out));
}

std::pair<Polynomial, Polynomial> divmod(const Polynomial& a, const Polynomial& b) {
  if (b.is_zero()) throw DomainError("polynomial division by zero");
  if (a.degree() < b.degree()) return {Polynomial(), a};
  std::vector<Rational> rem = a.coeffs();
  std::vector<Rational> quot(static_cast<std::size_t>(a.degree() - b.degree() + 1), Rational(0));
  const auto db = static_cast<std::size_t>(b.degree());
  for (std::size_t k = quot.size(); k-- > 0;) {
    const Rational q = rem[k + db] / b.leading();
    quot[k] = q;
    if (q == 0) continue;
    for (std::size_t j = 0; j <= db; ++j) rem[k + j] -= q * b.coeffs()[j];
  }
  return {Polynomial(std::move(quot)), Polynomial(std::move(rem))};
}

Polynomial gcd(Polynomial a, Polynomial b) {
  while (!b.is_zero()) {
    auto r = divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.is_zero()) a *= 1 / a.leading();
  return a;
}

RationalFn::RationalFn(Polynomial num, Polynomial den) : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) throw DomainError("rational function with zero denominator");
  if (num_.is_zero()) {
    den_ = Polynomial::constant(1);
    return;
  }
  const Polynomial g = gcd(num_, den_);
  if (g.degree() > 0) {
    num_ = divmod(num_, g).first;
    den_ = divmod(den_, g).first;
  }
  const Rational lead = den_.leading();
  num_ *= 1 / lead;
  den_ *= 1 / lead;
}

RationalFn RationalFn::from_laurent(const LaurentPoly& p) {
  if (p.is_zero()) return {};
  const std::int64_t s = std::min<std::int64_t>(0, p.min_exponent());
  std::vector<Rational> num(static_cast<std::size_t>(p.max_exponent() - s + 1), Rational(0));
  for (const auto& [e, c] : p.terms()) num[static_cast<std::size_t>(e - s)] = c;
  return RationalFn(Polynomial(std::move(num)), Polynomial::monomial(static_cast<std::size_t>(-s)));
}

RationalFn& RationalFn::operator+=(const RationalFn& other) {
  if (den_ == other.den_) {
    *this = RationalFn(num_ + other.num_, den_);
  } else {
    *this = RationalFn(num_ * other.den_ + other.num_ * den_, den_ * other.den_);
  }
  return *this;
}

RationalFn& RationalFn::operator*=(const RationalFn& other) {
  *this = RationalFn(num_ * other.num_, den_ * other.den_);
  return *this;
}

RationalFn& RationalFn::operator*=(const Rational& scalar) {
  if (scalar == 0) {
    *this = RationalFn();
  } else {
    num_ *= scalar;
  }
  return *this;
}

RationalFn RationalFn::inverted() const {
  const auto width = static_cast<std::size_t>(std::max(num_.degree(), den_.degree()));
  return RationalFn(num_.reversed(width), den_.reversed(width));
}

RationalFn operator+(RationalFn a, const RationalFn& b) { return a += b; }
RationalFn operator*(RationalFn a, const RationalFn& b) { return a *= b; }

std::string to_string(const Polynomial& p) {
  if (p.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = 0; i < p.coeffs().size(); ++i) {
    const Rational& c = p.coeffs()[i];
    if (c == 0) continue;
    if (!first) os << (c < 0 ? " - " : " + ");
    else if (c < 0) os << "-";
    first = false;
    const Rational a = abs(c);
    if (i == 0 || a != 1) os << to_string(a);
    if (i > 0) os << (a != 1 ? " q" : "q");
    if (i > 1) os << "^" << i;
  }
  return os.str();
}

std::string to_string(const RationalFn& f) {
  if (f.den() == Polynomial::constant(1)) return to_string(f.num());
  return "(" + to_string(f.num()) + ") / (" + to_string(f.den()) + ")";
}

std::string to_string(const LaurentPoly& p) {
  if (p.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : p.terms()) {
    if (!first) os << (c < 0 ? " - " : " + ");
    else if (c < 0) os << "-";
    first = false;
    const Rational a = abs(c);
    if (e == 0 || a != 1) os << to_string(a);
    if (e != 0) os << (a != 1 ? " q" : "q");
    if (e != 0 && e != 1) os << "^" << e;
  }
  return os.str();
}

LaurentPoly laurent_expansion(const RationalFn& f, std::int64_t max_exponent) {
  LaurentPoly out;
  if (f.is_zero()) return out;
  const auto s = f.den().low_order();
  const Polynomial den = f.den().shifted_down(s);
  if (den.is_zero() || den.coeffs().front() == 0) {
    throw DomainError("denominator vanishes identically at q = 0");
  }
  const auto shift = static_cast<std::int64_t>(s);
  if (max_exponent + shift < 0) return out;
  const auto count = static_cast<std::size_t>(max_exponent + shift + 1);
  std::vector<Rational> c(count, Rational(0));
  const Rational& b0 = den.coeffs().front();
  for (std::size_t i = 0; i < count; ++i) {
    Rational acc = f.num().coefficient(i);
    const std::size_t top = std::min<std::size_t>(i, static_cast<std::size_t>(den.degree()));
    for (std::size_t j = 1; j <= top; ++j) acc -= den.coeffs()[j] * c[i - j];
    c[i] = acc / b0;
    out.add_term(static_cast<std::int64_t>(i) - shift, c[i]);
  }
  return out;
}

bool q_symmetry_check(const RationalFn& f) { return f.inverted() == f; }

std::optional<std::int64_t> first_mismatch(const RationalFn& f, const LaurentPoly& window,
                                            std::int64_t degree_bound) {
  const LaurentPoly expansion = laurent_expansion(f, degree_bound);
  const LaurentPoly diff = expansion - window.truncated(degree_bound);
  if (diff.is_zero()) return std::nullopt;
  return diff.min_exponent();
}

bool series_matches_expansion(const RationalFn& f, const LaurentPoly& window,
                              std::int64_t degree_bound) {
  return !first_mismatch(f, window, degree_bound).has_value();
}

RationalFn n_closed_form(const InvariantTable& n_table, const Beta& beta, const ConeModel& model) {
  if (beta_is_zero(beta)) throw DomainError("N(q) is not defined at beta = 0");
  const auto d = static_cast<std::size_t>(deg(beta, model));
  Polynomial num = Polynomial::monomial(d, n_table.value(0, beta) * static_cast<unsigned long>(d));
  for (std::size_t j = 1; j < d; ++j) {
    const Rational half = n_table.value(static_cast<std::int64_t>(j), beta) / 2;
    if (half == 0) continue;
    const Rational outer = half * static_cast<unsigned long>(d - j);
    const Rational inner = half * static_cast<unsigned long>(j);
    num += Polynomial::monomial(j + d, outer) + Polynomial::monomial(d - j, outer);
    num += Polynomial::monomial(j, inner) + Polynomial::monomial(2 * d - j, inner);
  }
  const Polynomial base = Polynomial::constant(1) - Polynomial::monomial(d);
  return RationalFn(std::move(num), base * base);
}

LaurentPoly n_prime_window(const InvariantTable& n_table, const Beta& beta, const ConeModel& model,
                           std::int64_t max_exponent) {
  (void)model;
  LaurentPoly out;
  for (std::int64_t n = 1; n <= max_exponent; ++n) {
    out.add_term(n, n_table.value(n, beta) * static_cast<long>(n));
  }
  return out;
}

namespace {

template <class C, class Mul>
std::map<Beta, C> graded_product(const std::map<Beta, C>& a, const std::map<Beta, C>& b,
                                 const std::vector<Beta>& classes, Mul mul) {
  std::map<Beta, C> out;
  for (const auto& beta : classes) {
    C acc{};
    bool any = false;
    for (const auto& b1 : classes_below(beta)) {
      auto ia = a.find(b1);
      if (ia == a.end()) continue;
      auto ib = b.find(beta_sub(beta, b1));
      if (ib == b.end()) continue;
      acc += mul(ia->second, ib->second);
      any = true;
    }
    if (any && !acc.is_zero()) out.emplace(beta, std::move(acc));
  }
  return out;
}

// exp of a series with no beta = 0 term; one is the unit coefficient.
template <class C, class Mul>
std::map<Beta, C> graded_exp(const std::map<Beta, C>& x, const std::vector<Beta>& classes,
                             const C& one, Mul mul) {
  const Beta zero(classes.front().size(), 0);
  std::map<Beta, C> result{{zero, one}};
  std::map<Beta, C> power{{zero, one}};
  for (unsigned m = 1; !power.empty(); ++m) {
    // power holds x^m / m! after this step.
    power = graded_product(power, x, classes, mul);
    const Rational inv = Rational(1) / static_cast<unsigned long>(m);
    for (auto& [beta, c] : power) {
      c *= inv;
      result[beta] += c;
    }
  }
  std::erase_if(result, [](const auto& kv) { return kv.second.is_zero(); });
  return result;
}

}  // namespace

ConeSeries expan_build(const std::map<Beta, LaurentPoly>& l_series, const InvariantTable& n_table,
                       const ConeModel& model, const Beta& cutoff, SeriesMode mode,
                       QWindow window) {
  model.require_dimension(cutoff);
  const auto classes = classes_below(cutoff);
  for (const auto& beta : classes) {
    if (!l_series.count(beta)) {
      throw InputError("L series has no coefficient for beta = " + beta_to_string(beta));
    }
  }
  ConeSeries out;
  out.cutoff = cutoff;
  out.mode = mode;
  out.window = window;

  if (mode == SeriesMode::Window) {
    std::int64_t min_l = 0;
    for (const auto& beta : classes) {
      const auto& l = l_series.at(beta);
      if (!l.is_zero()) min_l = std::min(min_l, l.min_exponent());
    }
    const std::int64_t top = window.hi - min_l;
    std::map<Beta, LaurentPoly> n_prime;
    for (const auto& beta : classes) {
      if (beta_is_zero(beta)) continue;
      auto w = n_prime_window(n_table, beta, model, top);
      if (!w.is_zero()) n_prime.emplace(beta, std::move(w));
    }
    auto mul_top = [top](const LaurentPoly& a, const LaurentPoly& b) {
      return multiply_truncated(a, b, top);
    };
    const auto e = graded_exp(n_prime, classes, LaurentPoly::monomial(0), mul_top);
    std::map<Beta, LaurentPoly> l_map;
    for (const auto& beta : classes) {
      if (!l_series.at(beta).is_zero()) l_map.emplace(beta, l_series.at(beta));
    }
    auto mul_hi = [hi = window.hi](const LaurentPoly& a, const LaurentPoly& b) {
      return multiply_truncated(a, b, hi);
    };
    auto p = graded_product(l_map, e, classes, mul_hi);
    for (const auto& beta : classes) out.window_coeffs[beta] = p.count(beta) ? p[beta] : LaurentPoly();
    return out;
  }

  std::map<Beta, RationalFn> n_prime;
  for (const auto& beta : classes) {
    if (beta_is_zero(beta)) continue;
    auto f = n_closed_form(n_table, beta, model);
    if (!f.is_zero()) n_prime.emplace(beta, std::move(f));
  }
  auto mul = [](const RationalFn& a, const RationalFn& b) { return a * b; };
  const auto e = graded_exp(n_prime, classes, RationalFn::from_laurent(LaurentPoly::monomial(0)), mul);
  std::map<Beta, RationalFn> l_map;
  for (const auto& beta : classes) {
    if (!l_series.at(beta).is_zero()) l_map.emplace(beta, RationalFn::from_laurent(l_series.at(beta)));
  }
  auto p = graded_product(l_map, e, classes, mul);
  for (const auto& beta : classes) out.closed_coeffs[beta] = p.count(beta) ? p[beta] : RationalFn();
  return out;
}

std::int64_t lowest_floor(const Beta& beta, const ConeModel& model) {
  std::int64_t out = 0;
  for (const auto& b : classes_below(beta)) out = std::min(out, model.n_floor(b));
  return out;
}

std::map<Beta, LaurentPoly> l_series_from_pn(const InvariantTable& p_table,
                                             const InvariantTable& n_table, const ConeModel& model,
                                             const Beta& cutoff, std::int64_t lo, std::int64_t hi) {
  std::map<Beta, LaurentPoly> out;
  for (const auto& beta : classes_below(cutoff)) {
    LaurentPoly l;
    for (std::int64_t n = lo; n <= hi; ++n) l.add_term(n, l_from_pn(n, beta, p_table, n_table, model));
    out.emplace(beta, std::move(l));
  }
  return out;
}

bool RoundtripReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const RoundtripCheck& c) { return c.passed; });
}

std::string RoundtripReport::summary() const {
  std::ostringstream os;
  for (const auto& c : checks) {
    os << c.name << ": " << (c.passed ? "pass" : "FAIL");
    if (!c.passed) {
      if (c.beta) os << " at beta=" << beta_to_string(*c.beta);
      if (c.degree) os << " q^" << *c.degree;
      if (!c.detail.empty()) os << " (" << c.detail << ")";
    }
    os << '\n';
  }
  return os.str();
}

namespace {

void fail(RoundtripCheck& check, const Beta& beta, std::int64_t degree, std::string detail) {
  if (!check.passed) return;
  check.passed = false;
  check.beta = beta;
  check.degree = degree;
  check.detail = std::move(detail);
}

}  // namespace

RoundtripReport verify_roundtrip(const InvariantTable& p_table, const InvariantTable& n_table,
                                 const ConeModel& model, const Beta& cutoff, QWindow window) {
  model.require_dimension(cutoff);
  if (window.lo > window.hi) throw ConfigError("q window is empty");
  const auto classes = classes_below(cutoff);
  std::int64_t lo = window.lo;
  for (const auto& beta : classes) {
    if (!beta_is_zero(beta) || p_table.has_row(beta)) {
      if (p_table.max_n(beta) < window.hi) {
        throw InputError("P row for beta = " + beta_to_string(beta) + " stops at n = " +
                         std::to_string(p_table.max_n(beta)) + ", window needs " +
                         std::to_string(window.hi));
      }
    }
    if (!beta_is_zero(beta) && !n_table.has_row(beta)) {
      throw InputError("N table has no row for beta = " + beta_to_string(beta));
    }
    const auto floor = lowest_floor(beta, model);
    if (-floor > window.hi) {
      throw InputError("window top " + std::to_string(window.hi) + " is below -N = " +
                       std::to_string(-floor) + " for beta = " + beta_to_string(beta) +
                       "; the support of L cannot be certified");
    }
    lo = std::min({lo, floor, -window.hi});
  }

  RoundtripReport report;
  report.recovered_l = l_series_from_pn(p_table, n_table, model, cutoff, lo, window.hi);

  RoundtripCheck roundtrip{"roundtrip", true, {}, {}, {}};
  const auto rebuilt = expan_build(report.recovered_l, n_table, model, cutoff, SeriesMode::Window, window);
  for (const auto& beta : classes) {
    const auto& got = rebuilt.window_coeffs.at(beta);
    for (std::int64_t n = window.lo; n <= window.hi && roundtrip.passed; ++n) {
      const Rational want = p_table.value(n, beta);
      if (got.coefficient(n) != want) {
        fail(roundtrip, beta, n, "P = " + to_string(want) + ", rebuilt " + to_string(got.coefficient(n)));
      }
    }
  }

  RoundtripCheck symmetric{"l_symmetric_finite", true, {}, {}, {}};
  for (const auto& beta : classes) {
    const auto& l = report.recovered_l.at(beta);
    const auto floor = lowest_floor(beta, model);
    for (std::int64_t n = 1; n <= window.hi && symmetric.passed; ++n) {
      if (l.coefficient(n) != l.coefficient(-n)) {
        fail(symmetric, beta, n,
             "L_n = " + to_string(l.coefficient(n)) + ", L_-n = " + to_string(l.coefficient(-n)));
      } else if (n > -floor && l.coefficient(n) != 0) {
        fail(symmetric, beta, n, "L_n = " + to_string(l.coefficient(n)) + " outside the support bound");
      }
    }
  }

  RoundtripCheck closed{"closed_rational_symmetric", true, {}, {}, {}};
  report.closed = expan_build(report.recovered_l, n_table, model, cutoff, SeriesMode::Closed);
  for (const auto& beta : classes) {
    if (!closed.passed) break;
    const auto& f = report.closed.closed_coeffs.at(beta);
    LaurentPoly p_window;
    for (std::int64_t n = std::min(lo, model.n_floor(beta)); n <= window.hi; ++n) {
      p_window.add_term(n, p_table.value(n, beta));
    }
    if (auto bad = first_mismatch(f, p_window, window.hi)) {
      const auto expanded = laurent_expansion(f, window.hi);
      fail(closed, beta, *bad,
           "closed form expands to " + to_string(expanded.coefficient(*bad)) + ", P = " +
               to_string(p_window.coefficient(*bad)));
    } else if (!q_symmetry_check(f)) {
      fail(closed, beta, 0, "closed form not invariant under q -> 1/q");
    }
  }

  report.checks = {roundtrip, symmetric, closed};
  return report;
}

}  // namespace wallcross
