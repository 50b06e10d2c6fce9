#include "wallcross/cone.hpp"

#include <algorithm>
#include <sstream>

#include "wallcross/errors.hpp"
#include "wallcross/stability.hpp"

namespace wallcross {

namespace {

void require_same_length(const Beta& a, const Beta& b) {
  if (a.size() != b.size()) {
    throw ConfigError("curve class dimension mismatch: " + beta_to_string(a) + " vs " +
                      beta_to_string(b));
  }
}

}  // namespace

Beta beta_add(const Beta& a, const Beta& b) {
  require_same_length(a, b);
  Beta out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
  return out;
}

Beta beta_sub(const Beta& a, const Beta& b) {
  require_same_length(a, b);
  Beta out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
  return out;
}

bool beta_is_zero(const Beta& b) {
  return std::all_of(b.begin(), b.end(), [](std::int64_t x) { return x == 0; });
}

bool beta_leq(const Beta& a, const Beta& b) {
  require_same_length(a, b);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] > b[i]) return false;
  }
  return true;
}

std::int64_t beta_size(const Beta& b) {
  std::int64_t s = 0;
  for (auto x : b) s += x;
  return s;
}

std::string beta_to_string(const Beta& b) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < b.size(); ++i) {
    if (i) os << ',';
    os << b[i];
  }
  os << ')';
  return os.str();
}

bool NumClass::is_valid() const {
  if (r != 0 && r != -1) return false;
  if (std::any_of(beta.begin(), beta.end(), [](std::int64_t x) { return x < 0; })) return false;
  if (r == 0 && beta_is_zero(beta)) return false;
  if (r == -1 && beta_is_zero(beta) && n != 0) return false;
  return true;
}

NumClass operator+(const NumClass& a, const NumClass& b) {
  return NumClass{a.r + b.r, beta_add(a.beta, b.beta), a.n + b.n};
}

NumClass operator-(const NumClass& a, const NumClass& b) {
  return NumClass{a.r - b.r, beta_sub(a.beta, b.beta), a.n - b.n};
}

NumClass sum_classes(const std::vector<NumClass>& parts) {
  if (parts.empty()) throw PreconditionError("sum of an empty class tuple");
  NumClass total = parts.front();
  for (std::size_t i = 1; i < parts.size(); ++i) total = total + parts[i];
  return total;
}

std::string to_string(const NumClass& v) {
  std::ostringstream os;
  os << '(' << v.r << ',' << beta_to_string(v.beta) << ',' << v.n << ')';
  return os.str();
}

void require_valid(const NumClass& v) {
  if (!v.is_valid()) throw PreconditionError("invalid numerical class " + to_string(v));
}

ConeModel::ConeModel(Beta omega, Beta bound, std::map<Beta, std::int64_t> m_table,
                     std::map<Beta, std::int64_t> n_floor_table)
    : omega_(std::move(omega)),
      bound_(std::move(bound)),
      m_table_(std::move(m_table)),
      n_floor_(std::move(n_floor_table)) {
  if (omega_.empty()) throw ConfigError("model.omega must have at least one entry");
  for (auto w : omega_) {
    if (w <= 0) throw ConfigError("model.omega entries must be strictly positive");
  }
  if (bound_.size() != omega_.size()) {
    throw ConfigError("model.beta_bound has " + std::to_string(bound_.size()) +
                      " entries, expected " + std::to_string(omega_.size()));
  }
  for (auto b : bound_) {
    if (b < 0) throw ConfigError("model.beta_bound entries must be nonnegative");
  }
  for (const auto& [beta, _] : m_table_) require_dimension(beta);
  for (const auto& [beta, _] : n_floor_) require_dimension(beta);
  Beta zero(omega_.size(), 0);
  auto it = m_table_.find(zero);
  if (it == m_table_.end()) {
    m_table_[zero] = 0;
  } else if (it->second != 0) {
    throw ConfigError("model.m_table must have m(0) = 0");
  }
  for (const auto& beta : classes_below(bound_)) {
    if (!m_table_.count(beta)) {
      throw ConfigError("model.m_table has no entry for beta = " + beta_to_string(beta));
    }
  }
}

ConeModel ConeModel::orthant(Beta omega, Beta bound) {
  std::map<Beta, std::int64_t> m;
  std::map<Beta, std::int64_t> floors;
  if (bound.size() == omega.size()) {
    for (const auto& beta : classes_below(bound)) {
      m[beta] = 0;
      floors[beta] = 0;
    }
  }
  return ConeModel(std::move(omega), std::move(bound), std::move(m), std::move(floors));
}

std::int64_t ConeModel::m(const Beta& beta) const {
  require_dimension(beta);
  auto it = m_table_.find(beta);
  if (it == m_table_.end()) {
    throw InputError("m_table has no entry for beta = " + beta_to_string(beta));
  }
  return it->second;
}

std::int64_t ConeModel::n_floor(const Beta& beta) const {
  require_dimension(beta);
  if (beta_is_zero(beta)) return 0;
  auto it = n_floor_.find(beta);
  if (it == n_floor_.end()) {
    throw InputError("n_floor_table has no entry for beta = " + beta_to_string(beta));
  }
  return it->second;
}

void ConeModel::require_dimension(const Beta& beta) const {
  if (beta.size() != omega_.size()) {
    throw ConfigError("curve class " + beta_to_string(beta) + " has " +
                      std::to_string(beta.size()) + " components, model rank is " +
                      std::to_string(omega_.size()));
  }
}

std::int64_t deg(const Beta& beta, const ConeModel& model) {
  model.require_dimension(beta);
  std::int64_t d = 0;
  for (std::size_t i = 0; i < beta.size(); ++i) {
    if (beta[i] < 0) throw PreconditionError("deg of non-effective class " + beta_to_string(beta));
    d += model.omega()[i] * beta[i];
  }
  return d;
}

std::int64_t euler_pairing(const NumClass& v, const NumClass& w) {
  return static_cast<std::int64_t>(v.r) * w.n - static_cast<std::int64_t>(w.r) * v.n;
}

Rational slope(const NumClass& v, const ConeModel& model) {
  if (!v.is_torsion() || beta_is_zero(v.beta)) {
    throw PreconditionError("slope needs a torsion class with beta != 0, got " + to_string(v));
  }
  return make_rational(v.n, deg(v.beta, model));
}

std::vector<Beta> classes_below(const Beta& beta) {
  std::vector<Beta> out;
  Beta cur(beta.size(), 0);
  for (auto b : beta) {
    if (b < 0) return out;
  }
  // Odometer over the box [0, beta].
  while (true) {
    out.push_back(cur);
    std::size_t i = beta.size();
    while (i > 0) {
      --i;
      if (cur[i] < beta[i]) {
        ++cur[i];
        std::fill(cur.begin() + static_cast<std::ptrdiff_t>(i) + 1, cur.end(), 0);
        break;
      }
      if (i == 0) return out;
    }
    if (beta.empty()) return out;
  }
}

std::vector<Beta> nonzero_classes_below(const Beta& beta) {
  auto all = classes_below(beta);
  std::erase_if(all, beta_is_zero);
  return all;
}

Rational mu_n_beta(std::int64_t n, const Beta& beta, const ConeModel& model) {
  model.require_dimension(beta);
  if (beta_is_zero(beta)) throw DomainError("mu_{n,beta} is undefined at beta = 0");
  bool first = true;
  Rational best;
  for (const auto& sub : nonzero_classes_below(beta)) {
    Rational candidate = make_rational(n - model.m(beta_sub(beta, sub)), deg(sub, model));
    if (first || candidate > best) {
      best = candidate;
      first = false;
    }
  }
  return best;
}

namespace {

struct Splitter {
  const ConeModel& model;
  Rational lo;
  Rational hi;
  NumClass target;
  std::vector<ClassTuple>& out;
  ClassTuple torsion;

  void finish(const Beta& rest_beta, std::int64_t rest_n) {
    if (target.r == 0) {
      if (!torsion.empty() && beta_is_zero(rest_beta) && rest_n == 0) out.push_back(torsion);
      return;
    }
    NumClass rank_part{-1, rest_beta, rest_n};
    if (!rank_part.is_valid()) return;
    for (std::size_t e = 0; e <= torsion.size(); ++e) {
      ClassTuple tuple = torsion;
      tuple.insert(tuple.begin() + static_cast<std::ptrdiff_t>(e), rank_part);
      out.push_back(std::move(tuple));
    }
  }

  void extend(const Beta& rest_beta, std::int64_t rest_n) {
    finish(rest_beta, rest_n);
    for (const auto& part : nonzero_classes_below(rest_beta)) {
      const std::int64_t d = deg(part, model);
      const std::int64_t n_lo = ceil_to_int(lo * d);
      const std::int64_t n_hi = floor_to_int(hi * d);
      for (std::int64_t n = n_lo; n <= n_hi; ++n) {
        torsion.push_back(NumClass{0, part, n});
        extend(beta_sub(rest_beta, part), rest_n - n);
        torsion.pop_back();
      }
    }
  }
};

}  // namespace

std::vector<ClassTuple> split_by_slope(const NumClass& v, const Rational& lo, const Rational& hi,
                                       const ConeModel& model) {
  require_valid(v);
  model.require_dimension(v.beta);
  std::vector<ClassTuple> out;
  if (lo > hi) return out;
  Splitter s{model, lo, hi, v, out, {}};
  s.extend(v.beta, v.n);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<ClassTuple> decompositions(const NumClass& v, const StabilityParam& k,
                                       const ConeModel& model) {
  if (v.r != -1) throw PreconditionError("decompositions needs a rank -1 class, got " + to_string(v));
  if (k.k() >= 0) throw PreconditionError("decompositions needs k < 0, got k = " + to_string(k.k()));
  return split_by_slope(v, Rational(0), Rational(-2 * k.k()), model);
}

}  // namespace wallcross
