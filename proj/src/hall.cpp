#include "wallcross/hall.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "wallcross/coeff.hpp"
#include "wallcross/errors.hpp"

namespace wallcross {

bool operator==(const Symbol& a, const Symbol& b) {
  return a.kind == b.kind && a.cls == b.cls && a.k == b.k;
}

bool operator<(const Symbol& a, const Symbol& b) {
  if (a.kind != b.kind) return a.kind < b.kind;
  if (a.cls != b.cls) return a.cls < b.cls;
  return a.k < b.k;
}

std::string to_string(const Symbol& s) {
  std::string out = s.kind == SymbolKind::Delta ? "δ[" : "ε[";
  return out + to_string(s.cls) + "@" + to_string(s.k) + "]";
}

bool Truncation::admits(const Word& word) const {
  if (max_length != 0 && word.size() > max_length) return false;
  if (word.empty()) return true;
  int rank = 0;
  Beta total(word.front().cls.beta.size(), 0);
  for (const auto& s : word) {
    rank += s.cls.r;
    total = beta_add(total, s.cls.beta);
  }
  if (rank < -1) return false;
  return v_max.empty() || beta_leq(total, v_max);
}

HallExpr HallExpr::unit() {
  HallExpr e;
  e.terms_[Word{}] = 1;
  return e;
}

HallExpr HallExpr::of(Symbol s, Rational coeff) {
  HallExpr e;
  e.add_term(Word{std::move(s)}, coeff);
  return e;
}

void HallExpr::add_term(const Word& word, const Rational& coeff) {
  if (coeff == 0) return;
  auto [it, inserted] = terms_.try_emplace(word, coeff);
  if (!inserted) {
    it->second += coeff;
    if (it->second == 0) terms_.erase(it);
  }
}

HallExpr& HallExpr::operator+=(const HallExpr& other) {
  if (this == &other) return *this *= Rational(2);
  for (const auto& [w, c] : other.terms_) add_term(w, c);
  return *this;
}

HallExpr& HallExpr::operator-=(const HallExpr& other) {
  if (this == &other) {
    terms_.clear();
    return *this;
  }
  for (const auto& [w, c] : other.terms_) add_term(w, -c);
  return *this;
}

HallExpr& HallExpr::operator*=(const Rational& scalar) {
  if (scalar == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [w, c] : terms_) c *= scalar;
  return *this;
}

Rational HallExpr::coefficient(const Word& word) const {
  auto it = terms_.find(word);
  return it == terms_.end() ? Rational(0) : it->second;
}

std::string HallExpr::dump() const {
  if (terms_.empty()) return "0\n";
  std::ostringstream os;
  for (const auto& [word, coeff] : terms_) {
    os << to_string(coeff);
    if (word.empty()) os << " * 1";
    for (const auto& s : word) os << " * " << to_string(s);
    os << '\n';
  }
  return os.str();
}

HallExpr operator+(HallExpr a, const HallExpr& b) { return a += b; }
HallExpr operator-(HallExpr a, const HallExpr& b) { return a -= b; }

HallExpr multiply(const HallExpr& a, const HallExpr& b, const Truncation& trunc) {
  HallExpr out;
  for (const auto& [wa, ca] : a.terms()) {
    for (const auto& [wb, cb] : b.terms()) {
      Word w = wa;
      w.insert(w.end(), wb.begin(), wb.end());
      if (trunc.admits(w)) out.add_term(w, ca * cb);
    }
  }
  return out;
}

HallExpr substitute(const HallExpr& expr, const std::function<HallExpr(const Symbol&)>& image,
                    const Truncation& trunc) {
  std::map<Symbol, HallExpr> cache;
  auto lookup = [&](const Symbol& s) -> const HallExpr& {
    auto it = cache.find(s);
    if (it == cache.end()) it = cache.emplace(s, image(s)).first;
    return it->second;
  };
  HallExpr out;
  for (const auto& [word, coeff] : expr.terms()) {
    HallExpr product = HallExpr::unit();
    for (const auto& s : word) {
      product = multiply(product, lookup(s), trunc);
      if (product.is_zero()) break;
    }
    product *= coeff;
    out += product;
  }
  return out;
}

namespace {

bool fits_inside(const NumClass& part, const NumClass& rest) {
  if (!beta_leq(part.beta, rest.beta)) return false;
  if (part.r == -1 && rest.r != -1) return false;
  return true;
}

// Ordered tuples of candidate classes summing exactly to v.
void enumerate_tuples(const NumClass& rest, const std::vector<NumClass>& candidates,
                      std::size_t max_length, std::vector<NumClass>& cur,
                      const std::function<void(const std::vector<NumClass>&)>& emit) {
  if (rest.r == 0 && beta_is_zero(rest.beta)) {
    if (rest.n == 0 && !cur.empty()) emit(cur);
    return;
  }
  if (max_length != 0 && cur.size() >= max_length) return;
  for (const auto& c : candidates) {
    if (!fits_inside(c, rest)) continue;
    cur.push_back(c);
    enumerate_tuples(rest - c, candidates, max_length, cur, emit);
    cur.pop_back();
  }
}

std::vector<std::vector<NumClass>> tuples_summing_to(const NumClass& v,
                                                     const std::vector<NumClass>& candidates,
                                                     std::size_t max_length) {
  std::vector<std::vector<NumClass>> out;
  std::vector<NumClass> cur;
  enumerate_tuples(v, candidates, max_length, cur,
                   [&](const std::vector<NumClass>& t) { out.push_back(t); });
  return out;
}

Word symbols(const std::vector<NumClass>& parts, SymbolKind kind, const StabilityParam& k) {
  Word w;
  w.reserve(parts.size());
  for (const auto& p : parts) w.push_back(Symbol{kind, p, k.k()});
  return w;
}

std::vector<NumClass> same_phase(const NumClass& v, const std::vector<NumClass>& pool,
                                 const StabilityParam& k, const ConeModel& model) {
  std::vector<NumClass> out;
  for (const auto& c : pool) {
    if (compare(c, v, k, model) == PhaseOrder::Eq) out.push_back(c);
  }
  return out;
}

std::vector<NumClass> below(const NumClass& v, const std::vector<NumClass>& pool) {
  std::vector<NumClass> out;
  for (const auto& c : pool) {
    if (fits_inside(c, v)) out.push_back(c);
  }
  return out;
}

void require_dominance(const NumClass& v, const StabilityParam& k_z, const StabilityParam& k_zp,
                       const ConeModel& model, Dominance policy) {
  if (policy == Dominance::Require && !dominates_below(v, k_z, k_zp, model)) {
    throw PreconditionError("Z' (k = " + to_string(k_zp.k()) + ") does not dominate Z (k = " +
                            to_string(k_z.k()) + ") on the classes below " + to_string(v));
  }
}

}  // namespace

std::vector<NumClass> reachable_classes(const GeneratorSet& gens, const StabilityParam& k,
                                        const ConeModel& model) {
  for (const auto& g : gens.classes) require_valid(g);
  std::set<NumClass> seen(gens.classes.begin(), gens.classes.end());
  std::vector<NumClass> frontier(seen.begin(), seen.end());
  const Truncation& trunc = gens.truncation;
  while (!frontier.empty()) {
    std::vector<NumClass> next;
    for (const auto& a : frontier) {
      for (const auto& g : gens.classes) {
        if (compare(a, g, k, model) != PhaseOrder::Eq) continue;
        NumClass s = a + g;
        if (!s.is_valid()) continue;
        if (!trunc.v_max.empty() && !beta_leq(s.beta, trunc.v_max)) continue;
        // A rank -1 class with beta = 0 can only be (-1,0,0); adding it twice leaves the rank range.
        if (seen.insert(s).second) next.push_back(s);
      }
    }
    frontier = std::move(next);
  }
  return {seen.begin(), seen.end()};
}

std::vector<NumClass> phase_block(const NumClass& v, const GeneratorSet& gens,
                                  const StabilityParam& k, const ConeModel& model) {
  require_valid(v);
  return below(v, same_phase(v, reachable_classes(gens, k, model), k, model));
}

HallExpr eps_from_delta(const NumClass& v, const GeneratorSet& gens, const StabilityParam& k,
                        const ConeModel& model) {
  require_valid(v);
  const auto parts = below(v, same_phase(v, gens.classes, k, model));
  HallExpr out;
  for (const auto& t : tuples_summing_to(v, parts, gens.truncation.max_length)) {
    const auto l = static_cast<std::int64_t>(t.size());
    out.add_term(symbols(t, SymbolKind::Delta, k), sign_power(l - 1) / static_cast<long>(l));
  }
  return out;
}

HallExpr delta_from_eps(const NumClass& v, const GeneratorSet& gens, const StabilityParam& k,
                        const ConeModel& model) {
  const auto parts = phase_block(v, gens, k, model);
  HallExpr out;
  for (const auto& t : tuples_summing_to(v, parts, gens.truncation.max_length)) {
    out.add_term(symbols(t, SymbolKind::Epsilon, k), 1 / factorial(static_cast<unsigned>(t.size())));
  }
  return out;
}

HallExpr transform_delta(const NumClass& v, const GeneratorSet& gens, const StabilityParam& k_z,
                         const StabilityParam& k_zp, const ConeModel& model, Dominance policy) {
  require_valid(v);
  require_dominance(v, k_z, k_zp, model, policy);
  const auto parts = below(v, same_phase(v, gens.classes, k_zp, model));
  HallExpr out;
  for (const auto& t : tuples_summing_to(v, parts, gens.truncation.max_length)) {
    bool descending = true;
    for (std::size_t i = 0; i + 1 < t.size() && descending; ++i) {
      descending = compare(t[i], t[i + 1], k_z, model) == PhaseOrder::Gt;
    }
    if (descending) out.add_term(symbols(t, SymbolKind::Delta, k_z), 1);
  }
  return out;
}

HallExpr invert_delta(const NumClass& v, const GeneratorSet& gens, const StabilityParam& k_z,
                      const StabilityParam& k_zp, const ConeModel& model, Dominance policy) {
  require_valid(v);
  require_dominance(v, k_z, k_zp, model, policy);
  const auto parts = phase_block(v, gens, k_zp, model);
  HallExpr out;
  for (const auto& t : tuples_summing_to(v, parts, gens.truncation.max_length)) {
    bool admitted = true;
    NumClass left = t.front();
    for (std::size_t i = 0; i + 1 < t.size() && admitted; ++i) {
      if (i > 0) left = left + t[i];
      admitted = compare(left, v - left, k_z, model) == PhaseOrder::Gt;
    }
    if (admitted) {
      out.add_term(symbols(t, SymbolKind::Delta, k_zp),
                   sign_power(static_cast<std::int64_t>(t.size()) - 1));
    }
  }
  return out;
}

HallExpr transform_eps(const NumClass& v, const GeneratorSet& gens, const StabilityParam& k_z,
                       const StabilityParam& k_zp, const ConeModel& model, Dominance policy) {
  require_valid(v);
  require_dominance(v, k_z, k_zp, model, policy);
  const auto parts = below(v, reachable_classes(gens, k_z, model));
  HallExpr out;
  for (const auto& t : tuples_summing_to(v, parts, gens.truncation.max_length)) {
    out.add_term(symbols(t, SymbolKind::Epsilon, k_z), u_coeff(t, k_z, k_zp, model));
  }
  return out;
}

HallExpr transform_delta_via_s(const NumClass& v, const GeneratorSet& gens,
                               const StabilityParam& k_z, const StabilityParam& k_zp,
                               const ConeModel& model) {
  require_valid(v);
  const auto parts = below(v, gens.classes);
  HallExpr out;
  for (const auto& t : tuples_summing_to(v, parts, gens.truncation.max_length)) {
    out.add_term(symbols(t, SymbolKind::Delta, k_z), s_coeff(t, k_z, k_zp, model));
  }
  return out;
}

}  // namespace wallcross
