#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "wallcross/cone.hpp"
#include "wallcross/rational.hpp"
#include "wallcross/stability.hpp"

namespace wallcross {

enum class SymbolKind { Delta, Epsilon };

/// Opaque generator delta^v(Z) or epsilon^v(Z), Z given by its parameter k.
struct Symbol {
  SymbolKind kind = SymbolKind::Delta;
  NumClass cls;
  Rational k;

  static Symbol delta(NumClass v, const StabilityParam& k) { return {SymbolKind::Delta, std::move(v), k.k()}; }
  static Symbol epsilon(NumClass v, const StabilityParam& k) { return {SymbolKind::Epsilon, std::move(v), k.k()}; }
};

bool operator==(const Symbol& a, const Symbol& b);
bool operator<(const Symbol& a, const Symbol& b);
std::string to_string(const Symbol& s);

using Word = std::vector<Symbol>;

/// Words whose class sum leaves the box below v_max, carry more than one rank -1
/// factor, or exceed max_length (0 = unbounded) are dropped from products.
struct Truncation {
  Beta v_max;
  std::size_t max_length = 0;

  bool admits(const Word& word) const;
};

/// Finite formal sum of words with exact rational coefficients.
class HallExpr {
 public:
  using TermMap = std::map<Word, Rational>;

  static HallExpr unit();
  static HallExpr of(Symbol s, Rational coeff = 1);

  void add_term(const Word& word, const Rational& coeff);
  HallExpr& operator+=(const HallExpr& other);
  HallExpr& operator-=(const HallExpr& other);
  HallExpr& operator*=(const Rational& scalar);

  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  Rational coefficient(const Word& word) const;

  // One word per line, "coeff * δ[class@k] * ...", in word order; "0" when empty.
  std::string dump() const;

  friend bool operator==(const HallExpr& a, const HallExpr& b) { return a.terms_ == b.terms_; }

 private:
  TermMap terms_;
};

HallExpr operator+(HallExpr a, const HallExpr& b);
HallExpr operator-(HallExpr a, const HallExpr& b);

// Concatenation product followed by truncation.
HallExpr multiply(const HallExpr& a, const HallExpr& b, const Truncation& trunc);

// Replace every symbol by an expression and expand.
HallExpr substitute(const HallExpr& expr, const std::function<HallExpr(const Symbol&)>& image,
                    const Truncation& trunc);

/// Classes carrying a nonzero delta symbol at the reference stability condition.
struct GeneratorSet {
  std::vector<NumClass> classes;
  Truncation truncation;
};

// Sums g_1 + ... + g_j (j >= 1) of generators sharing one Z_k phase, inside the truncation box.
std::vector<NumClass> reachable_classes(const GeneratorSet& gens, const StabilityParam& k,
                                        const ConeModel& model);

// Reachable classes w <= v with Z_k(w) = Z_k(v).
std::vector<NumClass> phase_block(const NumClass& v, const GeneratorSet& gens,
                                  const StabilityParam& k, const ConeModel& model);

// epsilon^v(Z) in delta(Z) words: coefficient (-1)^{l-1}/l over same-phase splittings.
HallExpr eps_from_delta(const NumClass& v, const GeneratorSet& gens, const StabilityParam& k,
                        const ConeModel& model);

// delta^v(Z) in epsilon(Z) words: coefficient 1/l! over same-phase splittings.
HallExpr delta_from_eps(const NumClass& v, const GeneratorSet& gens, const StabilityParam& k,
                        const ConeModel& model);

/// transform_delta, invert_delta and transform_eps need Z' to dominate Z on
/// C_{<= v} (dominates_below) and throw PreconditionError otherwise. Skip drops
/// the check, leaving the formulas as plain combinatorics; transform_delta and
/// invert_delta stay mutually inverse either way.
enum class Dominance { Require, Skip };

// delta^v(Z') in delta(Z) words: strictly descending Z phases, all Z' phases equal to Z'(v).
HallExpr transform_delta(const NumClass& v, const GeneratorSet& gens, const StabilityParam& k_z,
                         const StabilityParam& k_zp, const ConeModel& model,
                         Dominance policy = Dominance::Require);

// delta^v(Z) in delta(Z') words: coefficient (-1)^{l-1}, Z(v_1+..+v_i) > Z(v_{i+1}+..+v_l).
HallExpr invert_delta(const NumClass& v, const GeneratorSet& gens, const StabilityParam& k_z,
                      const StabilityParam& k_zp, const ConeModel& model,
                         Dominance policy = Dominance::Require);

// epsilon^v(Z') in epsilon(Z) words with coefficients U({v_i}, Z, Z').
HallExpr transform_eps(const NumClass& v, const GeneratorSet& gens, const StabilityParam& k_z,
                       const StabilityParam& k_zp, const ConeModel& model,
                         Dominance policy = Dominance::Require);

// delta^v(Z') in delta(Z) words with coefficients S({v_i}, Z, Z'); no dominance needed.
HallExpr transform_delta_via_s(const NumClass& v, const GeneratorSet& gens,
                               const StabilityParam& k_z, const StabilityParam& k_zp,
                               const ConeModel& model);


}  // namespace wallcross
