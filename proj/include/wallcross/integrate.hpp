#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "wallcross/cone.hpp"
#include "wallcross/rational.hpp"
#include "wallcross/stability.hpp"

namespace wallcross {

/// Element of the Lie algebra spanned by c_v with [c_v, c_w] = chi(v, w) c_{v+w}.
class LieElement {
 public:
  using TermMap = std::map<NumClass, Rational>;

  static LieElement basis(const NumClass& v, Rational coeff = 1);

  void add(const NumClass& v, const Rational& coeff);
  LieElement& operator+=(const LieElement& other);
  LieElement& operator*=(const Rational& scalar);

  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  Rational coefficient(const NumClass& v) const;

  friend bool operator==(const LieElement& a, const LieElement& b) { return a.terms_ == b.terms_; }

 private:
  TermMap terms_;
};

LieElement operator+(LieElement a, const LieElement& b);
LieElement operator-(LieElement a, const LieElement& b);
LieElement bracket(const LieElement& a, const LieElement& b);

enum class TableKind { N, L, P };
const char* to_string(TableKind kind);

/// Exact invariant values indexed by (n, beta).
///
/// N rows store one period of length d = omega . beta (residues 0..d-1).
/// L rows are complete: anything not stored is zero.
/// P rows are zero below N(beta) and known up to a per-row max_n; asking past
/// max_n, or for a beta without a row, throws InputError.
class InvariantTable {
 public:
  explicit InvariantTable(TableKind kind) : kind_(kind) {}

  TableKind kind() const { return kind_; }

  // N rows: residues[j] = N_{j, beta}, residues.size() must equal deg(beta).
  void set_period(const Beta& beta, std::vector<Rational> residues, const ConeModel& model);
  // L rows: complete finite support.
  void set_support(const Beta& beta, std::map<std::int64_t, Rational> values);
  // P rows: values on [N(beta), max_n]; missing n in that range read as 0.
  void set_window(const Beta& beta, std::map<std::int64_t, Rational> values, std::int64_t max_n,
                  const ConeModel& model);

  bool has_row(const Beta& beta) const;
  std::vector<Beta> betas() const;
  Rational value(std::int64_t n, const Beta& beta) const;

  // N only: N_{n} = N_{-n} on the stored period.
  bool is_symmetric(const Beta& beta) const;
  // P only: largest n with a known value.
  std::int64_t max_n(const Beta& beta) const;
  // Raw stored values (the period for N).
  const std::map<std::int64_t, Rational>& row(const Beta& beta) const;

  // Value at beta = 0 when no row is stored there: P_{0,0} = 1, and the free
  // L_{0,0} which defaults to 1.
  void set_origin_value(Rational value) { origin_value_ = std::move(value); }

 private:
  struct Row {
    std::map<std::int64_t, Rational> values;
    std::int64_t period = 0;
    std::int64_t floor = 0;
    std::int64_t max_n = 0;
  };
  const Row& lookup(const Beta& beta) const;

  TableKind kind_;
  std::map<Beta, Row> rows_;
  Rational origin_value_{1};
};

using JFunction = std::function<Rational(const NumClass&)>;

// J for the pair-side pattern: N for torsion classes, L_sigma for rank -1 classes.
JFunction pair_j(const InvariantTable& n_table, const InvariantTable& l_table);

using Edge = std::pair<std::size_t, std::size_t>;

// All labeled trees on {0..l-1} from Pruefer decoding; each edge (i, j) has i < j.
std::vector<std::vector<Edge>> labeled_trees(std::size_t l);

/// Tuples (v_1..v_l) summing to v that the tree-sum formula ranges over: at most
/// one rank -1 part, torsion slopes inside the hull of {0, -2kZ, -2kZ'} (and the
/// slope of v when v is torsion).
std::vector<ClassTuple> tree_sum_tuples(const NumClass& v, const StabilityParam& k_z,
                                        const StabilityParam& k_zp, const ConeModel& model);

// J^v(Z') from J(Z) by the sum over decompositions and labeled trees.
Rational j_transform(const NumClass& v, const JFunction& j, const StabilityParam& k_z,
                     const StabilityParam& k_zp, const ConeModel& model);

// L_{n,beta} at k' = 0 from L(sigma_k) and N, summing star-shaped terms only.
Rational l_wallcross(std::int64_t n, const Beta& beta, const StabilityParam& k,
                     const InvariantTable& l_sigma, const InvariantTable& n_table,
                     const ConeModel& model);

enum class RunWeight {
  Factorial,       // 1/(run length)! on both sides
  SurjectionSum,   // left runs weighted by the explicit surjection sum
};

// L_{n,beta} from P and N with no stability parameter left.
Rational l_from_pn(std::int64_t n, const Beta& beta, const InvariantTable& p_table,
                   const InvariantTable& n_table, const ConeModel& model,
                   RunWeight weight = RunWeight::Factorial);

// A k < 0, off the walls of S(beta), strictly below every bound that makes
// L_{n',beta'}(sigma_k) = P_{n',beta'} for n' <= n, beta' <= beta.
StabilityParam choose_takek(std::int64_t n, const Beta& beta, const ConeModel& model);

}  // namespace wallcross
