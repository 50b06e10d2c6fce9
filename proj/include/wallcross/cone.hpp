#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "wallcross/rational.hpp"

namespace wallcross {

class StabilityParam;

// A curve class in the weight lattice; the effective cone is the nonnegative orthant.
using Beta = std::vector<std::int64_t>;

Beta beta_add(const Beta& a, const Beta& b);
Beta beta_sub(const Beta& a, const Beta& b);
bool beta_is_zero(const Beta& b);
// Componentwise a <= b.
bool beta_leq(const Beta& a, const Beta& b);
// Sum of components, the number of unit steps from 0.
std::int64_t beta_size(const Beta& b);
std::string beta_to_string(const Beta& b);

/// Numerical class (ch0, ch1, ch2, ch3) = (r, 0, beta, n) with r in {0, -1}.
///
/// The struct itself is a plain value so that lattice sums (rank -2 and so on)
/// can be formed in the Lie algebra; `is_valid` checks the class invariants and
/// every operation that needs them calls `require_valid`.
struct NumClass {
  int r = 0;
  Beta beta;
  std::int64_t n = 0;

  bool is_torsion() const { return r == 0; }
  bool is_rank_one() const { return r == -1; }
  bool is_valid() const;
  // Dual class (r, beta, -n).
  NumClass dual() const { return NumClass{r, beta, -n}; }

  friend bool operator==(const NumClass&, const NumClass&) = default;
  friend auto operator<=>(const NumClass&, const NumClass&) = default;
};

NumClass operator+(const NumClass& a, const NumClass& b);
NumClass operator-(const NumClass& a, const NumClass& b);
NumClass sum_classes(const std::vector<NumClass>& parts);
// "(r,(b1,...,bk),n)"
std::string to_string(const NumClass& v);
void require_valid(const NumClass& v);

/// Toy geometry: rank-rho orthant with degree weights and the m / N(beta) tables.
class ConeModel {
 public:
  ConeModel(Beta omega, Beta bound, std::map<Beta, std::int64_t> m_table,
            std::map<Beta, std::int64_t> n_floor_table);

  // Orthant model with m == 0 and N(beta) == 0 on every beta <= bound.
  static ConeModel orthant(Beta omega, Beta bound);

  std::size_t rank() const { return omega_.size(); }
  const Beta& omega() const { return omega_; }
  const Beta& bound() const { return bound_; }
  const std::map<Beta, std::int64_t>& m_table() const { return m_table_; }
  const std::map<Beta, std::int64_t>& n_floor_table() const { return n_floor_; }

  std::int64_t m(const Beta& beta) const;
  // N(beta): P_{n,beta} vanishes for n < N(beta). N(0) = 0.
  std::int64_t n_floor(const Beta& beta) const;

  void require_dimension(const Beta& beta) const;

 private:
  Beta omega_;
  Beta bound_;
  std::map<Beta, std::int64_t> m_table_;
  std::map<Beta, std::int64_t> n_floor_;
};

// omega . beta
std::int64_t deg(const Beta& beta, const ConeModel& model);

// chi(v, w) = r_v n_w - r_w n_v
std::int64_t euler_pairing(const NumClass& v, const NumClass& w);

// Slope n / (omega . beta) of a torsion class.
Rational slope(const NumClass& v, const ConeModel& model);

// Every beta' with 0 <= beta' <= beta, in lexicographic order (includes 0 and beta).
std::vector<Beta> classes_below(const Beta& beta);
// Same without the zero class.
std::vector<Beta> nonzero_classes_below(const Beta& beta);

// mu_{n,beta} = max over 0 != beta' <= beta of (n - m(beta - beta')) / (omega . beta').
Rational mu_n_beta(std::int64_t n, const Beta& beta, const ConeModel& model);

using ClassTuple = std::vector<NumClass>;

/// Ordered splittings of v into valid classes: one rank -1 part when v.r = -1
/// (none when v.r = 0) and torsion parts with beta != 0 and slope in [lo, hi].
/// Sorted lexicographically, duplicate-free.
std::vector<ClassTuple> split_by_slope(const NumClass& v, const Rational& lo, const Rational& hi,
                                       const ConeModel& model);

// Splittings of a rank -1 class with torsion slopes in [0, -2k]; requires k < 0.
std::vector<ClassTuple> decompositions(const NumClass& v, const StabilityParam& k,
                                       const ConeModel& model);

}  // namespace wallcross
