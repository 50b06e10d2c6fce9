#pragma once

#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "wallcross/cone.hpp"
#include "wallcross/integrate.hpp"
#include "wallcross/rational.hpp"
#include "wallcross/series.hpp"
#include "wallcross/stability.hpp"

namespace wallcross {

// Reference computations written without the engine's enumerators, used to
// cross-check it.
namespace oracle {

// Slope n / (omega . beta) recomputed from scratch.
Rational slope_of(const NumClass& v, const Beta& omega);

// Every weakly monotone surjection onto {0..m-1}, listed as psi(i) for i = 0..l-1,
// built from the l-1 step bits.
std::vector<std::vector<std::size_t>> monotone_surjections(std::size_t l);

// Index of the unique rank -1 part; -1 if there is none or more than one.
int rank_position(const std::vector<NumClass>& t);

// 0 <= mu_1 <= ... <= mu_{e-1} <= -2k >= mu_{e+1} >= ... >= mu_l >= 0.
bool onlyif_pattern(const std::vector<NumClass>& t, const Rational& k, const Beta& omega);

// 0 < mu_1 <= ... <= mu_{e-1} <= -2k > mu_{e+1} > ... > mu_l >= 0.
bool muor_pattern(const std::vector<NumClass>& t, const Rational& k, const Beta& omega);

// Specialized U for a star-pattern tuple towards k' = 0.
Rational u3(const std::vector<NumClass>& t, const Rational& k, const Beta& omega);

// All ordered tuples with one rank -1 part, total beta <= bound (rank 1 lattice),
// torsion beta_i >= 1 and every n in [-n_max, n_max].
std::vector<std::vector<NumClass>> star_tuples(std::int64_t bound, std::int64_t n_max);

// All ordered tuples of torsion classes with the same bounds.
std::vector<std::vector<NumClass>> torsion_tuples(std::int64_t bound, std::int64_t n_max);

// Decompositions of (-1, beta, n) at k by direct search over compositions of beta.
std::vector<std::vector<NumClass>> brute_decompositions(const NumClass& v, const Rational& k,
                                                        const Beta& omega);

// sum_{n=1}^{top} n N_{n mod d} q^n straight from a period vector.
LaurentPoly n_series_direct(const std::vector<Rational>& period, std::int64_t top);

}  // namespace oracle

// Randomized admissible inputs shared by the tests and the acceptance suite.
namespace sample {

using Rng = std::mt19937_64;

std::int64_t uniform(Rng& rng, std::int64_t lo, std::int64_t hi);

// N_{j} = N_{d-j} on one period, entries in [-3, 3].
std::vector<Rational> symmetric_period(Rng& rng, std::int64_t d);

// L_n = L_{-n} supported on |n| <= width, entries in [-3, 3].
std::map<std::int64_t, Rational> symmetric_support(Rng& rng, std::int64_t width);

struct TablePair {
  ConeModel model;
  Beta cutoff;
  InvariantTable n_table{TableKind::N};
  InvariantTable p_table{TableKind::P};
  std::map<Beta, LaurentPoly> l_series;
};

// P built from random symmetric L and random symmetric-periodic N, known up to q^top.
TablePair random_pair(Rng& rng, std::size_t rank, std::int64_t top);

// The d = 1 model: N = a on beta = (1), P_{n,(1)} = a n + c [n = 0] on n >= 0.
TablePair micro_model(const Rational& a, const Rational& c, std::int64_t top);

}  // namespace sample

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = true;
  std::size_t checks = 0;
  std::string detail;
};

CriterionResult criterion_surjection_identity();
CriterionResult criterion_coefficient_oracles();
CriterionResult criterion_hall_round_trips();
CriterionResult criterion_tree_collapse();
CriterionResult criterion_chamber_identification();
CriterionResult criterion_factorization(std::size_t random_cases = 100);
CriterionResult criterion_closed_forms();
CriterionResult criterion_dominance();

// Criteria 1-8 in order.
std::vector<CriterionResult> run_suite();
// Runs the suite twice and compares the formatted reports.
CriterionResult criterion_determinism(const std::string& first_report);

std::string format_result(const CriterionResult& r);
std::string format_report(const std::vector<CriterionResult>& results);

}  // namespace wallcross
