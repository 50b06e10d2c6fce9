#include "wallcross/integrate.hpp"

#include <algorithm>
#include <mutex>

#include "wallcross/coeff.hpp"
#include "wallcross/errors.hpp"

namespace wallcross {

LieElement LieElement::basis(const NumClass& v, Rational coeff) {
  LieElement e;
  e.add(v, coeff);
  return e;
}

void LieElement::add(const NumClass& v, const Rational& coeff) {
  if (coeff == 0) return;
  auto [it, inserted] = terms_.try_emplace(v, coeff);
  if (!inserted) {
    it->second += coeff;
    if (it->second == 0) terms_.erase(it);
  }
}

LieElement& LieElement::operator+=(const LieElement& other) {
  if (this == &other) return *this *= Rational(2);
  for (const auto& [v, c] : other.terms_) add(v, c);
  return *this;
}

LieElement& LieElement::operator*=(const Rational& scalar) {
  if (scalar == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [v, c] : terms_) c *= scalar;
  return *this;
}

Rational LieElement::coefficient(const NumClass& v) const {
  auto it = terms_.find(v);
  return it == terms_.end() ? Rational(0) : it->second;
}

LieElement operator+(LieElement a, const LieElement& b) { return a += b; }

LieElement operator-(LieElement a, const LieElement& b) {
  for (const auto& [v, c] : b.terms()) a.add(v, -c);
  return a;
}

LieElement bracket(const LieElement& a, const LieElement& b) {
  LieElement out;
  for (const auto& [v, cv] : a.terms()) {
    for (const auto& [w, cw] : b.terms()) {
      const auto chi = euler_pairing(v, w);
      if (chi != 0) out.add(v + w, cv * cw * static_cast<long>(chi));
    }
  }
  return out;
}

const char* to_string(TableKind kind) {
  switch (kind) {
    case TableKind::N: return "N";
    case TableKind::L: return "L";
    case TableKind::P: return "P";
  }
  return "?";
}

void InvariantTable::set_period(const Beta& beta, std::vector<Rational> residues,
                                const ConeModel& model) {
  if (kind_ != TableKind::N) throw ConfigError("periodic rows belong to N tables");
  if (beta_is_zero(beta)) throw ConfigError("N is not defined at beta = 0");
  const auto d = deg(beta, model);
  if (static_cast<std::int64_t>(residues.size()) != d) {
    throw ConfigError("N row for beta = " + beta_to_string(beta) + " needs " + std::to_string(d) +
                      " residues, got " + std::to_string(residues.size()));
  }
  Row row;
  row.period = d;
  for (std::int64_t j = 0; j < d; ++j) row.values[j] = std::move(residues[j]);
  rows_[beta] = std::move(row);
}

void InvariantTable::set_support(const Beta& beta, std::map<std::int64_t, Rational> values) {
  if (kind_ != TableKind::L) throw ConfigError("complete finite rows belong to L tables");
  Row row;
  for (auto& [n, x] : values) {
    if (x != 0) row.values[n] = std::move(x);
  }
  rows_[beta] = std::move(row);
}

void InvariantTable::set_window(const Beta& beta, std::map<std::int64_t, Rational> values,
                                std::int64_t max_n, const ConeModel& model) {
  if (kind_ != TableKind::P) throw ConfigError("windowed rows belong to P tables");
  Row row;
  row.floor = model.n_floor(beta);
  row.max_n = max_n;
  for (auto& [n, x] : values) {
    if (n > max_n) {
      throw ConfigError("P entry n = " + std::to_string(n) + " for beta = " + beta_to_string(beta) +
                        " lies above max_n = " + std::to_string(max_n));
    }
    if (x == 0) continue;
    if (n < row.floor) {
      throw ConfigError("P_{" + std::to_string(n) + "," + beta_to_string(beta) +
                        "} is nonzero below N(beta) = " + std::to_string(row.floor));
    }
    if (beta_is_zero(beta) && n != 0) {
      throw ConfigError("P_{n,0} must vanish for n != 0");
    }
    row.values[n] = std::move(x);
  }
  rows_[beta] = std::move(row);
}

bool InvariantTable::has_row(const Beta& beta) const { return rows_.count(beta) > 0; }

std::vector<Beta> InvariantTable::betas() const {
  std::vector<Beta> out;
  for (const auto& [b, _] : rows_) out.push_back(b);
  return out;
}

const InvariantTable::Row& InvariantTable::lookup(const Beta& beta) const {
  auto it = rows_.find(beta);
  if (it == rows_.end()) {
    throw InputError(std::string(to_string(kind_)) + " table has no row for beta = " +
                     beta_to_string(beta));
  }
  return it->second;
}

Rational InvariantTable::value(std::int64_t n, const Beta& beta) const {
  if (beta_is_zero(beta)) {
    if (kind_ == TableKind::N) throw DomainError("N is not defined at beta = 0");
    if (!has_row(beta)) return n == 0 ? origin_value_ : Rational(0);
  }
  if (!has_row(beta)) {
    throw InputError(std::string(to_string(kind_)) + "_{" + std::to_string(n) + "," + beta_to_string(beta) +
                     "} is missing: the table has no row for beta = " + beta_to_string(beta));
  }
  const Row& row = lookup(beta);
  switch (kind_) {
    case TableKind::N: {
      auto j = n % row.period;
      if (j < 0) j += row.period;
      return row.values.at(j);
    }
    case TableKind::L: {
      auto it = row.values.find(n);
      return it == row.values.end() ? Rational(0) : it->second;
    }
    case TableKind::P: {
      if (n < row.floor) return 0;
      if (n > row.max_n) {
        throw InputError("P_{" + std::to_string(n) + "," + beta_to_string(beta) +
                         "} is past the known window (max_n = " + std::to_string(row.max_n) + ")");
      }
      auto it = row.values.find(n);
      return it == row.values.end() ? Rational(0) : it->second;
    }
  }
  return 0;
}

bool InvariantTable::is_symmetric(const Beta& beta) const {
  if (kind_ != TableKind::N) throw PreconditionError("symmetry check applies to N tables");
  const Row& row = lookup(beta);
  for (std::int64_t j = 1; j < row.period; ++j) {
    if (row.values.at(j) != row.values.at(row.period - j)) return false;
  }
  return true;
}

std::int64_t InvariantTable::max_n(const Beta& beta) const {
  if (kind_ != TableKind::P) throw PreconditionError("max_n applies to P tables");
  return lookup(beta).max_n;
}

const std::map<std::int64_t, Rational>& InvariantTable::row(const Beta& beta) const {
  return lookup(beta).values;
}

JFunction pair_j(const InvariantTable& n_table, const InvariantTable& l_table) {
  return [&n_table, &l_table](const NumClass& v) -> Rational {
    if (v.is_torsion()) return n_table.value(v.n, v.beta);
    return l_table.value(v.n, v.beta);
  };
}

std::vector<std::vector<Edge>> labeled_trees(std::size_t l) {
  if (l == 0) throw PreconditionError("labeled_trees needs l >= 1");
  if (l == 1) return {{}};
  if (l == 2) return {{Edge{0, 1}}};
  std::vector<std::vector<Edge>> out;
  std::vector<std::size_t> code(l - 2, 0);
  while (true) {
    std::vector<std::size_t> degree(l, 1);
    for (auto c : code) ++degree[c];
    std::vector<Edge> edges;
    for (auto c : code) {
      std::size_t leaf = 0;
      while (degree[leaf] != 1) ++leaf;
      edges.emplace_back(std::min(leaf, c), std::max(leaf, c));
      --degree[leaf];
      --degree[c];
    }
    std::size_t u = l, w = l;
    for (std::size_t i = 0; i < l; ++i) {
      if (degree[i] == 1) (u == l ? u : w) = i;
    }
    edges.emplace_back(u, w);
    std::sort(edges.begin(), edges.end());
    out.push_back(std::move(edges));

    std::size_t pos = code.size();
    while (pos > 0 && code[pos - 1] == l - 1) code[--pos] = 0;
    if (pos == 0) break;
    ++code[pos - 1];
  }
  return out;
}

namespace {

const std::vector<std::vector<Edge>>& cached_trees(std::size_t l) {
  static std::mutex mu;
  static std::map<std::size_t, std::vector<std::vector<Edge>>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(l);
  if (it == cache.end()) it = cache.emplace(l, labeled_trees(l)).first;
  return it->second;
}

Rational half_power(std::size_t e) {
  Rational r(1);
  mpz_mul_2exp(r.get_den_mpz_t(), r.get_den_mpz_t(), e);
  return r;
}

}  // namespace

std::vector<ClassTuple> tree_sum_tuples(const NumClass& v, const StabilityParam& k_z,
                                        const StabilityParam& k_zp, const ConeModel& model) {
  require_valid(v);
  Rational lo = 0, hi = 0;
  auto widen = [&](const Rational& x) {
    if (x < lo) lo = x;
    if (x > hi) hi = x;
  };
  widen(-2 * k_z.k());
  widen(-2 * k_zp.k());
  if (v.is_torsion()) widen(slope(v, model));
  return split_by_slope(v, lo, hi, model);
}

Rational j_transform(const NumClass& v, const JFunction& j, const StabilityParam& k_z,
                     const StabilityParam& k_zp, const ConeModel& model) {
  Rational total = 0;
  for (const auto& t : tree_sum_tuples(v, k_z, k_zp, model)) {
    Rational jprod = 1;
    for (const auto& part : t) {
      jprod *= j(part);
      if (jprod == 0) break;
    }
    if (jprod == 0) continue;
    if (t.size() == 1) {
      total += jprod;
      continue;
    }
    Rational tree_sum = 0;
    for (const auto& edges : cached_trees(t.size())) {
      std::int64_t prod = 1;
      for (const auto& [a, b] : edges) {
        prod *= euler_pairing(t[a], t[b]);
        if (prod == 0) break;
      }
      tree_sum += static_cast<long>(prod);
    }
    if (tree_sum == 0) continue;
    const Rational u = u_coeff(t, k_z, k_zp, model);
    if (u == 0) continue;
    total += half_power(t.size() - 1) * u * tree_sum * jprod;
  }
  return total;
}

namespace {

std::size_t rank_index(const ClassTuple& t) {
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (t[i].is_rank_one()) return i;
  }
  throw PreconditionError("tuple has no rank -1 part");
}

// Sum over monotone surjections of (-1)^{psi(e)-e} prod 1/|block|! allowed for a
// star-shaped tuple; slopes[i] is only read for i != e.
Rational star_surjection_sum(const std::vector<Rational>& slopes, std::size_t e,
                             const Rational& threshold) {
  const std::size_t l = slopes.size();
  Rational total = 0;
  for (std::size_t m = 1; m <= l; ++m) {
    for (const auto& psi : surjections(l, m)) {
      bool ok = true;
      std::size_t e_block = 0;
      Rational weight = 1;
      for (std::size_t b = 0; b < m && ok; ++b) {
        const auto [lo, hi] = psi.block_range(b);
        weight /= factorial(static_cast<unsigned>(hi - lo));
        if (lo <= e && e < hi) {
          e_block = b;
          for (std::size_t i = lo; i < hi && ok; ++i) {
            if (i != e) ok = slopes[i] == threshold;
          }
        } else {
          for (std::size_t i = lo + 1; i < hi && ok; ++i) ok = slopes[i] == slopes[lo];
          // On the right, parts at the threshold belong with e and equal slopes
          // are never split between blocks.
          if (ok && lo > e) {
            ok = slopes[lo] != threshold;
            if (ok && hi < l) ok = slopes[hi] != slopes[lo];
          }
        }
      }
      if (!ok) continue;
      // psi(e) - e with one-based indices equals e_block - e with zero-based ones.
      total += sign_power(static_cast<std::int64_t>(e_block) - static_cast<std::int64_t>(e)) *
               weight;
    }
  }
  return total;
}

Rational minus_half_power(std::size_t e) {
  return sign_power(static_cast<std::int64_t>(e)) * half_power(e);
}

}  // namespace

Rational l_wallcross(std::int64_t n, const Beta& beta, const StabilityParam& k,
                     const InvariantTable& l_sigma, const InvariantTable& n_table,
                     const ConeModel& model) {
  const NumClass v{-1, beta, n};
  require_valid(v);
  const Rational threshold = -2 * k.k();
  Rational total = 0;
  for (const auto& t : decompositions(v, k, model)) {
    const std::size_t e = rank_index(t);
    std::vector<Rational> slopes(t.size());
    bool ok = true;
    for (std::size_t i = 0; i < t.size() && ok; ++i) {
      if (i == e) continue;
      if (t[i].n <= 0) {
        ok = false;
        break;
      }
      slopes[i] = slope(t[i], model);
      if (i > 0 && i < e) ok = slopes[i - 1] <= slopes[i];
      if (i > e + 1) ok = slopes[i - 1] >= slopes[i];
    }
    if (!ok) continue;

    Rational inputs = l_sigma.value(t[e].n, t[e].beta);
    for (std::size_t i = 0; i < t.size() && inputs != 0; ++i) {
      if (i != e) inputs *= n_table.value(t[i].n, t[i].beta) * static_cast<long>(t[i].n);
    }
    if (inputs == 0) continue;
    const Rational psi_sum = star_surjection_sum(slopes, e, threshold);
    if (psi_sum == 0) continue;
    total += minus_half_power(t.size() - 1) * psi_sum * inputs;
  }
  return total;
}

namespace {

struct Part {
  Beta beta;
  std::int64_t n;
  Rational slope;
};

// Chains of torsion parts with nondecreasing slopes, n_i >= 1, sum of beta <= cap
// and sum of n <= budget.
class ChainEnumerator {
 public:
  ChainEnumerator(const ConeModel& model, const Beta& cap) : model_(model) {
    for (const auto& b : nonzero_classes_below(cap)) candidates_.push_back(b);
  }

  void run(const Beta& cap, std::int64_t budget,
           const std::function<void(const std::vector<Part>&, const Beta&, std::int64_t)>& emit) {
    std::vector<Part> chain;
    recurse(chain, Beta(cap.size(), 0), 0, cap, budget, emit);
  }

 private:
  void recurse(std::vector<Part>& chain, const Beta& used, std::int64_t used_n, const Beta& cap,
               std::int64_t budget,
               const std::function<void(const std::vector<Part>&, const Beta&, std::int64_t)>& emit) {
    emit(chain, used, used_n);
    for (const auto& b : candidates_) {
      const Beta next = beta_add(used, b);
      if (!beta_leq(next, cap)) continue;
      const auto d = deg(b, model_);
      for (std::int64_t m = 1; used_n + m <= budget; ++m) {
        Rational s(static_cast<long>(m), static_cast<long>(d));
        s.canonicalize();
        if (!chain.empty() && s < chain.back().slope) continue;
        chain.push_back(Part{b, m, s});
        recurse(chain, next, used_n + m, cap, budget, emit);
        chain.pop_back();
      }
    }
  }

  const ConeModel& model_;
  std::vector<Beta> candidates_;
};

// Product over maximal runs of equal slope of the run weight.
Rational run_weight(const std::vector<Part>& chain, RunWeight weight) {
  Rational out = 1;
  std::size_t i = 0;
  while (i < chain.size()) {
    std::size_t j = i + 1;
    while (j < chain.size() && chain[j].slope == chain[i].slope) ++j;
    const auto len = j - i;
    out *= weight == RunWeight::Factorial ? 1 / factorial(static_cast<unsigned>(len))
                                          : elem_identity(len);
    i = j;
  }
  return out;
}

Rational chain_inputs(const std::vector<Part>& chain, const InvariantTable& n_table) {
  Rational out = 1;
  for (const auto& p : chain) {
    out *= n_table.value(p.n, p.beta) * static_cast<long>(p.n);
    if (out == 0) break;
  }
  return out;
}

}  // namespace

Rational l_from_pn(std::int64_t n, const Beta& beta, const InvariantTable& p_table,
                   const InvariantTable& n_table, const ConeModel& model, RunWeight weight) {
  model.require_dimension(beta);
  std::int64_t lowest_floor = 0;
  for (const auto& b : classes_below(beta)) lowest_floor = std::min(lowest_floor, model.n_floor(b));
  const std::int64_t budget = n - lowest_floor;
  if (budget < 0) return 0;

  ChainEnumerator chains(model, beta);
  Rational total = 0;
  chains.run(beta, budget, [&](const std::vector<Part>& left, const Beta& left_beta,
                               std::int64_t left_n) {
    const Rational left_inputs = chain_inputs(left, n_table);
    if (left_inputs == 0) return;
    const Rational left_weight = run_weight(left, weight);
    const Beta rest = beta_sub(beta, left_beta);
    // The right-hand chain is enumerated from v_l towards v_{e+1}.
    chains.run(rest, budget - left_n, [&](const std::vector<Part>& right, const Beta& right_beta,
                                          std::int64_t right_n) {
      const Beta beta_e = beta_sub(rest, right_beta);
      const std::int64_t n_e = n - left_n - right_n;
      if (n_e < model.n_floor(beta_e)) return;
      if (beta_is_zero(beta_e) && n_e != 0) return;
      Rational term = p_table.value(n_e, beta_e);
      if (term == 0) return;
      term *= chain_inputs(right, n_table);
      if (term == 0) return;
      term *= left_inputs * left_weight * run_weight(right, RunWeight::Factorial);
      total += minus_half_power(left.size() + right.size()) * term;
    });
  });
  return total;
}

StabilityParam choose_takek(std::int64_t n, const Beta& beta, const ConeModel& model) {
  Rational bound = 0;
  bool first = true;
  auto lower = [&](const Rational& x) {
    if (first || x < bound) bound = x;
    first = false;
  };
  for (const auto& b : classes_below(beta)) {
    lower(Rational(-(n - model.n_floor(b))) / 2);
    if (!beta_is_zero(b)) lower(-mu_n_beta(n, b, model) / 2);
  }
  std::int64_t k0 = std::min<std::int64_t>(floor_to_int(bound), 0) - 1;
  std::int64_t max_den = 1;
  if (!beta_is_zero(beta)) {
    for (auto d : walls(beta, model).denominators) max_den = std::max(max_den, d);
  }
  return StabilityParam(Rational(k0) + Rational(1, static_cast<unsigned long>(max_den + 1)));
}

}  // namespace wallcross
