#include "wallcross/coeff.hpp"

#include "wallcross/errors.hpp"

namespace wallcross {

std::size_t OrderedSurjection::l() const {
  std::size_t total = 0;
  for (auto s : block_sizes) total += s;
  return total;
}

std::vector<std::size_t> OrderedSurjection::as_map() const {
  std::vector<std::size_t> psi;
  psi.reserve(l());
  for (std::size_t b = 0; b < block_sizes.size(); ++b) psi.insert(psi.end(), block_sizes[b], b);
  return psi;
}

std::pair<std::size_t, std::size_t> OrderedSurjection::block_range(std::size_t b) const {
  std::size_t begin = 0;
  for (std::size_t i = 0; i < b; ++i) begin += block_sizes[i];
  return {begin, begin + block_sizes[b]};
}

namespace {

void compose(std::size_t remaining, std::size_t parts, std::vector<std::size_t>& cur,
             std::vector<OrderedSurjection>& out) {
  if (parts == 0) {
    if (remaining == 0) out.push_back(OrderedSurjection{cur});
    return;
  }
  // Each later part needs at least one element.
  for (std::size_t size = 1; size + (parts - 1) <= remaining; ++size) {
    cur.push_back(size);
    compose(remaining - size, parts - 1, cur, out);
    cur.pop_back();
  }
}

NumClass checked_sum(std::span<const NumClass> parts) {
  NumClass total = parts.front();
  for (std::size_t i = 1; i < parts.size(); ++i) total = total + parts[i];
  if (!total.is_valid()) {
    throw PreconditionError("partial sum " + to_string(total) + " is not a valid class");
  }
  return total;
}

std::vector<NumClass> block_sums(std::span<const NumClass> classes, const OrderedSurjection& psi) {
  std::vector<NumClass> sums;
  sums.reserve(psi.m());
  for (std::size_t b = 0; b < psi.m(); ++b) {
    auto [begin, end] = psi.block_range(b);
    sums.push_back(checked_sum(classes.subspan(begin, end - begin)));
  }
  return sums;
}

bool all_equal_phase(std::span<const NumClass> classes, const StabilityParam& k,
                     const ConeModel& model) {
  for (std::size_t i = 1; i < classes.size(); ++i) {
    if (compare(classes[0], classes[i], k, model) != PhaseOrder::Eq) return false;
  }
  return true;
}

}  // namespace

std::vector<OrderedSurjection> surjections(std::size_t l, std::size_t m) {
  std::vector<OrderedSurjection> out;
  if (m == 0 || m > l) return out;
  std::vector<std::size_t> cur;
  compose(l, m, cur, out);
  return out;
}

int s_coeff(std::span<const NumClass> classes, const StabilityParam& k_z,
            const StabilityParam& k_zp, const ConeModel& model) {
  if (classes.empty()) throw PreconditionError("s_coeff needs a nonempty tuple");
  for (const auto& v : classes) require_valid(v);
  int sign = 1;
  for (std::size_t i = 0; i + 1 < classes.size(); ++i) {
    const PhaseOrder adjacent = compare(classes[i], classes[i + 1], k_z, model);
    const NumClass left = checked_sum(classes.subspan(0, i + 1));
    const NumClass right = checked_sum(classes.subspan(i + 1));
    const PhaseOrder split = compare(left, right, k_zp, model);
    if (is_preceq(adjacent) && split == PhaseOrder::Gt) {
      sign = -sign;
    } else if (adjacent == PhaseOrder::Gt && is_preceq(split)) {
      // sign unchanged
    } else {
      return 0;
    }
  }
  return sign;
}

Rational u_coeff(std::span<const NumClass> classes, const StabilityParam& k_z,
                 const StabilityParam& k_zp, const ConeModel& model) {
  if (classes.empty()) throw PreconditionError("u_coeff needs a nonempty tuple");
  for (const auto& v : classes) require_valid(v);
  const std::size_t l = classes.size();
  Rational total = 0;
  for (std::size_t m = 1; m <= l; ++m) {
    for (const auto& psi : surjections(l, m)) {
      bool blocks_ok = true;
      Rational psi_weight = 1;
      for (std::size_t b = 0; b < m && blocks_ok; ++b) {
        auto [begin, end] = psi.block_range(b);
        blocks_ok = all_equal_phase(classes.subspan(begin, end - begin), k_z, model);
        psi_weight /= factorial(static_cast<unsigned>(end - begin));
      }
      if (!blocks_ok) continue;
      const std::vector<NumClass> w = block_sums(classes, psi);
      const std::span<const NumClass> w_span(w);
      for (std::size_t mp = 1; mp <= m; ++mp) {
        for (const auto& xi : surjections(m, mp)) {
          const std::vector<NumClass> u = block_sums(w_span, xi);
          if (!all_equal_phase(u, k_zp, model)) continue;
          Rational product = 1;
          for (std::size_t a = 0; a < mp && product != 0; ++a) {
            auto [begin, end] = xi.block_range(a);
            product *= s_coeff(w_span.subspan(begin, end - begin), k_z, k_zp, model);
          }
          if (product == 0) continue;
          total += product * sign_power(static_cast<std::int64_t>(mp) - 1) /
                   static_cast<long>(mp) * psi_weight;
        }
      }
    }
  }
  return total;
}

Rational elem_identity(std::size_t l) {
  if (l == 0) throw PreconditionError("elem_identity needs l >= 1");
  Rational total = 0;
  for (std::size_t m = 1; m <= l; ++m) {
    for (const auto& psi : surjections(l, m)) {
      Rational term = sign_power(static_cast<std::int64_t>(l - m));
      for (auto size : psi.block_sizes) term /= factorial(static_cast<unsigned>(size));
      total += term;
    }
  }
  return total;
}

}  // namespace wallcross
