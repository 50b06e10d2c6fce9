#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "wallcross/cone.hpp"
#include "wallcross/rational.hpp"
#include "wallcross/stability.hpp"

namespace wallcross {

/// Weakly monotone surjection psi : {1..l} -> {1..m}, stored as its block sizes.
struct OrderedSurjection {
  std::vector<std::size_t> block_sizes;

  std::size_t l() const;
  std::size_t m() const { return block_sizes.size(); }
  // psi(i) for i = 0..l-1, zero-based block indices.
  std::vector<std::size_t> as_map() const;
  // Zero-based [begin, end) index range of block b.
  std::pair<std::size_t, std::size_t> block_range(std::size_t b) const;
};

// All compositions of l into m positive parts, in lexicographic order of block sizes.
std::vector<OrderedSurjection> surjections(std::size_t l, std::size_t m);

// Joyce's S({v_1..v_l}, Z, Z') in {-1, 0, 1}.
int s_coeff(std::span<const NumClass> classes, const StabilityParam& k_z,
            const StabilityParam& k_zp, const ConeModel& model);

/// Joyce's U({v_1..v_l}, Z, Z'), evaluated from the double surjection sum.
///
/// The superblock factor is (-1)^{m'-1}/m', which makes U({v}) = 1 and turns
/// the epsilon transformation into the identity when Z' = Z.
Rational u_coeff(std::span<const NumClass> classes, const StabilityParam& k_z,
                 const StabilityParam& k_zp, const ConeModel& model);

// Sum over all ordered surjections of (-1)^{l-m} prod_b 1 / |psi^{-1}(b)|!; equals 1/l!.
Rational elem_identity(std::size_t l);

}  // namespace wallcross
