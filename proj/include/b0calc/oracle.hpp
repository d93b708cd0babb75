#pragma once

#include <b0calc/pc.hpp>

#include <vector>

namespace b0calc {

// Brute-force reference computation of the exterior-square data on all
// |G|^2 element-pair symbols, straight from the defining relations
//   (xy) ^ z = (x^y ^ z^y)(y ^ z),  x ^ (yz) = (x ^ z)(x^z ^ y^z),
//   x ^ x = 1,
// abelianized and eliminated over Z/p^L.  Used as ground truth for the
// symbolic engine at small orders.

struct OracleResult {
  std::vector<Int> m;   // Schur multiplier invariants
  std::vector<Int> b0;  // Bogomolov multiplier invariants
  int modulus_exponent = 0;
  size_t free_cols = 0;
};

// L <= 0 picks the default 2*max(e_i) + 1.
OracleResult oracle_invariants(const PcPresentation& g, Int cap = Int(243),
                               int L = 0);

std::vector<Int> b0_oracle(const PcPresentation& g, Int cap = Int(243),
                           int L = 0);
std::vector<Int> m_oracle(const PcPresentation& g, Int cap = Int(243),
                          int L = 0);

// Recomputes at modulus exponent L+1 and compares invariant lists.
bool stability_check(const PcPresentation& g, int L, Int cap = Int(243));

}  // namespace b0calc
