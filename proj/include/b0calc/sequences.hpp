#pragma once

#include <b0calc/families.hpp>
#include <b0calc/wedge.hpp>

#include <string>
#include <vector>

namespace b0calc {

// A central extension 1 -> N -> E -> G -> 1 with N inside the designated
// z-block of E.
struct CentralExtensionData {
  PcPresentation e;
  std::vector<std::vector<long long>> ngens;  // N as z-block vectors of E
  QuotientResult quotient;                    // G = E/N plus projection

  const PcPresentation& g() const { return quotient.q; }
};

CentralExtensionData make_extension(const PcPresentation& e,
                                    std::vector<std::vector<long long>> ngens);

// The set of commutators [x, y] over x, y in E.  Commutator values depend
// only on noncentral exponents, so the sweep runs over noncentral
// profiles; the cap bounds |E|.
std::vector<Element> commutator_set(const PcPresentation& e,
                                    Int cap = Int(729));

struct N1N0 {
  Mat n1, n0;                 // sublattices of E's z-block (with relations)
  std::vector<Int> quotient;  // invariants of N1/N0
};

// N1 = N intersect [E,E]; N0 = subgroup generated by the commutators of E
// lying in N.
N1N0 n1_n0(const CentralExtensionData& data, Int cap = Int(729));

// Image of M*(E) under the induced map of wedge groups, as a sublattice
// of the basis lattice of W(G).
Mat eta_star_image(const CentralExtensionData& data, WedgeSystem& we,
                   WedgeSystem& wg);

struct ExactSequenceReport {
  bool pass = false;
  std::vector<Int> lhs;  // B0(G) / eta(B0(E))
  std::vector<Int> rhs;  // N1/N0
  std::string detail;
};

// Checks the isomorphism B0(G)/eta(B0(E)) = N1/N0 on the given extension.
ExactSequenceReport verify_exact_sequence(const CentralExtensionData& data,
                                          Int cap = Int(1) << 40,
                                          Int comm_cap = Int(729));

struct Main1Report {
  bool applicable = false;     // theta restricts to an iso K1 -> K2
  bool hypotheses = false;     // B0(G1/K1) = B0(G1) = B0(G2) = 0
  std::vector<Int> b0_q1;      // B0(G1/K1)
  std::vector<Int> b0_g1, b0_g2, b0_g;
  bool conclusion = false;     // B0(G) = 0
  bool contradiction = false;  // hypotheses hold but the conclusion fails
  bool have_n1n0 = false;      // N1/N0 computed (within the commutator cap)
  std::vector<Int> n1n0;
  std::string detail;
};

// Full hypothesis/conclusion bundle for the central-product criterion:
// if B0(G1/K1) = B0(G1) = B0(G2) = 0 then B0(G) = 0.
Main1Report verify_main1(const PcPresentation& p1,
                         const std::vector<std::vector<long long>>& k1,
                         const PcPresentation& p2,
                         const std::vector<std::vector<long long>>& k2,
                         const GeneratorMap& theta, Int cap = Int(1) << 40);

std::string main1_report_json(const Main1Report& r);

}  // namespace b0calc
