#pragma once

#include <b0calc/lattice.hpp>
#include <b0calc/pc.hpp>

#include <optional>
#include <string>
#include <vector>

namespace b0calc {

// The exterior square of a class <= 2 p-group, presented on the basis
// w(i,j) = g_i ^ g_j for i < j.  Everything downstream (the curly-M
// subgroup, the commuting-pair subgroup, the Bogomolov quotient) lives in
// the integer lattice Z^{basis} modulo the relation rows.
class WedgeSystem {
 public:
  explicit WedgeSystem(PcPresentation g);

  const PcPresentation& group() const { return g_; }
  size_t basis_size() const { return nb_; }
  size_t basis_index(size_t i, size_t j) const;  // i < j
  std::pair<size_t, size_t> basis_pair(size_t k) const;
  std::string basis_label(size_t k) const;

  // Coordinates of x ^ y in the basis, via the bilinear expansion of the
  // normal-form words of x and y.
  std::vector<Int> expand(const Element& x, const Element& y) const;

  // Relation rows of G ^ G (power and commutator relators of G wedged
  // against every generator, both sides).
  const Mat& relations() const { return rel_; }

  // kappa: G ^ G -> [G,G], basis element w(i,j) -> [g_i, g_j], expressed
  // in z-block coordinates of the group.
  const Mat& kappa() const { return kappa_; }

  // ker kappa as a sublattice of Z^{basis} containing the relation rows.
  const Mat& m_lattice();
  std::vector<Int> m_invariants();

  // Sublattice generated by x ^ y over commuting pairs (x, y), plus the
  // relation rows.  A pair is retained as a witness only when its
  // expansion enlarges the sublattice collected so far.
  struct CommutingPart {
    Mat lattice;                // includes relation rows
    std::vector<std::pair<Element, Element>> witnesses;
    bool complete = true;       // false when the pair sweep hit the cap
  };
  const CommutingPart& m0(Int cap = Int(1) << 40);

  // Invariants of ker kappa / <commuting wedges>, i.e. the Bogomolov
  // multiplier of the group.
  std::vector<Int> bogomolov(Int cap = Int(1) << 40);

  std::vector<Int> exterior_square_invariants() const;

  struct Certificate {
    std::vector<Int> b0;
    std::vector<std::string> m_generators;      // printed kernel basis
    std::vector<std::string> m0_witnesses;      // "x ^ y" per retained gen
    std::string text;
  };
  Certificate certificate(Int cap = Int(1) << 40);

  std::string describe_vector(const std::vector<Int>& v) const;

 private:
  PcPresentation g_;
  size_t nb_ = 0;
  Mat rel_;
  Mat kappa_;
  std::optional<Mat> m_;
  std::optional<CommutingPart> m0_;

  void add_relation_rows(const std::vector<std::pair<int, long long>>& relator);
};

// Convenience wrappers used by the command-line front end.
std::vector<Int> bogomolov_multiplier(const PcPresentation& g,
                                      Int cap = Int(1) << 40);
std::vector<Int> m_star_invariants(const PcPresentation& g);

}  // namespace b0calc
