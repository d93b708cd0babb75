#pragma once

#include <b0calc/basics.hpp>
#include <b0calc/lattice.hpp>

#include <functional>
#include <map>
#include <string>
#include <vector>

namespace b0calc {

// Unreduced word over the generators: (generator index, exponent) pairs.
struct GroupWord {
  std::vector<std::pair<int, long long>> factors;

  GroupWord() = default;
  GroupWord(std::initializer_list<std::pair<int, long long>> f) : factors(f) {}
  GroupWord inverse() const;
  GroupWord& append(int gen, long long exp);
};

// Normal-form exponent vector, 0 <= e[i] < order[i].
struct Element {
  std::vector<long long> e;

  bool is_identity() const;
  bool operator==(const Element&) const = default;
  bool operator<(const Element& o) const { return e < o.e; }
};

struct ConsistencyReport {
  bool consistent = true;
  bool class_two = true;
  bool refined = true;
  Int order;
  std::string detail;
  bool pass() const { return consistent && class_two && refined; }
};

// Refined power-commutator presentation of a finite p-group of nilpotency
// class <= 2.  Generators are split into a noncentral block followed by a
// designated-central z-block; every commutator value and every power value
// of a z-generator is a word in z-generators (z power words may only
// reference strictly later z-generators, so that collection terminates).
class PcPresentation {
 public:
  long long prime = 0;
  std::vector<std::string> gens;
  size_t noncentral = 0;
  std::vector<long long> orders;                 // q_i = p^{e_i}
  std::vector<std::vector<long long>> power_z;   // n rows of z-block vectors
  // comm[pair_index(i,j)] = z-block vector of [g_j, g_i] for j > i, both
  // noncentral; absent pairs commute.
  std::vector<std::vector<long long>> comm;

  PcPresentation() = default;
  PcPresentation(long long p, std::vector<std::string> gen_labels,
                 size_t noncentral_count, std::vector<long long> rel_orders);

  size_t n() const { return gens.size(); }
  size_t zsize() const { return n() - noncentral; }
  size_t pair_index(size_t i, size_t j) const;  // i < j < noncentral

  void set_power(size_t i, const GroupWord& w);          // g_i^{q_i} = w
  void set_comm(size_t j, size_t i, const GroupWord& w);  // [g_j, g_i] = w
  void set_power_z(size_t i, std::vector<long long> zvec);
  void set_comm_z(size_t j, size_t i, std::vector<long long> zvec);

  // z-block vector of [g_i, g_j] for arbitrary i, j (zero if either is
  // central or i == j).
  std::vector<long long> comm_vec(size_t i, size_t j) const;

  Int group_order() const;
  int gen_index(const std::string& label) const;  // -1 if unknown

  Element identity() const;
  Element generator(size_t i) const;
  Element from_exponents(std::vector<Int> exps) const;  // collect/normalize
  Element multiply(const Element& x, const Element& y) const;
  Element power(const Element& x, const Int& k) const;
  Element inverse(const Element& x) const;
  Element commutator(const Element& x, const Element& y) const;
  Element conjugate(const Element& x, const Element& y) const;  // y^-1 x y
  Element collect(const GroupWord& w) const;
  Int element_order(const Element& x) const;

  GroupWord word_of(const Element& x) const;
  std::string show(const Element& x) const;

  // Reduce a z-block exponent vector to its normal form.
  std::vector<long long> normalize_z(std::vector<Int> z) const;
  bool z_is_identity(const std::vector<Int>& z) const;

  // Relation lattice of the z-block group (t x t, triangular).
  Mat z_lattice() const;
  // Generating z-vectors of the derived subgroup.
  std::vector<std::vector<long long>> derived_gens() const;
  Int derived_order() const;

  ConsistencyReport validate() const;
  void validate_or_throw() const;

  void for_each_element(const std::function<void(const Element&)>& fn,
                        Int cap = Int(1) << 22) const;

  // Ordered commuting-pair census plus a stream of unordered commuting
  // pairs (x <= y in lex order).
  Int count_commuting_ordered(Int cap = Int(1) << 40) const;
  void for_each_commuting_pair(
      const std::function<void(const Element&, const Element&)>& fn,
      Int cap = Int(1) << 40) const;

  std::vector<Element> center_elements(Int cap = Int(1) << 22) const;
};

struct QuotientResult {
  PcPresentation q;
  // old z coordinates -> new z coordinates (t_old x t_new)
  Mat zmap;
  Element project(const PcPresentation& e, const Element& x) const;
};

// Quotient by the central subgroup generated by the given z-block vectors.
QuotientResult quotient_by_central(const PcPresentation& p,
                                   const std::vector<std::vector<long long>>& ngens);

struct DirectProductResult {
  PcPresentation g;
  std::vector<size_t> left_map, right_map;  // factor gen index -> product index
  Element embed_left(const PcPresentation& p, const Element& x) const;
  Element embed_right(const PcPresentation& q, const Element& y) const;
};

DirectProductResult direct_product(const PcPresentation& p,
                                   const PcPresentation& q);

}  // namespace b0calc
