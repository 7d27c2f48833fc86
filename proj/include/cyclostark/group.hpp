#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "cyclostark/arith.hpp"

namespace cyclostark {

// A finite group with elements indexed 0..n-1, identity 0.
//
// Abelian groups are built from invariant factors d_1 | d_2 | ... and index
// elements by mixed-radix exponent tuples (first coordinate fastest). Other
// groups are given by a multiplication table (see wedderburn.hpp).
class FiniteGroup {
 public:
  static std::shared_ptr<const FiniteGroup> abelian(std::vector<long> invariant_factors);
  static std::shared_ptr<const FiniteGroup> from_table(std::vector<std::vector<std::size_t>> table,
                                                       std::vector<std::string> names);

  // (Z/m)^x / H with residue labels; hgens generate H.
  static std::shared_ptr<const FiniteGroup> units_quotient(long m, const std::vector<long>& hgens);

  std::size_t order() const { return table_.size(); }
  std::size_t identity() const { return 0; }
  std::size_t mul(std::size_t a, std::size_t b) const { return table_[a][b]; }
  std::size_t inv(std::size_t a) const { return inverse_[a]; }
  std::size_t pow(std::size_t a, long k) const;
  bool is_abelian() const { return abelian_; }
  long exponent() const { return exponent_; }
  std::size_t element_order(std::size_t a) const;

  const std::vector<long>& invariant_factors() const;
  std::vector<long> coordinates(std::size_t g) const;
  std::size_t element(const std::vector<long>& coords) const;

  // Residue labels, present for units_quotient groups.
  bool has_residues() const { return modulus_ > 0; }
  long modulus() const { return modulus_; }
  long residue(std::size_t g) const { return residue_.at(g); }  // least positive representative
  std::size_t element_of_residue(long a) const;
  const std::vector<long>& subgroup_residues() const { return h_residues_; }

  const std::string& name(std::size_t g) const { return names_.at(g); }

  // Sorted element list of the subgroup generated by gens.
  std::vector<std::size_t> subgroup(const std::vector<std::size_t>& gens) const;
  // Left cosets gH as sorted element lists, ordered by least element.
  std::vector<std::vector<std::size_t>> cosets(const std::vector<std::size_t>& subgroup) const;
  std::vector<std::size_t> generators() const;

 private:
  FiniteGroup() = default;
  void finish();

  std::vector<std::vector<std::size_t>> table_;
  std::vector<std::size_t> inverse_;
  std::vector<std::string> names_;
  std::vector<long> invariants_;
  std::vector<std::size_t> gens_;
  bool abelian_ = false;
  long exponent_ = 1;
  long modulus_ = 0;
  std::vector<long> residue_;
  std::vector<long> residue_to_element_;
  std::vector<long> h_residues_;
};

using GroupPtr = std::shared_ptr<const FiniteGroup>;

// Character of an abelian group, valued in the e-th roots of unity
// (e = group exponent): chi(g) = zeta_e^{k(g)}.
class Character {
 public:
  Character(GroupPtr group, std::vector<long> coords);
  const GroupPtr& group() const { return group_; }
  const std::vector<long>& coords() const { return coords_; }
  long exponent_at(std::size_t g) const;
  bool is_trivial() const;
  Character inverse() const;
  Character product(const Character& other) const;
  bool trivial_on(const std::vector<std::size_t>& elements) const;
  std::size_t order() const;
  std::string label() const;
  bool operator==(const Character& o) const { return coords_ == o.coords_; }

 private:
  GroupPtr group_;
  std::vector<long> coords_;
};

std::vector<Character> characters_of(const GroupPtr& group);

}  // namespace cyclostark
