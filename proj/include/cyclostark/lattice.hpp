#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "cyclostark/groupring.hpp"
#include "cyclostark/linalg.hpp"
#include "cyclostark/wedderburn.hpp"

namespace cyclostark {

// A Z-lattice in Q^n stable under a linear G-action. Ambient vectors are rows;
// g acts by v -> (A_g v^T)^T.
class GLattice {
 public:
  GLattice() = default;
  // Lattice with the given Z-basis generators (HNF taken). Throws if the
  // result is not G-stable.
  static GLattice make(GroupPtr g, std::vector<RatMatrix> action, const RatMatrix& z_generators);
  // Z[G]-span of the generators.
  static GLattice spanned(GroupPtr g, std::vector<RatMatrix> action, const RatMatrix& generators);
  static GLattice regular(const GroupPtr& g);
  static GLattice free(const GroupPtr& g, std::size_t d);
  static GLattice trivial(const GroupPtr& g, std::size_t d = 1);
  // Actions given for generating elements (by element index) only.
  static std::vector<RatMatrix> extend_action(const GroupPtr& g, const std::vector<std::pair<std::size_t, RatMatrix>>& gens);

  const GroupPtr& group() const { return group_; }
  std::size_t ambient_dim() const { return action_.empty() ? 0 : action_[0].rows(); }
  std::size_t rank() const { return basis_.rows(); }
  const RatMatrix& basis() const { return basis_; }
  const RatMatrix& ambient_action(std::size_t g) const { return action_.at(g); }
  const std::vector<RatMatrix>& ambient_actions() const { return action_; }

  std::vector<Rat> act(std::size_t g, const std::vector<Rat>& v) const;
  std::vector<Rat> act(const QG& x, const std::vector<Rat>& v) const;
  std::optional<std::vector<Rat>> coordinates(const std::vector<Rat>& v) const;
  std::vector<Rat> from_coordinates(const std::vector<Rat>& c) const;
  bool contains(const std::vector<Rat>& v) const;
  bool contains(const GLattice& other) const;
  // L_g with g * b_j = sum_i L_g(i, j) b_i.
  IntMatrix lattice_action(std::size_t g) const;

  GLattice sublattice(const RatMatrix& generators) const;  // Z[G]-span inside the same ambient
  GLattice z_sublattice(const RatMatrix& generators) const;  // Z-span, must be G-stable
  bool operator==(const GLattice& o) const { return ambient_dim() == o.ambient_dim() && basis_ == o.basis_; }

 private:
  GroupPtr group_;
  std::vector<RatMatrix> action_;
  RatMatrix basis_;
  std::shared_ptr<const RowSpaceSolver> solver_;
};

// Z-basis of Hom_{Z[G]}(M, N), maps as N.rank x M.rank integer matrices in
// lattice coordinates (column j = image of the j-th M basis vector).
struct HomLattice {
  GLattice source;
  GLattice target;
  std::vector<IntMatrix> maps;
  GLattice lattice;  // Hom as a G-lattice in Q^{N.rank * M.rank}, row-major
  std::vector<Rat> apply(std::size_t i, const std::vector<Rat>& source_coords) const;
};
HomLattice hom_lattice(const GLattice& m, const GLattice& n);
// Hom(M, Z[G]): evaluation of the i-th functional as a group ring element.
QG evaluate_functional(const HomLattice& dual, std::size_t i, const std::vector<Rat>& source_coords);

// Relations (rows) x generators (columns) over Z[G]; the module presented is
// Z[G]^{d'} / (row span).
struct Presentation {
  GroupPtr group;
  QGMatrix matrix;
  std::size_t relations() const { return matrix.rows(); }
  std::size_t generators() const { return matrix.cols(); }
};

// Greedy presentation of a G-lattice; generator_order permutes candidate
// generators (lattice basis vectors), extra adds redundant generators.
Presentation presentation_of(const GLattice& m, const std::vector<std::size_t>& generator_order = {},
                             const std::vector<std::vector<Rat>>& extra_generators = {});

IdealLattice classical_fitting_ideal(const Presentation& h, long a);

struct MinorBudget {
  std::size_t group_elements = 1;  // functionals e_k^* * g for the first this-many g
  WhiteheadBudget whitehead;
};
IdealLattice minor_fitting_invariant(const QGMatrix& m, long a, const MinorBudget& budget = {},
                                     const WedderburnData* wd = nullptr);

// Exterior powers over Z[G] represented through evaluation coordinates: an
// element a of the r-th exterior power of Q.M is recorded by the values of
// all wedge functionals phi_{i_1} ^ ... ^ phi_{i_r} (i_1 < ... < i_r) built
// from a Z-basis of Hom(M, Z[G]). The map is injective on the Q[G]-exterior
// power, so lattice computations reduce to Z-linear algebra there.
class WedgeCoordinates {
 public:
  WedgeCoordinates(const GLattice& m, std::size_t r);
  std::size_t r() const { return r_; }
  const GLattice& module() const { return dual_.source; }
  const HomLattice& dual() const { return dual_; }
  const std::vector<std::vector<std::size_t>>& tuples() const { return tuples_; }
  std::size_t ambient_dim() const;
  // Coordinates of m_1 ^ ... ^ m_r (lattice coordinates of each m_j).
  std::vector<Rat> wedge(const std::vector<std::vector<Rat>>& vectors) const;
  // Value of the t-th wedge functional read off from coordinates.
  QG component(const std::vector<Rat>& coords, std::size_t t) const;
  std::vector<RatMatrix> action() const;

 private:
  HomLattice dual_;
  std::size_t r_;
  std::vector<std::vector<std::size_t>> tuples_;
};

GLattice exterior_power(const WedgeCoordinates& w);
GLattice rubin_lattice(const WedgeCoordinates& w);
GLattice exterior_power(const GLattice& m, std::size_t r);
GLattice rubin_lattice(const GLattice& m, std::size_t r);

// det(phi_i(m_j)) over Q[G].
QG wedge_pairing(const std::vector<QG>& values_matrix_rowmajor, std::size_t r);
QG wedge_pairing(const HomLattice& dual, const std::vector<std::size_t>& phis,
                 const std::vector<std::vector<Rat>>& vectors);

// SNF invariants (> 1) of L1 / L2.
std::vector<Int> quotient_invariants(const GLattice& l1, const GLattice& l2);
std::vector<Int> quotient_invariants(const RatMatrix& l1_basis, const RatMatrix& l2_basis);

class FiniteGModule {
 public:
  FiniteGModule(GroupPtr g, std::vector<Int> invariants, std::vector<std::pair<std::size_t, IntMatrix>> generator_action);
  static FiniteGModule trivial(const GroupPtr& g);
  const GroupPtr& group() const { return group_; }
  const std::vector<Int>& invariants() const { return invariants_; }
  const IntMatrix& action(std::size_t g) const { return action_.at(g); }
  Int order() const;
  bool is_trivial() const { return invariants_.empty(); }

 private:
  GroupPtr group_;
  std::vector<Int> invariants_;
  std::vector<IntMatrix> action_;
};

bool annihilates(const QG& x, const FiniteGModule& f);

}  // namespace cyclostark
