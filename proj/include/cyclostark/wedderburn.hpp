#pragma once

#include <string>
#include <vector>

#include "cyclostark/groupring.hpp"
#include "cyclostark/linalg.hpp"
#include "json.hpp"

namespace cyclostark {

// a + b sqrt(d) with d squarefree; d = 1 means the field Q (b = 0).
class Quad {
 public:
  Quad() = default;
  Quad(Rat a, Rat b, long d);
  explicit Quad(const Rat& a, long d = 1) : Quad(a, Rat(0), d) {}

  const Rat& a() const { return a_; }
  const Rat& b() const { return b_; }
  long d() const { return d_; }
  bool is_zero() const { return a_ == 0 && b_ == 0; }
  bool is_rational() const { return b_ == 0; }

  Quad operator+(const Quad& o) const;
  Quad operator-(const Quad& o) const;
  Quad operator-() const { return Quad(-a_, -b_, d_); }
  Quad operator*(const Quad& o) const;
  Quad inverse() const;
  Quad& operator+=(const Quad& o) { return *this = *this + o; }
  Quad& operator-=(const Quad& o) { return *this = *this - o; }
  bool operator==(const Quad& o) const { return a_ == o.a_ && b_ == o.b_; }

 private:
  void check(const Quad& o) const;
  Rat a_ = 0, b_ = 0;
  long d_ = 1;
};

using QuadMatrix = Matrix<Quad>;
Quad quad_determinant(QuadMatrix m);

struct WedderburnComponent {
  std::string name;
  long field = 1;           // Q(sqrt(field))
  std::size_t degree = 1;   // matrix size n_i
  QG idempotent;
  std::vector<QuadMatrix> images;  // image of each group element
};

// Explicit Wedderburn decomposition Q[G] = prod M_{n_i}(F_i) for a group
// given by generators and relations. The group itself is recovered from the
// joint image of the components.
class WedderburnData {
 public:
  static WedderburnData from_json(const nlohmann::json& j);
  static WedderburnData load(const std::string& path);

  const GroupPtr& group() const { return group_; }
  const std::string& name() const { return name_; }
  const std::vector<WedderburnComponent>& components() const { return components_; }
  std::size_t element_of_word(const std::string& word) const;

  // Image of a group ring element (or matrix over it) in component i.
  QuadMatrix image(std::size_t i, const QG& x) const;
  QuadMatrix image(std::size_t i, const QGMatrix& m) const;
  // Central element whose component i image is v_i * identity.
  QG assemble(const std::vector<Quad>& values) const;
  QG reduced_norm(const QGMatrix& m) const;
  bool is_central(const QG& x) const;

 private:
  void validate() const;
  std::string name_;
  GroupPtr group_;
  std::vector<std::string> generator_names_;
  std::vector<std::size_t> generator_elements_;
  std::vector<std::string> relations_;
  std::vector<WedderburnComponent> components_;
  RatMatrix image_rows_;  // row g = flattened images of g over all components
};

struct WhiteheadBudget {
  std::size_t max_dim = 2;
  long height = 1;
  std::size_t max_count = 200;
};

// Z-sublattice of xi(Z[G]) spanned by reduced norms of enumerated matrices.
// Commutative groups give Z[G].
IdealLattice whitehead_sublattice(const GroupPtr& g, const WedderburnData* wd, const WhiteheadBudget& budget);

}  // namespace cyclostark
