#include "cyclostark/wedderburn.hpp"

#include <fstream>
#include <map>

namespace cyclostark {

Quad::Quad(Rat a, Rat b, long d) : a_(std::move(a)), b_(std::move(b)), d_(d) {
  if (d_ == 0) throw InputError("quadratic field parameter must be nonzero");
  if (d_ == 1 && b_ != 0) throw InputError("sqrt(1) component must vanish");
}

void Quad::check(const Quad& o) const {
  if (d_ != o.d_ && d_ != 1 && o.d_ != 1) throw InputError("quadratic numbers from different fields");
}

Quad Quad::operator+(const Quad& o) const {
  check(o);
  return Quad(a_ + o.a_, b_ + o.b_, std::max(d_, o.d_) == 1 ? 1 : (d_ == 1 ? o.d_ : d_));
}

Quad Quad::operator-(const Quad& o) const { return *this + (-o); }

Quad Quad::operator*(const Quad& o) const {
  check(o);
  long d = d_ == 1 ? o.d_ : d_;
  return Quad(a_ * o.a_ + b_ * o.b_ * d, a_ * o.b_ + b_ * o.a_, d);
}

Quad Quad::inverse() const {
  Rat n = a_ * a_ - b_ * b_ * d_;
  if (n == 0) throw InputError("inverse of zero");
  return Quad(a_ / n, -b_ / n, d_);
}

static QuadMatrix quad_mul(const QuadMatrix& x, const QuadMatrix& y) {
  QuadMatrix z(x.rows(), y.cols(), Quad(Rat(0)));
  for (std::size_t i = 0; i < x.rows(); ++i)
    for (std::size_t k = 0; k < x.cols(); ++k) {
      if (x(i, k).is_zero()) continue;
      for (std::size_t j = 0; j < y.cols(); ++j) z(i, j) += x(i, k) * y(k, j);
    }
  return z;
}

static QuadMatrix quad_identity(std::size_t n) {
  QuadMatrix z(n, n, Quad(Rat(0)));
  for (std::size_t i = 0; i < n; ++i) z(i, i) = Quad(Rat(1));
  return z;
}

Quad quad_determinant(QuadMatrix a) {
  const std::size_t n = a.rows();
  if (n != a.cols() || n == 0) throw InputError("determinant of a non-square matrix");
  Quad det(Rat(1));
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = n;
    for (std::size_t i = c; i < n; ++i)
      if (!a(i, c).is_zero()) {
        p = i;
        break;
      }
    if (p == n) return Quad(Rat(0));
    if (p != c) {
      a.swap_rows(p, c);
      det = -det;
    }
    det = det * a(c, c);
    Quad inv = a(c, c).inverse();
    for (std::size_t i = c + 1; i < n; ++i) {
      if (a(i, c).is_zero()) continue;
      Quad f = a(i, c) * inv;
      for (std::size_t j = c; j < n; ++j) a(i, j) -= f * a(c, j);
    }
  }
  return det;
}

namespace {

Quad parse_entry(const nlohmann::json& e, long d) {
  if (e.is_string()) return Quad(parse_rational(e.get<std::string>()), Rat(0), d);
  if (e.is_number_integer()) return Quad(Rat(e.get<long>()), Rat(0), d);
  if (e.is_array() && e.size() == 2)
    return Quad(parse_rational(e[0].get<std::string>()), parse_rational(e[1].get<std::string>()), d);
  throw InputError("bad matrix entry in Wedderburn data");
}

QuadMatrix parse_matrix(const nlohmann::json& j, std::size_t n, long d) {
  if (!j.is_array() || j.size() != n) throw InputError("representation matrix has the wrong size");
  QuadMatrix m(n, n);
  for (std::size_t r = 0; r < n; ++r) {
    if (!j[r].is_array() || j[r].size() != n) throw InputError("representation matrix has the wrong size");
    for (std::size_t c = 0; c < n; ++c) m(r, c) = parse_entry(j[r][c], d);
  }
  return m;
}

std::string key_of(const std::vector<QuadMatrix>& ms) {
  std::string k;
  for (const auto& m : ms)
    for (std::size_t i = 0; i < m.rows(); ++i)
      for (std::size_t j = 0; j < m.cols(); ++j) k += to_string(m(i, j).a()) + "," + to_string(m(i, j).b()) + ";";
  return k;
}

bool is_squarefree(long d) {
  long x = d < 0 ? -d : d;
  for (long p = 2; p * p <= x; ++p)
    if (x % (p * p) == 0) return false;
  return true;
}

}  // namespace

namespace {

// 1, "Q", d or "Q(sqrt(d))".
long parse_field(const nlohmann::json& f) {
  if (f.is_number_integer()) return f.get<long>();
  const std::string s = f.get<std::string>();
  if (s == "Q") return 1;
  const std::string pre = "Q(sqrt(", post = "))";
  if (s.size() > pre.size() + post.size() && s.compare(0, pre.size(), pre) == 0 &&
      s.compare(s.size() - post.size(), post.size(), post) == 0)
    return std::stol(s.substr(pre.size(), s.size() - pre.size() - post.size()));
  throw InputError("unknown component field '" + s + "'");
}

}  // namespace

WedderburnData WedderburnData::from_json(const nlohmann::json& j) {
  WedderburnData w;
  try {
    w.name_ = j.value("name", std::string("G"));
    const auto& gj = j.contains("group") ? j.at("group") : j;
    w.generator_names_ = gj.at("generators").get<std::vector<std::string>>();
    w.relations_ = gj.value("relations", std::vector<std::string>{});
    for (const auto& g : w.generator_names_)
      if (g.size() != 1 || g == "1") throw InputError("generator names must be single characters other than '1'");
    const auto& comps = j.at("components");
    if (!comps.is_array() || comps.empty()) throw InputError("Wedderburn data without components");
    std::vector<std::vector<QuadMatrix>> gen_images(w.generator_names_.size());
    for (const auto& c : comps) {
      WedderburnComponent comp;
      comp.name = c.value("name", std::string());
      comp.field = parse_field(c.value("field", nlohmann::json(1)));
      if (comp.field != 1 && !is_squarefree(comp.field)) throw InputError("component field parameter must be squarefree");
      comp.degree = c.at("degree").get<std::size_t>();
      if (comp.degree == 0) throw InputError("component degree must be positive");
      for (std::size_t s = 0; s < w.generator_names_.size(); ++s)
        gen_images[s].push_back(parse_matrix(c.at(c.contains("rep") ? "rep" : "images").at(w.generator_names_[s]), comp.degree, comp.field));
      w.components_.push_back(comp);
    }
    // Enumerate the group as the joint image of the generators.
    const std::size_t k = w.components_.size();
    std::vector<std::vector<QuadMatrix>> elems;
    std::vector<std::string> words;
    std::map<std::string, std::size_t> index;
    std::vector<QuadMatrix> id;
    for (const auto& c : w.components_) id.push_back(quad_identity(c.degree));
    elems.push_back(id);
    words.push_back("1");
    index[key_of(id)] = 0;
    for (std::size_t head = 0; head < elems.size(); ++head) {
      for (std::size_t s = 0; s < w.generator_names_.size(); ++s) {
        std::vector<QuadMatrix> next;
        for (std::size_t i = 0; i < k; ++i) next.push_back(quad_mul(elems[head][i], gen_images[s][i]));
        auto key = key_of(next);
        if (index.count(key)) continue;
        if (elems.size() >= 512) throw UnsupportedError("group generated by the representation is too large");
        index[key] = elems.size();
        words.push_back((words[head] == "1" ? std::string() : words[head]) + w.generator_names_[s]);
        elems.push_back(next);
      }
    }
    const std::size_t n = elems.size();
    std::vector<std::vector<std::size_t>> table(n, std::vector<std::size_t>(n));
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) {
        std::vector<QuadMatrix> p;
        for (std::size_t i = 0; i < k; ++i) p.push_back(quad_mul(elems[a][i], elems[b][i]));
        auto it = index.find(key_of(p));
        if (it == index.end()) throw InputError("representation images are not closed under multiplication");
        table[a][b] = it->second;
      }
    w.group_ = FiniteGroup::from_table(table, words);
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t a = 0; a < n; ++a) w.components_[i].images.push_back(elems[a][i]);
    std::vector<std::size_t> gen_elts;
    for (const auto& g : w.generator_names_) gen_elts.push_back(w.element_of_word(g));
    w.generator_elements_ = gen_elts;
    const auto& cj = j.at("components");
    for (std::size_t i = 0; i < k; ++i) {
      QG e = qg_zero(w.group_);
      for (const auto& [word, coeff] : cj[i].at("idempotent").items())
        e[w.element_of_word(word)] += parse_rational(coeff.get<std::string>());
      w.components_[i].idempotent = e;
    }
    // Flattened images, used to invert the Wedderburn map.
    std::size_t width = 0;
    for (const auto& c : w.components_) width += 2 * c.degree * c.degree;
    w.image_rows_ = RatMatrix(n, width, Rat(0));
    for (std::size_t a = 0; a < n; ++a) {
      std::size_t col = 0;
      for (const auto& c : w.components_) {
        const auto& m = c.images[a];
        for (std::size_t r = 0; r < c.degree; ++r)
          for (std::size_t s = 0; s < c.degree; ++s) {
            w.image_rows_(a, col++) = m(r, s).a();
            w.image_rows_(a, col++) = m(r, s).b();
          }
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("malformed Wedderburn data: ") + e.what());
  }
  w.validate();
  return w;
}

WedderburnData WedderburnData::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw InputError("cannot parse " + path + ": " + e.what());
  }
  return from_json(j);
}

std::size_t WedderburnData::element_of_word(const std::string& word) const {
  std::size_t x = 0;
  if (word.empty() || word == "1") return 0;
  for (char ch : word) {
    std::size_t s = generator_names_.size();
    for (std::size_t i = 0; i < generator_names_.size(); ++i)
      if (generator_names_[i][0] == ch) s = i;
    if (s == generator_names_.size()) throw InputError("unknown generator in word '" + word + "'");
    std::size_t g = generator_elements_.empty() ? 0 : generator_elements_[s];
    if (generator_elements_.empty()) {
      // During construction generator elements are the one-letter words.
      for (std::size_t e = 0; e < group_->order(); ++e)
        if (group_->name(e) == generator_names_[s]) g = e;
    }
    x = group_->mul(x, g);
  }
  return x;
}

QuadMatrix WedderburnData::image(std::size_t i, const QG& x) const {
  const auto& c = components_.at(i);
  QuadMatrix m(c.degree, c.degree, Quad(Rat(0)));
  for (std::size_t g = 0; g < group_->order(); ++g) {
    if (x[g] == 0) continue;
    const auto& img = c.images[g];
    Quad s(x[g]);
    for (std::size_t r = 0; r < c.degree; ++r)
      for (std::size_t t = 0; t < c.degree; ++t)
        if (!img(r, t).is_zero()) m(r, t) += s * img(r, t);
  }
  return m;
}

QuadMatrix WedderburnData::image(std::size_t i, const QGMatrix& mat) const {
  const std::size_t n = components_.at(i).degree;
  QuadMatrix out(mat.rows() * n, mat.cols() * n, Quad(Rat(0)));
  for (std::size_t r = 0; r < mat.rows(); ++r)
    for (std::size_t c = 0; c < mat.cols(); ++c) {
      auto blk = image(i, mat(r, c));
      for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) out(r * n + a, c * n + b) = blk(a, b);
    }
  return out;
}

QG WedderburnData::assemble(const std::vector<Quad>& values) const {
  if (values.size() != components_.size()) throw InputError("one value per component expected");
  std::vector<Rat> target;
  for (std::size_t i = 0; i < components_.size(); ++i) {
    const auto& c = components_[i];
    for (std::size_t r = 0; r < c.degree; ++r)
      for (std::size_t s = 0; s < c.degree; ++s) {
        if (r == s) {
          target.push_back(values[i].a());
          target.push_back(values[i].b());
        } else {
          target.push_back(0);
          target.push_back(0);
        }
      }
  }
  auto x = solve_left(image_rows_, target);
  if (!x) throw InputError("component values are not in the image of the Wedderburn map");
  return QG(group_, *x);
}

QG WedderburnData::reduced_norm(const QGMatrix& m) const {
  std::vector<Quad> dets;
  for (std::size_t i = 0; i < components_.size(); ++i) dets.push_back(quad_determinant(image(i, m)));
  return assemble(dets);
}

bool WedderburnData::is_central(const QG& x) const {
  for (std::size_t g = 0; g < group_->order(); ++g) {
    QG b = qg_basis(group_, g);
    if (b * x != x * b) return false;
  }
  return true;
}

void WedderburnData::validate() const {
  const std::size_t n = group_->order();
  std::size_t dim = 0;
  for (const auto& c : components_) dim += c.degree * c.degree * (c.field == 1 ? 1 : 2);
  if (dim != n) throw InputError("component dimensions do not add up to the group order (invariant: dimension count)");
  for (const auto& rel : relations_)
    if (element_of_word(rel) != 0) throw InputError("relation '" + rel + "' does not hold (invariant: relations)");
  QG total = qg_zero(group_);
  for (std::size_t i = 0; i < components_.size(); ++i) {
    const auto& e = components_[i].idempotent;
    if (e * e != e) throw InputError("idempotent " + std::to_string(i) + " is not idempotent (invariant: idempotent)");
    if (!is_central(e)) throw InputError("idempotent " + std::to_string(i) + " is not central (invariant: central)");
    for (std::size_t j = 0; j < components_.size(); ++j) {
      if (j != i && !(e * components_[j].idempotent).is_zero())
        throw InputError("idempotents are not orthogonal (invariant: orthogonal)");
      auto img = image(j, e);
      auto want = j == i ? quad_identity(components_[j].degree) : QuadMatrix(img.rows(), img.cols(), Quad(Rat(0)));
      for (std::size_t r = 0; r < img.rows(); ++r)
        for (std::size_t s = 0; s < img.cols(); ++s)
          if (!(img(r, s) == want(r, s)))
            throw InputError("idempotent " + std::to_string(i) + " does not project onto its component (invariant: compatibility)");
    }
    total += e;
  }
  if (total != qg_one(group_)) throw InputError("idempotents do not sum to 1 (invariant: completeness)");
  if (rank(image_rows_) != n) throw InputError("Wedderburn map is not injective (invariant: faithfulness)");
}

namespace {

// Visits coefficient vectors in [-h, h]^len with max |entry| = h, in a fixed
// order, until f returns false.
template <class F>
bool for_each_shell(std::size_t len, long h, F&& f) {
  std::vector<long> v(len, -h);
  while (true) {
    bool on_shell = false;
    for (long x : v)
      if (x == h || x == -h) on_shell = true;
    if (on_shell && !f(v)) return false;
    std::size_t i = 0;
    while (i < len && v[i] == h) v[i++] = -h;
    if (i == len) return true;
    ++v[i];
  }
}

}  // namespace

IdealLattice whitehead_sublattice(const GroupPtr& g, const WedderburnData* wd, const WhiteheadBudget& budget) {
  if (g->is_abelian()) return IdealLattice::unit(g);
  if (!wd) throw UnsupportedError("non-commutative group ring needs Wedderburn data");
  if (wd->group() != g) throw InputError("Wedderburn data belongs to a different group");
  std::vector<QG> norms{qg_one(g)};
  const std::size_t n = g->order();
  for (std::size_t dim = 1; dim <= budget.max_dim; ++dim) {
    std::size_t count = 0;
    for (long h = 1; h <= budget.height && count < budget.max_count; ++h) {
      if (dim == 1) {
        for_each_shell(n, h, [&](const std::vector<long>& v) {
          QG x = qg_zero(g);
          for (std::size_t i = 0; i < n; ++i) x[i] = v[i];
          QGMatrix m(1, 1, x);
          norms.push_back(wd->reduced_norm(m));
          return ++count < budget.max_count;
        });
      } else {
        // Entries are 0 or c*g with |c| <= h; letters indexed 0..2hn.
        const long letters = 2 * h * static_cast<long>(n) + 1;
        std::vector<long> idx(dim * dim, 0);
        while (count < budget.max_count) {
          bool on_shell = false;
          QGMatrix m = qg_matrix(g, dim, dim);
          for (std::size_t e = 0; e < idx.size(); ++e) {
            long l = idx[e];
            if (l == 0) continue;
            long c = (l - 1) / static_cast<long>(n) - h;
            if (c >= 0) ++c;
            std::size_t elt = static_cast<std::size_t>((l - 1) % static_cast<long>(n));
            if (c == h || c == -h) on_shell = true;
            m(e / dim, e % dim)[elt] = c;
          }
          if (on_shell) {
            norms.push_back(wd->reduced_norm(m));
            ++count;
          }
          std::size_t i = 0;
          while (i < idx.size() && idx[i] == letters - 1) idx[i++] = 0;
          if (i == idx.size()) break;
          ++idx[i];
        }
      }
    }
  }
  return IdealLattice::z_span(g, norms);
}

}  // namespace cyclostark
