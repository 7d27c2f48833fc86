#include "cyclostark/verify.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace cyclostark {

const std::vector<std::string>& all_checks() {
  static const std::vector<std::string> c = {"regulator", "integrality", "fitting", "annihilation", "dimensions"};
  return c;
}

void RunConfig::validate() const {
  if (precision < kMinPrecision) throw InputError("precision must be at least " + std::to_string(kMinPrecision) + " digits");
  if (2 * tolerance > precision) throw InputError("tolerance exponent must not exceed precision/2");
  for (const auto& c : checks)
    if (std::find(all_checks().begin(), all_checks().end(), c) == all_checks().end())
      throw InputError("unknown check '" + c + "'");
}

bool RunConfig::selected(const std::string& check) const { return checks.empty() || checks.count(check); }

std::set<std::string> parse_check_list(const std::string& s) {
  std::set<std::string> out;
  std::stringstream ss(s);
  std::string part;
  while (std::getline(ss, part, ',')) {
    if (part.empty()) continue;
    if (part == "all") return {};
    if (std::find(all_checks().begin(), all_checks().end(), part) == all_checks().end())
      throw InputError("unknown check '" + part + "'");
    out.insert(part);
  }
  if (out.empty()) throw InputError("empty check list");
  return out;
}

const FieldFixtures& find_field(const std::vector<FieldFixtures>& index, long conductor, const std::vector<long>& gens) {
  for (const auto& f : index)
    if (f.conductor == conductor && f.subgroup_gens == gens) return f;
  std::string g;
  for (std::size_t i = 0; i < gens.size(); ++i) g += (i ? "-" : "") + std::to_string(gens[i]);
  throw InputError("no unit fixture for m=" + std::to_string(conductor) + " H=" + g);
}

nlohmann::json element_report(const FieldFixtures& ff, unsigned precision) {
  if (ff.units.empty()) throw InputError("field " + ff.key + " has no unit fixture");
  auto basis = SUnitBasis::load(ff.units, precision);
  auto eps = cyclotomic_element(basis, precision);
  const auto& g = basis->field()->group();
  GLattice u = basis->lattice();
  RatMatrix gen(0, u.ambient_dim());
  gen.append_row(eps.epsilon.exponents);
  GLattice w = u.sublattice(gen);
  nlohmann::json hnf = nlohmann::json::array();
  for (std::size_t r = 0; r < w.basis().rows(); ++r) hnf.push_back(rats_json(w.basis().row(r)));
  nlohmann::json s = nlohmann::json::array();
  for (const auto& v : basis->places()) s.push_back(v.label());
  nlohmann::json elements = nlohmann::json::array();
  for (std::size_t e = 0; e < g->order(); ++e) elements.push_back(g->residue(e));
  return {{"field", ff.key},
          {"conductor", ff.conductor},
          {"subgroup_gens", ff.subgroup_gens},
          {"S", s},
          {"group_elements", elements},
          {"epsilon", rats_json(eps.epsilon.exponents)},
          {"exact_certificate", verify_expression({{norm_one_minus_zeta(*basis->field()), Rat(1, 2)}}, eps.epsilon, precision)},
          {"e_pi", qg_json(eps.e_pi)},
          {"module_hnf", hnf}};
}

RunResult run_verification(const RunConfig& config) {
  config.validate();
  auto index = load_fixture_index(config.fixtures);
  if (index.empty()) throw InputError("no fixtures found in " + config.fixtures);
  std::vector<Report> reports;
  for (const auto& ff : index) {
    if (ff.units.empty()) throw InputError("field " + ff.key + " has T-fixtures but no unit fixture");
    auto basis = SUnitBasis::load(ff.units, config.precision);
    auto eps = cyclotomic_element(basis, config.precision);
    if (config.negative_control) eps = corrupted(eps);
    if (config.selected("regulator")) reports.push_back(verify_regulator(eps, config.precision, config.tolerance));
    if (config.selected("dimensions"))
      for (long a = 0; a <= 2; ++a) reports.push_back(fe_dimension_check(basis, a));
    const bool need_t = config.selected("integrality") || config.selected("fitting") || config.selected("annihilation");
    if (!need_t) continue;
    for (const auto& [t, path] : ff.t_units) {
      auto tb = SUnitBasis::load(path, config.precision);
      auto et = t_modify(eps, tb, config.precision);
      if (config.selected("integrality"))
        reports.push_back(verify_integrality(config.negative_control ? scaled_off_lattice(et) : et));
      auto sp = ff.selmer.find(t);
      if (sp == ff.selmer.end()) {
        if (config.selected("fitting") || config.selected("annihilation"))
          throw InputError("missing Selmer fixture for " + ff.key + " with T " + std::to_string(t.front()));
        continue;
      }
      auto sel = SelmerFixture::load(sp->second, basis->field());
      if (config.selected("fitting")) reports.push_back(verify_fitting_equality(et, sel));
      if (config.selected("annihilation")) reports.push_back(verify_annihilation(et, sel));
    }
  }
  std::stable_sort(reports.begin(), reports.end(), [](const Report& a, const Report& b) {
    return std::tie(a.check, a.subject) < std::tie(b.check, b.subject);
  });
  RunResult out;
  long pass = 0, fail = 0, skipped = 0;
  nlohmann::json results = nlohmann::json::array();
  for (const auto& r : reports) {
    results.push_back(r.to_json());
    if (r.status == Status::pass) ++pass;
    if (r.status == Status::fail) ++fail;
    if (r.status == Status::skipped) ++skipped;
  }
  nlohmann::json checks = nlohmann::json::array();
  for (const auto& c : all_checks())
    if (config.selected(c)) checks.push_back(c);
  out.exit_code = fail == 0 ? 0 : 1;
  out.report = {{"config",
                 {{"precision", config.precision},
                  {"tolerance", config.tolerance},
                  {"checks", checks},
                  {"negative_control", config.negative_control}}},
                {"results", results},
                {"summary", {{"pass", pass}, {"fail", fail}, {"skipped", skipped}}},
                {"status", fail == 0 ? "pass" : "fail"}};
  return out;
}

GroupSpec parse_group_spec(const std::string& spec, const std::string& data_dir) {
  GroupSpec out;
  if (spec.empty() || spec == "1") {
    out.group = FiniteGroup::abelian({});
    return out;
  }
  if (std::all_of(spec.begin(), spec.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)) || c == ','; })) {
    std::vector<long> inv;
    std::stringstream ss(spec);
    std::string part;
    while (std::getline(ss, part, ','))
      if (!part.empty()) inv.push_back(std::stol(part));
    out.group = FiniteGroup::abelian(inv);
    return out;
  }
  std::string path = spec;
  if (spec.size() < 5 || spec.substr(spec.size() - 5) != ".json") path = data_dir + "/wedderburn_" + spec + ".json";
  out.wedderburn = WedderburnData::load(path);
  out.group = out.wedderburn->group();
  return out;
}

QGMatrix parse_qg_matrix(const nlohmann::json& j, const GroupPtr& g) {
  if (!j.is_array() || j.empty() || !j[0].is_array() || j[0].empty()) throw InputError("matrix must be a non-empty array of rows");
  const std::size_t d = j.size(), dp = j[0].size();
  QGMatrix m = qg_matrix(g, d, dp);
  for (std::size_t r = 0; r < d; ++r) {
    if (!j[r].is_array() || j[r].size() != dp) throw InputError("ragged matrix row " + std::to_string(r));
    for (std::size_t c = 0; c < dp; ++c) {
      const auto& e = j[r][c];
      QG x = qg_zero(g);
      if (e.is_array()) {
        if (e.size() != g->order()) throw InputError("entry must list " + std::to_string(g->order()) + " coefficients");
        for (std::size_t k = 0; k < e.size(); ++k) x[k] = parse_rational(e[k].is_string() ? e[k].get<std::string>() : e[k].dump());
      } else if (e.is_object()) {
        for (const auto& [name, v] : e.items()) {
          std::size_t idx = g->order();
          for (std::size_t k = 0; k < g->order(); ++k)
            if (g->name(k) == name) idx = k;
          if (idx == g->order()) throw InputError("unknown group element '" + name + "'");
          x[idx] += parse_rational(v.is_string() ? v.get<std::string>() : v.dump());
        }
      } else if (e.is_string() || e.is_number_integer()) {
        x[0] = parse_rational(e.is_string() ? e.get<std::string>() : e.dump());
      } else {
        throw InputError("unrecognized matrix entry");
      }
      m(r, c) = x;
    }
  }
  return m;
}

nlohmann::json fit_report(const QGMatrix& m, long a, const GroupSpec& spec, const MinorBudget& budget) {
  if (a < 0) throw InputError("Fitting index must be nonnegative");
  if (m.rows() < m.cols()) throw InputError("shape violation: d < d' (" + std::to_string(m.rows()) + " < " + std::to_string(m.cols()) + ")");
  const auto& g = spec.group;
  nlohmann::json names = nlohmann::json::array();
  for (std::size_t k = 0; k < g->order(); ++k) names.push_back(g->name(k));
  nlohmann::json out = {{"a", a}, {"rows", m.rows()}, {"cols", m.cols()}, {"group_elements", names}};
  const WedderburnData* wd = spec.wedderburn ? &*spec.wedderburn : nullptr;
  IdealLattice minor = minor_fitting_invariant(m, a, budget, wd);
  if (g->is_abelian()) {
    IdealLattice classical = classical_fitting_ideal(Presentation{g, m}, a);
    out["hnf"] = ideal_json(classical);
    out["method"] = "classical";
    out["minor_construction_agrees"] = minor == classical;
    out["sub_ideal"] = false;
  } else {
    out["hnf"] = ideal_json(minor);
    out["method"] = "minor";
    out["sub_ideal"] = true;
    out["group"] = spec.wedderburn->name();
  }
  return out;
}

}  // namespace cyclostark
