#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "cyclostark/verify.hpp"

namespace py = pybind11;
using namespace cyclostark;

// JSON crosses the boundary as text; the Python package decodes it.
namespace {

std::string field_info(long m, const std::vector<long>& h) {
  auto f = RealAbelianField::make(m, h);
  nlohmann::json residues = nlohmann::json::array(), places = nlohmann::json::array();
  for (std::size_t g = 0; g < f->degree(); ++g) residues.push_back(f->group()->residue(g));
  for (const auto& v : canonical_places(*f)) places.push_back(v.label());
  return nlohmann::json{{"key", f->key()}, {"degree", f->degree()}, {"group_residues", residues}, {"S", places}}.dump();
}

std::string l_values(long m, const std::vector<long>& h, unsigned precision) {
  auto f = RealAbelianField::make(m, h);
  nlohmann::json out = nlohmann::json::array();
  for (const auto& chi : characters_of(f->group())) out.push_back(l_value_report(chi, *f, precision).to_json());
  return out.dump();
}

std::string element(long m, const std::vector<long>& h, const std::string& fixtures, unsigned precision) {
  RealAbelianField::make(m, h);
  auto index = load_fixture_index(fixtures.empty() ? default_fixture_dir() : fixtures);
  return element_report(find_field(index, m, h), precision).dump();
}

py::tuple verify(const std::string& fixtures, unsigned precision, unsigned tolerance, const std::string& only,
                 bool negative_control) {
  RunConfig cfg;
  cfg.fixtures = fixtures.empty() ? default_fixture_dir() : fixtures;
  cfg.precision = precision;
  cfg.tolerance = tolerance;
  cfg.checks = parse_check_list(only);
  cfg.negative_control = negative_control;
  RunResult r;
  {
    py::gil_scoped_release release;
    r = run_verification(cfg);
  }
  return py::make_tuple(r.report.dump(), r.exit_code);
}

std::string fit(const std::string& matrix, long a, const std::string& group, std::size_t group_elements) {
  auto spec = parse_group_spec(group);
  MinorBudget budget;
  budget.group_elements = group_elements;
  auto j = nlohmann::json::parse(matrix);
  return fit_report(parse_qg_matrix(j.is_object() ? j.at("matrix") : j, spec.group), a, spec, budget).dump();
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Cyclotomic Weil-Stark elements: native core";
  py::register_exception<InputError>(m, "InputError", PyExc_ValueError);
  py::register_exception<UnsupportedError>(m, "UnsupportedError", PyExc_NotImplementedError);
  py::register_exception<ContainmentError>(m, "ContainmentError", PyExc_ArithmeticError);

  m.attr("REGULATOR_SIGN") = kRegulatorSign;
  m.attr("DEFAULT_PRECISION") = kDefaultPrecision;
  m.attr("DEFAULT_TOLERANCE") = kDefaultToleranceDigits;

  m.def("default_fixture_dir", &default_fixture_dir);
  m.def("field_info", &field_info, py::arg("m"), py::arg("subgroup"));
  m.def("l_values", &l_values, py::arg("m"), py::arg("subgroup"), py::arg("precision") = kDefaultPrecision);
  m.def("element", &element, py::arg("m"), py::arg("subgroup"), py::arg("fixtures") = "",
        py::arg("precision") = kDefaultPrecision);
  m.def("verify", &verify, py::arg("fixtures") = "", py::arg("precision") = kDefaultPrecision,
        py::arg("tolerance") = kDefaultToleranceDigits, py::arg("only") = "all", py::arg("negative_control") = false);
  m.def("fit", &fit, py::arg("matrix"), py::arg("a"), py::arg("group") = "1", py::arg("group_elements") = 1);
}
