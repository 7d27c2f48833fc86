#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "cyclostark/verify.hpp"

using namespace cyclostark;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitInput = 2;

void emit(const nlohmann::json& j, const std::string& out) {
  const std::string text = j.dump(2) + "\n";
  if (out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(out);
  if (!f) throw InputError("cannot write " + out);
  f << text;
}

void emit_error(const std::string& kind, const std::string& what) {
  nlohmann::json j = {{"status", "error"}, {"error", kind}, {"message", what}};
  std::cerr << j.dump(2) << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cyclotomic Weil-Stark elements and their verification"};
  app.require_subcommand(1);

  std::string fixtures = default_fixture_dir();
  std::string out;
  unsigned precision = kDefaultPrecision;
  unsigned tolerance = kDefaultToleranceDigits;

  auto* element = app.add_subcommand("element", "Print eps, e_pi and the HNF of Z[G] eps for one field");
  long conductor = 0;
  std::vector<long> subgroup;
  element->add_option("-m,--conductor", conductor, "Conductor m")->required();
  element->add_option("-H,--subgroup", subgroup, "Generators of H in (Z/m)^x")->delimiter(',')->required();
  element->add_option("--fixtures", fixtures, "Fixture directory");
  element->add_option("--precision", precision, "Working precision in decimal digits");
  element->add_option("--out", out, "Write the report here instead of stdout");

  auto* verify = app.add_subcommand("verify", "Run verification checks over a fixture directory");
  std::string only = "all";
  bool negative = false;
  verify->add_option("--fixtures", fixtures, "Fixture directory");
  verify->add_option("--precision", precision, "Working precision in decimal digits");
  verify->add_option("--tolerance", tolerance, "Tolerance exponent k (checks use 1e-k)");
  verify->add_option("--only", only, "Comma list of regulator,integrality,fitting,annihilation,dimensions or all");
  verify->add_option("--out", out, "Write the report here instead of stdout");
  verify->add_flag("--negative-control", negative, "Corrupt eps deliberately; the run must fail");

  auto* fit = app.add_subcommand("fit", "Fitting invariant of a matrix over Z[G]");
  std::string matrix_file, group_spec = "1", data_dir = default_data_dir();
  long a = 0;
  std::size_t group_elements = 1;
  fit->add_option("--matrix", matrix_file, "JSON file holding the matrix")->required();
  fit->add_option("-a,--index", a, "Fitting index a")->required();
  fit->add_option("--group", group_spec, "1, invariant factors like 2,6, S3, D4 or a Wedderburn JSON path");
  fit->add_option("--data", data_dir, "Directory with shipped Wedderburn data");
  fit->add_option("--group-elements", group_elements, "Functionals e_k^* g for this many g");
  fit->add_option("--out", out, "Write the report here instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInput;
  }

  try {
    if (*element) {
      if (precision < kMinPrecision) throw InputError("precision must be at least " + std::to_string(kMinPrecision) + " digits");
      RealAbelianField::make(conductor, subgroup);
      auto index = load_fixture_index(fixtures);
      emit(element_report(find_field(index, conductor, subgroup), precision), out);
      return kExitPass;
    }
    if (*verify) {
      RunConfig cfg;
      cfg.fixtures = fixtures;
      cfg.precision = precision;
      cfg.tolerance = tolerance;
      cfg.checks = parse_check_list(only);
      cfg.negative_control = negative;
      auto result = run_verification(cfg);
      emit(result.report, out);
      return result.exit_code == 0 ? kExitPass : kExitFail;
    }
    if (*fit) {
      std::ifstream in(matrix_file);
      if (!in) throw InputError("cannot open matrix file " + matrix_file);
      nlohmann::json j;
      in >> j;
      auto spec = parse_group_spec(group_spec, data_dir);
      MinorBudget budget;
      budget.group_elements = group_elements;
      emit(fit_report(parse_qg_matrix(j.is_object() ? j.at("matrix") : j, spec.group), a, spec, budget), out);
      return kExitPass;
    }
  } catch (const InputError& e) {
    emit_error("input", e.what());
    return kExitInput;
  } catch (const UnsupportedError& e) {
    emit_error("unsupported", e.what());
    return kExitInput;
  } catch (const ContainmentError& e) {
    emit_error("containment", e.what());
    return kExitInput;
  } catch (const nlohmann::json::exception& e) {
    emit_error("input", e.what());
    return kExitInput;
  }
  return kExitInput;
}
