#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "cyclostark/fixtures.hpp"
#include "cyclostark/weilstark.hpp"
#include "json.hpp"

namespace cyclostark {

const std::vector<std::string>& all_checks();

struct RunConfig {
  std::string fixtures;
  unsigned precision = kDefaultPrecision;
  unsigned tolerance = kDefaultToleranceDigits;
  std::set<std::string> checks;  // empty = all
  bool negative_control = false;
  void validate() const;
  bool selected(const std::string& check) const;
};

// "regulator,fitting" or "all".
std::set<std::string> parse_check_list(const std::string& s);

struct RunResult {
  nlohmann::json report;
  int exit_code = 0;  // 0 pass, 1 verification failure
};

// Input errors propagate as InputError / UnsupportedError.
RunResult run_verification(const RunConfig& config);

// The Weil-Stark element of one field with e_pi and the HNF of Z[G] eps.
nlohmann::json element_report(const FieldFixtures& field, unsigned precision = kDefaultPrecision);
const FieldFixtures& find_field(const std::vector<FieldFixtures>& index, long conductor, const std::vector<long>& gens);

struct GroupSpec {
  GroupPtr group;
  std::optional<WedderburnData> wedderburn;
};
// "1" (trivial), invariant factors "2,6", a shipped name "S3" / "D4", or a
// path to Wedderburn data (*.json).
GroupSpec parse_group_spec(const std::string& spec, const std::string& data_dir = default_data_dir());
// Rows of entries; an entry is a dense array of |G| "p/q" strings or an
// object keyed by element name.
QGMatrix parse_qg_matrix(const nlohmann::json& j, const GroupPtr& g);
nlohmann::json fit_report(const QGMatrix& m, long a, const GroupSpec& spec, const MinorBudget& budget = {});

}  // namespace cyclostark
