#pragma once

#include <map>
#include <string>
#include <vector>

namespace cyclostark {

// field_m<m>_H<g1>-<g2>[_T<q1>-<q2>]_{units|selmer}.json
struct FixtureFile {
  std::string path;
  std::string name;
  long conductor = 0;
  std::vector<long> subgroup_gens;
  std::vector<long> t;
  std::string kind;  // "units" or "selmer"
  std::string field_key() const;
};

struct FieldFixtures {
  std::string key;
  long conductor = 0;
  std::vector<long> subgroup_gens;
  std::string units;  // T empty
  std::map<std::vector<long>, std::string> t_units;
  std::map<std::vector<long>, std::string> selmer;
};

std::vector<FixtureFile> discover_fixtures(const std::string& dir);
std::vector<FieldFixtures> group_fixtures(const std::vector<FixtureFile>& files);
std::vector<FieldFixtures> load_fixture_index(const std::string& dir);

// $CYCLOSTARK_FIXTURES, else the source tree's fixtures/ directory.
std::string default_fixture_dir();
// $CYCLOSTARK_DATA, else the source tree's data/ directory.
std::string default_data_dir();

}  // namespace cyclostark
