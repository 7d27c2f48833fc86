#include "cyclostark/fixtures.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <regex>
#include <sstream>

#include "cyclostark/arith.hpp"

#ifndef CYCLOSTARK_FIXTURES_DIR
#define CYCLOSTARK_FIXTURES_DIR "fixtures"
#endif
#ifndef CYCLOSTARK_DATA_DIR
#define CYCLOSTARK_DATA_DIR "data"
#endif

namespace cyclostark {

namespace {

std::vector<long> split_dash(const std::string& s) {
  std::vector<long> out;
  std::stringstream ss(s);
  std::string part;
  while (std::getline(ss, part, '-')) out.push_back(std::stol(part));
  return out;
}

std::string join_dash(const std::vector<long>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "-" : "") + std::to_string(v[i]);
  return s;
}

}  // namespace

std::string FixtureFile::field_key() const { return "m" + std::to_string(conductor) + "_H" + join_dash(subgroup_gens); }

std::vector<FixtureFile> discover_fixtures(const std::string& dir) {
  namespace fs = std::filesystem;
  if (!fs::is_directory(dir)) throw InputError("fixture directory not found: " + dir);
  static const std::regex pattern(R"(field_m(\d+)_H([\d-]+)_(?:T([\d-]+)_)?(units|selmer)\.json)");
  std::vector<FixtureFile> out;
  for (const auto& e : fs::directory_iterator(dir)) {
    if (!e.is_regular_file()) continue;
    const std::string name = e.path().filename().string();
    std::smatch m;
    if (!std::regex_match(name, m, pattern)) continue;
    FixtureFile f;
    f.path = e.path().string();
    f.name = name;
    f.conductor = std::stol(m[1]);
    f.subgroup_gens = split_dash(m[2]);
    if (m[3].matched) f.t = split_dash(m[3]);
    f.kind = m[4];
    out.push_back(f);
  }
  std::sort(out.begin(), out.end(), [](const FixtureFile& a, const FixtureFile& b) { return a.name < b.name; });
  return out;
}

std::vector<FieldFixtures> group_fixtures(const std::vector<FixtureFile>& files) {
  std::map<std::pair<long, std::string>, FieldFixtures> by;
  for (const auto& f : files) {
    auto& ff = by[{f.conductor, f.field_key()}];
    ff.key = f.field_key();
    ff.conductor = f.conductor;
    ff.subgroup_gens = f.subgroup_gens;
    if (f.kind == "units") {
      if (f.t.empty())
        ff.units = f.path;
      else
        ff.t_units[f.t] = f.path;
    } else {
      ff.selmer[f.t] = f.path;
    }
  }
  std::vector<FieldFixtures> out;
  for (auto& [k, v] : by) out.push_back(std::move(v));
  return out;
}

std::vector<FieldFixtures> load_fixture_index(const std::string& dir) { return group_fixtures(discover_fixtures(dir)); }

std::string default_fixture_dir() {
  if (const char* e = std::getenv("CYCLOSTARK_FIXTURES")) return e;
  return CYCLOSTARK_FIXTURES_DIR;
}

std::string default_data_dir() {
  if (const char* e = std::getenv("CYCLOSTARK_DATA")) return e;
  return CYCLOSTARK_DATA_DIR;
}

}  // namespace cyclostark
