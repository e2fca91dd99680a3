#include <cctype>
#include <map>

#include "wenomap/errors.hpp"
#include "wenomap/mappings.hpp"
#include "wenomap/stencil_tables.hpp"

namespace wenomap {
namespace {

struct Table6Row {
  double c2_left;
  int m1_left;
  double c2_right;
  int m1_right;
};

// PRM_{n,n} production parameters, n = r - 1, c1 = 1 on both sides.
const std::map<int, std::vector<Table6Row>>& table6_rows() {
  static const std::map<int, std::vector<Table6Row>> rows = {
      {2, {{7e7, 5, 3e6, 5}, {1e5, 4, 3e6, 4}}},
      {3, {{1e9, 5, 5e4, 6}, {6e5, 6, 6e7, 6}, {3e8, 6, 2e5, 6}}},
      {4, {{1e11, 5, 5e2, 5}, {3e4, 5, 3e3, 4}, {1e4, 5, 2e4, 4}, {5e7, 5, 5e2, 4}}},
  };
  return rows;
}

std::vector<MappingSpec> per_k(int r, MappingSpec (*make)(double)) {
  const StencilTables& t = load_tables(r);
  std::vector<MappingSpec> out;
  for (int k = 0; k < r; ++k) out.push_back(make(t.d[k]));
  return out;
}

}  // namespace

std::vector<MappingSpec> table6_specs(int r) {
  if (r == 5) throw ConfigError("PRM parameters are not tabulated for r=5");
  const auto& rows = table6_rows();
  auto it = rows.find(r);
  if (it == rows.end()) throw ConfigError("PRM parameters require r in {2,3,4}");
  const StencilTables& t = load_tables(r);
  const int n = r - 1;
  std::vector<MappingSpec> out;
  for (int k = 0; k < r; ++k) {
    const Table6Row& row = it->second[k];
    out.push_back(make_prm(t.d[k], n, n, 1, PrmBranch{1.0, row.c2_left, row.m1_left},
                           PrmBranch{1.0, row.c2_right, row.m1_right}));
  }
  return out;
}

std::vector<MappingSpec> table7_specs(Table7Variant v) {
  switch (v) {
    case Table7Variant::R322: {
      // c1 per side in the n1 = 1 PRM form with c2 = 0; the left value is
      // stored absorbed and converted back to mirrored-right units.
      const StencilTables& t = load_tables(3);
      const double left[3] = {30090.0, 1235.6790, 12970.7047};
      const double right[3] = {676.6666, 8335.0, 929.2592};
      std::vector<MappingSpec> out;
      for (int k = 0; k < 3; ++k) {
        const double dk = t.d[k];
        out.push_back(make_r(dk, 2, 2, right[k], left[k] * dk / (1.0 - dk)));
      }
      return out;
    }
    case Table7Variant::MimicPM:
      return {make_prm(0.6, 2, 2, 1, PrmBranch{26.0, 13.0, 2}, PrmBranch{40.0, 20.0, 2})};
    case Table7Variant::MimicRM:
      return {make_prm(0.6, 2, 2, 1, PrmBranch{1.0, 7500.0, 5}, PrmBranch{1000.0, 10000.0, 2})};
  }
  return {};
}

std::vector<std::string> preset_names() {
  return {"identity", "prm", "gm", "pm61", "ppm10", "ppm20", "ppm30", "ppm21", "ppm22", "ppm61",
          "ppm51", "ppm41", "ppm42", "ppm43", "ppm62", "ppm63", "im201", "im2", "rm260", "aim421e4", "r322"};
}

std::vector<MappingSpec> preset_specs(const std::string& name, int r) {
  const StencilTables& t = load_tables(r);
  if (name == "prm") return table6_specs(r);
  if (name == "identity") return per_k(r, make_identity);
  if (name == "gm") return per_k(r, make_gm);
  if (name == "r322") {
    if (r != 3) throw ConfigError("preset r322 is defined for r=3 only");
    return table7_specs(Table7Variant::R322);
  }
  std::vector<MappingSpec> out;
  auto each = [&](auto make) {
    for (int k = 0; k < r; ++k) out.push_back(make(t.d[k]));
    return out;
  };
  if (name == "pm61") return each([](double d) { return make_pm(d, 6); });
  if (name.size() == 5 && name.rfind("ppm", 0) == 0 && std::isdigit(static_cast<unsigned char>(name[3])) &&
      std::isdigit(static_cast<unsigned char>(name[4]))) {
    const int n = name[3] - '0';
    const int m = name[4] - '0';
    return each([n, m](double d) { return make_ppm(d, n, m); });
  }
  if (name == "im201") return each([](double d) { return make_im(d, 2, 0.1); });
  if (name == "im2") return each([](double d) { return make_im(d, 2, 1.0); });
  if (name == "rm260") return each([](double d) { return make_rm(d, 6, 2); });
  if (name == "aim421e4") return each([](double d) { return make_aim_adaptive(d, 4, 2, 1e4); });
  throw ConfigError("unknown mapping preset '" + name + "'");
}

}  // namespace wenomap
