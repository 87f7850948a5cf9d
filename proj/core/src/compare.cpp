#include "stowage/bench/compare.hpp"

#include <cstdio>
#include <fstream>
#include <map>
#include <tuple>

#include "stowage/errors.hpp"

namespace stowage::bench {

namespace {

using GroupKey = std::pair<std::string, std::string>;

struct Finals {
  std::vector<double> shifters;
  std::vector<double> optime;
};

std::map<GroupKey, Finals> group_finals(const std::vector<CurveRow>& rows,
                                        std::vector<GroupKey>* order) {
  std::map<GroupKey, Finals> out;
  for (const auto& f : final_rows(rows)) {
    GroupKey key{f.scenario, f.algo};
    if (order && !out.contains(key)) order->push_back(key);
    out[key].shifters.push_back(f.shifters);
    out[key].optime.push_back(f.optime);
  }
  return out;
}

}  // namespace

std::string ComparisonRow::favours() const {
  if (!significant()) return {};
  return diff < 0 ? "a" : "b";
}

std::vector<ComparisonRow> compare_variants(const std::vector<CurveRow>& a,
                                            const std::vector<CurveRow>& b) {
  std::vector<GroupKey> order;
  const auto fa = group_finals(a, &order);
  const auto fb = group_finals(b, nullptr);
  std::vector<ComparisonRow> out;
  for (const auto& key : order) {
    const auto other = fb.find(key);
    if (other == fb.end()) continue;
    const Finals& x = fa.at(key);
    const Finals& y = other->second;
    for (Kpi kpi : {Kpi::kShifters, Kpi::kOptime}) {
      const auto& xs = kpi == Kpi::kShifters ? x.shifters : x.optime;
      const auto& ys = kpi == Kpi::kShifters ? y.shifters : y.optime;
      ComparisonRow row;
      row.scenario = key.first;
      row.algo = key.second;
      row.kpi = kpi;
      row.a = sample_moments(xs);
      row.b = sample_moments(ys);
      row.diff = row.a.mean - row.b.mean;
      row.test = welch_t_test(xs, ys);
      out.push_back(std::move(row));
    }
  }
  return out;
}

std::string format_value(const SampleMoments& m) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "%.1f (%.2f)", m.mean, m.std);
  return buf;
}

void write_comparison_csv(const std::vector<ComparisonRow>& rows, const std::filesystem::path& path) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write " + path.string());
  out << "scenario,algo,kpi,a,b,diff,a_mean,a_std,b_mean,b_std,n_a,n_b,t,dof,p,significant,favours\n";
  for (const auto& r : rows) {
    char diff[32];
    std::snprintf(diff, sizeof diff, "%.1f", r.diff);
    out << r.scenario << ',' << r.algo << ',' << (r.kpi == Kpi::kShifters ? "shifters" : "optime")
        << ',' << format_value(r.a) << ',' << format_value(r.b) << ',' << diff << ','
        << format_number(r.a.mean) << ',' << format_number(r.a.std) << ','
        << format_number(r.b.mean) << ',' << format_number(r.b.std) << ',' << r.a.n << ','
        << r.b.n << ',' << format_number(r.test.t) << ',' << format_number(r.test.dof) << ','
        << format_number(r.test.p) << ',' << (r.significant() ? 1 : 0) << ',' << r.favours()
        << '\n';
  }
}

}  // namespace stowage::bench
