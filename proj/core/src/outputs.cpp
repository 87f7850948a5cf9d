#include "stowage/bench/outputs.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>
#include <tuple>

#include "stowage/errors.hpp"

namespace stowage::bench {

namespace fs = std::filesystem;

namespace {

constexpr std::string_view kCurvesHeader =
    "run_id,scenario,algo,variant,seed,timestep,eval_mean_shifters,eval_mean_optime";
constexpr std::string_view kFinalsHeader =
    "scenario,algo,variant,n,mean_shifters,std_shifters,mean_optime,std_optime";
constexpr std::string_view kBandHeader =
    "algo,timestep,n,mean_shifters,std_shifters,mean_optime,std_optime";

std::ofstream open_out(const fs::path& path) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write " + path.string());
  return out;
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) out.push_back(field);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

template <typename T>
T parse_field(const std::string& s, const fs::path& path) {
  T value{};
  const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc{} || end != s.data() + s.size()) {
    throw ConfigError(path.string() + ": bad numeric field '" + s + "'");
  }
  return value;
}

using RunKey = std::tuple<std::string, std::string, std::string, std::string>;

RunKey run_key(const CurveRow& r) { return {r.scenario, r.algo, r.variant, r.run_id}; }

}  // namespace

std::string PlotSeries::file_name() const { return "scenario_" + scenario + "_" + variant + ".csv"; }

std::string format_number(double x) {
  if (std::isnan(x)) return {};
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return {buf, res.ptr};
}

std::vector<CurveRow> final_rows(const std::vector<CurveRow>& rows) {
  std::vector<CurveRow> out;
  std::map<RunKey, std::size_t> index;
  for (const auto& r : rows) {
    const auto [it, fresh] = index.try_emplace(run_key(r), out.size());
    if (fresh) {
      out.push_back(r);
    } else if (r.timestep >= out[it->second].timestep) {
      out[it->second] = r;
    }
  }
  return out;
}

std::vector<MetricsRow> aggregate(const std::vector<CurveRow>& rows) {
  using GroupKey = std::tuple<std::string, std::string, std::string>;
  std::vector<GroupKey> order;
  std::map<GroupKey, std::pair<std::vector<double>, std::vector<double>>> values;
  for (const auto& f : final_rows(rows)) {
    GroupKey key{f.scenario, f.algo, f.variant};
    if (!values.contains(key)) order.push_back(key);
    auto& v = values[key];
    v.first.push_back(f.shifters);
    v.second.push_back(f.optime);
  }
  std::vector<MetricsRow> out;
  for (const auto& key : order) {
    const auto& v = values[key];
    out.push_back({std::get<0>(key), std::get<1>(key), std::get<2>(key), sample_moments(v.first),
                   sample_moments(v.second)});
  }
  return out;
}

std::vector<PlotSeries> plot_series(const std::vector<CurveRow>& rows) {
  using SeriesKey = std::pair<std::string, std::string>;
  std::vector<SeriesKey> series_order;
  std::map<SeriesKey, std::vector<std::string>> algo_order;
  std::map<std::tuple<std::string, std::string, std::string, long>,
           std::pair<std::vector<double>, std::vector<double>>>
      points;
  for (const auto& r : rows) {
    SeriesKey sk{r.scenario, r.variant};
    if (!algo_order.contains(sk)) series_order.push_back(sk);
    auto& algos = algo_order[sk];
    if (std::find(algos.begin(), algos.end(), r.algo) == algos.end()) algos.push_back(r.algo);
    auto& p = points[{r.scenario, r.variant, r.algo, r.timestep}];
    p.first.push_back(r.shifters);
    p.second.push_back(r.optime);
  }
  std::vector<PlotSeries> out;
  for (const auto& sk : series_order) {
    PlotSeries s{sk.first, sk.second, {}};
    for (const auto& algo : algo_order[sk]) {
      auto it = points.lower_bound({sk.first, sk.second, algo, std::numeric_limits<long>::min()});
      for (; it != points.end() && std::get<0>(it->first) == sk.first &&
             std::get<1>(it->first) == sk.second && std::get<2>(it->first) == algo;
           ++it) {
        s.rows.push_back({algo, std::get<3>(it->first), sample_moments(it->second.first),
                          sample_moments(it->second.second)});
      }
    }
    out.push_back(std::move(s));
  }
  return out;
}

void write_curves_csv(const std::vector<CurveRow>& rows, const fs::path& path) {
  std::ofstream out = open_out(path);
  out << kCurvesHeader << '\n';
  for (const auto& r : rows) {
    out << r.run_id << ',' << r.scenario << ',' << r.algo << ',' << r.variant << ',' << r.seed << ','
        << r.timestep << ',' << format_number(r.shifters) << ',' << format_number(r.optime) << '\n';
  }
}

std::vector<CurveRow> read_curves_csv(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read " + path.string());
  std::string line;
  if (!std::getline(in, line) || line != kCurvesHeader) {
    throw ConfigError(path.string() + ": not a curves.csv file (unexpected header)");
  }
  std::vector<CurveRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto f = split(line);
    if (f.size() != 8) throw ConfigError(path.string() + ": expected 8 fields in '" + line + "'");
    rows.push_back({f[0], f[1], f[2], f[3], parse_field<std::uint64_t>(f[4], path),
                    parse_field<long>(f[5], path), parse_field<double>(f[6], path),
                    parse_field<double>(f[7], path)});
  }
  return rows;
}

std::vector<CurveRow> read_curves_tree(const fs::path& dir) {
  if (!fs::is_directory(dir)) throw ConfigError(dir.string() + " is not a directory");
  std::vector<fs::path> files;
  for (const auto& entry : fs::recursive_directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().filename() == "curves.csv") {
      files.push_back(entry.path());
    }
  }
  std::sort(files.begin(), files.end());
  if (files.empty()) throw ConfigError("no curves.csv found under " + dir.string());
  std::vector<CurveRow> rows;
  for (const auto& f : files) {
    auto part = read_curves_csv(f);
    rows.insert(rows.end(), part.begin(), part.end());
  }
  return rows;
}

void write_finals_csv(const std::vector<MetricsRow>& rows, const fs::path& path) {
  std::ofstream out = open_out(path);
  out << kFinalsHeader << '\n';
  for (const auto& r : rows) {
    out << r.scenario << ',' << r.algo << ',' << r.variant << ',' << r.shifters.n << ','
        << format_number(r.shifters.mean) << ',' << format_number(r.shifters.std) << ','
        << format_number(r.optime.mean) << ',' << format_number(r.optime.std) << '\n';
  }
}

void write_plotdata(const std::vector<PlotSeries>& series, const fs::path& dir) {
  fs::create_directories(dir);
  for (const auto& s : series) {
    std::ofstream out = open_out(dir / s.file_name());
    out << kBandHeader << '\n';
    for (const auto& r : s.rows) {
      out << r.algo << ',' << r.timestep << ',' << r.shifters.n << ','
          << format_number(r.shifters.mean) << ',' << format_number(r.shifters.std) << ','
          << format_number(r.optime.mean) << ',' << format_number(r.optime.std) << '\n';
    }
  }
}

void emit_outputs(const std::vector<CurveRow>& rows, const fs::path& out_dir) {
  write_curves_csv(rows, out_dir / "curves.csv");
  write_finals_csv(aggregate(rows), out_dir / "finals.csv");
  write_plotdata(plot_series(rows), out_dir / "plotdata");
}

}  // namespace stowage::bench
