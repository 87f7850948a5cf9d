#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "stowage/bench/stats.hpp"

namespace stowage::bench {

// One evaluation point of one training run: a row of curves.csv.
struct CurveRow {
  std::string run_id;
  std::string scenario;
  std::string algo;
  std::string variant;
  std::uint64_t seed = 0;
  long timestep = 0;
  double shifters = 0.0;
  double optime = 0.0;
};

// Final KPIs of every (scenario, algo, variant) group: a row of finals.csv.
struct MetricsRow {
  std::string scenario;
  std::string algo;
  std::string variant;
  SampleMoments shifters;
  SampleMoments optime;
};

// Mean and spread across runs at one timestep: a row of a plotdata file.
struct BandRow {
  std::string algo;
  long timestep = 0;
  SampleMoments shifters;
  SampleMoments optime;
};

struct PlotSeries {
  std::string scenario;
  std::string variant;
  std::vector<BandRow> rows;

  std::string file_name() const;  // scenario_<s>_<variant>.csv
};

// Shortest decimal that parses back to the same double; NaN becomes "".
std::string format_number(double x);

// The last row of every run, in first-appearance order of the runs.
std::vector<CurveRow> final_rows(const std::vector<CurveRow>& rows);

// Groups final rows by (scenario, algo, variant) in first-appearance order.
std::vector<MetricsRow> aggregate(const std::vector<CurveRow>& rows);

// One series per (scenario, variant), algorithms in first-appearance order,
// timesteps ascending.
std::vector<PlotSeries> plot_series(const std::vector<CurveRow>& rows);

void write_curves_csv(const std::vector<CurveRow>& rows, const std::filesystem::path& path);
std::vector<CurveRow> read_curves_csv(const std::filesystem::path& path);
// Every curves.csv below dir (dir itself included), visited in path order.
std::vector<CurveRow> read_curves_tree(const std::filesystem::path& dir);

void write_finals_csv(const std::vector<MetricsRow>& rows, const std::filesystem::path& path);
void write_plotdata(const std::vector<PlotSeries>& series, const std::filesystem::path& dir);

// curves.csv, finals.csv and plotdata/ under out_dir.
void emit_outputs(const std::vector<CurveRow>& rows, const std::filesystem::path& out_dir);

}  // namespace stowage::bench
