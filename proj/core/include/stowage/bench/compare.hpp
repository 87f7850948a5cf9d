#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "stowage/bench/outputs.hpp"
#include "stowage/bench/stats.hpp"

namespace stowage::bench {

enum class Kpi { kShifters, kOptime };

// One (scenario, algorithm, KPI) line of the side-by-side comparison of two
// result sets, e.g. SPGE-MC (a) against SPAEC (b). Both KPIs are
// lower-is-better, so a significant negative diff favours a.
struct ComparisonRow {
  std::string scenario;
  std::string algo;
  Kpi kpi = Kpi::kShifters;
  SampleMoments a;
  SampleMoments b;
  double diff = 0.0;  // mean(a) - mean(b)
  WelchResult test;

  bool significant() const noexcept { return test.significant(); }
  // "a", "b" or "" when the difference is not significant.
  std::string favours() const;
};

// Pairs the final KPIs of both sets by (scenario, algorithm), ignoring the
// variant label. Groups missing from either side are skipped; rows come in
// the order of `a`, shifters before operation time.
std::vector<ComparisonRow> compare_variants(const std::vector<CurveRow>& a,
                                            const std::vector<CurveRow>& b);

// "4.2 (2.25)": mean to one decimal, sample std to two.
std::string format_value(const SampleMoments& m);

void write_comparison_csv(const std::vector<ComparisonRow>& rows, const std::filesystem::path& path);

}  // namespace stowage::bench
