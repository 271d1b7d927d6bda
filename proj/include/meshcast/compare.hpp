#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "meshcast/serialize.hpp"

namespace meshcast {

// Parses a metrics CSV. Throws EmptyInput for an empty file or a header with
// no rows, SchemaMismatch for a header other than kMetricsHeader.
std::vector<MetricsRow> parse_metrics_csv(const std::string& text);
std::vector<MetricsRow> read_metrics_csv(const std::filesystem::path& path);

struct MetricComparison {
  std::string metric;
  double mean_a = 0.0;
  double mean_b = 0.0;
  // mean_b / mean_a; 1 when both means are zero.
  double ratio = 1.0;
  // Fraction of paired rows where B is strictly better (higher throughput,
  // lower everything else). Rows pair by position when both files list the
  // same (C, delta) sequence, otherwise on (scenario_id, C, delta). Empty
  // when nothing pairs.
  std::optional<double> win_rate_b;
};

std::vector<MetricComparison> compare_metrics(const std::vector<MetricsRow>& a, const std::vector<MetricsRow>& b);

// "metric,mean_a,mean_b,ratio,win_rate_b" table.
std::string format_comparison(const std::vector<MetricComparison>& rows);

}  // namespace meshcast
