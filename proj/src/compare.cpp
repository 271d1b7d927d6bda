#include "meshcast/compare.hpp"

#include <fstream>
#include <functional>
#include <limits>
#include <map>
#include <sstream>
#include <tuple>

#include "meshcast/error.hpp"

namespace meshcast {

namespace {

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, ',')) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

template <typename T>
T parse_cell(const std::string& cell, std::size_t line_no) {
  std::istringstream in(cell);
  T value{};
  if (!(in >> value) || !(in >> std::ws).eof())
    throw Error(ErrorCode::SchemaMismatch, "line " + std::to_string(line_no) + ": bad value \"" + cell + "\"");
  return value;
}

}  // namespace

std::vector<MetricsRow> parse_metrics_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::vector<std::string> lines;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!line.empty()) lines.push_back(line);
  }
  if (lines.empty()) throw Error(ErrorCode::EmptyInput, "metrics CSV is empty");
  if (lines.front() != kMetricsHeader)
    throw Error(ErrorCode::SchemaMismatch, "unexpected header \"" + lines.front() + "\"");
  if (lines.size() == 1) throw Error(ErrorCode::EmptyInput, "metrics CSV has a header but no rows");

  std::vector<MetricsRow> rows;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto cells = split(lines[i]);
    if (cells.size() != 8)
      throw Error(ErrorCode::SchemaMismatch, "line " + std::to_string(i + 1) + ": expected 8 columns");
    MetricsRow r;
    r.scenario_id = cells[0];
    r.algorithm = cells[1];
    r.channels = parse_cell<int>(cells[2], i + 1);
    r.delta = parse_cell<double>(cells[3], i + 1);
    r.throughput = parse_cell<double>(cells[4], i + 1);
    r.avg_delay = parse_cell<double>(cells[5], i + 1);
    r.conflict_losses = parse_cell<long>(cells[6], i + 1);
    r.relay_count = parse_cell<std::size_t>(cells[7], i + 1);
    rows.push_back(std::move(r));
  }
  return rows;
}

std::vector<MetricsRow> read_metrics_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_metrics_csv(buf.str());
  } catch (const Error& e) {
    throw Error(e.code(), path.string() + ": " + e.detail());
  }
}

std::vector<MetricComparison> compare_metrics(const std::vector<MetricsRow>& a, const std::vector<MetricsRow>& b) {
  if (a.empty() || b.empty()) throw Error(ErrorCode::EmptyInput, "nothing to compare");
  struct Metric {
    const char* name;
    std::function<double(const MetricsRow&)> get;
    bool higher_is_better;
  };
  const Metric metrics[] = {
      {"throughput", [](const MetricsRow& r) { return r.throughput; }, true},
      {"avg_delay", [](const MetricsRow& r) { return r.avg_delay; }, false},
      {"conflict_losses", [](const MetricsRow& r) { return static_cast<double>(r.conflict_losses); }, false},
      {"relay_count", [](const MetricsRow& r) { return static_cast<double>(r.relay_count); }, false},
  };
  using Key = std::tuple<std::string, int, double>;
  std::map<Key, const MetricsRow*> by_key;
  for (const auto& r : b) by_key.emplace(Key{r.scenario_id, r.channels, r.delta}, &r);

  bool positional = a.size() == b.size();
  for (std::size_t i = 0; positional && i < a.size(); ++i)
    positional = a[i].channels == b[i].channels && a[i].delta == b[i].delta;

  std::vector<MetricComparison> out;
  for (const auto& m : metrics) {
    MetricComparison cmp;
    cmp.metric = m.name;
    for (const auto& r : a) cmp.mean_a += m.get(r);
    for (const auto& r : b) cmp.mean_b += m.get(r);
    cmp.mean_a /= static_cast<double>(a.size());
    cmp.mean_b /= static_cast<double>(b.size());
    if (cmp.mean_a == 0.0) {
      cmp.ratio = cmp.mean_b == 0.0 ? 1.0 : std::numeric_limits<double>::infinity();
    } else {
      cmp.ratio = cmp.mean_b / cmp.mean_a;
    }
    std::size_t pairs = 0, wins = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
      const MetricsRow* other = nullptr;
      if (positional) {
        other = &b[i];
      } else if (const auto it = by_key.find(Key{a[i].scenario_id, a[i].channels, a[i].delta}); it != by_key.end()) {
        other = it->second;
      }
      if (other == nullptr) continue;
      ++pairs;
      const double va = m.get(a[i]), vb = m.get(*other);
      if (m.higher_is_better ? vb > va : vb < va) ++wins;
    }
    if (pairs > 0) cmp.win_rate_b = static_cast<double>(wins) / static_cast<double>(pairs);
    out.push_back(cmp);
  }
  return out;
}

std::string format_comparison(const std::vector<MetricComparison>& rows) {
  std::ostringstream out;
  out.precision(10);
  out << "metric,mean_a,mean_b,ratio,win_rate_b\n";
  for (const auto& r : rows) {
    out << r.metric << ',' << r.mean_a << ',' << r.mean_b << ',' << r.ratio << ',';
    if (r.win_rate_b) out << *r.win_rate_b;
    out << '\n';
  }
  return out.str();
}

}  // namespace meshcast
