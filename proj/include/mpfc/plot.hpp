#pragma once

#include <string>
#include <vector>

#include "mpfc/predictive.hpp"

namespace mpfc {

/// Parsed "k,mean,ci_lo,ci_hi" table.
struct AggregateTable {
  std::vector<double> k;
  std::vector<double> mean;
  std::vector<double> ci_lo;
  std::vector<double> ci_hi;
};

/// Throws std::invalid_argument on a wrong header, malformed rows or no rows.
AggregateTable parse_aggregate_csv(const std::string& text);

struct SeriesStyle {
  std::string colour;
  bool dashed = false;
};

/// FLC green, MPFC orange, MPC purple; decentralised variants dashed.
SeriesStyle style_for(Architecture a);

struct PlotSeries {
  std::string label;
  Architecture architecture = Architecture::PretunedFlc;
  AggregateTable data;
};

struct PlotOptions {
  std::string title;
  std::string x_label = "k";
  std::string y_label = "J(k)";
  int width = 800;
  int height = 480;
};

/// Line plot with shaded CI bands. Deterministic output.
std::string render_line_plot(const std::vector<PlotSeries>& series, const PlotOptions& options);

/// Parsed sweep table ("value,x,mean_j,ci_half,...").
struct SweepTable {
  std::vector<std::string> value;
  std::vector<double> x;
  std::vector<double> mean;
  std::vector<double> half;
};

SweepTable parse_sweep_csv(const std::string& text);

/// Means with error bars and the least-squares trend line.
std::string render_sweep_plot(const SweepTable& table, Architecture architecture, const PlotOptions& options);

}  // namespace mpfc
