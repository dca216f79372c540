// CSV tables, versioned JSON summaries and SVG line plots.
#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "shrinkdim/enclosure.hpp"

namespace shrinkdim::cli {

using Json = nlohmann::ordered_json;

constexpr int kSchemaVersion = 1;

// Shortest round-trip decimal form; "inf"/"-inf"/"nan" for non-finite values.
std::string num(double v);

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  void add(std::vector<std::string> row);
  std::string csv() const;
  Json json() const;  // array of objects keyed by header
};

// Appends "<name>_lo" and "<name>_hi" columns.
void add_enclosure_columns(std::vector<std::string>& header, const std::string& name);
void add_enclosure_cells(std::vector<std::string>& row, const Enclosure& e);
Json enclosure_json(const Enclosure& e);

Json summary(const std::string& command);
std::string error_json(const std::string& code, const std::string& message);

struct Series {
  std::string label;
  std::vector<double> x, y;
};

// SVG 1.1 line plot with linear axes and a legend.
std::string svg_plot(const std::string& title, const std::string& xlabel, const std::string& ylabel,
                     const std::vector<Series>& series);

void write_text(const std::string& path, const std::string& text);

}  // namespace shrinkdim::cli
