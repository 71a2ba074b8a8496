#pragma once

#include <fstream>
#include <string>

#include <nlohmann/json.hpp>

#include "graphon/step_graphon.hpp"

namespace graphon {

inline nlohmann::ordered_json to_json(const StepGraphon& g) {
  nlohmann::ordered_json j;
  j["boundaries"] = std::vector<double>(g.boundaries.data(), g.boundaries.data() + g.boundaries.size());
  std::vector<std::vector<double>> rows;
  for (int i = 0; i < g.block_count(); ++i) {
    std::vector<double> row(static_cast<std::size_t>(g.block_count()));
    for (int k = 0; k < g.block_count(); ++k) row[static_cast<std::size_t>(k)] = g.values(i, k);
    rows.push_back(std::move(row));
  }
  j["values"] = rows;
  return j;
}

inline StepGraphon step_graphon_from_json(const nlohmann::json& j) {
  StepGraphon g;
  const auto& b = j.at("boundaries");
  const auto& v = j.at("values");
  g.boundaries.resize(static_cast<Eigen::Index>(b.size()));
  for (std::size_t i = 0; i < b.size(); ++i) {
    g.boundaries(static_cast<Eigen::Index>(i)) = b[i].get<double>();
  }
  const auto m = static_cast<Eigen::Index>(v.size());
  g.values.resize(m, m);
  for (Eigen::Index i = 0; i < m; ++i) {
    const auto& row = v[static_cast<std::size_t>(i)];
    if (static_cast<Eigen::Index>(row.size()) != m) {
      throw ParseError("ParseError: values row " + std::to_string(i) + " has wrong length");
    }
    for (Eigen::Index k = 0; k < m; ++k) {
      g.values(i, k) = row[static_cast<std::size_t>(k)].get<double>();
    }
  }
  validate(g);
  return g;
}

inline StepGraphon read_step_graphon(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("ParseError: cannot open '" + path + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError("ParseError: " + std::string(e.what()));
  }
  return step_graphon_from_json(j);
}

inline void write_step_graphon(const std::string& path, const StepGraphon& g) {
  std::ofstream out(path);
  if (!out) throw ParseError("ParseError: cannot open '" + path + "' for writing");
  out << to_json(g).dump(2) << '\n';
}

}  // namespace graphon
