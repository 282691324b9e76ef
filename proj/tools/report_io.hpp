#pragma once

#include <cmath>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "soaran/error.hpp"
#include "soaran/experiment.hpp"
#include "soaran/model.hpp"
#include "soaran/solver.hpp"

namespace soaran::cli {

using nlohmann::json;

inline std::string fmt9(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

// Rounds to 9 significant digits so JSON output matches the CSV precision.
inline json json9(double v) {
  if (!std::isfinite(v)) return nullptr;
  return std::strtod(fmt9(v).c_str(), nullptr);
}

inline constexpr const char* kResultsHeader =
    "scheme,load,utility_kind,total_utility,app_m_resource,"
    "app_m_resource_fraction,qoe_satisfied,flows_total,solve_ms,outer_iters";

inline std::string results_csv(const std::vector<CellResult>& rows) {
  std::ostringstream out;
  out << kResultsHeader << '\n';
  for (const CellResult& r : rows) {
    out << to_string(r.scheme) << ',' << fmt9(r.load) << ','
        << to_string(r.utility_kind) << ',';
    if (!r.ok) {
      // Failed cells keep their row; every metric carries the marker.
      out << "ERROR,ERROR,ERROR,ERROR,ERROR,ERROR,ERROR\n";
      continue;
    }
    out << fmt9(r.total_utility) << ',' << fmt9(r.app_m_resource) << ','
        << fmt9(r.app_m_fraction) << ',' << r.qoe_satisfied << ','
        << r.flows_total << ',' << (r.solve_ms ? fmt9(*r.solve_ms) : "NA")
        << ',' << (r.outer_iters ? std::to_string(*r.outer_iters) : "NA")
        << '\n';
  }
  return out.str();
}

inline json trace_record(const TraceRecord& t) {
  return json{{"outer", t.outer},
              {"t", json9(t.t)},
              {"utility", json9(t.utility)},
              {"barrier", json9(t.barrier)},
              {"gap_bound", json9(t.gap_bound)},
              {"inner_iters", t.inner_iters},
              {"stationarity", json9(t.stationarity)},
              {"status", std::string(to_string(t.status))}};
}

// One JSON object per line, one line per outer iteration of every solve.
inline std::string trace_jsonl(const std::vector<CellResult>& rows) {
  std::string out;
  for (const CellResult& r : rows) {
    for (const TraceRecord& t : r.trace) {
      json line = trace_record(t);
      line["scheme"] = std::string(to_string(r.scheme));
      line["load"] = json9(r.load);
      line["utility_kind"] = std::string(to_string(r.utility_kind));
      out += line.dump() + '\n';
    }
  }
  return out;
}

inline void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ConfigError("cannot write '" + path + "'");
  f << text;
  if (!f) throw ConfigError("write failed for '" + path + "'");
}

// {"capacities": [...], "lower": [[...]], "upper": [[...]], "coeff": [[...]],
//  "utility": "linear" | "log"}
inline ProblemInstance instance_from_json(const json& doc) {
  try {
    auto matrix = [&](const char* key) {
      const auto& rows = doc.at(key);
      const std::size_t I = rows.size();
      const std::size_t K = I ? rows.at(0).size() : 0;
      Matrix m(I, K);
      for (std::size_t i = 0; i < I; ++i) {
        if (rows.at(i).size() != K) {
          throw DimensionMismatch(std::string("instance: ragged '") + key + "'");
        }
        for (std::size_t k = 0; k < K; ++k) m(i, k) = rows[i][k].get<double>();
      }
      return m;
    };
    return ProblemInstance(doc.at("capacities").get<std::vector<double>>(),
                           matrix("lower"), matrix("upper"), matrix("coeff"),
                           parse_utility_kind(doc.value("utility", "linear")));
  } catch (const json::exception& e) {
    throw ConfigError(std::string("instance: ") + e.what());
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    // A malformed instance is bad input, not a solver failure.
    throw ConfigError(std::string("instance: ") + e.what());
  }
}

inline ProblemInstance load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open instance file '" + path + "'");
  try {
    return instance_from_json(json::parse(in));
  } catch (const json::parse_error& e) {
    throw ConfigError("instance file '" + path + "': " + e.what());
  }
}

// Default single-solve instance: one element, one app, B = 10, box [2, 8].
inline ProblemInstance trivial_instance() {
  return ProblemInstance({10.0}, Matrix{{2.0}}, Matrix{{8.0}}, Matrix{{1.0}},
                         UtilityKind::linear);
}

}  // namespace soaran::cli
