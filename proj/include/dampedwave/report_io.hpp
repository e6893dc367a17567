#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "dampedwave/sweep.hpp"
#include "dampedwave/wavesolver.hpp"

// File formats: simulation run directories (report.json + snapshots.csv),
// sweep record files, and the plain-text report emitters. All floating
// point is written in shortest round-trip form so reruns with the same
// inputs are byte-identical.

namespace dampedwave {

// Shortest decimal string that parses back to exactly x.
std::string format_double(double x);

struct SimulateConfig {
  ModelParams mp;
  double T_max = 5.0;
  double dr = 0.0;  // 0 selects r0/64
  double cfl = 0.9;
  double blow_threshold = 1e6;
  int snapshot_every = 0;

  double base_dr() const { return dr > 0.0 ? dr : mp.r0 / 64.0; }

  static SimulateConfig from_json(const nlohmann::json& j);
  nlohmann::json to_json() const;
};

struct RunDirectory {
  SimulateConfig cfg;
  RadialGrid grid;
  BlowupReport report;
  std::vector<Snapshot> snapshots;
};

// report.json (config echo, grid, status, times, diagnostics) plus
// snapshots.csv (t,r,u rows) when snapshots are present.
void write_run_directory(const std::filesystem::path& dir,
                         const SimulateConfig& cfg, const RadialGrid& grid,
                         const BlowupReport& report,
                         const std::vector<Snapshot>& snapshots);

RunDirectory load_run_directory(const std::filesystem::path& dir);

nlohmann::json record_to_json(const LifespanRecord& rec);
LifespanRecord record_from_json(const nlohmann::json& j);

void write_text_file(const std::filesystem::path& path, const std::string& body);
std::string read_text_file(const std::filesystem::path& path);
nlohmann::json read_json_file(const std::filesystem::path& path);

}  // namespace dampedwave
