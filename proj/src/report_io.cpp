#include "dampedwave/report_io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

namespace dampedwave {

namespace fs = std::filesystem;

std::string format_double(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

SimulateConfig SimulateConfig::from_json(const nlohmann::json& j) {
  SimulateConfig cfg;
  try {
    cfg.mp.pc.N = j.at("N").get<int>();
    cfg.mp.pc.mu = j.at("mu").get<double>();
    cfg.mp.pc.p = j.at("p").get<double>();
    cfg.mp.eps = j.at("eps").get<double>();
    cfg.mp.r0 = j.at("r0").get<double>();
    cfg.mp.amp_f = j.at("amp_f").get<double>();
    cfg.mp.amp_g = j.at("amp_g").get<double>();
    cfg.T_max = j.at("T_max").get<double>();
    cfg.dr = j.value("dr", 0.0);
    cfg.cfl = j.value("cfl", 0.9);
    cfg.blow_threshold = j.value("blow_threshold", 1e6);
    cfg.snapshot_every = j.value("snapshot_every", 0);
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput(std::string("simulate config: ") + e.what());
  }
  cfg.mp.validate();
  return cfg;
}

nlohmann::json SimulateConfig::to_json() const {
  return {
      {"N", mp.pc.N},
      {"mu", mp.pc.mu},
      {"p", mp.pc.p},
      {"eps", mp.eps},
      {"r0", mp.r0},
      {"amp_f", mp.amp_f},
      {"amp_g", mp.amp_g},
      {"T_max", T_max},
      {"dr", dr},
      {"cfl", cfl},
      {"blow_threshold", blow_threshold},
      {"snapshot_every", snapshot_every},
  };
}

void write_text_file(const fs::path& path, const std::string& body) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open for writing: " + path.string());
  out << body;
  if (!out) throw IoError("write failed: " + path.string());
}

std::string read_text_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open for reading: " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

nlohmann::json read_json_file(const fs::path& path) {
  try {
    return nlohmann::json::parse(read_text_file(path));
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput("bad JSON in " + path.string() + ": " + e.what());
  }
}

void write_run_directory(const fs::path& dir, const SimulateConfig& cfg,
                         const RadialGrid& grid, const BlowupReport& report,
                         const std::vector<Snapshot>& snapshots) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create " + dir.string() + ": " + ec.message());

  nlohmann::json j;
  j["config"] = cfg.to_json();
  j["grid"] = {{"dr", grid.dr}, {"n_points", grid.n_points}};
  j["status"] = to_string(report.status);
  j["T_est"] = report.T_est;
  j["T_refined"] = report.T_refined;
  j["peak_amplitude"] = report.peak_amplitude;
  j["diagnostics"] = report.diagnostics;
  write_text_file(dir / "report.json", j.dump(2) + "\n");

  if (!snapshots.empty()) {
    std::string csv = "t,r,u\n";
    for (const Snapshot& s : snapshots) {
      const std::string ts = format_double(s.t);
      for (std::size_t i = 0; i < s.u.size(); ++i) {
        csv += ts;
        csv += ',';
        csv += format_double(grid.r(static_cast<int>(i)));
        csv += ',';
        csv += format_double(s.u[i]);
        csv += '\n';
      }
    }
    write_text_file(dir / "snapshots.csv", csv);
  }
}

RunDirectory load_run_directory(const fs::path& dir) {
  RunDirectory run;
  const nlohmann::json j = read_json_file(dir / "report.json");
  run.cfg = SimulateConfig::from_json(j.at("config"));
  run.grid.dr = j.at("grid").at("dr").get<double>();
  run.grid.n_points = j.at("grid").at("n_points").get<int>();
  const std::string status = j.at("status").get<std::string>();
  run.report.status = status == "BlowupDetected"  ? RunStatus::BlowupDetected
                      : status == "Diverged"      ? RunStatus::Diverged
                                                  : RunStatus::CompletedNoBlowup;
  run.report.T_est = j.at("T_est").get<double>();
  run.report.T_refined = j.at("T_refined").get<double>();
  run.report.peak_amplitude = j.at("peak_amplitude").get<double>();

  const fs::path csv_path = dir / "snapshots.csv";
  if (fs::exists(csv_path)) {
    std::ifstream in(csv_path);
    if (!in) throw IoError("cannot open " + csv_path.string());
    std::string line;
    std::getline(in, line);  // header
    Snapshot current;
    bool open_snapshot = false;
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      const std::size_t c1 = line.find(',');
      const std::size_t c2 = line.find(',', c1 + 1);
      if (c1 == std::string::npos || c2 == std::string::npos) {
        throw InvalidInput("bad snapshots.csv row: " + line);
      }
      const double t = std::stod(line.substr(0, c1));
      const double u = std::stod(line.substr(c2 + 1));
      if (!open_snapshot || t != current.t) {
        if (open_snapshot) run.snapshots.push_back(std::move(current));
        current = Snapshot{t, {}};
        current.u.reserve(run.grid.n_points);
        open_snapshot = true;
      }
      current.u.push_back(u);
    }
    if (open_snapshot) run.snapshots.push_back(std::move(current));
    for (const Snapshot& s : run.snapshots) {
      if (static_cast<int>(s.u.size()) != run.grid.n_points) {
        throw InvalidInput("snapshots.csv row count does not match the grid");
      }
    }
  }
  return run;
}

nlohmann::json record_to_json(const LifespanRecord& rec) {
  return {
      {"eps", rec.eps},
      {"T_est", rec.T_est},
      {"T_refined", rec.T_refined},
      {"status", to_string(rec.status)},
      {"wall_time", rec.wall_time},
  };
}

LifespanRecord record_from_json(const nlohmann::json& j) {
  LifespanRecord rec;
  try {
    rec.eps = j.at("eps").get<double>();
    rec.T_est = j.at("T_est").get<double>();
    rec.T_refined = j.at("T_refined").get<double>();
    rec.wall_time = j.value("wall_time", 0.0);
    const std::string status = j.at("status").get<std::string>();
    rec.status = status == "BlowupDetected"  ? RunStatus::BlowupDetected
                 : status == "Diverged"      ? RunStatus::Diverged
                                             : RunStatus::CompletedNoBlowup;
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput(std::string("bad record JSON: ") + e.what());
  }
  return rec;
}

}  // namespace dampedwave
