#include "atomlight/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "atomlight/errors.hpp"
#include "atomlight/observables.hpp"

namespace atomlight {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

int RunOutput::status() const { return (record.failure || !record.converged) ? 1 : 0; }

namespace {

const char* kManifest = "manifest.json";

void write_text(const fs::path& file, const std::string& text) {
  std::ofstream out(file, std::ios::binary | std::ios::trunc);
  out << text;
  out.close();
  if (!out) throw IoError("cannot write " + file.string());
}

// Column-major input, one header row.
void write_table(const fs::path& file, const std::vector<std::string>& header,
                 const std::vector<std::vector<double>>& columns) {
  std::string text;
  for (std::size_t c = 0; c < header.size(); ++c) text += (c ? "," : "") + header[c];
  text += '\n';
  const std::size_t rows = columns.empty() ? 0 : columns.front().size();
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < columns.size(); ++c) {
      if (c) text += ',';
      text += format_number(columns[c][r]);
    }
    text += '\n';
  }
  write_text(file, text);
}

void summarize_state(json& s, const CondensateState& state, const FieldState& fields, const ModelParams& p) {
  const auto rho = state.density();
  const auto lat = measure_lattice_spacing(rho, state.dx());
  s["reflectivity"] = reflectivity(fields);
  s["contrast"] = density_contrast(rho);
  s["modulation"] = lat.modulation;
  s["lattice_found"] = lat.found;
  s["lattice_spacing"] = lat.found ? lat.spacing : 0.0;
  s["lattice_spacing_homogeneous"] = lattice_spacing(p);
  if (p.zeta > 0.0) s["critical_intensity_closed_form"] = critical_intensity_closed_form(p);
}

std::vector<double> threshold_column(const std::vector<ThresholdPoint>& pts, std::size_t b, std::size_t e,
                                     double ThresholdPoint::*field) {
  std::vector<double> out;
  for (std::size_t i = b; i < e; ++i) out.push_back(pts[i].*field);
  return out;
}

void write_threshold(const fs::path& file, const std::vector<ThresholdPoint>& pts, std::size_t b, std::size_t e) {
  std::vector<double> conv;
  for (std::size_t i = b; i < e; ++i) conv.push_back(pts[i].converged ? 1.0 : 0.0);
  write_table(file, {"intensity", "reflectivity", "contrast", "modulation", "converged"},
              {threshold_column(pts, b, e, &ThresholdPoint::intensity),
               threshold_column(pts, b, e, &ThresholdPoint::reflectivity),
               threshold_column(pts, b, e, &ThresholdPoint::contrast),
               threshold_column(pts, b, e, &ThresholdPoint::modulation), conv});
}

RunOutput run_single(const RunConfig& config);

}  // namespace

void preflight_output_dir(const fs::path& dir) {
  std::error_code ec;
  if (fs::exists(dir, ec) && !fs::is_directory(dir, ec))
    throw IoError("output " + dir.string() + " exists and is not a directory");
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create output directory " + dir.string() + ": " + ec.message());

  if (fs::exists(dir / kManifest)) {
    // Clear what the previous run wrote, nothing else.
    json old;
    try {
      old = read_manifest(dir);
    } catch (const std::exception& e) {
      throw IoError("unreadable manifest in " + dir.string() + ": " + e.what());
    }
    for (const auto& f : old.value("files", json::array())) {
      const fs::path name = f.get<std::string>();
      if (name.empty() || name.is_absolute() || name.has_parent_path() || name == "." || name == "..")
        throw IoError("manifest in " + dir.string() + " lists a bad file name");
      fs::remove_all(dir / name, ec);
    }
    fs::remove(dir / kManifest, ec);
  } else if (!fs::is_empty(dir, ec)) {
    throw IoError("output directory " + dir.string() + " is not empty and holds no earlier run");
  }

  const fs::path probe = dir / ".write_probe";
  {
    std::ofstream out(probe);
    out << "probe";
    if (!out) throw IoError("output directory " + dir.string() + " is not writable");
  }
  fs::remove(probe, ec);
}

RunOutput execute(const RunConfig& config) {
  validate_config(config);
  const auto& p = config.params;
  const auto& o = config.solver;
  RunOutput out;
  try {
    switch (config.mode) {
      case RunMode::ground_state: {
        auto gs = ground_state(p, o);
        summarize_state(out.summary, gs.state, gs.fields, p);
        out.summary["mu"] = gs.record.mu;
        out.summary["residual"] = gs.record.residual;
        out.record = std::move(gs.record);
        break;
      }
      case RunMode::spectrum: {
        auto gs = ground_state(p, o);
        summarize_state(out.summary, gs.state, gs.fields, p);
        out.summary["mu"] = gs.record.mu;
        out.summary["residual"] = gs.record.residual;
        SpectrumOptions so;
        so.q_cutoff = config.q_cutoff;
        const auto matrix = build_linearization_matrix(gs.state, gs.fields, p, so);
        out.record = std::move(gs.record);
        out.modes = diagonalize_and_classify(matrix);
        out.summary["k_eff"] = matrix.k_eff;
        out.summary["basis_size"] = matrix.modes();
        out.summary["max_growth_rate"] = max_growth_rate(out.modes);
        const auto gap = phonon_gap(out.modes, measure_lattice_spacing(gs.state.density(), gs.state.dx()));
        out.summary["phonon_gap_found"] = gap.found;
        out.summary["phonon_gap"] = gap.gap;
        out.summary["phonon_gap_q_max"] = gap.q_max;
        out.summary["phonon_gap_estimate"] = phonon_gap_estimate(p);
        if (!gap.found) out.notes.push_back("phonon gap: " + gap.reason);
        break;
      }
      case RunMode::quench: {
        out.record = quench_evolution(p, o);
        const auto& r = out.record;
        if (!r.times.empty()) {
          out.summary["final_reflectivity"] = r.reflectivity_series.back();
          out.summary["final_kinetic_energy"] = r.kinetic_series.back();
          out.summary["final_contrast"] = r.contrast_series.back();
          double sum = 0.0;
          std::size_t n = 0;
          for (std::size_t i = 0; i < r.times.size(); ++i)
            if (r.times[i] >= 0.5 * r.times.back()) sum += r.reflectivity_series[i], ++n;
          out.summary["late_mean_reflectivity"] = sum / static_cast<double>(n);
        }
        out.summary["max_norm_drift"] = r.max_norm_drift;
        break;
      }
      case RunMode::threshold_scan: {
        auto scan = threshold_scan(p, config.intensity_grid, o, config.threshold_tolerance);
        out.record.converged = true;
        for (const auto& pt : scan.curve) out.record.converged = out.record.converged && pt.converged;
        out.record.seed = o.seed;
        out.summary["threshold"] = scan.threshold;
        if (p.zeta > 0.0) {
          const double ic = critical_intensity_closed_form(p);
          out.summary["critical_intensity_closed_form"] = ic;
          out.summary["threshold_ratio"] = scan.threshold / ic;
        }
        out.scan = std::move(scan);
        break;
      }
      case RunMode::sweep:
        throw ConfigError("mode: execute runs single points, use run() for a sweep");
    }
  } catch (const NumericError& e) {
    out.record.failure = e.what();
    out.record.failed_step = e.step();
  } catch (const DomainError& e) {
    out.record.failure = e.what();
  }
  out.record.seed = o.seed;
  return out;
}

json write_outputs(const RunOutput& output, const RunConfig& config) {
  const fs::path dir = config.output_dir;
  const auto& rec = output.record;
  json files = json::array();

  if (!rec.times.empty()) {
    write_table(dir / "timeseries.csv", {"time", "reflectivity", "kinetic_energy", "contrast"},
                {rec.times, rec.reflectivity_series, rec.kinetic_series, rec.contrast_series});
    files.push_back("timeseries.csv");
  }

  json snaps = json::array();
  for (std::size_t i = 0; i < rec.snapshots.size(); ++i) {
    const auto& s = rec.snapshots[i];
    char name[32];
    std::snprintf(name, sizeof name, "snapshot_%03zu.csv", i);
    const std::size_t n = s.state.size();
    std::vector<double> x(n);
    for (std::size_t j = 0; j < n; ++j) x[j] = static_cast<double>(j) * s.state.dx();
    write_table(dir / name, {"x", "density", "intensity_left", "intensity_right", "intensity_total"},
                {x, s.state.density(), s.fields.box_intensity_left(), s.fields.box_intensity_right(),
                 s.fields.box_intensity_total()});
    files.push_back(name);
    snaps.push_back(json{{"file", name}, {"time", s.time}});
  }

  if (!output.modes.empty()) {
    std::vector<double> q, re, im;
    for (const auto& m : output.modes) {
      q.push_back(m.q_max);
      re.push_back(m.omega.real());
      im.push_back(m.omega.imag());
    }
    write_table(dir / "spectrum.csv", {"q_max", "re_omega", "im_omega"}, {q, re, im});
    files.push_back("spectrum.csv");
  }

  if (output.scan) {
    const auto& pts = output.scan->curve;
    const std::size_t grid = output.scan->grid_points;
    write_threshold(dir / "threshold.csv", pts, 0, grid);
    files.push_back("threshold.csv");
    if (pts.size() > grid) {
      write_threshold(dir / "bisection.csv", pts, grid, pts.size());
      files.push_back("bisection.csv");
    }
  }

  if (!output.sweep.empty()) {
    std::string text = "value,directory,status";
    const json& first = output.sweep.front().summary;
    for (const auto& [k, v] : first.items()) text += "," + k;
    text += '\n';
    for (const auto& pt : output.sweep) {
      text += format_number(pt.value) + "," + pt.directory + "," + std::to_string(pt.status);
      for (const auto& [k, v] : first.items()) {
        text += ',';
        const auto it = pt.summary.find(k);
        if (it == pt.summary.end()) continue;
        if (it->is_boolean()) text += it->get<bool>() ? "1" : "0";
        else if (it->is_number()) text += format_number(it->get<double>());
      }
      text += '\n';
    }
    write_text(dir / "sweep.csv", text);
    files.push_back("sweep.csv");
    for (const auto& pt : output.sweep) files.push_back(pt.directory);
  }

  json m;
  m["format"] = kManifestFormat;
  m["code_version"] = kCodeVersion;
  m["mode"] = to_string(config.mode);
  m["seed"] = config.solver.seed;
  m["status"] = output.status() == 0 ? "ok" : (rec.failure ? "numeric_failure" : "not_converged");
  m["converged"] = rec.converged;
  m["failure"] = rec.failure ? json(*rec.failure) : json(nullptr);
  m["failed_step"] = rec.failed_step;
  m["iterations"] = rec.iterations;
  m["relaxation_steps"] = rec.relaxation_steps;
  m["residual"] = rec.residual;
  m["mu"] = rec.mu;
  m["max_norm_drift"] = rec.max_norm_drift;
  m["warnings"] = rec.warnings;
  m["notes"] = output.notes;
  m["summary"] = output.summary;
  json cfg = json::object(), prov = json::object();
  for (const auto& k : config_keys()) {
    cfg[k.name] = config_value(config, k.name);
    const auto it = config.provenance.find(k.name);
    prov[k.name] = to_string(it == config.provenance.end() ? Source::default_value : it->second);
  }
  m["config"] = cfg;
  m["provenance"] = prov;
  m["snapshots"] = snaps;
  m["files"] = files;
  write_text(dir / kManifest, m.dump(2) + "\n");
  return m;
}

json read_manifest(const fs::path& dir) {
  std::ifstream in(dir / kManifest, std::ios::binary);
  if (!in) throw IoError("cannot read " + (dir / kManifest).string());
  std::stringstream ss;
  ss << in.rdbuf();
  json m = json::parse(ss.str());
  if (m.value("format", "") != kManifestFormat) throw IoError("not a run manifest: " + (dir / kManifest).string());
  return m;
}

RunConfig config_from_manifest(const json& manifest) {
  if (!manifest.contains("config") || !manifest["config"].is_object())
    throw ConfigError("manifest has no config echo");
  std::string text;
  for (const auto& [k, v] : manifest["config"].items()) {
    if (!v.is_string()) throw ConfigError("manifest config '" + k + "' is not a string");
    text += k + " = " + v.get<std::string>() + "\n";
  }
  return parse_config(text);
}

namespace {

RunOutput run_single(const RunConfig& config) {
  RunOutput out = execute(config);
  write_outputs(out, config);
  return out;
}

}  // namespace

int run(const RunConfig& config) {
  validate_config(config);
  preflight_output_dir(config.output_dir);
  if (config.mode != RunMode::sweep) return run_single(config).status();

  RunOutput out;
  out.record.converged = true;
  out.record.seed = config.solver.seed;
  for (std::size_t i = 0; i < config.sweep_values.size(); ++i) {
    const double v = config.sweep_values[i];
    char name[32];
    std::snprintf(name, sizeof name, "point_%03zu", i);
    RunConfig point = config;
    point.mode = config.sweep_mode;
    point.sweep_key.clear();
    point.sweep_values.clear();
    point.output_dir = (fs::path(config.output_dir) / name).string();
    apply_override(point, config.sweep_key + "=" + format_number(v));
    preflight_output_dir(point.output_dir);
    const auto res = run_single(point);
    out.sweep.push_back({v, name, res.status(), res.summary});
    out.record.converged = out.record.converged && res.status() == 0;
  }
  write_outputs(out, config);
  return out.status();
}

}  // namespace atomlight
