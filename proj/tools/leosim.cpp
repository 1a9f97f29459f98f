// leosim command-line front end.
//
//   leosim run <scenario.toml | preset> --out DIR [--update-interval S] [--duration S] [--tle FILE] [--force]
//   leosim generate (--spec FILE | --planes P --sats-per-plane S ...) [--time T] [--out FILE]
//
// Exit status: 0 success, 1 bad input, 2 runtime failure.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "leosim/presets.hpp"
#include "leosim/simulation.hpp"

namespace fs = std::filesystem;
using namespace leosim;

namespace {

constexpr int kExitInput = 1;
constexpr int kExitRuntime = 2;

struct RunOptions {
  std::string scenario;
  std::string out_dir;
  std::optional<double> update_interval_s;
  std::optional<double> duration_s;
  std::string tle;
  bool force = false;
};

struct GenerateOptions {
  std::string spec_file;
  ConstellationSpec spec;
  double time_s = 0.0;
  std::string out = "-";
};

Scenario resolve_scenario(const std::string& arg) {
  if (fs::is_regular_file(arg)) return load_scenario(arg);
  if (auto sc = preset(arg)) return *sc;
  std::string names;
  for (auto n : kPresetNames) names += "\n  " + std::string(n);
  throw InputError("'" + arg + "' is neither a scenario file nor a preset; presets:" + names);
}

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
  if (!out) throw Error("cannot write " + path.string());
}

int do_run(const RunOptions& o) {
  Scenario sc = resolve_scenario(o.scenario);
  if (o.update_interval_s) sc.update_interval_s = *o.update_interval_s;
  if (o.duration_s) sc.duration_s = *o.duration_s;
  if (!o.tle.empty()) {
    TleSource src;
    if (const auto* old = std::get_if<TleSource>(&sc.constellation)) src = *old;
    src.path = fs::absolute(o.tle).lexically_normal().string();
    sc.constellation = src;
  }
  if (sc.uses_tle() && std::get<TleSource>(sc.constellation).path.empty())
    throw InputError("scenario '" + sc.name + "' needs a TLE catalogue; pass --tle FILE");
  sc.validate();

  const fs::path out(o.out_dir);
  if (fs::exists(out) && !(fs::is_directory(out) && fs::is_empty(out)) && !o.force)
    throw InputError("output directory " + out.string() + " already exists; use --force to overwrite");
  fs::create_directories(out);

  const RttTrace trace = run(sc);
  std::ostringstream csv, summary;
  write_trace_csv(csv, trace);
  write_summary_csv(summary, trace.summary);
  write_file(out / "trace.csv", csv.str());
  write_file(out / "summary.csv", summary.str());
  write_file(out / "scenario.toml", to_toml(sc));

  const auto& s = trace.summary;
  std::cout << sc.name << " [" << trace.scenario_digest << "]: " << s.samples << " pings, " << s.outages
            << " outages";
  if (s.mean_ms) std::cout << ", mean " << detail::fixed(*s.mean_ms, 3) << " ms";
  std::cout << "\n";
  return 0;
}

int do_generate(GenerateOptions o) {
  if (!o.spec_file.empty()) {
    const Scenario sc = load_scenario(o.spec_file);
    const auto* spec = std::get_if<ConstellationSpec>(&sc.constellation);
    if (spec == nullptr) throw InputError("generate needs a generated constellation, not a TLE catalogue");
    o.spec = *spec;
  }
  o.spec.validate();
  if (!(o.time_s >= 0.0)) throw InputError("--time must be >= 0");
  const TwoBodyPropagator prop(generate(o.spec));

  std::ostringstream csv;
  csv << "index,plane,slot,lat_deg,lon_deg,alt_km\n";
  for (int i = 0; i < o.spec.total(); ++i) {
    const PlaneSlot ps = plane_slot(SatelliteId{i}, o.spec);
    const GeodeticCoord g = cartesian_to_geodetic(prop.position_ecef(static_cast<std::size_t>(i), o.time_s));
    csv << i << ',' << ps.plane << ',' << ps.slot << ',' << detail::fixed(g.latitude_deg, 6) << ','
        << detail::fixed(g.longitude_deg, 6) << ',' << detail::fixed(g.altitude_km, 6) << '\n';
  }
  if (o.out == "-") std::cout << csv.str();
  else write_file(o.out, csv.str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"LEO constellation latency simulator"};
  app.set_version_flag("--version", std::string("leosim ") + LEOSIM_VERSION);
  app.require_subcommand(1);

  RunOptions run_opts;
  auto* run_cmd = app.add_subcommand("run", "Simulate a scenario and write trace.csv, summary.csv, scenario.toml");
  run_cmd->add_option("scenario", run_opts.scenario, "Scenario TOML file or preset name")->required();
  run_cmd->add_option("--out", run_opts.out_dir, "Output directory")->required();
  run_cmd->add_option("--update-interval", run_opts.update_interval_s, "Override the update interval (s)");
  run_cmd->add_option("--duration", run_opts.duration_s, "Override the duration (s)");
  run_cmd->add_option("--tle", run_opts.tle, "TLE catalogue; replaces the scenario's constellation");
  run_cmd->add_flag("--force", run_opts.force, "Overwrite an existing output directory");

  GenerateOptions gen;
  auto* gen_cmd = app.add_subcommand("generate", "Write satellite positions of a Walker shell as CSV");
  auto* spec_opt = gen_cmd->add_option("--spec", gen.spec_file, "Scenario TOML with a [constellation] section");
  auto* planes_opt = gen_cmd->add_option("--planes", gen.spec.planes, "Orbital planes");
  auto* sats_opt = gen_cmd->add_option("--sats-per-plane", gen.spec.sats_per_plane, "Satellites per plane");
  planes_opt->needs(sats_opt);
  sats_opt->needs(planes_opt);
  gen_cmd->add_option("--inclination", gen.spec.inclination_deg, "Inclination (deg)")->capture_default_str();
  gen_cmd->add_option("--altitude", gen.spec.altitude_km, "Altitude (km)")->capture_default_str();
  gen_cmd->add_option("--phase-offset", gen.spec.phase_offset, "Walker phasing factor F")->capture_default_str();
  gen_cmd->add_option("--raan-spread", gen.spec.raan_spread_deg, "RAAN spread (deg)")->capture_default_str();
  gen_cmd->add_option("--eccentricity", gen.spec.eccentricity, "Eccentricity")->capture_default_str();
  gen_cmd->add_option("--time", gen.time_s, "Seconds after epoch")->capture_default_str();
  gen_cmd->add_option("--out", gen.out, "Output CSV, '-' for stdout")->capture_default_str();
  spec_opt->excludes(planes_opt);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : kExitInput;
  }

  try {
    if (*run_cmd) return do_run(run_opts);
    if (gen.spec_file.empty() && planes_opt->count() == 0)
      throw InputError("generate needs --spec or both --planes and --sats-per-plane");
    return do_generate(gen);
  } catch (const InputError& e) {
    std::cerr << "leosim: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "leosim: error: " << e.what() << "\n";
    return kExitRuntime;
  }
}
