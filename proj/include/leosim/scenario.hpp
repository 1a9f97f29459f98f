#pragma once

// Scenario description and its TOML file format.
//
//   name = "my-run"                       # optional
//
//   [constellation]                       # either the generator keys ...
//   planes = 24
//   sats_per_plane = 66
//   inclination_deg = 53.0
//   altitude_km = 550.0
//   phase_offset = 0.0
//   raan_spread_deg = 360.0
//   eccentricity = 0.0
//   isl = true
//   isl_wrap_seam = true
//   # tle_file = "starlink.tle"           # ... or a TLE catalogue
//   # sim_epoch = 2021-05-01T00:00:00Z    # default: newest TLE epoch
//
//   [links]
//   min_elevation_deg = 25.0
//   isl_los_check = true
//   isl_los_margin_km = 0.0
//   # max_gsl_range_km = 1123.0
//   # max_isl_range_km = 5000.0
//
//   [traffic]
//   source = "London"
//   destination = "New York"
//   duration_s = 7200.0
//   update_interval_s = 1.0
//   ping_interval_ms = 500
//   all_pairs = false
//   record_paths = false
//   fiber_refractive_index = 1.468
//
//   [stations]
//   catalog = ["London", "New York"]      # built-in station names
//   [[stations.custom]]
//   name = "Relay 1"
//   latitude_deg = 52.0
//   longitude_deg = -10.0
//   role = "relay"                        # or "endpoint"
//
// Unknown keys are rejected. Source and destination are pulled from the
// built-in catalogue when not listed explicitly.

#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#define TOML_EXCEPTIONS 1
#include <toml.hpp>

#include "leosim/catalog.hpp"
#include "leosim/constellation.hpp"
#include "leosim/error.hpp"
#include "leosim/tle.hpp"
#include "leosim/topology.hpp"

namespace leosim {

struct TleSource {
  std::string path;
  std::optional<Instant> sim_epoch;

  friend bool operator==(const TleSource&, const TleSource&) = default;
};

struct Scenario {
  std::string name = "custom";
  std::variant<ConstellationSpec, TleSource> constellation;
  std::vector<GroundStation> ground_stations;
  LinkParams link_params;
  double update_interval_s = 1.0;
  int ping_interval_ms = 500;
  double duration_s = 0.0;
  std::string source;
  std::string destination;
  bool all_pairs = false;
  bool record_paths = false;
  double fiber_refractive_index = 1.468;

  bool uses_tle() const noexcept { return std::holds_alternative<TleSource>(constellation); }

  const GroundStation& station(std::string_view name_) const {
    for (const auto& g : ground_stations)
      if (g.name == name_) return g;
    throw InputError("unknown ground station '" + std::string(name_) + "'");
  }

  int station_index(std::string_view name_) const {
    for (std::size_t k = 0; k < ground_stations.size(); ++k)
      if (ground_stations[k].name == name_) return static_cast<int>(k);
    throw InputError("unknown ground station '" + std::string(name_) + "'");
  }

  void validate() const {
    if (const auto* spec = std::get_if<ConstellationSpec>(&constellation)) spec->validate();
    else if (std::get<TleSource>(constellation).path.empty())
      throw InputError("TLE-driven scenario has no tle_file");
    link_params.validate();
    if (!(update_interval_s > 0.0)) throw InputError("update_interval_s must be > 0");
    if (std::abs(update_interval_s * 1000.0 - std::round(update_interval_s * 1000.0)) > 1e-6)
      throw InputError("update_interval_s must be a whole number of milliseconds");
    if (ping_interval_ms <= 0) throw InputError("ping_interval_ms must be > 0");
    if (!(duration_s > 0.0)) throw InputError("duration_s must be > 0");
    if (std::abs(duration_s * 1000.0 - std::round(duration_s * 1000.0)) > 1e-6)
      throw InputError("duration_s must be a whole number of milliseconds");
    if (!(fiber_refractive_index >= 1.0)) throw InputError("fiber_refractive_index must be >= 1");
    std::set<std::string> names;
    for (const auto& g : ground_stations) {
      if (!names.insert(g.name).second) throw InputError("duplicate ground station '" + g.name + "'");
      if (g.coord.altitude_km != 0.0) throw InputError("ground station '" + g.name + "' must have altitude 0");
    }
    if (source == destination) throw InputError("source and destination must differ");
    station(source);
    station(destination);
  }

  friend bool operator==(const Scenario&, const Scenario&) = default;
};

namespace detail {

inline std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  std::string s(buf, ptr);
  if (s.find_first_of(".eEn") == std::string::npos) s += ".0";
  return s;
}

inline std::string quote(std::string_view s) {
  std::string out = "\"";
  for (const char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

inline void reject_unknown_keys(const toml::table& t, std::string_view section,
                                std::initializer_list<std::string_view> allowed) {
  for (const auto& [key, _] : t) {
    bool ok = false;
    for (auto a : allowed) ok = ok || key.str() == a;
    if (!ok) {
      const std::string where = section.empty() ? std::string(key.str()) : std::string(section) + "." + std::string(key.str());
      throw InputError("unknown scenario key '" + where + "'");
    }
  }
}

template <typename T>
std::optional<T> get_opt(const toml::table& t, std::string_view section, std::string_view key) {
  const toml::node* node = t.get(key);
  if (node == nullptr) return std::nullopt;
  if constexpr (std::is_same_v<T, double>) {
    if (auto v = node->value<double>()) return *v;
  } else if constexpr (std::is_same_v<T, bool>) {
    if (node->is_boolean()) return node->value<bool>();
  } else if constexpr (std::is_same_v<T, std::string>) {
    if (node->is_string()) return node->value<std::string>();
  } else if constexpr (std::is_same_v<T, int>) {
    if (node->is_integer()) return static_cast<int>(*node->value<std::int64_t>());
  }
  throw InputError("scenario key '" + std::string(section) + "." + std::string(key) + "' has the wrong type");
}

template <typename T>
T get_required(const toml::table& t, std::string_view section, std::string_view key) {
  if (auto v = get_opt<T>(t, section, key)) return *v;
  throw InputError("missing required field '" + std::string(section) + "." + std::string(key) + "'");
}

inline const toml::table* section(const toml::table& root, std::string_view name) {
  const toml::node* n = root.get(name);
  if (n == nullptr) return nullptr;
  if (!n->is_table()) throw InputError("scenario section '" + std::string(name) + "' must be a table");
  return n->as_table();
}

inline Instant instant_from_toml(const toml::date_time& dt) {
  using namespace std::chrono;
  if (!dt.offset) throw InputError("constellation.sim_epoch needs an explicit UTC offset (e.g. 'Z')");
  const sys_days day = sys_days{std::chrono::year{dt.date.year} / dt.date.month / dt.date.day};
  const double secs = static_cast<double>(day.time_since_epoch().count()) * 86400.0 + dt.time.hour * 3600.0 +
                      dt.time.minute * 60.0 + dt.time.second - dt.offset->minutes * 60.0;
  return {secs + dt.time.nanosecond * 1e-9};
}

inline std::string instant_to_toml(Instant t) {
  using namespace std::chrono;
  const double whole = std::floor(t.unix_seconds);
  auto ns = static_cast<std::int64_t>(std::llround((t.unix_seconds - whole) * 1e9));
  auto secs = static_cast<std::int64_t>(whole);
  if (ns >= 1000000000) {
    ns -= 1000000000;
    ++secs;
  }
  const auto day = floor<days>(sys_seconds{seconds{secs}});
  const year_month_day ymd{day};
  const hh_mm_ss hms{seconds{secs} - day.time_since_epoch()};
  char buf[64];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02uT%02ld:%02ld:%02ld.%09ldZ", static_cast<int>(ymd.year()),
                static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()),
                static_cast<long>(hms.hours().count()), static_cast<long>(hms.minutes().count()),
                static_cast<long>(hms.seconds().count()), static_cast<long>(ns));
  return buf;
}

}  // namespace detail

// Parses scenario text. Relative tle_file paths resolve against base_dir.
inline Scenario parse_scenario(std::string_view text, const std::filesystem::path& base_dir = {}) {
  toml::table root;
  try {
    root = toml::parse(text);
  } catch (const toml::parse_error& e) {
    std::ostringstream msg;
    msg << "scenario syntax error at line " << e.source().begin.line << ": " << e.description();
    throw InputError(msg.str());
  }
  detail::reject_unknown_keys(root, "", {"name", "constellation", "links", "traffic", "stations"});

  Scenario sc;
  if (auto n = detail::get_opt<std::string>(root, "", "name")) sc.name = *n;

  const toml::table* con = detail::section(root, "constellation");
  if (con == nullptr) throw InputError("missing required section '[constellation]'");
  detail::reject_unknown_keys(*con, "constellation",
                              {"planes", "sats_per_plane", "inclination_deg", "altitude_km", "phase_offset",
                               "raan_spread_deg", "eccentricity", "isl", "isl_wrap_seam", "tle_file", "sim_epoch"});
  const bool has_tle = con->contains("tle_file");
  bool has_spec_key = false;
  for (auto k : {"planes", "sats_per_plane", "inclination_deg", "altitude_km", "phase_offset", "raan_spread_deg",
                 "eccentricity", "isl", "isl_wrap_seam"})
    has_spec_key = has_spec_key || con->contains(k);
  if (has_tle && has_spec_key)
    throw InputError("conflicting constellation sources: tle_file cannot be combined with generator parameters");
  if (has_tle) {
    TleSource src;
    std::filesystem::path p = detail::get_required<std::string>(*con, "constellation", "tle_file");
    if (p.empty()) throw InputError("constellation.tle_file is empty");
    if (p.is_relative() && !base_dir.empty()) p = base_dir / p;
    src.path = p.lexically_normal().string();
    if (const toml::node* e = con->get("sim_epoch")) {
      if (!e->is_date_time()) throw InputError("constellation.sim_epoch must be a TOML date-time");
      src.sim_epoch = detail::instant_from_toml(*e->value<toml::date_time>());
    }
    sc.constellation = src;
  } else {
    if (con->contains("sim_epoch")) throw InputError("constellation.sim_epoch is only valid with tle_file");
    ConstellationSpec spec;
    spec.planes = detail::get_required<int>(*con, "constellation", "planes");
    spec.sats_per_plane = detail::get_required<int>(*con, "constellation", "sats_per_plane");
    spec.inclination_deg = detail::get_required<double>(*con, "constellation", "inclination_deg");
    spec.altitude_km = detail::get_required<double>(*con, "constellation", "altitude_km");
    spec.phase_offset = detail::get_opt<double>(*con, "constellation", "phase_offset").value_or(0.0);
    spec.raan_spread_deg = detail::get_opt<double>(*con, "constellation", "raan_spread_deg").value_or(360.0);
    spec.eccentricity = detail::get_opt<double>(*con, "constellation", "eccentricity").value_or(0.0);
    spec.isl_enabled = detail::get_opt<bool>(*con, "constellation", "isl").value_or(true);
    spec.isl_wrap_seam = detail::get_opt<bool>(*con, "constellation", "isl_wrap_seam").value_or(true);
    sc.constellation = spec;
  }

  if (const toml::table* links = detail::section(root, "links")) {
    detail::reject_unknown_keys(*links, "links",
                                {"min_elevation_deg", "isl_los_check", "isl_los_margin_km", "max_gsl_range_km",
                                 "max_isl_range_km"});
    auto& lp = sc.link_params;
    lp.min_elevation_deg = detail::get_opt<double>(*links, "links", "min_elevation_deg").value_or(lp.min_elevation_deg);
    lp.isl_los_check = detail::get_opt<bool>(*links, "links", "isl_los_check").value_or(lp.isl_los_check);
    lp.isl_los_margin_km = detail::get_opt<double>(*links, "links", "isl_los_margin_km").value_or(lp.isl_los_margin_km);
    lp.max_gsl_range_km = detail::get_opt<double>(*links, "links", "max_gsl_range_km");
    lp.max_isl_range_km = detail::get_opt<double>(*links, "links", "max_isl_range_km");
  }

  const toml::table* traffic = detail::section(root, "traffic");
  if (traffic == nullptr) throw InputError("missing required section '[traffic]'");
  detail::reject_unknown_keys(*traffic, "traffic",
                              {"source", "destination", "duration_s", "update_interval_s", "ping_interval_ms",
                               "all_pairs", "record_paths", "fiber_refractive_index"});
  sc.source = detail::get_required<std::string>(*traffic, "traffic", "source");
  sc.destination = detail::get_required<std::string>(*traffic, "traffic", "destination");
  sc.duration_s = detail::get_required<double>(*traffic, "traffic", "duration_s");
  sc.update_interval_s = detail::get_opt<double>(*traffic, "traffic", "update_interval_s").value_or(1.0);
  sc.ping_interval_ms = detail::get_opt<int>(*traffic, "traffic", "ping_interval_ms").value_or(500);
  sc.all_pairs = detail::get_opt<bool>(*traffic, "traffic", "all_pairs").value_or(false);
  sc.record_paths = detail::get_opt<bool>(*traffic, "traffic", "record_paths").value_or(false);
  sc.fiber_refractive_index =
      detail::get_opt<double>(*traffic, "traffic", "fiber_refractive_index").value_or(1.468);

  if (const toml::table* st = detail::section(root, "stations")) {
    detail::reject_unknown_keys(*st, "stations", {"catalog", "custom"});
    if (const toml::node* cat = st->get("catalog")) {
      const toml::array* arr = cat->as_array();
      if (arr == nullptr) throw InputError("stations.catalog must be an array of names");
      for (const auto& item : *arr) {
        auto name = item.value<std::string>();
        if (!name) throw InputError("stations.catalog entries must be strings");
        sc.ground_stations.push_back(catalog_station(*name));
      }
    }
    if (const toml::node* custom = st->get("custom")) {
      const toml::array* arr = custom->as_array();
      if (arr == nullptr) throw InputError("stations.custom must be an array of tables");
      for (const auto& item : *arr) {
        const toml::table* t = item.as_table();
        if (t == nullptr) throw InputError("stations.custom entries must be tables");
        detail::reject_unknown_keys(*t, "stations.custom", {"name", "latitude_deg", "longitude_deg", "role"});
        GroundStation g;
        g.name = detail::get_required<std::string>(*t, "stations.custom", "name");
        g.coord = GeodeticCoord::make(detail::get_required<double>(*t, "stations.custom", "latitude_deg"),
                                      detail::get_required<double>(*t, "stations.custom", "longitude_deg"), 0.0);
        g.role = parse_station_role(detail::get_opt<std::string>(*t, "stations.custom", "role").value_or("relay"));
        sc.ground_stations.push_back(g);
      }
    }
  }
  for (const auto* endpoint : {&sc.source, &sc.destination}) {
    bool listed = false;
    for (const auto& g : sc.ground_stations) listed = listed || g.name == *endpoint;
    if (!listed) sc.ground_stations.push_back(catalog_station(*endpoint));
  }

  sc.validate();
  return sc;
}

inline Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open scenario file: " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  return parse_scenario(text.str(), path.parent_path());
}

// Fully resolved scenario as TOML. Every field is explicit and every station
// is written out with its coordinates, so parse_scenario() of the result
// reproduces the same Scenario.
inline std::string to_toml(const Scenario& sc) {
  using detail::format_double;
  using detail::quote;
  std::ostringstream o;
  o << "name = " << quote(sc.name) << "\n\n[constellation]\n";
  if (const auto* spec = std::get_if<ConstellationSpec>(&sc.constellation)) {
    o << "planes = " << spec->planes << "\n"
      << "sats_per_plane = " << spec->sats_per_plane << "\n"
      << "inclination_deg = " << format_double(spec->inclination_deg) << "\n"
      << "altitude_km = " << format_double(spec->altitude_km) << "\n"
      << "phase_offset = " << format_double(spec->phase_offset) << "\n"
      << "raan_spread_deg = " << format_double(spec->raan_spread_deg) << "\n"
      << "eccentricity = " << format_double(spec->eccentricity) << "\n"
      << "isl = " << (spec->isl_enabled ? "true" : "false") << "\n"
      << "isl_wrap_seam = " << (spec->isl_wrap_seam ? "true" : "false") << "\n";
  } else {
    const auto& tle = std::get<TleSource>(sc.constellation);
    o << "tle_file = " << quote(tle.path) << "\n";
    if (tle.sim_epoch) o << "sim_epoch = " << detail::instant_to_toml(*tle.sim_epoch) << "\n";
  }
  const auto& lp = sc.link_params;
  o << "\n[links]\n"
    << "min_elevation_deg = " << format_double(lp.min_elevation_deg) << "\n"
    << "isl_los_check = " << (lp.isl_los_check ? "true" : "false") << "\n"
    << "isl_los_margin_km = " << format_double(lp.isl_los_margin_km) << "\n";
  if (lp.max_gsl_range_km) o << "max_gsl_range_km = " << format_double(*lp.max_gsl_range_km) << "\n";
  if (lp.max_isl_range_km) o << "max_isl_range_km = " << format_double(*lp.max_isl_range_km) << "\n";
  o << "\n[traffic]\n"
    << "source = " << quote(sc.source) << "\n"
    << "destination = " << quote(sc.destination) << "\n"
    << "duration_s = " << format_double(sc.duration_s) << "\n"
    << "update_interval_s = " << format_double(sc.update_interval_s) << "\n"
    << "ping_interval_ms = " << sc.ping_interval_ms << "\n"
    << "all_pairs = " << (sc.all_pairs ? "true" : "false") << "\n"
    << "record_paths = " << (sc.record_paths ? "true" : "false") << "\n"
    << "fiber_refractive_index = " << format_double(sc.fiber_refractive_index) << "\n";
  o << "\n[stations]\ncatalog = []\n";
  for (const auto& g : sc.ground_stations) {
    o << "\n[[stations.custom]]\n"
      << "name = " << quote(g.name) << "\n"
      << "latitude_deg = " << format_double(g.coord.latitude_deg) << "\n"
      << "longitude_deg = " << format_double(g.coord.longitude_deg) << "\n"
      << "role = " << quote(to_string(g.role)) << "\n";
  }
  return o.str();
}

// 64-bit FNV-1a over the resolved TOML, printed as 16 hex digits.
inline std::string scenario_digest(const Scenario& sc) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (const unsigned char c : to_toml(sc)) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace leosim
