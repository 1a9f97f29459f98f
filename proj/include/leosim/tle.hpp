#pragma once

// NORAD two-line element sets: fixed-column parsing, checksum validation and
// conversion to two-body OrbitalElements.

#include <algorithm>
#include <cctype>
#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <istream>
#include <numbers>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "leosim/error.hpp"
#include "leosim/orbits.hpp"

namespace leosim {

inline constexpr std::size_t kTleLineLength = 69;

// UTC instant as seconds since 1970-01-01T00:00:00Z (no leap seconds).
struct Instant {
  double unix_seconds = 0.0;

  static Instant from_tle_epoch(int year, double day_of_year) {
    using namespace std::chrono;
    const sys_days start = sys_days{std::chrono::year{year} / January / 1};
    const double days = static_cast<double>(start.time_since_epoch().count()) + (day_of_year - 1.0);
    return {days * 86400.0};
  }

  friend auto operator<=>(const Instant&, const Instant&) = default;
};

struct TleRecord {
  std::string name;
  std::string line1;
  std::string line2;
  int catalog_number = 0;
  int epoch_year = 0;  // four-digit
  double epoch_day_fraction = 0.0;
  double inclination_deg = 0.0;
  double raan_deg = 0.0;
  double eccentricity = 0.0;
  double arg_perigee_deg = 0.0;
  double mean_anomaly_deg = 0.0;
  double mean_motion_rev_day = 0.0;

  Instant epoch() const { return Instant::from_tle_epoch(epoch_year, epoch_day_fraction); }
};

// Modulo-10 sum over the first 68 columns; digits count their value and '-'
// counts one.
inline int tle_checksum(std::string_view line) {
  int sum = 0;
  for (std::size_t k = 0; k < std::min<std::size_t>(68, line.size()); ++k) {
    const char c = line[k];
    if (c >= '0' && c <= '9') sum += c - '0';
    else if (c == '-') sum += 1;
  }
  return sum % 10;
}

namespace detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

// 1-based inclusive column range, as printed in the format documentation.
inline std::string_view columns(std::string_view line, int first, int last) {
  return line.substr(static_cast<std::size_t>(first - 1), static_cast<std::size_t>(last - first + 1));
}

inline double parse_double_field(std::string_view line, int line_no, int first, int last) {
  const std::string_view raw = trim(columns(line, first, last));
  std::string text(raw);
  if (!text.empty() && text.front() == '+') text.erase(0, 1);
  double value = 0.0;
  const char* b = text.data();
  const char* e = b + text.size();
  auto [ptr, ec] = std::from_chars(b, e, value);
  if (text.empty() || ec != std::errc{} || ptr != e)
    throw FieldError(line_no, first, last, "cannot parse '" + std::string(raw) + "' as a number");
  return value;
}

inline int parse_int_field(std::string_view line, int line_no, int first, int last) {
  const std::string_view raw = trim(columns(line, first, last));
  int value = 0;
  auto [ptr, ec] = std::from_chars(raw.data(), raw.data() + raw.size(), value);
  if (raw.empty() || ec != std::errc{} || ptr != raw.data() + raw.size())
    throw FieldError(line_no, first, last, "cannot parse '" + std::string(raw) + "' as an integer");
  return value;
}

// Satellite catalog number, including the Alpha-5 extension (A=10 .. Z=33,
// skipping I and O).
inline int parse_catalog_field(std::string_view line, int line_no) {
  const std::string_view raw = columns(line, 3, 7);
  const char lead = raw.front();
  if (std::isalpha(static_cast<unsigned char>(lead))) {
    const char up = static_cast<char>(std::toupper(static_cast<unsigned char>(lead)));
    if (up == 'I' || up == 'O') throw FieldError(line_no, 3, 7, "invalid Alpha-5 catalog prefix");
    int prefix = 10 + (up - 'A');
    if (up > 'I') --prefix;
    if (up > 'O') --prefix;
    return prefix * 10000 + parse_int_field(line, line_no, 4, 7);
  }
  return parse_int_field(line, line_no, 3, 7);
}

inline void check_line(std::string_view line, int line_no) {
  if (line.size() != kTleLineLength)
    throw FormatError("TLE line " + std::to_string(line_no) + " must be 69 characters, got " +
                      std::to_string(line.size()));
  if (line[0] != static_cast<char>('0' + line_no) || line[1] != ' ')
    throw FormatError("TLE line " + std::to_string(line_no) + " must begin with '" + std::to_string(line_no) + " '");
  const char last = line[68];
  if (last < '0' || last > '9') throw FieldError(line_no, 69, 69, "checksum column is not a digit");
  const int expected = tle_checksum(line);
  if (last - '0' != expected) throw ChecksumError(line_no, expected, last - '0');
}

}  // namespace detail

inline TleRecord parse_tle(std::string_view name_line, std::string_view line1, std::string_view line2) {
  detail::check_line(line1, 1);
  detail::check_line(line2, 2);

  TleRecord rec;
  rec.name = std::string(detail::trim(name_line));
  if (!rec.name.empty() && rec.name.front() == '0' && rec.name.size() > 1 && rec.name[1] == ' ')
    rec.name = std::string(detail::trim(std::string_view(rec.name).substr(2)));
  rec.line1 = std::string(line1);
  rec.line2 = std::string(line2);

  rec.catalog_number = detail::parse_catalog_field(line1, 1);
  if (detail::parse_catalog_field(line2, 2) != rec.catalog_number)
    throw FormatError("TLE catalog numbers differ between line 1 and line 2");

  const int yy = detail::parse_int_field(line1, 1, 19, 20);
  rec.epoch_year = yy < 57 ? 2000 + yy : 1900 + yy;
  rec.epoch_day_fraction = detail::parse_double_field(line1, 1, 21, 32);
  if (rec.epoch_day_fraction < 1.0 || rec.epoch_day_fraction >= 367.0)
    throw FieldError(1, 21, 32, "epoch day of year out of range");

  rec.inclination_deg = detail::parse_double_field(line2, 2, 9, 16);
  rec.raan_deg = detail::parse_double_field(line2, 2, 18, 25);
  const std::string_view ecc = detail::columns(line2, 27, 33);
  if (!std::all_of(ecc.begin(), ecc.end(), [](char c) { return c >= '0' && c <= '9'; }))
    throw FieldError(2, 27, 33, "eccentricity must be seven digits with an implied leading decimal point");
  rec.eccentricity = detail::parse_double_field("0." + std::string(ecc), 2, 1, 9);
  rec.arg_perigee_deg = detail::parse_double_field(line2, 2, 35, 42);
  rec.mean_anomaly_deg = detail::parse_double_field(line2, 2, 44, 51);
  rec.mean_motion_rev_day = detail::parse_double_field(line2, 2, 53, 63);
  return rec;
}

// Converts a TLE to two-body elements. epoch_s is the TLE epoch measured from
// `sim_epoch`, so TLEs older than the simulation start get a negative epoch.
inline OrbitalElements tle_to_elements(const TleRecord& rec, Instant sim_epoch) {
  if (!(rec.mean_motion_rev_day > 0.0))
    throw InputError("TLE " + std::to_string(rec.catalog_number) + ": mean motion must be positive");
  const double n = rec.mean_motion_rev_day * 2.0 * std::numbers::pi / 86400.0;
  OrbitalElements el;
  el.semi_major_axis_km = std::cbrt(earth::kMuKm3S2 / (n * n));
  el.eccentricity = rec.eccentricity;
  el.inclination_deg = rec.inclination_deg;
  el.raan_deg = wrap_360(rec.raan_deg);
  el.arg_perigee_deg = wrap_360(rec.arg_perigee_deg);
  el.mean_anomaly_epoch_deg = wrap_360(rec.mean_anomaly_deg);
  el.epoch_s = rec.epoch().unix_seconds - sim_epoch.unix_seconds;
  el.validate();
  return el;
}

// Reads repeating name / line 1 / line 2 groups. Blank lines and lines that
// start with '#' are skipped.
inline std::vector<TleRecord> parse_tle_stream(std::istream& in) {
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    while (!line.empty() && (line.back() == '\r' || line.back() == '\n')) line.pop_back();
    if (detail::trim(line).empty() || line.front() == '#') continue;
    lines.push_back(line);
  }
  std::vector<TleRecord> out;
  std::size_t k = 0;
  while (k < lines.size()) {
    // A group may omit the name line.
    if (lines[k].starts_with("1 ") && k + 1 < lines.size() && lines[k + 1].starts_with("2 ")) {
      out.push_back(parse_tle("", lines[k], lines[k + 1]));
      k += 2;
      continue;
    }
    if (k + 2 >= lines.size()) throw FormatError("truncated TLE group starting at '" + lines[k] + "'");
    if (lines[k].size() > 24 && !lines[k].starts_with("0 "))
      throw FormatError("TLE name line longer than 24 characters: '" + lines[k] + "'");
    out.push_back(parse_tle(lines[k], lines[k + 1], lines[k + 2]));
    k += 3;
  }
  return out;
}

inline std::vector<TleRecord> read_tle_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open TLE file: " + path);
  return parse_tle_stream(in);
}

// Newest epoch in the catalogue; the default simulation start for TLE runs.
inline Instant newest_epoch(const std::vector<TleRecord>& records) {
  if (records.empty()) throw InputError("empty TLE catalogue");
  Instant best = records.front().epoch();
  for (const auto& r : records) best = std::max(best, r.epoch());
  return best;
}

}  // namespace leosim
