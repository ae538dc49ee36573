#pragma once

#include <cmath>
#include <cstdio>
#include <set>
#include <string>

#include <json.hpp>

#include "salpeter/salpeter.hpp"

namespace salpeter::cli {

using nlohmann::json;

enum class Command { Spectrum, Wavefunction, Verify, Scan, Count };
enum class Format { Json, Csv };

inline std::string to_string(Command c) {
  switch (c) {
    case Command::Spectrum: return "spectrum";
    case Command::Wavefunction: return "wavefunction";
    case Command::Verify: return "verify";
    case Command::Scan: return "scan";
    case Command::Count: return "count";
  }
  return "spectrum";
}

inline Command command_from_string(const std::string& s) {
  for (Command c : {Command::Spectrum, Command::Wavefunction, Command::Verify, Command::Scan,
                    Command::Count})
    if (to_string(c) == s) return c;
  throw Error(ErrorCode::InvalidArgument, "unknown command '" + s + "'");
}

inline std::string to_string(Format f) { return f == Format::Json ? "json" : "csv"; }

inline Format format_from_string(const std::string& s) {
  if (s == "json") return Format::Json;
  if (s == "csv") return Format::Csv;
  throw Error(ErrorCode::InvalidArgument, "unknown format '" + s + "'");
}

struct GridSpec {
  int points = 200;
  double x_max = 25.0;  // in units of 1/alpha
  friend bool operator==(const GridSpec&, const GridSpec&) = default;
};

struct ScanSpec {
  std::string parameter = "V0";
  double from = 0.1;
  double to = 1.0;
  int steps = 10;
  friend bool operator==(const ScanSpec&, const ScanSpec&) = default;
};

struct RunConfig {
  Command command = Command::Spectrum;
  PotentialParams params = PotentialParams{1.0, 1.0, 1.0, Regime::Real};
  MassConfig masses = MassConfig::equal(1.0);
  Kinematics kinematics = Kinematics::Salpeter;
  int n_max = 3;
  GridSpec grid;
  double tolerance = 1e-6;
  Format format = Format::Json;
  std::string out;
  int n = 0;
  Branch branch = Branch::Plus;
  ScanSpec scan;

  void validate() const {
    params.validate();
    if (n_max < 0) throw Error(ErrorCode::InvalidArgument, "n_max must be >= 0");
    if (n < 0) throw Error(ErrorCode::InvalidArgument, "n must be >= 0");
    if (grid.points < 2) throw Error(ErrorCode::InvalidArgument, "grid.points must be >= 2");
    if (!(grid.x_max > 0.0) || !std::isfinite(grid.x_max))
      throw Error(ErrorCode::InvalidArgument, "grid.x_max must be positive");
    if (!(tolerance > 0.0)) throw Error(ErrorCode::InvalidArgument, "tolerance must be positive");
    static const std::set<std::string> scannable = {"V0", "alpha", "q", "m1", "m2"};
    if (!scannable.count(scan.parameter))
      throw Error(ErrorCode::InvalidArgument, "scan.parameter must be one of V0, alpha, q, m1, m2");
    if (scan.steps < 1) throw Error(ErrorCode::InvalidArgument, "scan.steps must be >= 1");
    if (!std::isfinite(scan.from) || !std::isfinite(scan.to))
      throw Error(ErrorCode::InvalidArgument, "scan range must be finite");
    if (format == Format::Csv && command != Command::Wavefunction)
      throw Error(ErrorCode::InvalidArgument, "csv output is only defined for wavefunction");
  }

  friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

namespace detail {

inline void reject_unknown(const json& j, const std::set<std::string>& allowed,
                           const std::string& where) {
  if (!j.is_object()) throw Error(ErrorCode::InvalidArgument, where + " must be an object");
  for (const auto& [k, v] : j.items())
    if (!allowed.count(k)) throw Error(ErrorCode::InvalidArgument, "unknown field " + where + k);
}

template <class T>
T get(const json& j, const char* key, T fallback) {
  if (!j.contains(key)) return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    throw Error(ErrorCode::InvalidArgument, std::string("field '") + key + "' has the wrong type");
  }
}

}  // namespace detail

inline RunConfig config_from_json(const json& j) {
  using detail::get;
  detail::reject_unknown(j,
                         {"command", "potential", "masses", "kinematics", "n_max", "grid",
                          "tolerance", "format", "out", "n", "branch", "scan"},
                         "");
  RunConfig c;
  c.command = command_from_string(get<std::string>(j, "command", to_string(c.command)));
  if (j.contains("potential")) {
    const json& p = j.at("potential");
    detail::reject_unknown(p, {"V0", "alpha", "q", "regime"}, "potential.");
    const auto r = regime_from_string(get<std::string>(p, "regime", "Real"));
    if (!r) throw Error(ErrorCode::InvalidArgument, "unknown regime");
    c.params = {get<double>(p, "V0", c.params.V0), get<double>(p, "alpha", c.params.alpha),
                get<double>(p, "q", c.params.q), *r};
  }
  if (j.contains("masses")) {
    const json& m = j.at("masses");
    detail::reject_unknown(m, {"m1", "m2"}, "masses.");
    c.masses = MassConfig(get<double>(m, "m1", 1.0), get<double>(m, "m2", 1.0));
  }
  const std::string kin = get<std::string>(j, "kinematics", "Salpeter");
  if (kin == "Salpeter")
    c.kinematics = Kinematics::Salpeter;
  else if (kin == "NonRelativistic")
    c.kinematics = Kinematics::NonRelativistic;
  else
    throw Error(ErrorCode::InvalidArgument, "unknown kinematics '" + kin + "'");
  c.n_max = get<int>(j, "n_max", c.n_max);
  if (j.contains("grid")) {
    const json& g = j.at("grid");
    detail::reject_unknown(g, {"points", "x_max"}, "grid.");
    c.grid = {get<int>(g, "points", c.grid.points), get<double>(g, "x_max", c.grid.x_max)};
  }
  c.tolerance = get<double>(j, "tolerance", c.tolerance);
  c.format = format_from_string(get<std::string>(j, "format", "json"));
  c.out = get<std::string>(j, "out", "");
  c.n = get<int>(j, "n", 0);
  const std::string br = get<std::string>(j, "branch", "Plus");
  if (br != "Plus" && br != "Minus") throw Error(ErrorCode::InvalidArgument, "branch must be Plus or Minus");
  c.branch = br == "Plus" ? Branch::Plus : Branch::Minus;
  if (j.contains("scan")) {
    const json& s = j.at("scan");
    detail::reject_unknown(s, {"parameter", "from", "to", "steps"}, "scan.");
    c.scan = {get<std::string>(s, "parameter", c.scan.parameter), get<double>(s, "from", c.scan.from),
              get<double>(s, "to", c.scan.to), get<int>(s, "steps", c.scan.steps)};
  }
  c.validate();
  return c;
}

inline json config_to_json(const RunConfig& c) {
  return {{"command", to_string(c.command)},
          {"potential",
           {{"V0", c.params.V0},
            {"alpha", c.params.alpha},
            {"q", c.params.q},
            {"regime", std::string(to_string(c.params.regime))}}},
          {"masses", {{"m1", c.masses.m1()}, {"m2", c.masses.m2()}}},
          {"kinematics", std::string(to_string(c.kinematics))},
          {"n_max", c.n_max},
          {"grid", {{"points", c.grid.points}, {"x_max", c.grid.x_max}}},
          {"tolerance", c.tolerance},
          {"format", to_string(c.format)},
          {"out", c.out},
          {"n", c.n},
          {"branch", std::string(to_string(c.branch))},
          {"scan",
           {{"parameter", c.scan.parameter},
            {"from", c.scan.from},
            {"to", c.scan.to},
            {"steps", c.scan.steps}}}};
}

inline json complex_json(Complex z) { return {{"re", z.real()}, {"im", z.imag()}}; }

// Sorted keys, %.17g floats, non-finite numbers as null.
inline void dump_to(const json& j, std::string& out) {
  switch (j.type()) {
    case json::value_t::object: {
      out += '{';
      bool first = true;
      for (const auto& [k, v] : j.items()) {
        if (!first) out += ',';
        first = false;
        out += json(k).dump();
        out += ':';
        dump_to(v, out);
      }
      out += '}';
      break;
    }
    case json::value_t::array: {
      out += '[';
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) out += ',';
        dump_to(j[i], out);
      }
      out += ']';
      break;
    }
    case json::value_t::number_float: {
      const double v = j.get<double>();
      if (!std::isfinite(v)) {
        out += "null";
        break;
      }
      char buf[32];
      std::snprintf(buf, sizeof buf, "%.17g", v);
      std::string s = buf;
      if (s.find_first_of(".eEn") == std::string::npos) s += ".0";
      out += s;
      break;
    }
    default:
      out += j.dump();
  }
}

inline std::string dump(const json& j) {
  std::string s;
  dump_to(j, s);
  return s;
}

}  // namespace salpeter::cli
