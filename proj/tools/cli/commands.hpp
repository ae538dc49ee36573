#pragma once

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "cli/config.hpp"

namespace salpeter::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitNoBoundState = 3;
inline constexpr int kExitOracle = 4;

inline int exit_code_for(ErrorCode c) {
  switch (c) {
    case ErrorCode::InvalidArgument:
    case ErrorCode::RegimeMismatch: return kExitValidation;
    case ErrorCode::NoBoundState: return kExitNoBoundState;
    case ErrorCode::NotConverged:
    case ErrorCode::NonConvergent:
    case ErrorCode::Overflow:
    case ErrorCode::StepTooCoarse:
    case ErrorCode::ConvergenceViolation: return kExitOracle;
    default: return kExitFailure;
  }
}

inline json error_json(const std::string& code, const std::string& message, int exit_code) {
  return {{"error", {{"code", code}, {"message", message}}}, {"exit_code", exit_code}};
}

// SALPETER_THREADS caps the oracle's worker count; 0 or unset means auto.
inline int threads_from_env() {
  const char* v = std::getenv("SALPETER_THREADS");
  if (!v || !*v) return 0;
  char* end = nullptr;
  const long t = std::strtol(v, &end, 10);
  if (*end != '\0' || t < 0)
    throw Error(ErrorCode::InvalidArgument, "SALPETER_THREADS must be a non-negative integer");
  return int(t);
}

inline oracle::Options oracle_options(const RunConfig& c) {
  oracle::Options o;
  o.x_max_alpha = c.grid.x_max;
  o.fd_target = c.tolerance;
  o.threads = threads_from_env();
  return o;
}

inline json metadata() {
  return {{"units", "hbar = c = 1; energies are binding energies M - m1 - m2; x in inverse energy"},
          {"generator", "salpeter"}};
}

struct Outcome {
  int exit_code = kExitOk;
  json document;               // main artifact (JSON commands)
  std::string text;            // CSV payload, if any
  std::optional<json> sidecar; // normalization report next to a CSV file
  std::optional<json> error;
};

namespace detail {

inline json branch_json(const spectra::BranchState& b) {
  return {{"energy", complex_json(b.energy)}, {"eps", complex_json(b.eps)}, {"physical", b.physical}};
}

inline json aux_json(const spectra::SpectralAuxiliaries& a) {
  json j = {{"b", complex_json(a.b)},
            {"C", complex_json(a.C)},
            {"D", complex_json(a.D)},
            {"xi", complex_json(a.xi)},
            {"xi_tilde", complex_json(a.xi_tilde)},
            {"kappa", complex_json(a.kappa)},
            {"varsigma", complex_json(a.varsigma)},
            {"varsigma_tilde", complex_json(a.varsigma_tilde)},
            {"c", complex_json(a.c)},
            {"d", complex_json(a.d)},
            {"chi_sq", {a.chi_sq[0], a.chi_sq[1]}},
            {"beta", a.beta}};
  return j;
}

inline json state_json(const spectra::BoundState& s) {
  const auto pb = s.physical_branch();
  return {{"n", s.n},
          {"branches", {{"Plus", branch_json(s.branches[0])}, {"Minus", branch_json(s.branches[1])}}},
          {"aux", aux_json(s.aux)},
          {"physical_branch", pb ? json(std::string(to_string(*pb))) : json(nullptr)}};
}

inline json header(const RunConfig& c) {
  return {{"metadata", metadata()}, {"config", config_to_json(c)}, {"command", to_string(c.command)}};
}

inline bool oracle_failure(ErrorCode c) { return exit_code_for(c) == kExitOracle; }

}  // namespace detail

inline Outcome run_spectrum(const RunConfig& c) {
  Outcome out;
  out.document = detail::header(c);
  json states = json::array();
  int no_bound = 0;
  for (int n = 0; n <= c.n_max; ++n) {
    try {
      states.push_back(detail::state_json(spectra::bound_state(c.params, c.masses, n, c.kinematics)));
    } catch (const Error& e) {
      if (e.code() == ErrorCode::InvalidArgument) throw;
      if (e.code() == ErrorCode::NoBoundState) ++no_bound;
      states.push_back({{"n", n}, {"error", {{"code", to_string(e.code())}, {"message", e.detail()}}}});
    }
  }
  out.document["states"] = states;
  if (no_bound == c.n_max + 1) {
    out.exit_code = kExitNoBoundState;
    out.error = error_json("NoBoundState", "no bound state for any requested n", out.exit_code);
  }
  return out;
}

inline json normalization_json(const wavefunctions::NormalizationReport& r) {
  return {{"norm", complex_json(r.norm)},
          {"closed_form", r.closed_form ? complex_json(*r.closed_form) : json(nullptr)},
          {"pt_integral", r.pt_integral ? complex_json(*r.pt_integral) : json(nullptr)},
          {"nu", r.nu},
          {"pt_phase", r.pt_phase}};
}

inline Outcome run_wavefunction(const RunConfig& c) {
  Outcome out;
  const auto state = spectra::bound_state(c.params, c.masses, c.n, c.kinematics);
  auto wf = wavefunctions::assemble(c.params, c.masses, state, c.branch);
  json report = detail::header(c);
  report["state"] = detail::state_json(state);
  report["branch"] = std::string(to_string(c.branch));
  try {
    const auto norm = wavefunctions::normalization_constant(wf);
    wf.norm = norm.norm;
    report["normalization"] = normalization_json(norm);
  } catch (const Error& e) {
    report["normalization"] = {{"error", {{"code", to_string(e.code())}, {"message", e.detail()}}}};
  }
  const double x0 = wavefunctions::domain_start(c.params);
  const double x1 = c.grid.x_max / std::abs(c.params.alpha);
  if (!(x1 > x0)) throw Error(ErrorCode::InvalidArgument, "grid.x_max lies inside the excluded region");
  std::vector<double> xs(c.grid.points);
  for (int i = 0; i < c.grid.points; ++i)
    xs[i] = i + 1 == c.grid.points ? x1 : x0 + (x1 - x0) * double(i) / double(c.grid.points - 1);
  const auto psi = wavefunctions::evaluate_on_grid(wf, xs, x0);

  if (c.format == Format::Csv) {
    std::string text = "x,re_psi,im_psi\n";
    char buf[128];
    for (std::size_t i = 0; i < xs.size(); ++i) {
      std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", xs[i], psi[i].real(), psi[i].imag());
      text += buf;
    }
    out.text = std::move(text);
    out.sidecar = std::move(report);
    return out;
  }
  json grid = json::array();
  for (std::size_t i = 0; i < xs.size(); ++i) grid.push_back({{"x", xs[i]}, {"psi", complex_json(psi[i])}});
  report["grid"] = std::move(grid);
  out.document = std::move(report);
  return out;
}

inline json verify_row(int n, std::optional<double> formula, std::optional<double> oracle_value) {
  json row = {{"n", n},
              {"formula", formula ? json(*formula) : json(nullptr)},
              {"oracle", oracle_value ? json(*oracle_value) : json(nullptr)}};
  if (formula && oracle_value) {
    const double d = std::abs(*formula - *oracle_value);
    row["abs_delta"] = d;
    row["rel_delta"] = d / std::max(std::abs(*formula), 1e-300);
  } else {
    row["abs_delta"] = nullptr;
    row["rel_delta"] = nullptr;
  }
  return row;
}

inline Outcome run_verify(const RunConfig& c) {
  if (c.params.regime != Regime::Real)
    throw Error(ErrorCode::InvalidArgument, "verify needs regime Real");
  Outcome out;
  out.document = detail::header(c);
  const auto o = oracle_options(c);
  json rows = json::array();
  if (c.kinematics == Kinematics::NonRelativistic) {
    const auto fd = oracle::fd_eigenvalues_report(c.params, c.masses.mu(), c.n_max + 1, o);
    for (int n = 0; n <= c.n_max; ++n) {
      const double f = spectra::nonrelativistic_formula(c.params, c.masses.mu(), n).real();
      json row = verify_row(n, f, fd.energies[n]);
      row["richardson_spread"] = fd.convergence[n];
      rows.push_back(row);
    }
    out.document["oracle"] = "finite-difference";
  } else {
    std::vector<double> formula;
    for (int n = 0; n <= c.n_max; ++n) {
      try {
        const auto s = spectra::bound_state(c.params, c.masses, n);
        if (auto b = s.physical_branch()) formula.push_back(s[*b].energy.real());
      } catch (const Error& e) {
        if (e.code() != ErrorCode::NoBoundState) throw;
      }
    }
    std::vector<double> roots;
    try {
      roots = oracle::salpeter_levels(c.params, c.masses, oracle::binding_window(c.masses),
                                      c.grid.points, o);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::NoBoundState) throw;
    }
    std::sort(formula.begin(), formula.end());
    const std::size_t rows_n = std::max(formula.size(), roots.size());
    for (std::size_t i = 0; i < rows_n; ++i)
      rows.push_back(verify_row(int(i), i < formula.size() ? std::optional(formula[i]) : std::nullopt,
                                i < roots.size() ? std::optional(roots[i]) : std::nullopt));
    out.document["oracle"] = "shooting";
  }
  out.document["rows"] = rows;
  return out;
}

inline Outcome run_scan(const RunConfig& c) {
  Outcome out;
  out.document = detail::header(c);
  json surface = json::array();
  for (int i = 0; i <= c.scan.steps; ++i) {
    const double v = i == c.scan.steps
                         ? c.scan.to
                         : c.scan.from + (c.scan.to - c.scan.from) * double(i) / double(c.scan.steps);
    json point = {{"value", v}};
    try {
      PotentialParams p = c.params;
      double m1 = c.masses.m1(), m2 = c.masses.m2();
      if (c.scan.parameter == "V0") p.V0 = v;
      if (c.scan.parameter == "alpha") p.alpha = v;
      if (c.scan.parameter == "q") p.q = v;
      if (c.scan.parameter == "m1") m1 = v;
      if (c.scan.parameter == "m2") m2 = v;
      p.validate();
      const MassConfig m(m1, m2);
      json levels = json::array();
      for (int n = 0; n <= c.n_max; ++n) {
        try {
          const auto s = spectra::bound_state(p, m, n, c.kinematics);
          const auto pb = s.physical_branch();
          levels.push_back({{"n", n},
                            {"plus", complex_json(s.energy.plus)},
                            {"minus", complex_json(s.energy.minus)},
                            {"physical_branch", pb ? json(std::string(to_string(*pb))) : json(nullptr)}});
        } catch (const Error& e) {
          levels.push_back({{"n", n}, {"error", std::string(to_string(e.code()))}});
        }
      }
      point["levels"] = levels;
    } catch (const Error& e) {
      point["error"] = std::string(to_string(e.code()));
    }
    surface.push_back(point);
  }
  out.document["surface"] = surface;
  return out;
}

inline Outcome run_count(const RunConfig& c) {
  if (c.params.regime != Regime::Real)
    throw Error(ErrorCode::InvalidArgument, "count needs regime Real");
  Outcome out;
  out.document = detail::header(c);
  json pred;
  try {
    const auto cb = spectra::critical_level_bound(c.params, c.masses);
    pred = {{"count", cb.count},
            {"existence", cb.existence},
            {"n_max", cb.n_max ? json(*cb.n_max) : json(nullptr)},
            {"chi_sq", {cb.chi_sq[0], cb.chi_sq[1]}}};
  } catch (const Error& e) {
    if (e.code() != ErrorCode::NoBoundState) throw;
    pred = {{"count", 0}, {"existence", false}, {"n_max", nullptr}, {"reason", e.detail()}};
  }
  int lc = 0;
  try {
    lc = spectra::level_count(c.params, c.masses);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::NoBoundState) throw;
  }
  json orc;
  try {
    const auto roots = oracle::salpeter_levels(c.params, c.masses, oracle::binding_window(c.masses),
                                               c.grid.points, oracle_options(c));
    orc = {{"count", int(roots.size())}, {"energies", roots}};
  } catch (const Error& e) {
    if (e.code() != ErrorCode::NoBoundState) throw;
    orc = {{"count", 0}, {"energies", json::array()}, {"reason", e.detail()}};
  }
  out.document["prediction"] = pred;
  out.document["level_count"] = lc;
  out.document["oracle"] = orc;
  return out;
}

// Runs one command; errors become an Outcome with a machine-readable error object.
inline Outcome run(const RunConfig& c) {
  try {
    c.validate();
    switch (c.command) {
      case Command::Spectrum: return run_spectrum(c);
      case Command::Wavefunction: return run_wavefunction(c);
      case Command::Verify: return run_verify(c);
      case Command::Scan: return run_scan(c);
      case Command::Count: return run_count(c);
    }
  } catch (const Error& e) {
    Outcome out;
    out.exit_code = exit_code_for(e.code());
    out.error = error_json(std::string(to_string(e.code())), e.detail(), out.exit_code);
    return out;
  }
  return {};
}

// Writes the artifacts of an Outcome; returns false if a file cannot be written.
inline bool emit(const RunConfig& c, const Outcome& o, std::ostream& stdout_stream) {
  auto write = [&](const std::string& path, const std::string& payload) {
    if (path.empty()) {
      stdout_stream << payload;
      return bool(stdout_stream);
    }
    std::ofstream f(path, std::ios::binary);
    f << payload;
    return bool(f);
  };
  if (c.format == Format::Csv && !o.text.empty()) {
    if (!write(c.out, o.text)) return false;
    if (o.sidecar && !c.out.empty()) return write(c.out + ".json", dump(*o.sidecar) + "\n");
    return true;
  }
  if (o.document.is_null()) return true;
  return write(c.out, dump(o.document) + "\n");
}

}  // namespace salpeter::cli
