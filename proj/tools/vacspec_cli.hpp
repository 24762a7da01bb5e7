#pragma once

// Command-line front end. run() is kept free of process state so the tests
// can drive it in-process.

#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "vacspec/circle.hpp"
#include "vacspec/esu.hpp"
#include "vacspec/slab.hpp"
#include "vacspec/spectral.hpp"

namespace vacspec::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUser = 2;
inline constexpr int kExitInternal = 3;

struct Row {
  double x = 0.0;
  double value = 0.0;
  double error_bound = 0.0;
};

struct Grid {
  double start = 0.0;
  double stop = 0.0;
  int points = 0;
  bool log = false;

  [[nodiscard]] std::vector<double> values() const {
    std::vector<double> out(static_cast<std::size_t>(points));
    for (int i = 0; i < points; ++i) {
      const double t = static_cast<double>(i) / (points - 1);
      if (log) {
        out[i] = std::exp(std::log(start) + t * (std::log(stop) - std::log(start)));
      } else {
        out[i] = start + t * (stop - start);
      }
    }
    // pin the ends so that rounding never moves them
    out.front() = start;
    out.back() = stop;
    return out;
  }
};

inline double parse_number(const std::string& text, const std::string& what) {
  double v = 0.0;
  const char* first = text.data();
  const char* last = first + text.size();
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last || !std::isfinite(v)) {
    throw ArgumentError("cannot parse " + what + ": '" + text + "'");
  }
  return v;
}

inline std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  for (char c : text) {
    if (c == sep) {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  parts.push_back(cur);
  return parts;
}

/// start:stop:n[:log]
inline Grid parse_grid(const std::string& text) {
  const auto parts = split(text, ':');
  if (parts.size() != 3 && parts.size() != 4) {
    throw ArgumentError("grid must be start:stop:n[:log], got '" + text + "'");
  }
  Grid g;
  g.start = parse_number(parts[0], "grid start");
  g.stop = parse_number(parts[1], "grid stop");
  const double n = parse_number(parts[2], "grid points");
  if (n != std::floor(n) || n < 2 || n > 1e7) throw ArgumentError("grid needs an integer n >= 2");
  g.points = static_cast<int>(n);
  if (parts.size() == 4) {
    if (parts[3] != "log" && parts[3] != "linear") throw ArgumentError("grid spacing must be log or linear");
    g.log = parts[3] == "log";
  }
  if (!(g.stop > g.start)) throw ArgumentError("grid needs start < stop");
  if (g.log && !(g.start > 0.0)) throw ArgumentError("log grid needs start > 0");
  return g;
}

/// exp:<eps> | exp-q:<q> | sharp:<q> | none
inline Regulator parse_regulator(const std::string& text) {
  if (text == "none") return Regulator::none();
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw ArgumentError("unknown regulator '" + text + "'");
  const std::string kind = text.substr(0, colon);
  const double v = parse_number(text.substr(colon + 1), "regulator parameter");
  if (kind == "exp") return Regulator::exponential(v);
  if (kind == "exp-q") {
    if (!(v > 0.0)) throw ArgumentError("exp-q needs q > 0");
    return Regulator::exponential(1.0 / v);
  }
  if (kind == "sharp") return Regulator::sharp(v);
  throw ArgumentError("unknown regulator '" + text + "'");
}

inline std::string format_number(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  if (ec != std::errc()) throw ConsistencyError("number formatting failed");
  return std::string(buf, ptr);
}

struct Options {
  std::string command;
  std::string geometry = "circle";
  double L = 1.0;
  double R = 1.0;
  std::optional<double> aR2;
  std::optional<double> mu2;
  std::optional<double> xi;
  std::string reg;
  std::string grid;
  std::string window;
  int m = 0;
  std::string out;
  std::string format = "csv";
};

inline esu::EsuParams esu_params(const Options& o) {
  if (o.aR2 && (o.mu2 || o.xi)) throw ArgumentError("give either aR2 or mu2/xi, not both");
  esu::EsuParams p = o.aR2 ? esu::EsuParams::from_aR2(*o.aR2, o.R)
                           : esu::EsuParams{o.R, o.mu2.value_or(0.0), o.xi.value_or(1.0 / 6.0)};
  p.validate();
  return p;
}

inline SpectralDistribution distribution_for(const Options& o) {
  if (o.geometry == "circle") return circle::circle_distribution({o.L});
  if (o.geometry == "slab") return slab::slab_distribution({o.L});
  return esu::esu_distribution(esu_params(o));
}

inline std::vector<Row> cmd_spectrum(const Options& o) {
  if (o.grid.empty()) throw ArgumentError("spectrum needs --grid");
  const Grid g = parse_grid(o.grid);
  std::vector<Row> rows;
  if (o.geometry == "circle") {
    if (o.m < 1) throw ArgumentError("circle spectrum needs --m >= 1");
    const circle::CircleParams p{o.L};
    for (double x0 : g.values()) {
      if (x0 < 0.0) throw ArgumentError("x0 grid must be non-negative");
      if (x0 == 0.0) {
        rows.push_back({0.0, 0.0, 0.0});  // continuous extension
        continue;
      }
      const auto r = circle::sigma_weight_result(o.m, x0, p);
      rows.push_back({x0, r.value, r.error_bound});
    }
  } else if (o.geometry == "slab") {
    const slab::SlabParams p{o.L};
    for (double w : g.values()) {
      if (w < 0.0) throw ArgumentError("omega grid must be non-negative");
      rows.push_back({w, slab::slab_sigma(w, p), 0.0});
    }
  } else {
    throw ArgumentError("the ESU spectrum is a delta comb; use integrate");
  }
  return rows;
}

inline std::vector<Row> cmd_integrate(const Options& o) {
  if (o.grid.empty()) throw ArgumentError("integrate needs --grid");
  if (o.reg.empty()) throw ArgumentError("integrate needs --reg");
  const Grid g = parse_grid(o.grid);
  if (g.start < 0.0) throw ArgumentError("omega0 grid must be non-negative");
  const Regulator reg = parse_regulator(o.reg);
  std::vector<Row> rows;
  if (o.geometry == "esu") {
    // F(q, aR2, omega0) is defined at unit radius
    const auto p = esu::EsuParams::from_aR2(esu_params(o).aR2());
    const double scale = 2.0 * esu::kUnitSphereVolume;
    for (const auto& c : cumulative(esu::esu_distribution(p), reg, g.values())) {
      rows.push_back({c.omega0, scale * c.value, scale * c.error_bound});
    }
    return rows;
  }
  for (const auto& c : cumulative(distribution_for(o), reg, g.values())) {
    rows.push_back({c.omega0, c.value, c.error_bound});
  }
  return rows;
}

inline std::vector<Row> cmd_energy(const Options& o) {
  std::vector<Row> rows;
  if (!o.window.empty()) {
    const auto parts = split(o.window, ':');
    if (parts.size() != 2) throw ArgumentError("window must be lo:hi");
    const double lo = parse_number(parts[0], "window lo");
    const double hi = parts[1] == "inf" ? detail::kInf : parse_number(parts[1], "window hi");
    const Regulator reg = o.reg.empty() ? Regulator::none() : parse_regulator(o.reg);
    const auto r = integrate(distribution_for(o), Window::interval(lo, hi), reg);
    rows.push_back({hi, r.value, r.error_bound});
    return rows;
  }
  const Regulator reg = o.reg.empty() ? Regulator::none() : parse_regulator(o.reg);
  if (reg.kind() == Regulator::Kind::Sharp) {
    throw ArgumentError("energy takes exp:<eps>, exp-q:<q> or no regulator (eps -> 0)");
  }
  const bool limit = reg.kind() == Regulator::Kind::None;
  const auto full = Window::interval(0.0, detail::kInf);

  if (o.geometry == "esu") {
    if (!o.grid.empty()) {
      // sweep over aR2 at the given radius
      for (double a : parse_grid(o.grid).values()) {
        Options sweep = o;
        sweep.aR2 = a;
        sweep.mu2.reset();
        sweep.xi.reset();
        const auto p = esu_params(sweep);
        if (limit) {
          const auto r = esu::esu_energy_result(p);
          rows.push_back({a, r.value, r.error_estimate});
        } else {
          const auto r = integrate(esu::esu_distribution(p), full, reg);
          rows.push_back({a, r.value, r.error_bound});
        }
      }
      return rows;
    }
    const auto p = esu_params(o);
    if (limit) {
      const auto r = esu::esu_energy_result(p);
      rows.push_back({p.aR2(), r.value, r.error_estimate});
    } else {
      const auto r = integrate(esu::esu_distribution(p), full, reg);
      rows.push_back({p.aR2(), r.value, r.error_bound});
    }
    return rows;
  }
  if (!o.grid.empty()) throw ArgumentError("energy sweeps are only defined for esu (over aR2)");
  if (!limit) {
    const auto r = integrate(distribution_for(o), full, reg);
    rows.push_back({o.L, r.value, r.error_bound});
    return rows;
  }
  const auto r = o.geometry == "circle" ? circle::circle_energy_extrapolated({o.L})
                                        : slab::slab_energy_extrapolated({o.L});
  rows.push_back({o.L, r.value, r.error_estimate});
  return rows;
}

inline std::vector<Row> cmd_zero_crossing() {
  const auto z = esu::esu_zero_crossing_result();
  return {Row{z.a02, std::fabs(esu::esu_energy(-z.a02)), z.bracket_width}};
}

inline void write_csv(std::ostream& os, const std::vector<Row>& rows) {
  os << "x,value,error_bound\n";
  for (const auto& r : rows) {
    os << format_number(r.x) << ',' << format_number(r.value) << ',' << format_number(r.error_bound)
       << '\n';
  }
}

inline void write_json(std::ostream& os, const Options& o, const std::vector<Row>& rows) {
  nlohmann::ordered_json cfg;
  cfg["command"] = o.command;
  cfg["geometry"] = o.geometry;
  if (o.geometry == "esu") {
    cfg["R"] = o.R;
    if (o.aR2) cfg["aR2"] = *o.aR2;
    if (o.mu2) cfg["mu2"] = *o.mu2;
    if (o.xi) cfg["xi"] = *o.xi;
  } else {
    cfg["L"] = o.L;
  }
  if (!o.reg.empty()) cfg["reg"] = o.reg;
  if (!o.grid.empty()) cfg["grid"] = o.grid;
  if (!o.window.empty()) cfg["window"] = o.window;
  if (o.m > 0) cfg["m"] = o.m;
  nlohmann::ordered_json out;
  out["config"] = cfg;
  out["rows"] = nlohmann::ordered_json::array();
  for (const auto& r : rows) {
    out["rows"].push_back({{"x", r.x}, {"value", r.value}, {"error_bound", r.error_bound}});
  }
  os << out.dump(2) << '\n';
}

inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Renormalised vacuum spectra: circle, slab and Einstein static universe"};
  app.allow_config_extras(CLI::config_extras_mode::error);
  app.set_config("--config", "", "flat key=value file; command-line flags take precedence");

  Options o;
  app.add_option("command", o.command, "spectrum | integrate | energy | zero-crossing")
      ->required()
      ->check(CLI::IsMember({"spectrum", "integrate", "energy", "zero-crossing"}));
  app.add_option("--geometry", o.geometry)->check(CLI::IsMember({"circle", "slab", "esu"}));
  app.add_option("--L", o.L, "circumference / period (circle, slab)");
  app.add_option("--R", o.R, "sphere radius (esu)");
  app.add_option("--aR2", o.aR2, "a^2 R^2 (esu, massless)");
  app.add_option("--mu2", o.mu2, "mass squared (esu)");
  app.add_option("--xi", o.xi, "curvature coupling (esu)");
  app.add_option("--reg", o.reg, "exp:<eps> | exp-q:<q> | sharp:<q> | none");
  app.add_option("--grid", o.grid, "start:stop:n[:log]");
  app.add_option("--window", o.window, "lo:hi (energy over a window; hi may be inf)");
  app.add_option("--m", o.m, "weight-function order (circle spectrum)");
  app.add_option("--out", o.out, "output file (default: standard output)");
  app.add_option("--format", o.format)->check(CLI::IsMember({"csv", "json"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUser;
  }

  try {
    if (o.geometry != "esu") {
      if (!std::isfinite(o.L) || !(o.L > 0.0)) throw ArgumentError("--L must be > 0");
    }
    std::vector<Row> rows;
    if (o.command == "spectrum") {
      rows = cmd_spectrum(o);
    } else if (o.command == "integrate") {
      rows = cmd_integrate(o);
    } else if (o.command == "energy") {
      rows = cmd_energy(o);
    } else {
      rows = cmd_zero_crossing();
    }
    std::ostringstream buf;
    if (o.format == "json") {
      write_json(buf, o, rows);
    } else {
      write_csv(buf, rows);
    }
    if (o.out.empty()) {
      out << buf.str();
    } else {
      std::ofstream f(o.out, std::ios::binary);
      if (!f) throw ArgumentError("cannot open output file '" + o.out + "'");
      f << buf.str();
      if (!f) throw ArgumentError("failed writing '" + o.out + "'");
    }
    return kExitOk;
  } catch (const ConsistencyError& e) {
    err << "internal consistency failure: " << e.what() << '\n';
    return kExitInternal;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUser;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kExitInternal;
  }
}

}  // namespace vacspec::cli
