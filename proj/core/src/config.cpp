#include "qlzsm/config.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>

namespace qlzsm {

const char* format_name(OutputFormat f) {
  return f == OutputFormat::kCsv ? "csv" : "json";
}

namespace {

std::vector<double> range_axis(double lo, double hi, double step,
                               const char* what) {
  if (!(step > 0.0) || !(hi >= lo)) {
    throw ValidationError(std::string("bad ") + what + " axis range");
  }
  const int count = static_cast<int>(std::llround((hi - lo) / step)) + 1;
  std::vector<double> axis(count);
  for (int i = 0; i < count; ++i) axis[i] = lo + step * i;
  return axis;
}

}  // namespace

std::vector<double> SweepSettings::amplitude_axis() const {
  return range_axis(amp_min, amp_max, amp_step, "amplitude");
}

std::vector<double> SweepSettings::offset_axis() const {
  return range_axis(offset_min, offset_max, offset_step, "offset");
}

std::vector<double> ScalingSettings::default_grid_for(double mod_depth) {
  // Chosen so the passage survival spans roughly [0.03, 0.6]; beyond that the
  // exponential bottoms out against residual nonadiabatic leakage and the
  // linear-in-Omega^4 regime ends.
  const double d = units::angular_to_mhz(std::abs(mod_depth));
  std::vector<double> mhz;
  if (d <= 16.0) {
    mhz = {24, 26, 28, 30, 32, 34, 36, 38, 40};
  } else if (d <= 22.5) {
    mhz = {27, 30, 33, 36, 39, 42, 45};
  } else {
    mhz = {28, 31, 34, 37, 40, 43, 46, 49};
  }
  std::vector<double> out(mhz.size());
  std::transform(mhz.begin(), mhz.end(), out.begin(), units::mhz_to_angular);
  return out;
}

ScalingSettings::ScalingSettings() {
  for (double d : mod_depths) amplitude_grids.push_back(default_grid_for(d));
}

void RunConfig::validate() const {
  system.validate();
  drive.validate();
  if (!(tol > 0.0)) throw ValidationError("run: tol must be positive");
  if (n_samples < 2) throw ValidationError("run: samples must be >= 2");
  if (threads < 0) throw ValidationError("run: threads must be >= 0");
  if (scaling.mod_depths.size() != scaling.amplitude_grids.size()) {
    throw ValidationError("scaling: one amplitude grid per modulation depth");
  }
  for (double d : scaling.mod_depths) {
    if (d == 0.0) throw ValidationError("scaling: modulation depth cannot be 0");
  }
}

namespace {

enum class Quantity {
  kAngularFrequency,  // 2 pi x value
  kRate,              // plain inverse time
  kTime,
  kTemperature,
  kPlain,
};

struct ParsedValue {
  std::vector<double> values;
};

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

[[noreturn]] void fail(const std::string& name, int line,
                       const std::string& message) {
  throw ValidationError(name + ":" + std::to_string(line) + ": " + message);
}

std::optional<double> unit_factor(Quantity q, const std::string& unit) {
  using namespace units;
  if (q == Quantity::kAngularFrequency) {
    if (unit == "GHz") return kTwoPi * 1e3;
    if (unit == "MHz") return kTwoPi;
    if (unit == "kHz") return kTwoPi * 1e-3;
    if (unit == "Hz") return kTwoPi * 1e-6;
  } else if (q == Quantity::kRate) {
    if (unit == "GHz") return 1e3;
    if (unit == "MHz") return 1.0;
    if (unit == "kHz") return 1e-3;
    if (unit == "Hz") return 1e-6;
  } else if (q == Quantity::kTime) {
    if (unit == "s") return 1e6;
    if (unit == "ms") return 1e3;
    if (unit == "us") return 1.0;
    if (unit == "ns") return 1e-3;
  } else if (q == Quantity::kTemperature) {
    if (unit == "K") return 1.0;
    if (unit == "mK") return 1e-3;
  }
  return std::nullopt;
}

const char* expected_units(Quantity q) {
  switch (q) {
    case Quantity::kAngularFrequency: return "GHz/MHz/kHz/Hz";
    case Quantity::kRate: return "GHz/MHz/kHz/Hz";
    case Quantity::kTime: return "s/ms/us/ns";
    case Quantity::kTemperature: return "K/mK";
    case Quantity::kPlain: return "(none)";
  }
  return "";
}

// Parses "<number> [unit]" items separated by commas. A trailing unit on the
// last item applies to earlier unit-less items. A bare 0 needs no unit.
ParsedValue parse_values(const std::string& field, Quantity q,
                         const std::string& text, const std::string& name,
                         int line) {
  struct Item {
    double number;
    std::string unit;
  };
  std::vector<Item> items;
  std::stringstream ss(text);
  std::string piece;
  while (std::getline(ss, piece, ',')) {
    piece = trim(piece);
    if (piece.empty()) fail(name, line, "field '" + field + "': empty value");
    char* end = nullptr;
    const double num = std::strtod(piece.c_str(), &end);
    if (end == piece.c_str()) {
      fail(name, line, "field '" + field + "': cannot parse number from '" +
                           piece + "'");
    }
    items.push_back(Item{num, trim(std::string(end))});
  }
  if (items.empty()) fail(name, line, "field '" + field + "': empty value");

  ParsedValue out;
  if (q == Quantity::kPlain) {
    for (const auto& it : items) {
      if (!it.unit.empty()) {
        fail(name, line, "field '" + field + "': unexpected unit '" + it.unit +
                             "' on a dimensionless value");
      }
      out.values.push_back(it.number);
    }
    return out;
  }

  const std::string shared_unit = items.back().unit;
  for (const auto& it : items) {
    std::string unit = it.unit.empty() ? shared_unit : it.unit;
    if (unit.empty()) {
      if (it.number == 0.0) {
        out.values.push_back(0.0);
        continue;
      }
      fail(name, line, "field '" + field + "': missing unit (expected " +
                           expected_units(q) + ")");
    }
    const auto factor = unit_factor(q, unit);
    if (!factor) {
      fail(name, line, "field '" + field + "': unrecognized unit '" + unit +
                           "' (expected " + expected_units(q) + ")");
    }
    out.values.push_back(it.number * *factor);
  }
  return out;
}

double parse_scalar(const std::string& field, Quantity q,
                    const std::string& text, const std::string& name,
                    int line) {
  auto v = parse_values(field, q, text, name, line);
  if (v.values.size() != 1) {
    fail(name, line, "field '" + field + "': expected a single value");
  }
  return v.values[0];
}

int parse_int(const std::string& field, const std::string& text,
              const std::string& name, int line) {
  const double v = parse_scalar(field, Quantity::kPlain, text, name, line);
  const int i = static_cast<int>(std::llround(v));
  if (std::abs(v - i) > 1e-9) {
    fail(name, line, "field '" + field + "': expected an integer");
  }
  return i;
}

}  // namespace

RunConfig parse_config(const std::string& text, const std::string& name) {
  RunConfig cfg;
  std::map<std::string, int> seen;  // "section.key" -> line

  bool scaling_grid_set = false;
  std::vector<double> scaling_amps;

  std::istringstream in(text);
  std::string raw;
  std::string section;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    std::string s = raw;
    if (auto pos = s.find('#'); pos != std::string::npos) s.resize(pos);
    if (auto pos = s.find(';'); pos != std::string::npos) s.resize(pos);
    s = trim(s);
    if (s.empty()) continue;

    if (s.front() == '[') {
      if (s.back() != ']') fail(name, line, "unterminated section header");
      section = trim(s.substr(1, s.size() - 2));
      if (section != "system" && section != "drive" && section != "run" &&
          section != "sweep" && section != "scaling") {
        fail(name, line, "unknown section '" + section + "'");
      }
      continue;
    }

    const auto eq = s.find('=');
    if (eq == std::string::npos) {
      fail(name, line, "expected 'key = value'");
    }
    const std::string key = trim(s.substr(0, eq));
    const std::string value = trim(s.substr(eq + 1));
    if (key.empty()) fail(name, line, "empty key");
    if (section.empty()) {
      fail(name, line, "key '" + key + "' outside any [section]");
    }

    const std::string full = section + "." + key;
    if (auto it = seen.find(full); it != seen.end()) {
      fail(name, line, "duplicate key '" + full + "' (first at line " +
                           std::to_string(it->second) + ")");
    }
    seen[full] = line;

    auto freq = [&](const char* f) {
      return parse_scalar(f, Quantity::kAngularFrequency, value, name, line);
    };

    if (section == "system") {
      if (key == "omega_ge") cfg.system.omega_ge = freq("omega_ge");
      else if (key == "omega_ef") cfg.system.omega_ef = freq("omega_ef");
      else if (key == "dipole_ratio_ef") {
        const double r = parse_scalar(key, Quantity::kPlain, value, name, line);
        cfg.system.dipole_sq_ef = r * r;
      } else if (key == "dipole_ratio_fh") {
        const double r = parse_scalar(key, Quantity::kPlain, value, name, line);
        cfg.system.dipole_sq_fh = r * r;
      }
      else if (key == "n_levels")
        cfg.system.n_levels = parse_int(key, value, name, line);
      else if (key == "gamma_eg")
        cfg.system.gamma_eg =
            parse_scalar(key, Quantity::kRate, value, name, line);
      else if (key == "temperature")
        cfg.system.temperature =
            parse_scalar(key, Quantity::kTemperature, value, name, line);
      else fail(name, line, "unknown key 'system." + key + "'");
    } else if (section == "drive") {
      if (key == "duration")
        cfg.drive.duration =
            parse_scalar(key, Quantity::kTime, value, name, line);
      else if (key == "mod_depth") cfg.drive.mod_depth = freq("mod_depth");
      else if (key == "offset") cfg.drive.offset = freq("offset");
      else if (key == "amplitude") cfg.drive.omega_max = freq("amplitude");
      else if (key == "envelope_order")
        cfg.drive.envelope_order = parse_int(key, value, name, line);
      else if (key == "envelope_cutoff")
        cfg.drive.envelope_cutoff =
            parse_scalar(key, Quantity::kPlain, value, name, line);
      else fail(name, line, "unknown key 'drive." + key + "'");
    } else if (section == "run") {
      if (key == "engine") {
        if (value == "schrodinger") cfg.engine = Engine::kSchrodinger;
        else if (value == "lindblad") cfg.engine = Engine::kLindblad;
        else if (value == "effective") cfg.engine = Engine::kEffective;
        else fail(name, line, "engine must be schrodinger|lindblad|effective");
      } else if (key == "convention") {
        if (value == "eq8") cfg.convention = Omega2phConvention::kEq8Coupling;
        else if (value == "eq9") cfg.convention = Omega2phConvention::kEq9Text;
        else fail(name, line, "convention must be eq8|eq9");
      } else if (key == "format") {
        if (value == "csv") cfg.format = OutputFormat::kCsv;
        else if (value == "json") cfg.format = OutputFormat::kJson;
        else fail(name, line, "format must be csv|json");
      } else if (key == "tol") {
        cfg.tol = parse_scalar(key, Quantity::kPlain, value, name, line);
      } else if (key == "samples") {
        cfg.n_samples = parse_int(key, value, name, line);
      } else if (key == "threads") {
        cfg.threads = parse_int(key, value, name, line);
      } else if (key == "out_dir") {
        cfg.out_dir = value;
      } else if (key == "preset") {
        cfg.preset = value;
      } else {
        fail(name, line, "unknown key 'run." + key + "'");
      }
    } else if (section == "sweep") {
      if (key == "amp_min") cfg.sweep.amp_min = freq(key.c_str());
      else if (key == "amp_max") cfg.sweep.amp_max = freq(key.c_str());
      else if (key == "amp_step") cfg.sweep.amp_step = freq(key.c_str());
      else if (key == "offset_min") cfg.sweep.offset_min = freq(key.c_str());
      else if (key == "offset_max") cfg.sweep.offset_max = freq(key.c_str());
      else if (key == "offset_step") cfg.sweep.offset_step = freq(key.c_str());
      else if (key == "contour_levels")
        cfg.sweep.contour_levels =
            parse_values(key, Quantity::kPlain, value, name, line).values;
      else fail(name, line, "unknown key 'sweep." + key + "'");
    } else if (section == "scaling") {
      if (key == "mod_depths") {
        cfg.scaling.mod_depths =
            parse_values(key, Quantity::kAngularFrequency, value, name, line)
                .values;
      } else if (key == "amplitudes") {
        scaling_amps =
            parse_values(key, Quantity::kAngularFrequency, value, name, line)
                .values;
        scaling_grid_set = true;
      } else {
        fail(name, line, "unknown key 'scaling." + key + "'");
      }
    }
  }

  cfg.scaling.amplitude_grids.clear();
  for (double d : cfg.scaling.mod_depths) {
    cfg.scaling.amplitude_grids.push_back(
        scaling_grid_set ? scaling_amps
                         : ScalingSettings::default_grid_for(d));
  }

  cfg.validate();
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw ValidationError("cannot open configuration file '" + path + "'");
  }
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), path);
}

}  // namespace qlzsm
