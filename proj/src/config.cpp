// Copyright 2026 The phonoread Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "phonoread/config.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>
#include <utility>

namespace phonoread {

using nlohmann::json;

namespace {

struct Unit {
  const char* name;
  Dimension dim;
  double scale;
};

constexpr double k2Pi = constants::kTwoPi;

const Unit kUnits[] = {
    {"Hz", Dimension::frequency, k2Pi},       {"kHz", Dimension::frequency, k2Pi * 1e3},
    {"MHz", Dimension::frequency, k2Pi * 1e6}, {"rad/s", Dimension::frequency, 1.0},
    {"krad/s", Dimension::frequency, 1e3},     {"Mrad/s", Dimension::frequency, 1e6},
    {"s", Dimension::time, 1.0},               {"ms", Dimension::time, 1e-3},
    {"us", Dimension::time, 1e-6},             {"\xC2\xB5s", Dimension::time, 1e-6},
    {"ns", Dimension::time, 1e-9},             {"m", Dimension::length, 1.0},
    {"mm", Dimension::length, 1e-3},           {"um", Dimension::length, 1e-6},
    {"\xC2\xB5m", Dimension::length, 1e-6},    {"nm", Dimension::length, 1e-9},
    {"/s", Dimension::rate, 1.0},              {"/ms", Dimension::rate, 1e3},
    {"/us", Dimension::rate, 1e6},
};

const char* dim_name(Dimension d) {
  switch (d) {
    case Dimension::frequency:
      return "a frequency (Hz, kHz, MHz, rad/s, krad/s, Mrad/s)";
    case Dimension::time:
      return "a time (s, ms, us, ns)";
    case Dimension::length:
      return "a length (m, mm, um, nm)";
    case Dimension::rate:
      return "a rate (/s, /ms, /us)";
  }
  return "?";
}

std::string fmt(double v, const char* unit) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g %s", v, unit);
  return buf;
}

// Reads keys of one JSON object, remembering which were consumed so the
// rest can be reported as unknown.
class ObjectReader {
 public:
  ObjectReader(const json& j, std::string prefix) : j_(j), prefix_(std::move(prefix)) {
    if (!j_.is_object()) throw ConfigError(prefix_.empty() ? "<root>" : prefix_, "expected a JSON object");
  }

  std::string key(const std::string& k) const { return prefix_.empty() ? k : prefix_ + "." + k; }

  const json* get(const std::string& k) {
    seen_.insert(k);
    auto it = j_.find(k);
    return it == j_.end() ? nullptr : &*it;
  }

  template <typename F>
  void with(const std::string& k, F&& f) {
    if (const json* v = get(k)) {
      try {
        f(*v);
      } catch (const ConfigError&) {
        throw;
      } catch (const std::exception& e) {
        throw ConfigError(key(k), e.what());
      }
    }
  }

  void quantity(const std::string& k, Dimension d, double& out) {
    with(k, [&](const json& v) {
      if (!v.is_string()) throw ConfigError(key(k), std::string("expected a string with ") + dim_name(d));
      out = parse_quantity(v.get<std::string>(), d, key(k));
    });
  }

  void count(const std::string& k, std::size_t& out) {
    with(k, [&](const json& v) {
      if (!v.is_number_integer()) throw ConfigError(key(k), "expected an integer");
      if (v.get<std::int64_t>() < 0) throw ConfigError(key(k), "must be >= 0");
      out = v.get<std::size_t>();
    });
  }

  void finish() const {
    for (auto it = j_.begin(); it != j_.end(); ++it)
      if (!seen_.count(it.key())) throw ConfigError(key(it.key()), "unknown key");
  }

 private:
  const json& j_;
  std::string prefix_;
  std::set<std::string> seen_;
};

Timing parse_timing(const std::string& s, const std::string& key) {
  if (s == "ideal") return Timing::ideal;
  if (s == "hopping_aware") return Timing::hopping_aware;
  throw ConfigError(key, "expected \"ideal\" or \"hopping_aware\"");
}

MappingOrder parse_order(const std::string& s, const std::string& key) {
  if (s == "sequential") return MappingOrder::sequential;
  if (s == "simultaneous") return MappingOrder::simultaneous;
  throw ConfigError(key, "expected \"sequential\" or \"simultaneous\"");
}

// Re-run the domain validation and attribute failures to a key.
template <typename F>
void check(const std::string& key, F&& f) {
  try {
    f();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(key, e.what());
  }
}

void validate_with_keys(const ScenarioConfig& c) {
  check("shots", [&] {
    if (c.shots < 1) throw std::invalid_argument("must be >= 1");
  });
  check("ion_spacing", [&] {
    if (!(c.physical.ion_spacing > 0.0)) throw std::invalid_argument("must be positive");
  });
  check("trap_frequency", [&] {
    if (!(c.physical.trap_frequency > 0.0)) throw std::invalid_argument("must be positive");
  });
  check("kappa", [&] {
    if (c.kappa && !(*c.kappa >= 0.0)) throw std::invalid_argument("must be >= 0");
  });
  check("gamma", [&] {
    if (!(c.decoherence.gamma >= 0.0)) throw std::invalid_argument("must be >= 0");
  });
  check("motional_gamma", [&] {
    if (!(c.decoherence.motional_gamma >= 0.0)) throw std::invalid_argument("must be >= 0");
  });
  check("carrier_pi_time", [&] { c.rabi.validate(); });
  check("fig2_states", [&] {
    for (auto n : c.fig2_states)
      if (n > 2) throw std::invalid_argument("entries must be 0, 1 or 2");
  });
  check("times", [&] {
    for (std::size_t i = 0; i < c.times.size(); ++i) {
      if (!(c.times[i] >= 0.0)) throw std::invalid_argument("must be non-negative");
      if (i && c.times[i] < c.times[i - 1]) throw std::invalid_argument("must be sorted");
    }
  });
  check("tqd", [&] { c.tqd_sweep.validate(); });
  check("integrator", [&] { c.integrator.validate(); });
  check("budget_kappas", [&] {
    for (double k : c.budget_kappas)
      if (!(k >= 0.0)) throw std::invalid_argument("must be >= 0");
  });
  c.validate();
}

}  // namespace

double parse_quantity(const std::string& text, Dimension dim, const std::string& key) {
  const char* s = text.c_str();
  char* end = nullptr;
  const double v = std::strtod(s, &end);
  if (end == s || !std::isfinite(v)) throw ConfigError(key, "cannot read a number from \"" + text + "\"");
  std::string unit(end);
  while (!unit.empty() && std::isspace(static_cast<unsigned char>(unit.front()))) unit.erase(unit.begin());
  while (!unit.empty() && std::isspace(static_cast<unsigned char>(unit.back()))) unit.pop_back();
  if (unit.empty()) throw ConfigError(key, std::string("missing unit; expected ") + dim_name(dim));
  for (const auto& u : kUnits)
    if (unit == u.name) {
      if (u.dim != dim) throw ConfigError(key, "unit \"" + unit + "\" is not " + dim_name(dim));
      return v * u.scale;
    }
  throw ConfigError(key, "unknown unit \"" + unit + "\"");
}

ScenarioConfig config_from_json(const json& j) {
  ScenarioConfig c;
  ObjectReader r(j, "");

  r.with("scenario", [&](const json& v) {
    const auto k = parse_scenario(v.get<std::string>());
    if (!k) throw ConfigError("scenario", "expected fig2, fig3, tqd or budget");
    c.scenario = *k;
  });
  r.with("shots", [&](const json& v) {
    if (!v.is_number_integer() || v.get<std::int64_t>() < 1) throw ConfigError("shots", "must be an integer >= 1");
    c.shots = v.get<std::size_t>();
  });
  r.with("seed", [&](const json& v) {
    if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<std::int64_t>() >= 0))
      throw ConfigError("seed", "must be a non-negative integer");
    c.seed = v.get<std::uint64_t>();
  });
  r.with("out", [&](const json& v) { c.out_dir = v.get<std::string>(); });

  r.quantity("ion_spacing", Dimension::length, c.physical.ion_spacing);
  r.quantity("trap_frequency", Dimension::frequency, c.physical.trap_frequency);
  r.with("kappa", [&](const json& v) {
    if (!v.is_null()) c.kappa = parse_quantity(v.get<std::string>(), Dimension::frequency, "kappa");
  });
  r.quantity("gamma", Dimension::rate, c.decoherence.gamma);
  r.quantity("motional_gamma", Dimension::rate, c.decoherence.motional_gamma);
  c.decoherence.enabled = c.decoherence.gamma > 0.0 || c.decoherence.motional_gamma > 0.0;

  r.with("timing", [&](const json& v) { c.timing = parse_timing(v.get<std::string>(), "timing"); });
  r.with("order", [&](const json& v) { c.order = parse_order(v.get<std::string>(), "order"); });

  double pi_time = M_PI / c.rabi.carrier_rabi;
  double comp = M_PI * (1.0 + 1.0 / std::sqrt(2.0)) / c.rabi.sideband_rabi();
  r.quantity("carrier_pi_time", Dimension::time, pi_time);
  r.quantity("composite_duration", Dimension::time, comp);
  check("carrier_pi_time", [&] {
    if (!(pi_time > 0.0)) throw std::invalid_argument("must be positive");
  });
  check("composite_duration", [&] {
    if (!(comp > 0.0)) throw std::invalid_argument("must be positive");
  });
  c.rabi = RabiParams::from_timings(pi_time, comp);

  r.with("fig2_states", [&](const json& v) {
    if (!v.is_array()) throw ConfigError("fig2_states", "expected an array of integers");
    c.fig2_states.clear();
    for (const auto& e : v) {
      if (!e.is_number_integer() || e.get<std::int64_t>() < 0)
        throw ConfigError("fig2_states", "entries must be non-negative integers");
      c.fig2_states.push_back(e.get<std::size_t>());
    }
  });

  r.with("times", [&](const json& v) {
    c.times.clear();
    if (v.is_array()) {
      for (const auto& e : v) c.times.push_back(parse_quantity(e.get<std::string>(), Dimension::time, "times"));
      return;
    }
    ObjectReader g(v, "times");
    double start = 0.0, stop = 0.0, step = 0.0;
    g.quantity("start", Dimension::time, start);
    g.quantity("stop", Dimension::time, stop);
    g.quantity("step", Dimension::time, step);
    g.finish();
    if (!(step > 0.0)) throw ConfigError("times.step", "must be positive");
    if (stop < start) throw ConfigError("times.stop", "must be >= start");
    const auto n = static_cast<std::size_t>(std::floor((stop - start) / step * (1.0 + 1e-12)));
    for (std::size_t i = 0; i <= n; ++i) c.times.push_back(start + static_cast<double>(i) * step);
  });

  r.with("tqd", [&](const json& v) {
    ObjectReader t(v, "tqd");
    t.quantity("duration", Dimension::time, c.tqd_sweep.duration);
    t.quantity("peak_rabi", Dimension::frequency, c.tqd_sweep.peak_rabi);
    t.quantity("detuning_span", Dimension::frequency, c.tqd_sweep.detuning_span);
    t.with("chirp_steepness", [&](const json& s) {
      if (!s.is_number()) throw ConfigError("tqd.chirp_steepness", "expected a number");
      c.tqd_sweep.chirp_steepness = s.get<double>();
    });
    t.with("counterdiabatic", [&](const json& s) {
      if (!s.is_boolean()) throw ConfigError("tqd.counterdiabatic", "expected true or false");
      c.tqd_sweep.counterdiabatic = s.get<bool>();
    });
    t.count("max_n", c.tqd_max_n);
    t.finish();
  });

  r.with("integrator", [&](const json& v) {
    ObjectReader g(v, "integrator");
    g.with("steps_per_radian", [&](const json& s) {
      if (!s.is_number()) throw ConfigError("integrator.steps_per_radian", "expected a number");
      c.integrator.steps_per_radian = s.get<double>();
    });
    g.with("tolerance", [&](const json& s) {
      if (!s.is_number()) throw ConfigError("integrator.tolerance", "expected a number");
      c.integrator.tolerance = s.get<double>();
    });
    g.with("max_refinements", [&](const json& s) {
      if (!s.is_number_integer()) throw ConfigError("integrator.max_refinements", "expected an integer");
      c.integrator.max_refinements = s.get<int>();
    });
    g.finish();
  });

  r.with("budget_kappas", [&](const json& v) {
    if (!v.is_array()) throw ConfigError("budget_kappas", "expected an array of frequencies");
    c.budget_kappas.clear();
    for (const auto& e : v)
      c.budget_kappas.push_back(parse_quantity(e.get<std::string>(), Dimension::frequency, "budget_kappas"));
  });

  r.finish();
  return c;
}

ScenarioConfig parse_config_text(const std::string& text, const ConfigOverrides& o) {
  json j;
  try {
    j = text.find_first_not_of(" \t\r\n") == std::string::npos ? json::object() : json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError("", std::string("malformed JSON: ") + e.what());
  }
  ScenarioConfig c = config_from_json(j);
  if (o.scenario) {
    const auto k = parse_scenario(*o.scenario);
    if (!k) throw ConfigError("scenario", "expected fig2, fig3, tqd or budget");
    c.scenario = *k;
  }
  if (o.shots) c.shots = *o.shots;
  if (o.seed) c.seed = *o.seed;
  if (o.out_dir) c.out_dir = *o.out_dir;
  validate_with_keys(c);
  return c;
}

ScenarioConfig parse_config(const std::string& path, const ConfigOverrides& overrides) {
  if (path.empty()) return parse_config_text("", overrides);
  std::ifstream in(path);
  if (!in) throw ConfigError("", "cannot read config file " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str(), overrides);
}

json config_to_json(const ScenarioConfig& c) {
  json j;
  j["scenario"] = to_string(c.scenario);
  j["shots"] = c.shots;
  j["seed"] = c.seed;
  j["out"] = c.out_dir;
  j["ion_spacing"] = fmt(c.physical.ion_spacing, "m");
  j["trap_frequency"] = fmt(c.physical.trap_frequency, "rad/s");
  if (c.kappa) j["kappa"] = fmt(*c.kappa, "rad/s");
  j["gamma"] = fmt(c.decoherence.gamma, "/s");
  j["motional_gamma"] = fmt(c.decoherence.motional_gamma, "/s");
  j["timing"] = c.timing == Timing::ideal ? "ideal" : "hopping_aware";
  j["order"] = c.order == MappingOrder::sequential ? "sequential" : "simultaneous";
  j["carrier_pi_time"] = fmt(M_PI / c.rabi.carrier_rabi, "s");
  j["composite_duration"] = fmt(composite_duration(c.rabi), "s");
  j["fig2_states"] = c.fig2_states;
  json times = json::array();
  for (double t : c.time_grid()) times.push_back(fmt(t, "s"));
  j["times"] = times;
  j["tqd"] = {{"duration", fmt(c.tqd_sweep.duration, "s")},
              {"peak_rabi", fmt(c.tqd_sweep.peak_rabi, "rad/s")},
              {"detuning_span", fmt(c.tqd_sweep.detuning_span, "rad/s")},
              {"chirp_steepness", c.tqd_sweep.chirp_steepness},
              {"counterdiabatic", c.tqd_sweep.counterdiabatic},
              {"max_n", c.tqd_max_n}};
  j["integrator"] = {{"steps_per_radian", c.integrator.steps_per_radian},
                     {"tolerance", c.integrator.tolerance},
                     {"max_refinements", c.integrator.max_refinements}};
  json kappas = json::array();
  for (double k : c.budget_grid()) kappas.push_back(fmt(k, "rad/s"));
  j["budget_kappas"] = kappas;
  return j;
}

}  // namespace phonoread
