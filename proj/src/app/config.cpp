#include "nlse/app/config.hpp"

#include <fstream>
#include <initializer_list>
#include <sstream>
#include <string_view>

#include "json.hpp"
#include "nlse/snapshot.hpp"

namespace nlse::app {

namespace {

using json = nlohmann::json;

void only_keys(const json& obj, std::string_view where, std::initializer_list<std::string_view> keys) {
  if (!obj.is_object()) throw ConfigError(std::string(where) + " must be a JSON object");
  for (const auto& [key, value] : obj.items()) {
    bool known = false;
    for (auto k : keys) known = known || key == k;
    if (!known) throw ConfigError("unknown key '" + key + "' in " + std::string(where));
  }
}

template <class T>
T get(const json& obj, const char* key, std::string_view where) {
  try {
    return obj.at(key).get<T>();
  } catch (const json::exception&) {
    throw ConfigError("key '" + std::string(key) + "' in " + std::string(where) +
                      " has the wrong type");
  }
}

template <class T>
void read(const json& obj, const char* key, std::string_view where, T& dst) {
  if (obj.contains(key)) dst = get<T>(obj, key, where);
}

template <class T>
void read(const json& obj, const char* key, std::string_view where, std::optional<T>& dst) {
  if (obj.contains(key)) dst = get<T>(obj, key, where);
}

std::vector<double> harmonic(const GridSpec& g, double a) {
  return sample_real(g, [a](double x, double y, double z) { return (x * x + y * y + z * z) / a; });
}

}  // namespace

RunConfig parse_config(const std::string& json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  only_keys(root, "config",
            {"preset", "half_width", "grid", "initial", "a", "s", "potential", "scheme", "boundary",
             "k", "k_fraction", "t_end", "monitor_every", "out", "snapshot", "json", "digits",
             "k_lo", "k_hi", "spectrum", "region"});
  RunConfig c;
  read(root, "preset", "config", c.preset);
  read(root, "half_width", "config", c.half_width);
  read(root, "a", "config", c.a);
  read(root, "s", "config", c.s);
  read(root, "potential", "config", c.potential);
  read(root, "scheme", "config", c.scheme);
  read(root, "boundary", "config", c.boundary);
  read(root, "k", "config", c.k);
  read(root, "k_fraction", "config", c.k_fraction);
  read(root, "t_end", "config", c.t_end);
  read(root, "monitor_every", "config", c.monitor_every);
  read(root, "out", "config", c.out);
  read(root, "snapshot", "config", c.snapshot);
  read(root, "json", "config", c.json);
  read(root, "digits", "config", c.digits);
  read(root, "k_lo", "config", c.k_lo);
  read(root, "k_hi", "config", c.k_hi);

  if (root.contains("grid")) {
    const json& g = root["grid"];
    only_keys(g, "grid", {"dim", "lo", "hi", "h"});
    GridConfig gc;
    read(g, "dim", "grid", gc.dim);
    read(g, "lo", "grid", gc.lo);
    read(g, "hi", "grid", gc.hi);
    read(g, "h", "grid", gc.h);
    c.grid = gc;
  }
  if (root.contains("initial")) {
    const json& i = root["initial"];
    only_keys(i, "initial", {"kind", "omega", "m", "x0", "path"});
    InitialConfig ic;
    ic.kind = get<std::string>(i, "kind", "initial");
    read(i, "omega", "initial", ic.omega);
    read(i, "m", "initial", ic.m);
    read(i, "x0", "initial", ic.x0);
    read(i, "path", "initial", ic.path);
    c.initial = ic;
  }
  if (root.contains("spectrum")) {
    const json& s = root["spectrum"];
    only_keys(s, "spectrum", {"dim", "n", "dump"});
    read(s, "dim", "spectrum", c.spectrum_dim);
    read(s, "n", "spectrum", c.spectrum_n);
    read(s, "dump", "spectrum", c.dump);
  }
  if (root.contains("region")) {
    const json& r = root["region"];
    only_keys(r, "region", {"order", "resolution", "re_min", "re_max", "im_min", "im_max"});
    read(r, "order", "region", c.order);
    read(r, "resolution", "region", c.resolution);
    read(r, "re_min", "region", c.re_min);
    read(r, "re_max", "region", c.re_max);
    read(r, "im_min", "region", c.im_min);
    read(r, "im_max", "region", c.im_max);
  }
  return c;
}

RunConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file " + path);
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config(text.str());
}

Preset build_problem(const RunConfig& c) {
  try {
    if (c.preset) {
      if (c.grid || c.initial) throw ConfigError("a preset cannot be combined with grid or initial");
      PresetOptions opt;
      opt.half_width = c.half_width;
      Preset p = make_preset(*c.preset, opt);
      if (c.a) p.params.a = *c.a;
      if (c.s) p.params.s = *c.s;
      if (c.potential) {
        p.params.potential = *c.potential == "harmonic"
                                 ? harmonic(p.psi0.grid(), p.params.a)
                                 : std::vector<double>(p.psi0.size(), 0.0);
      }
      p.params.validate(p.psi0.grid());
      return p;
    }
    if (!c.initial) throw ConfigError("config needs either a preset or an initial condition");
    const InitialConfig& ic = *c.initial;
    const double a = c.a.value_or(1.0);
    const double s = c.s.value_or(0.0);

    Preset p{ic.kind, ComplexField(GridSpec{}), PhysParams{}, SchemeOrder::kCd2,
             BoundaryKind::kDirichlet};
    if (ic.kind == "snapshot") {
      try {
        p.psi0 = read_snapshot_file(ic.path);
      } catch (const std::exception& e) {
        throw IoError(e.what());
      }
    } else {
      if (!c.grid) throw ConfigError("initial kind '" + ic.kind + "' needs a grid");
      const GridConfig& gc = *c.grid;
      const GridSpec g = GridSpec::from_extents(gc.dim, gc.lo, gc.hi, gc.h);
      if (ic.kind == "soliton") {
        if (gc.dim != 1) throw ConfigError("soliton needs a 1D grid");
        p.psi0 = bright_soliton(g, ic.omega, s, a);
      } else if (ic.kind == "vortex_pair") {
        p.psi0 = vortex_pair(g, vortex_profile(ic.m, ic.omega, s, a), ic.m, ic.x0);
      } else if (ic.kind == "kicked_gaussian") {
        p.psi0 = kicked_gaussian(g, a).psi;
      } else if (ic.kind == "zero") {
        p.psi0 = ComplexField(g);
      } else {
        throw ConfigError("unknown initial kind '" + ic.kind + "'");
      }
    }
    const GridSpec& g = p.psi0.grid();
    const std::string pot = c.potential.value_or(ic.kind == "kicked_gaussian" ? "harmonic" : "none");
    if (pot != "none" && pot != "harmonic") {
      throw ConfigError("potential must be 'none' or 'harmonic'");
    }
    p.params = PhysParams{a, s, pot == "harmonic" ? harmonic(g, a) : std::vector<double>(g.size(), 0.0)};
    p.params.validate(g);
    return p;
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
}

SchemeOrder resolved_scheme(const RunConfig& c, const Preset& p) {
  try {
    return c.scheme ? parse_scheme(*c.scheme) : p.scheme;
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
}

BoundaryKind resolved_boundary(const RunConfig& c, const Preset& p) {
  try {
    return c.boundary ? parse_boundary_kind(*c.boundary) : p.boundary;
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
}

}  // namespace nlse::app
