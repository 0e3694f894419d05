#include "ediffract/config.hpp"

#include <algorithm>
#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>
#include <vector>

#include "ediffract/errors.hpp"

namespace ediffract {

namespace {

enum class Kind { length, real, integer, word };

struct KeyInfo {
  Kind kind;
  const char* fixed_suffix;  // appended to the base name for non-length keys, may be empty
};

// base name -> kind; length keys take a unit suffix, the others a fixed one
const std::map<std::string, KeyInfo>& schema() {
  static const std::map<std::string, KeyInfo> s = {
      {"constants", {Kind::word, ""}},
      {"beam.lambda", {Kind::length, ""}},
      {"beam.k", {Kind::real, "_per_cm"}},
      {"beam.a_in_re", {Kind::real, ""}},
      {"beam.a_in_im", {Kind::real, ""}},
      {"aperture.kind", {Kind::word, ""}},
      {"aperture.half_width", {Kind::length, ""}},
      {"aperture.half_height", {Kind::length, ""}},
      {"aperture.radius", {Kind::length, ""}},
      {"aperture.center_x1", {Kind::length, ""}},
      {"aperture.center_x2", {Kind::length, ""}},
      {"slits.separation", {Kind::length, ""}},
      {"slits.width", {Kind::length, ""}},
      {"slits.length", {Kind::length, ""}},
      {"screen.D", {Kind::length, ""}},
      {"screen.extent", {Kind::length, ""}},
      {"screen.count", {Kind::integer, ""}},
      {"screen.x1", {Kind::length, ""}},
      {"far.range", {Kind::length, ""}},
      {"far.chi_max", {Kind::real, "_rad"}},
      {"far.count", {Kind::integer, ""}},
      {"magnetic.cross_section", {Kind::length, ""}},
      {"magnetic.strength", {Kind::real, "_G"}},
      {"magnetic.major_radius", {Kind::length, ""}},
      {"magnetic.margin", {Kind::length, ""}},
      {"magnetic.born_spacing", {Kind::length, ""}},
      {"magnetic.born_order", {Kind::integer, ""}},
      {"magnetic.cells_across", {Kind::integer, ""}},
      {"magnetic.profile", {Kind::word, ""}},
      {"born.x1", {Kind::length, ""}},
      {"born.x2", {Kind::length, ""}},
      {"born.x3", {Kind::length, ""}},
      {"born.y1", {Kind::length, ""}},
      {"born.y2", {Kind::length, ""}},
      {"born.y3", {Kind::length, ""}},
      {"spectra.Z", {Kind::integer, ""}},
      {"spectra.B3", {Kind::real, "_G"}},
      {"spectra.n_min", {Kind::integer, ""}},
      {"spectra.n_max", {Kind::integer, ""}},
      {"spectra.n", {Kind::integer, ""}},
      {"spectra.n_prime", {Kind::integer, ""}},
      {"spectra.delta_n", {Kind::integer, ""}},
      {"spectra.omega0", {Kind::real, "_per_s"}},
      {"ab.delta_theta", {Kind::real, ""}},
      {"quadrature.density", {Kind::real, ""}},
      {"quadrature.converge", {Kind::word, ""}},
      {"fringes.n_min", {Kind::integer, ""}},
      {"fringes.n_max", {Kind::integer, ""}},
  };
  return s;
}

const std::map<std::string, double>& units() {
  static const std::map<std::string, double> u = {
      {"pm", 1e-10}, {"nm", 1e-7}, {"um", 1e-4}, {"mm", 1e-1}, {"cm", 1.0}};
  return u;
}

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

struct Entry {
  std::string value;
  int line = 0;
  double scale = 1.0;  // unit factor to cm for lengths
};

class Doc {
 public:
  std::map<std::string, Entry> entries;

  bool has(const std::string& k) const { return entries.count(k) != 0; }

  bool any_with_prefix(const std::string& p) const {
    return std::any_of(entries.begin(), entries.end(),
                       [&](const auto& e) { return e.first.rfind(p, 0) == 0; });
  }

  double real(const std::string& k) const {
    const Entry& e = entries.at(k);
    const char* s = e.value.c_str();
    char* end = nullptr;
    errno = 0;
    double v = std::strtod(s, &end);
    if (end == s || *end != '\0' || errno == ERANGE || !std::isfinite(v))
      throw ConfigError(where(k) + ": '" + e.value + "' is not a finite number");
    return v * e.scale;
  }

  int integer(const std::string& k) const {
    const Entry& e = entries.at(k);
    const char* s = e.value.c_str();
    char* end = nullptr;
    errno = 0;
    long v = std::strtol(s, &end, 10);
    if (end == s || *end != '\0' || errno == ERANGE || v < -2000000000L || v > 2000000000L)
      throw ConfigError(where(k) + ": '" + e.value + "' is not an integer");
    return static_cast<int>(v);
  }

  const std::string& word(const std::string& k) const { return entries.at(k).value; }

  double positive(const std::string& k) const {
    double v = real(k);
    if (!(v > 0.0)) throw ConfigError(where(k) + " must be positive");
    return v;
  }

  std::string where(const std::string& k) const {
    return "key '" + k + "' (line " + std::to_string(entries.at(k).line) + ")";
  }

  void require(const std::string& k, const std::string& why) const {
    if (!has(k)) throw ConfigError("missing required key '" + k + "' (" + why + ")");
  }
};

Doc tokenize(const std::string& text) {
  Doc d;
  std::istringstream in(text);
  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    auto hash = raw.find('#');
    std::string line = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("line " + std::to_string(lineno) + ": expected 'key = value'");
    std::string key = trim(line.substr(0, eq)), value = trim(line.substr(eq + 1));
    if (key.empty()) throw ConfigError("line " + std::to_string(lineno) + ": empty key");
    if (value.empty())
      throw ConfigError("line " + std::to_string(lineno) + ": key '" + key + "' has no value");

    std::string base;
    double scale = 1.0;
    const auto& sc = schema();
    auto us = key.rfind('_');
    if (us != std::string::npos && units().count(key.substr(us + 1)) &&
        sc.count(key.substr(0, us)) && sc.at(key.substr(0, us)).kind == Kind::length) {
      base = key.substr(0, us);
      scale = units().at(key.substr(us + 1));
    } else if (sc.count(key) && sc.at(key).kind == Kind::length) {
      throw ConfigError("line " + std::to_string(lineno) + ": length key '" + key +
                        "' needs a unit suffix (_pm, _nm, _um, _mm, _cm)");
    } else {
      for (const auto& [name, info] : sc)
        if (info.kind != Kind::length && key == name + info.fixed_suffix) base = name;
      if (base.empty())
        throw ConfigError("line " + std::to_string(lineno) + ": unknown key '" + key + "'");
    }
    auto it = d.entries.find(base);
    if (it != d.entries.end())
      throw ConfigError("duplicate key '" + base + "' at lines " + std::to_string(it->second.line) +
                        " and " + std::to_string(lineno));
    d.entries[base] = {value, lineno, scale};
  }
  return d;
}

}  // namespace

RunConfig parse_config(const std::string& text) {
  Doc d = tokenize(text);
  RunConfig c;

  if (d.has("constants")) {
    c.constant_set = d.word("constants");
    if (c.constant_set != "paper" && c.constant_set != "precise")
      throw ConfigError(d.where("constants") + ": expected paper or precise");
  }

  bool has_l = d.has("beam.lambda"), has_k = d.has("beam.k");
  if (!has_l && !has_k) throw ConfigError("beam.lambda or beam.k required");
  if (has_l && has_k) throw ConfigError("give only one of beam.lambda and beam.k");
  if (has_l) c.beam.lambda = d.positive("beam.lambda");
  if (has_k) c.beam.k = d.positive("beam.k");
  c.beam.a_in = {d.has("beam.a_in_re") ? d.real("beam.a_in_re") : 1.0,
                 d.has("beam.a_in_im") ? d.real("beam.a_in_im") : 0.0};

  if (d.any_with_prefix("aperture.")) {
    d.require("aperture.kind", "aperture section present");
    ApertureSpec a;
    a.kind = d.word("aperture.kind");
    if (a.kind == "rect") {
      d.require("aperture.half_width", "rect aperture");
      d.require("aperture.half_height", "rect aperture");
      a.half_width = d.positive("aperture.half_width");
      a.half_height = d.positive("aperture.half_height");
    } else if (a.kind == "disk") {
      d.require("aperture.radius", "disk aperture");
      a.radius = d.positive("aperture.radius");
    } else {
      throw ConfigError(d.where("aperture.kind") + ": expected rect or disk");
    }
    if (d.has("aperture.center_x1")) a.center.x = d.real("aperture.center_x1");
    if (d.has("aperture.center_x2")) a.center.y = d.real("aperture.center_x2");
    c.aperture = a;
  }

  if (d.any_with_prefix("slits.")) {
    d.require("slits.separation", "slits section present");
    SlitsSpec s;
    s.separation = d.positive("slits.separation");
    if (d.has("slits.width")) s.width = d.positive("slits.width");
    if (d.has("slits.length")) s.length = d.positive("slits.length");
    c.slits = s;
  }
  if (c.aperture && c.slits) throw ConfigError("give either an aperture section or a slits section");

  if (d.any_with_prefix("screen.")) {
    d.require("screen.D", "screen section present");
    ScreenSpec s;
    s.D = d.positive("screen.D");
    if (d.has("screen.extent")) s.extent = d.positive("screen.extent");
    if (d.has("screen.count")) {
      s.count = d.integer("screen.count");
      if (*s.count < 2) throw ConfigError(d.where("screen.count") + " must be at least 2");
    }
    if (d.has("screen.x1")) s.x1 = d.real("screen.x1");
    c.screen = s;
  }

  if (d.any_with_prefix("far.")) {
    for (auto k : {"far.range", "far.chi_max", "far.count"}) d.require(k, "far section present");
    FarSpec f;
    f.range = d.positive("far.range");
    f.chi_max = d.real("far.chi_max");
    if (!(f.chi_max >= 0.0 && f.chi_max < 1.5707963267948966))
      throw ConfigError(d.where("far.chi_max") + " must lie in [0, pi/2)");
    f.count = d.integer("far.count");
    if (f.count < 2) throw ConfigError(d.where("far.count") + " must be at least 2");
    c.far = f;
  }

  if (d.any_with_prefix("magnetic.") || d.any_with_prefix("born.")) {
    d.require("magnetic.cross_section", "magnetic section present");
    d.require("magnetic.strength", "magnetic section present");
    MagneticSpec m;
    m.cross_section = d.positive("magnetic.cross_section");
    m.strength = d.real("magnetic.strength");
    if (d.has("magnetic.major_radius")) m.major_radius = d.positive("magnetic.major_radius");
    if (d.has("magnetic.margin")) m.margin = d.positive("magnetic.margin");
    if (d.has("magnetic.born_spacing")) m.born_spacing = d.positive("magnetic.born_spacing");
    if (d.has("magnetic.born_order")) {
      m.born_order = d.integer("magnetic.born_order");
      if (m.born_order < 0) throw ConfigError(d.where("magnetic.born_order") + " must be >= 0");
    }
    if (d.has("magnetic.cells_across")) m.cells_across = d.integer("magnetic.cells_across");
    if (d.has("magnetic.profile")) {
      m.profile = d.word("magnetic.profile");
      if (m.profile != "gaussian" && m.profile != "flat")
        throw ConfigError(d.where("magnetic.profile") + ": expected gaussian or flat");
    }
    for (char p : {'x', 'y'}) {
      std::string b = std::string("born.") + p;
      bool any = d.has(b + "1") || d.has(b + "2") || d.has(b + "3");
      if (!any) continue;
      for (auto i : {"1", "2", "3"}) d.require(b + i, "probe point " + b + " partly given");
      Vec3 v{d.real(b + "1"), d.real(b + "2"), d.real(b + "3")};
      (p == 'x' ? m.probe_x : m.probe_y) = v;
    }
    c.magnetic = m;
  }

  if (d.any_with_prefix("spectra.")) {
    SpectraSpec s;
    auto get = [&](const char* k, int& dst, int lo) {
      if (!d.has(k)) return;
      dst = d.integer(k);
      if (dst < lo) throw ConfigError(d.where(k) + " must be >= " + std::to_string(lo));
    };
    get("spectra.Z", s.Z, 1);
    get("spectra.n_min", s.n_min, 1);
    get("spectra.n_max", s.n_max, 1);
    get("spectra.n", s.n, 1);
    get("spectra.n_prime", s.n_prime, 1);
    get("spectra.delta_n", s.delta_n, 1);
    if (s.n_max < s.n_min) throw ConfigError("spectra.n_max must not be below spectra.n_min");
    if (d.has("spectra.B3")) s.B3 = d.real("spectra.B3");
    if (d.has("spectra.omega0")) s.omega0 = d.positive("spectra.omega0");
    c.spectra = s;
  }

  if (d.has("ab.delta_theta")) c.delta_theta = d.real("ab.delta_theta");
  if (d.has("quadrature.density")) {
    c.density = d.real("quadrature.density");
    if (!(c.density >= 4.0)) throw ConfigError(d.where("quadrature.density") + " must be >= 4");
  }
  if (d.has("quadrature.converge")) {
    const auto& w = d.word("quadrature.converge");
    if (w != "true" && w != "false")
      throw ConfigError(d.where("quadrature.converge") + ": expected true or false");
    c.converge = w == "true";
  }
  if (d.has("fringes.n_min")) c.fringe_n_min = d.integer("fringes.n_min");
  if (d.has("fringes.n_max")) c.fringe_n_max = d.integer("fringes.n_max");
  if (c.fringe_n_max < c.fringe_n_min)
    throw ConfigError("fringes.n_max must not be below fringes.n_min");
  return c;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

std::string serialize_config(const RunConfig& c) {
  std::ostringstream os;
  auto num = [](double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return std::string(buf);
  };
  auto put = [&](const std::string& k, const std::string& v) { os << k << " = " << v << "\n"; };
  auto len = [&](const std::string& k, double v) { put(k + "_cm", num(v)); };

  put("constants", c.constant_set);
  if (c.beam.lambda) len("beam.lambda", *c.beam.lambda);
  if (c.beam.k) put("beam.k_per_cm", num(*c.beam.k));
  put("beam.a_in_re", num(c.beam.a_in.real()));
  put("beam.a_in_im", num(c.beam.a_in.imag()));
  if (c.aperture) {
    put("aperture.kind", c.aperture->kind);
    if (c.aperture->kind == "rect") {
      len("aperture.half_width", c.aperture->half_width);
      len("aperture.half_height", c.aperture->half_height);
    } else {
      len("aperture.radius", c.aperture->radius);
    }
    len("aperture.center_x1", c.aperture->center.x);
    len("aperture.center_x2", c.aperture->center.y);
  }
  if (c.slits) {
    len("slits.separation", c.slits->separation);
    if (c.slits->width) len("slits.width", *c.slits->width);
    if (c.slits->length) len("slits.length", *c.slits->length);
  }
  if (c.screen) {
    len("screen.D", c.screen->D);
    if (c.screen->extent) len("screen.extent", *c.screen->extent);
    if (c.screen->count) put("screen.count", std::to_string(*c.screen->count));
    len("screen.x1", c.screen->x1);
  }
  if (c.far) {
    len("far.range", c.far->range);
    put("far.chi_max_rad", num(c.far->chi_max));
    put("far.count", std::to_string(c.far->count));
  }
  if (c.magnetic) {
    const auto& m = *c.magnetic;
    len("magnetic.cross_section", m.cross_section);
    put("magnetic.strength_G", num(m.strength));
    if (m.major_radius) len("magnetic.major_radius", *m.major_radius);
    if (m.margin) len("magnetic.margin", *m.margin);
    if (m.born_spacing) len("magnetic.born_spacing", *m.born_spacing);
    put("magnetic.born_order", std::to_string(m.born_order));
    put("magnetic.cells_across", std::to_string(m.cells_across));
    put("magnetic.profile", m.profile);
    if (m.probe_x) {
      len("born.x1", m.probe_x->x);
      len("born.x2", m.probe_x->y);
      len("born.x3", m.probe_x->z);
    }
    if (m.probe_y) {
      len("born.y1", m.probe_y->x);
      len("born.y2", m.probe_y->y);
      len("born.y3", m.probe_y->z);
    }
  }
  if (c.spectra) {
    const auto& s = *c.spectra;
    put("spectra.Z", std::to_string(s.Z));
    put("spectra.B3_G", num(s.B3));
    put("spectra.n_min", std::to_string(s.n_min));
    put("spectra.n_max", std::to_string(s.n_max));
    put("spectra.n", std::to_string(s.n));
    put("spectra.n_prime", std::to_string(s.n_prime));
    put("spectra.delta_n", std::to_string(s.delta_n));
    if (s.omega0) put("spectra.omega0_per_s", num(*s.omega0));
  }
  if (c.delta_theta) put("ab.delta_theta", num(*c.delta_theta));
  put("quadrature.density", num(c.density));
  put("quadrature.converge", c.converge ? "true" : "false");
  put("fringes.n_min", std::to_string(c.fringe_n_min));
  put("fringes.n_max", std::to_string(c.fringe_n_max));
  return os.str();
}

}  // namespace ediffract
