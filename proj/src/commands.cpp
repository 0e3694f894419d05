#include "ediffract/commands.hpp"

#include <cmath>
#include <functional>
#include <map>
#include <numbers>

#include "ediffract/born.hpp"
#include "ediffract/constants.hpp"
#include "ediffract/errors.hpp"
#include "ediffract/kirchhoff.hpp"
#include "ediffract/spectra.hpp"

namespace ediffract {

namespace {

constexpr double pi = std::numbers::pi;
using LL = long long;

PhysicalConstants constants_of(const RunConfig& c) { return PhysicalConstants::by_name(c.constant_set); }

IncidentBeam beam_of(const RunConfig& c, const PhysicalConstants& pc) {
  if (c.beam.lambda) return IncidentBeam::from_wavelength(*c.beam.lambda, c.beam.a_in, pc);
  return IncidentBeam::from_k(*c.beam.k, c.beam.a_in, pc);
}

Aperture aperture_of(const RunConfig& c, const std::string& cmd) {
  if (c.aperture) {
    const auto& a = *c.aperture;
    if (a.kind == "disk") return Aperture::disk(a.center, a.radius);
    return Aperture::rect(a.center, a.half_width, a.half_height);
  }
  if (c.slits && c.slits->width && c.slits->length) {
    double d = 0.5 * c.slits->separation, hw = 0.5 * *c.slits->length, hh = 0.5 * *c.slits->width;
    return Aperture::union_of({Aperture::rect({0.0, d}, hw, hh), Aperture::rect({0.0, -d}, hw, hh)});
  }
  throw UsageError(cmd + " needs an aperture section or slits.width and slits.length");
}

TwoSlitSetup setup_of(const RunConfig& c, const std::string& cmd) {
  if (!c.slits) throw UsageError(cmd + " needs slits.separation");
  if (!c.screen) throw UsageError(cmd + " needs screen.D");
  return TwoSlitSetup::canonical(0.5 * c.slits->separation, c.screen->D);
}

const SpectraSpec& spectra_of(const RunConfig& c) {
  static const SpectraSpec defaults{};
  return c.spectra ? *c.spectra : defaults;
}

RingTube tube_of(const MagneticSpec& m) {
  RingTube t;
  t.half_side = 0.5 * m.cross_section;
  t.major_radius = m.major_radius ? *m.major_radius : 2.5 * t.half_side;
  t.strength = m.strength;
  t.cells_across = m.cells_across;
  t.profile = m.profile == "flat" ? TubeProfile::flat : TubeProfile::gaussian;
  return t;
}

ResultTable diffract(const RunConfig& c) {
  auto pc = constants_of(c);
  auto beam = beam_of(c, pc);
  Aperture ap = aperture_of(c, "diffract");
  if (!c.screen || !c.screen->extent || !c.screen->count)
    throw UsageError("diffract needs screen.D, screen.extent and screen.count");
  const auto& s = *c.screen;
  std::vector<Vec3> pts;
  for (int i = 0; i < *s.count; ++i)
    pts.push_back({s.x1, -*s.extent + 2.0 * *s.extent * i / (*s.count - 1), s.D});

  ResultTable t;
  t.columns = {"x1_cm", "x2_cm", "x3_cm", "re_a", "im_a", "intensity"};
  AmplitudeField f;
  if (c.converge) {
    auto r = kirchhoff_converged(ap, beam, pts, c.density);
    if (!r.converged)
      t.warnings.push_back("quadrature did not converge: last change " +
                           std::to_string(r.last_change) + " at " +
                           std::to_string(r.samples_per_wavelength) + " samples per wavelength");
    f = std::move(r.field);
  } else {
    f = kirchhoff_amplitude(ap, beam, pts, quadrature(ap, beam.k, c.density));
  }
  std::size_t near = 0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    near += f.near_field[i];
    t.add_row({pts[i].x, pts[i].y, pts[i].z, f.values[i].real(), f.values[i].imag(), f.intensity[i]});
  }
  if (near)
    t.warnings.push_back(std::to_string(near) +
                         " observation points lie within two wavelengths of the aperture");
  return t;
}

ResultTable fraunhofer(const RunConfig& c) {
  auto pc = constants_of(c);
  auto beam = beam_of(c, pc);
  Aperture ap = aperture_of(c, "fraunhofer");
  if (!c.far) throw UsageError("fraunhofer needs far.range, far.chi_max and far.count");
  ResultTable t;
  t.columns = {"chi_rad", "re_a", "im_a", "intensity"};
  for (int i = 0; i < c.far->count; ++i) {
    double chi = c.far->chi_max * i / (c.far->count - 1);
    cplx a = fraunhofer_amplitude(ap, beam, {0.0, std::sin(chi), std::cos(chi)}, c.far->range);
    t.add_row({chi, a.real(), a.imag(), std::norm(a)});
  }
  return t;
}

ResultTable airy(const RunConfig& c) {
  auto pc = constants_of(c);
  auto beam = beam_of(c, pc);
  if (!c.aperture || c.aperture->kind != "disk") throw UsageError("airy needs aperture.kind = disk");
  if (!c.far) throw UsageError("airy needs far.range, far.chi_max and far.count");
  double R = c.aperture->radius;
  ResultTable t;
  t.columns = {"chi_rad", "z", "re_a", "im_a", "intensity"};
  for (int i = 0; i < c.far->count; ++i) {
    double chi = c.far->chi_max * i / (c.far->count - 1);
    cplx a = airy_amplitude(R, beam, chi, c.far->range);
    t.add_row({chi, beam.k * R * std::sin(chi), a.real(), a.imag(), std::norm(a)});
  }
  return t;
}

ResultTable fringes(const RunConfig& c) {
  auto pc = constants_of(c);
  auto beam = beam_of(c, pc);
  auto setup = setup_of(c, "fringes");
  double delta_len = c.delta_theta ? ABPhase::from_delta_theta(*c.delta_theta, beam.k).delta_len : 0.0;
  ResultTable t;
  t.columns = {"n", "x2_exact_cm", "x2_smallangle_cm"};
  for (const auto& r : fringe_maxima(setup, beam.wavelength(), c.fringe_n_min, c.fringe_n_max, delta_len)) {
    if (!r.in_range) t.warnings.push_back("n = " + std::to_string(r.n) + " has no maximum (path difference exceeds 2d)");
    t.add_row({LL(r.n), r.x2_exact, r.x2_small_angle});
  }
  return t;
}

ResultTable ab_shift_cmd(const RunConfig& c) {
  auto pc = constants_of(c);
  auto beam = beam_of(c, pc);
  auto setup = setup_of(c, "ab-shift");
  double dt;
  if (c.delta_theta) {
    dt = *c.delta_theta;
  } else if (c.magnetic) {
    // the slit paths enclose the whole tube once
    dt = coupling(pc) * MagneticConfig(tube_of(*c.magnetic)).total_flux();
  } else {
    throw UsageError("ab-shift needs ab.delta_theta or a magnetic section");
  }
  auto ph = ABPhase::from_delta_theta(dt, beam.k);
  ResultTable t;
  t.columns = {"delta_theta", "delta_len_cm", "shift_cm"};
  t.add_row({ph.delta_theta, ph.delta_len, ab_shift(ph, setup)});
  return t;
}

ResultTable born_probe(const RunConfig& c) {
  auto pc = constants_of(c);
  auto beam = beam_of(c, pc);
  if (!c.magnetic) throw UsageError("born-probe needs a magnetic section");
  const auto& m = *c.magnetic;
  RingTube tube = tube_of(m);
  MagneticConfig cfg(tube);
  VectorPotential A(cfg);
  SplitOptions so;
  so.margin = m.margin ? *m.margin : tube.half_side;
  so.spacing = m.born_spacing ? *m.born_spacing : 0.5 * so.margin;
  GaugeSplit split = split_potential(cfg, A, so);
  double far = 3.0 * (tube.major_radius + tube.half_side + so.margin);
  Vec3 x = m.probe_x ? *m.probe_x : Vec3{0.0, 0.0, far};
  Vec3 y = m.probe_y ? *m.probe_y : Vec3{0.0, 0.0, -far};
  BornOptions bo;
  bo.max_order = std::max(2, m.born_order);
  auto g = magnetic_green(split, pc, beam.k, x, y, m.born_order, bo);

  ResultTable t;
  t.columns = {"term", "re", "im", "abs"};
  for (std::size_t i = 0; i < g.terms.size(); ++i) {
    std::string name = i == 0 ? "G0" : "R" + std::to_string(i);
    t.add_row({name, g.terms[i].real(), g.terms[i].imag(), std::abs(g.terms[i])});
  }
  t.add_row({std::string("G"), g.value.real(), g.value.imag(), std::abs(g.value)});
  t.add_row({std::string("beta"), split.beta(), 0.0, split.beta()});
  if (m.born_order >= 2) t.add_row({std::string("ratio_R2_R1"), g.term_ratio, 0.0, g.term_ratio});
  if (g.divergence_warning)
    t.warnings.push_back("Born term ratio |R2|/|R1| = " + std::to_string(g.term_ratio) +
                         " >= 1: series not in its convergent regime");
  return t;
}

ResultTable spectrum(const RunConfig& c) {
  const auto& s = spectra_of(c);
  SpectralContext ctx(constants_of(c), s.Z, s.B3);
  ResultTable t;
  t.columns = {"n", "E_erg", "omega_per_s"};
  for (int n = s.n_min; n <= s.n_max; ++n) {
    auto l = balmer_energy(ctx, n);
    t.add_row({LL(n), l.E, l.omega});
  }
  return t;
}

ResultTable zeeman(const RunConfig& c) {
  const auto& s = spectra_of(c);
  SpectralContext ctx(constants_of(c), s.Z, s.B3);
  ResultTable t;
  if (s.omega0) {
    auto z = classical_zeeman(*s.omega0, ctx);
    t.columns = {"quantity", "omega_per_s"};
    t.add_row({std::string("root_plus"), z.omega_plus});
    t.add_row({std::string("root_minus"), z.omega_minus});
    t.add_row({std::string("axial"), z.omega_axial});
    const char* names[] = {"triplet_center", "triplet_upper", "triplet_lower"};
    for (std::size_t i = 0; i < z.triplet.size(); ++i) t.add_row({std::string(names[i]), z.triplet[i]});
    return t;
  }
  t.columns = {"n", "m", "n_prime", "m_prime", "allowed", "omega_per_s"};
  for (int m = -(s.n - 1); m <= s.n - 1; ++m)
    for (int mp = -(s.n_prime - 1); mp <= s.n_prime - 1; ++mp) {
      auto z = zeeman_line(ctx, s.n, m, s.n_prime, mp);
      t.add_row({LL(s.n), LL(m), LL(s.n_prime), LL(mp), LL(z.allowed), z.allowed ? z.omega : std::nan("")});
    }
  return t;
}

ResultTable correspondence(const RunConfig& c) {
  const auto& s = spectra_of(c);
  SpectralContext ctx(constants_of(c), s.Z, s.B3);
  if (s.n_max - s.n_min > 100000) throw UsageError("correspondence table limited to 100001 rows");
  ResultTable t;
  t.columns = {"n", "delta_n", "omega_q", "omega_c", "ratio"};
  for (int n = std::max(2, s.n_min); n <= s.n_max; ++n) {
    auto r = correspondence_check(ctx, n, s.delta_n);
    t.add_row({LL(n), LL(s.delta_n), r.omega_q, r.omega_c, r.ratio});
  }
  return t;
}

ResultTable shells(const RunConfig& c) {
  const auto& s = spectra_of(c);
  ResultTable t;
  t.columns = {"n", "capacity"};
  for (int n = 1; n <= s.n_max; ++n) t.add_row({LL(n), LL(shell_capacity(n))});
  return t;
}

ResultTable pauli(const RunConfig& c) {
  const auto& s = spectra_of(c);
  SpectralContext ctx(constants_of(c), s.Z, s.B3);
  double e1 = std::abs(balmer_energy(ctx, 1).E);
  ResultTable t;
  t.columns = {"n", "m", "s", "m_plus_s", "E_erg", "E_over_E1"};
  for (int m = -(s.n - 1); m <= s.n - 1; ++m)
    for (int sp : {-1, 1}) {
      double E = pauli_energy(ctx, s.n, m, sp);
      t.add_row({LL(s.n), LL(m), LL(sp), LL(m + sp), E, E / e1});
    }
  return t;
}

const std::map<std::string, std::function<ResultTable(const RunConfig&)>>& table() {
  static const std::map<std::string, std::function<ResultTable(const RunConfig&)>> t = {
      {"diffract", diffract},     {"fraunhofer", fraunhofer},   {"airy", airy},
      {"fringes", fringes},       {"ab-shift", ab_shift_cmd},   {"born-probe", born_probe},
      {"spectrum", spectrum},     {"zeeman", zeeman},           {"correspondence", correspondence},
      {"shells", shells},         {"pauli", pauli}};
  return t;
}

}  // namespace

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names = {"diffract", "fraunhofer", "airy",   "fringes",
                                                 "ab-shift", "born-probe", "spectrum", "zeeman",
                                                 "correspondence", "shells", "pauli"};
  return names;
}

ResultTable run(const std::string& command, const RunConfig& cfg) {
  auto it = table().find(command);
  if (it == table().end()) throw UsageError("unknown command '" + command + "'");
  return it->second(cfg);
}

}  // namespace ediffract
