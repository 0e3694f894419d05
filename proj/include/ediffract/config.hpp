#pragma once

#include <complex>
#include <optional>
#include <string>

#include "ediffract/vec.hpp"

namespace ediffract {

struct BeamSpec {
  std::optional<double> lambda;  // cm
  std::optional<double> k;       // 1/cm
  std::complex<double> a_in{1.0, 0.0};

  bool operator==(const BeamSpec&) const = default;
};

struct ApertureSpec {
  std::string kind;  // rect | disk
  double half_width = 0.0;
  double half_height = 0.0;
  double radius = 0.0;
  Vec2 center;

  bool operator==(const ApertureSpec&) const = default;
};

struct SlitsSpec {
  double separation = 0.0;  // centre to centre, 2d
  std::optional<double> width;   // along x2
  std::optional<double> length;  // along x1

  bool operator==(const SlitsSpec&) const = default;
};

struct ScreenSpec {
  double D = 0.0;
  std::optional<double> extent;  // scan x2 in [-extent, extent]
  std::optional<int> count;
  double x1 = 0.0;

  bool operator==(const ScreenSpec&) const = default;
};

struct FarSpec {
  double range = 0.0;
  double chi_max = 0.0;  // rad
  int count = 0;

  bool operator==(const FarSpec&) const = default;
};

struct MagneticSpec {
  double cross_section = 0.0;  // side of the square cross-section
  double strength = 0.0;       // G
  std::optional<double> major_radius;
  std::optional<double> margin;
  std::optional<double> born_spacing;
  int born_order = 2;
  int cells_across = 18;
  std::string profile = "gaussian";
  std::optional<Vec3> probe_x, probe_y;

  bool operator==(const MagneticSpec&) const = default;
};

struct SpectraSpec {
  int Z = 1;
  double B3 = 0.0;  // G
  int n_min = 1;
  int n_max = 5;
  int n = 2;
  int n_prime = 1;
  int delta_n = 1;
  std::optional<double> omega0;

  bool operator==(const SpectraSpec&) const = default;
};

struct RunConfig {
  std::string constant_set = "precise";
  BeamSpec beam;
  std::optional<ApertureSpec> aperture;
  std::optional<SlitsSpec> slits;
  std::optional<ScreenSpec> screen;
  std::optional<FarSpec> far;
  std::optional<MagneticSpec> magnetic;
  std::optional<SpectraSpec> spectra;
  std::optional<double> delta_theta;
  double density = 10.0;  // samples per wavelength
  bool converge = false;
  int fringe_n_min = -3;
  int fringe_n_max = 3;

  bool operator==(const RunConfig&) const = default;
};

// throws ConfigError naming the key and line
RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::string& path);

// canonical text form; lengths in cm
std::string serialize_config(const RunConfig& cfg);

}  // namespace ediffract
