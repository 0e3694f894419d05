#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <sstream>
#include <string>

#include "ediffract/commands.hpp"
#include "ediffract/config.hpp"
#include "ediffract/csv.hpp"
#include "ediffract/errors.hpp"

using namespace ediffract;

namespace {

const char* bach = R"(# Bach
beam.lambda_pm = 50
slits.separation_nm = 330
screen.D_mm = 240
)";

std::string error_of(const std::string& text) {
  try {
    parse_config(text);
  } catch (const ConfigError& e) {
    return e.what();
  }
  return "";
}

std::string csv(const ResultTable& t) {
  std::ostringstream os;
  write_csv(os, t);
  return os.str();
}

double num(const Cell& c) {
  if (auto d = std::get_if<double>(&c)) return *d;
  return static_cast<double>(std::get<long long>(c));
}

}  // namespace

TEST_CASE("parse the Bach configuration") {
  auto c = parse_config(bach);
  REQUIRE(c.beam.lambda);
  CHECK(*c.beam.lambda == doctest::Approx(50e-10).epsilon(1e-15));
  REQUIRE(c.slits);
  CHECK(c.slits->separation == doctest::Approx(330e-7).epsilon(1e-15));
  REQUIRE(c.screen);
  CHECK(c.screen->D == doctest::Approx(24.0).epsilon(1e-15));
  CHECK(c.constant_set == "precise");
  CHECK_FALSE(c.beam.k);
}

TEST_CASE("unit suffixes") {
  for (auto [suffix, scale] : {std::pair{"pm", 1e-10}, {"nm", 1e-7}, {"um", 1e-4}, {"mm", 0.1}, {"cm", 1.0}}) {
    auto c = parse_config(std::string("beam.lambda_") + suffix + " = 3\n");
    CHECK(*c.beam.lambda == doctest::Approx(3 * scale).epsilon(1e-15));
  }
  CHECK(*parse_config("beam.k_per_cm = 2e9").beam.k == 2e9);
}

TEST_CASE("parse errors") {
  CHECK(error_of("") == "beam.lambda or beam.k required");
  CHECK(error_of("# only a comment\n\n") == "beam.lambda or beam.k required");

  auto dup = error_of("beam.lambda_pm = 50\nscreen.D_mm = 1\nbeam.lambda_nm = 3\n");
  CHECK(dup.find("duplicate key 'beam.lambda'") != std::string::npos);
  CHECK(dup.find("lines 1 and 3") != std::string::npos);

  auto unk = error_of("beam.lambda_pm = 50\nbeam.colour = red\n");
  CHECK(unk.find("unknown key 'beam.colour'") != std::string::npos);
  CHECK(unk.find("line 2") != std::string::npos);

  auto bare = error_of("beam.k_per_cm = 1\nscreen.D = 240\n");
  CHECK(bare.find("screen.D") != std::string::npos);
  CHECK(bare.find("unit suffix") != std::string::npos);
  CHECK(bare.find("line 2") != std::string::npos);

  CHECK(error_of("beam.lambda_pm = 50\nbeam.k_per_cm = 3\n").find("only one") != std::string::npos);
  CHECK(error_of("beam.lambda_pm = -5\n").find("positive") != std::string::npos);
  CHECK(error_of("beam.lambda_pm = fifty\n").find("line 1") != std::string::npos);
  CHECK(error_of("beam.lambda_pm 50\n").find("line 1") != std::string::npos);
  CHECK(error_of("beam.k_per_cm = 1\nscreen.count = 5\n").find("screen.D") != std::string::npos);
  CHECK(error_of("beam.k_per_cm = 1\nscreen.D_cm = 1\nscreen.count = 1\n").find("at least 2") != std::string::npos);
  CHECK(error_of("beam.k_per_cm = 1\nconstants = si\n").find("paper or precise") != std::string::npos);
}

TEST_CASE("serialize round trip") {
  const char* full = R"(constants = paper
beam.lambda_nm = 50
beam.a_in_re = 0.6
beam.a_in_im = -0.8
slits.separation_nm = 330
slits.width_nm = 20
slits.length_nm = 100
screen.D_um = 240
screen.extent_um = 60
screen.count = 121
screen.x1_nm = 7
far.range_cm = 1600
far.chi_max_rad = 0.3
far.count = 11
magnetic.cross_section_mm = 10
magnetic.strength_G = 1e-16
magnetic.margin_cm = 0.5
magnetic.born_order = 1
magnetic.profile = flat
born.x1_cm = 0.1
born.x2_cm = 0.2
born.x3_cm = 5
spectra.Z = 2
spectra.B3_G = 1e4
spectra.omega0_per_s = 3e15
ab.delta_theta = 0.25
quadrature.density = 12
quadrature.converge = true
fringes.n_min = -1
fringes.n_max = 4
)";
  auto a = parse_config(full);
  auto text = serialize_config(a);
  auto b = parse_config(text);
  CHECK(a == b);
  CHECK(serialize_config(b) == text);

  auto c = parse_config("beam.k_per_cm = 3\naperture.kind = disk\naperture.radius_um = 7\n");
  CHECK(parse_config(serialize_config(c)) == c);
}

TEST_CASE("fringes command") {
  auto t = run("fringes", parse_config(bach));
  CHECK(t.columns == std::vector<std::string>{"n", "x2_exact_cm", "x2_smallangle_cm"});
  bool found = false;
  for (const auto& r : t.rows)
    if (num(r[0]) == 1) {
      found = true;
      CHECK(num(r[2]) == doctest::Approx(3.636e-3).epsilon(1e-3));
      CHECK(num(r[1]) == doctest::Approx(num(r[2])).epsilon(5e-4));
    }
  CHECK(found);
}

TEST_CASE("shells command") {
  auto t = run("shells", parse_config("beam.k_per_cm = 1\nspectra.n_max = 5\n"));
  CHECK(t.columns == std::vector<std::string>{"n", "capacity"});
  REQUIRE(t.rows.size() == 5);
  long long caps[] = {2, 8, 18, 32, 50};
  for (int i = 0; i < 5; ++i) CHECK(std::get<long long>(t.rows[i][1]) == caps[i]);
}

TEST_CASE("ab-shift command") {
  auto t = run("ab-shift", parse_config(std::string(bach) + "ab.delta_theta = 0\n"));
  CHECK(t.columns == std::vector<std::string>{"delta_theta", "delta_len_cm", "shift_cm"});
  CHECK(num(t.rows[0][2]) == 0.0);
  auto u = run("ab-shift", parse_config(std::string(bach) + "ab.delta_theta = 6.283185307179586\n"));
  CHECK(num(u.rows[0][2]) == doctest::Approx(50e-10 * 24 / 330e-7).epsilon(1e-12));
}

TEST_CASE("other commands") {
  auto sp = parse_config("beam.k_per_cm = 1\nspectra.n_max = 3\nspectra.B3_G = 1e4\nspectra.n = 2\nspectra.n_prime = 2\n");
  auto s = run("spectrum", sp);
  CHECK(s.columns == std::vector<std::string>{"n", "E_erg", "omega_per_s"});
  CHECK(s.rows.size() == 3);
  CHECK(run("zeeman", sp).rows.size() == 9);
  auto p = run("pauli", sp);
  CHECK(p.columns.back() == "E_over_E1");
  CHECK(p.rows.size() == 6);
  auto corr = run("correspondence", parse_config("beam.k_per_cm = 1\nspectra.n_min = 9999\nspectra.n_max = 10000\n"));
  CHECK(std::abs(num(corr.rows.back()[4]) - 1) <= 2e-4);
  auto cz = run("zeeman", parse_config("beam.k_per_cm = 1\nspectra.omega0_per_s = 1e15\nspectra.B3_G = 1e4\n"));
  CHECK(cz.columns == std::vector<std::string>{"quantity", "omega_per_s"});

  auto airy = parse_config("beam.lambda_cm = 1\naperture.kind = disk\naperture.radius_cm = 2\nfar.range_cm = 1600\nfar.chi_max_rad = 0.4\nfar.count = 5\n");
  CHECK(run("airy", airy).columns == std::vector<std::string>{"chi_rad", "z", "re_a", "im_a", "intensity"});
  CHECK(run("fraunhofer", airy).columns == std::vector<std::string>{"chi_rad", "re_a", "im_a", "intensity"});

  auto d = run("diffract", parse_config("beam.lambda_cm = 1\naperture.kind = rect\naperture.half_width_cm = 1\naperture.half_height_cm = 1\nscreen.D_cm = 50\nscreen.extent_cm = 10\nscreen.count = 5\n"));
  CHECK(d.columns == std::vector<std::string>{"x1_cm", "x2_cm", "x3_cm", "re_a", "im_a", "intensity"});
  CHECK(d.rows.size() == 5);
}

TEST_CASE("command errors") {
  auto c = parse_config("beam.k_per_cm = 1\n");
  CHECK_THROWS_AS(run("fringes", c), UsageError);
  CHECK_THROWS_AS(run("diffract", c), UsageError);
  CHECK_THROWS_AS(run("born-probe", c), UsageError);
  CHECK_THROWS_AS(run("airy", c), UsageError);
  CHECK_THROWS_AS(run("nope", c), UsageError);
  CHECK(command_names().size() == 11);
}

TEST_CASE("CSV output") {
  ResultTable t;
  t.columns = {"a", "b", "c"};
  t.add_row({1.0 / 3.0, 7LL, std::string("x")});
  t.add_row({std::nan(""), -0.0, 1e-300});
  CHECK(csv(t) == "a,b,c\n0.333333333333,7,x\nnan,0,1e-300\n");
  CHECK_THROWS(t.add_row({1.0}));
  CHECK(format_cell(123456789012345.0) == "1.23456789012e+14");

  auto c = parse_config(bach);
  CHECK(csv(run("fringes", c)) == csv(run("fringes", c)));
}
