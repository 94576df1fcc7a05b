#include "doctest.h"

#include <cmath>

#include "tessim/environment.hpp"
#include "tessim/errors.hpp"

using namespace tessim;

TEST_SUITE("environment") {

TEST_CASE("constant profile") {
  auto p = EnvironmentProfile::constant(241.0);
  CHECK(p.ambient_at(0.0) == 241.0);
  CHECK(p.ambient_at(1e7) == 241.0);
  CHECK(p.min_temperature() == 241.0);
  CHECK(p.max_temperature() == 241.0);
  CHECK_FALSE(p.is_day(0.0));
  CHECK_THROWS_AS(EnvironmentProfile::constant(0.0).validate(), InvalidInput);
}

TEST_CASE("square wave holds the day value for the first half period") {
  // 3 h rotation: day until 1.5 h, night after.
  auto p = EnvironmentProfile::square_wave(250.0, 123.15, 10800.0);
  CHECK(p.ambient_at(0.0) == 250.0);
  CHECK(p.ambient_at(5399.0) == 250.0);
  CHECK(p.ambient_at(1.6 * 3600.0) == 123.15);
  CHECK(p.ambient_at(10799.0) == 123.15);
  CHECK(p.is_day(100.0));
  CHECK_FALSE(p.is_day(6000.0));
}

TEST_CASE("sinusoid peaks at the phase origin and spans day to night") {
  auto p = EnvironmentProfile::sinusoid(270.0, 150.0, 88632.0);
  CHECK(p.ambient_at(0.0) == doctest::Approx(270.0).epsilon(1e-12));
  CHECK(p.ambient_at(88632.0 / 2) == doctest::Approx(150.0).epsilon(1e-12));
  CHECK(p.ambient_at(88632.0 / 4) == doctest::Approx(210.0).epsilon(1e-12));
  CHECK(p.min_temperature() == 150.0);
  CHECK(p.max_temperature() == 270.0);

  // Phase shifts the warmest instant.
  auto shifted = EnvironmentProfile::sinusoid(270.0, 150.0, 88632.0, 1000.0);
  CHECK(shifted.ambient_at(1000.0) == doctest::Approx(270.0).epsilon(1e-12));
}

TEST_CASE("periodic kinds repeat exactly") {
  auto sq = EnvironmentProfile::square_wave(250.0, 123.15, 10800.0, 300.0);
  auto sin = EnvironmentProfile::sinusoid(270.0, 150.0, 88632.0, 500.0);
  for (double t : {0.0, 17.0, 4000.0, 9999.5}) {
    CHECK(sq.ambient_at(t) == sq.ambient_at(t + 10800.0));
    CHECK(sin.ambient_at(t) == doctest::Approx(sin.ambient_at(t + 88632.0)).epsilon(1e-12));
    CHECK(sq.is_day(t) == sq.is_day(t + 10800.0));
  }
}

TEST_CASE("outputs stay within the defining temperatures") {
  auto sin = EnvironmentProfile::sinusoid(270.0, 150.0, 88632.0);
  for (int i = 0; i < 200; ++i) {
    double T = sin.ambient_at(i * 443.16);
    CHECK(T >= 150.0 - 1e-12);
    CHECK(T <= 270.0 + 1e-12);
  }
}

TEST_CASE("table profile interpolates its knots and clamps the ends") {
  auto p = EnvironmentProfile::from_table({{0.0, 260.0}, {600.0, 250.0}, {1800.0, 230.0}});
  // Knots are reproduced exactly.
  CHECK(p.ambient_at(0.0) == 260.0);
  CHECK(p.ambient_at(600.0) == 250.0);
  CHECK(p.ambient_at(1800.0) == 230.0);
  // Linear in between.
  CHECK(p.ambient_at(300.0) == doctest::Approx(255.0).epsilon(1e-12));
  CHECK(p.ambient_at(1200.0) == doctest::Approx(240.0).epsilon(1e-12));
  // Clamped outside the samples.
  CHECK(p.ambient_at(-50.0) == 260.0);
  CHECK(p.ambient_at(1e6) == 230.0);
  CHECK(p.min_temperature() == 230.0);
  CHECK(p.max_temperature() == 260.0);
  CHECK_FALSE(p.is_day(0.0));
}

TEST_CASE("validation rejects degenerate profiles") {
  CHECK_THROWS_AS(EnvironmentProfile::square_wave(250.0, 123.15, 0.0).validate(),
                  InvalidInput);
  CHECK_THROWS_AS(EnvironmentProfile::square_wave(250.0, -1.0, 3600.0).validate(),
                  InvalidInput);
  CHECK_THROWS_AS(EnvironmentProfile::from_table({{0.0, 260.0}}).validate(), InvalidInput);
  // Times must strictly increase.
  CHECK_THROWS_AS(EnvironmentProfile::from_table({{0.0, 260.0}, {0.0, 250.0}}).validate(),
                  InvalidInput);
}

TEST_CASE("kind names round-trip") {
  for (auto kind : {ProfileKind::Constant, ProfileKind::SquareWave, ProfileKind::Sinusoid,
                    ProfileKind::Table}) {
    CHECK(profile_kind_from_string(to_string(kind)) == kind);
  }
  CHECK_THROWS_AS(profile_kind_from_string("weather"), InvalidInput);
}

}  // TEST_SUITE
