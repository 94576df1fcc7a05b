#include "doctest.h"

#include <cmath>
#include <limits>

#include "tessim/config.hpp"
#include "tessim/errors.hpp"

using namespace tessim;

TEST_SUITE("config") {

TEST_CASE("parses assignments, comments and blank lines") {
  auto doc = ConfigDoc::parse(
      "# full-line comment\n"
      "\n"
      "run.label = probe a   # trailing comment\n"
      "run.duration_s = 3600\n");
  CHECK(doc.entries().size() == 2);
  CHECK(doc.get_string("run.label") == "probe a");
  CHECK(doc.get_double("run.duration_s") == 3600.0);
  CHECK(doc.line_of("run.duration_s") == 4);
}

TEST_CASE("malformed statement reports its line") {
  try {
    ConfigDoc::parse("run.label = ok\nnot a statement\n");
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(e.line() == 2);
  }
}

TEST_CASE("duplicate keys are rejected") {
  CHECK_THROWS_AS(ConfigDoc::parse("a.b = 1\na.b = 2\n"), ConfigError);
}

TEST_CASE("bad key syntax is rejected") {
  CHECK_THROWS_AS(ConfigDoc::parse("a b = 1\n"), ConfigError);
  CHECK_THROWS_AS(ConfigDoc::parse("a..b = 1\n"), ConfigError);
  CHECK_THROWS_AS(ConfigDoc::parse(".a = 1\n"), ConfigError);
}

TEST_CASE("typed getters convert and report type errors") {
  auto doc = ConfigDoc::parse(
      "d = 2.5\n"
      "i = 42\n"
      "t = true\n"
      "f = false\n"
      "s = hello\n");
  CHECK(doc.get_double("d") == 2.5);
  CHECK(doc.get_int("i") == 42);
  CHECK(doc.get_bool("t"));
  CHECK_FALSE(doc.get_bool("f"));
  CHECK(doc.get_string("s") == "hello");
  CHECK_THROWS_AS(ConfigDoc::parse("x = abc\n").get_double("x"), ConfigError);
  CHECK_THROWS_AS(ConfigDoc::parse("x = 1.5\n").get_int("x"), ConfigError);
  CHECK_THROWS_AS(ConfigDoc::parse("x = maybe\n").get_bool("x"), ConfigError);
}

TEST_CASE("fallback getters only apply when the key is absent") {
  auto doc = ConfigDoc::parse("present = 7\n");
  CHECK(doc.get_double_or("present", 1.0) == 7.0);
  CHECK(doc.get_double_or("absent", 1.0) == 1.0);
  CHECK(doc.get_string_or("absent", "dflt") == "dflt");
  // A present key with a bad value still errors, it does not fall back.
  CHECK_THROWS_AS(ConfigDoc::parse("x = oops\n").get_double_or("x", 1.0), ConfigError);
}

TEST_CASE("unconsumed keys are flagged") {
  auto doc = ConfigDoc::parse("used.key = 1\nstray.key = 2\n");
  doc.get_double("used.key");
  try {
    doc.require_all_consumed();
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("stray.key") != std::string::npos);
  }
  doc.mark_consumed("stray.key");
  CHECK_NOTHROW(doc.require_all_consumed());
}

TEST_CASE("prefix scan preserves document order") {
  auto doc = ConfigDoc::parse(
      "m.b = 2\n"
      "other = 0\n"
      "m.a = 1\n"
      "mx.c = 3\n");  // "mx" must not match the "m" prefix
  auto entries = doc.entries_with_prefix("m");
  REQUIRE(entries.size() == 2);
  CHECK(entries[0].key == "m.b");
  CHECK(entries[1].key == "m.a");
}

TEST_CASE("split_list trims and keeps empty elements") {
  auto parts = split_list(" a , b,c ,");
  REQUIRE(parts.size() == 4);
  CHECK(parts[0] == "a");
  CHECK(parts[1] == "b");
  CHECK(parts[2] == "c");
  CHECK(parts[3] == "");
  CHECK(split_list("").empty());
}

TEST_CASE("parse_double requires the whole string to match") {
  CHECK(parse_double("2.5e3", "x") == 2500.0);
  CHECK_THROWS_AS(parse_double("2.5abc", "x"), ConfigError);
  CHECK_THROWS_AS(parse_double("", "x"), ConfigError);
}

TEST_CASE("format_double round-trips exactly") {
  for (double v : {0.1, 1.0 / 3.0, 2.5, -0.0, 1e-300, 1.7976931348623157e308,
                   41.338946257635136, 6.459892675054259e-10}) {
    CHECK(std::stod(format_double(v)) == v);
  }
  // Shortest form: integral values stay compact.
  CHECK(format_double(3600.0) == "3600");
  CHECK(format_double(0.0) == "0");
}

}  // TEST_SUITE
