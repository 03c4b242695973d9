#include <doctest.h>

#include <cmath>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <limits>
#include <random>
#include <sstream>

#include "dbtwell/io.hpp"

using namespace dbtwell::io;

TEST_CASE("format_number round-trips bit for bit") {
  std::mt19937_64 gen(42);
  for (int k = 0; k < 20000; ++k) {
    std::uint64_t bits = gen();
    double v;
    std::memcpy(&v, &bits, sizeof v);
    if (!std::isfinite(v)) continue;
    const double back = parse_number(format_number(v));
    REQUIRE(std::memcmp(&back, &v, sizeof v) == 0);
  }
  CHECK(format_number(-0.2) == "-0.2");
  CHECK(format_number(-2.5) == "-2.5");
  CHECK(format_number(0.0) == "0");
  CHECK(format_number(std::numeric_limits<double>::quiet_NaN()) == "nan");
  CHECK(std::isnan(parse_number("nan")));
  CHECK(parse_number("-inf") == -std::numeric_limits<double>::infinity());
  CHECK_THROWS_AS(parse_number("1.0x"), std::invalid_argument);
  CHECK_THROWS_AS(parse_number(""), std::invalid_argument);
}

TEST_CASE("csv write and read back") {
  const Column cols[] = {{"x", {-1.0, 0.0, 1.0 / 3.0}}, {"V", {1e-300, -0.2, 2.0 * -1.1 + 2.0}}};
  const std::string footer[] = {"analytic_period=125.66370614359172"};
  std::ostringstream os;
  write_csv(os, cols, footer);
  const std::string text = os.str();
  CHECK(text.rfind("x,V\n", 0) == 0);
  CHECK(text.find('\r') == std::string::npos);
  CHECK(text.back() == '\n');

  std::istringstream is(text);
  const CsvTable t = read_csv(is);
  CHECK(t.header == std::vector<std::string>{"x", "V"});
  REQUIRE(t.rows.size() == 3);
  CHECK(t.column("x") == cols[0].values);
  CHECK(t.column("V") == cols[1].values);
  REQUIRE(t.comments.size() == 1);
  CHECK(t.comments[0] == footer[0]);
  CHECK_THROWS_AS(t.column("psi"), std::out_of_range);
}

TEST_CASE("csv writer rejects ragged columns") {
  const Column cols[] = {{"a", {1.0}}, {"b", {1.0, 2.0}}};
  std::ostringstream os;
  CHECK_THROWS(write_csv(os, cols));
}

TEST_CASE("config file parsing") {
  const auto path = std::filesystem::temp_directory_path() / "dbtwell_test_config.txt";
  {
    std::ofstream f(path);
    f << "# run settings\n\nepsilon = -1.25\nx_max=25\n points = 5001 \nout = \"a b.csv\"\n";
  }
  const auto kv = read_config_file(path.string());
  CHECK(kv.at("epsilon") == "-1.25");
  CHECK(kv.at("x-max") == "25");
  CHECK(kv.at("points") == "5001");
  CHECK(kv.at("out") == "a b.csv");
  {
    std::ofstream f(path);
    f << "epsilon -1.25\n";
  }
  CHECK_THROWS(read_config_file(path.string()));
  std::filesystem::remove(path);
  CHECK_THROWS(read_config_file(path.string()));
}

TEST_CASE("svg polyline has a fixed viewport") {
  const std::vector<double> x{0, 1, 2}, y{0, 1, 0};
  const std::string svg = render_svg_polyline(x, y, "x", "V");
  CHECK(svg.find("viewBox=\"0 0 800 600\"") != std::string::npos);
  CHECK(svg.find("<polyline") != std::string::npos);
  CHECK(svg.find("50.00,550.00") != std::string::npos);
  CHECK(svg.find("400.00,50.00") != std::string::npos);
  CHECK(render_svg_polyline(x, y, "x", "V") == svg);
}
