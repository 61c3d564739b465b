#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "ncs/errors.hpp"
#include "ncs/model_io.hpp"
#include "ncs/run_config.hpp"

using namespace ncs;

TEST_CASE("grid parsing") {
  const Grid g = parse_grid("0.5:2.5:5");
  CHECK(g.xmin == doctest::Approx(0.5));
  CHECK(g.xmax == doctest::Approx(2.5));
  CHECK(g.steps == 5);
  const std::vector<double> pts = g.points();
  REQUIRE(pts.size() == 5);
  CHECK(pts.front() == doctest::Approx(0.5));
  CHECK(pts.back() == doctest::Approx(2.5));
  CHECK(pts[1] == doctest::Approx(1.0));

  const Grid single = parse_grid("3:3:1");
  const std::vector<double> one = single.points();
  REQUIRE(one.size() == 1);
  CHECK(one[0] == doctest::Approx(3.0));

  CHECK_THROWS_AS(parse_grid("1:2"), error);
  CHECK_THROWS_AS(parse_grid("a:b:c"), error);
  CHECK_THROWS_AS(parse_grid("1:2:0"), error);
  CHECK_THROWS_AS(parse_grid("2:1:5"), error);
}

TEST_CASE("quadrature spec parsing") {
  const RadialQuadrature gl = parse_quad("gl:64");
  CHECK(gl.scheme == QuadScheme::gauss_laguerre);
  CHECK(gl.order == 64);
  const RadialQuadrature ad = parse_quad("adaptive:1e-8");
  CHECK(ad.scheme == QuadScheme::adaptive);
  CHECK(ad.rel_tol == doctest::Approx(1e-8));
  CHECK_THROWS_AS(parse_quad("simpson:4"), error);
  CHECK_THROWS_AS(parse_quad("gl:1"), error);
  CHECK_THROWS_AS(parse_quad("adaptive:0"), error);
  CHECK_THROWS_AS(parse_quad("gl"), error);
}

TEST_CASE("numeric formatting is fixed-width scientific") {
  CHECK(format_double(0.25) == "2.5000000000000000e-01");
  CHECK(format_double(-1.0) == "-1.0000000000000000e+00");
}

TEST_CASE("csv rendering") {
  const CsvTable t{{"x", "value"}, {{0.5, 1.0}, {2.0, 0.25}}};
  CHECK(csv_to_string(t) ==
        "x,value\n"
        "5.0000000000000000e-01,1.0000000000000000e+00\n"
        "2.0000000000000000e+00,2.5000000000000000e-01\n");
}

TEST_CASE("json table rendering round trips") {
  const std::string out = json_to_string(CsvTable{{"x", "value"}, {{1.0, 2.0}}});
  CHECK(out.find("\"header\"") != std::string::npos);
  CHECK(out.find("\"rows\"") != std::string::npos);
  CHECK(out.back() == '\n');
}

TEST_CASE("model json round trip") {
  const HypergeometricModel m({0.5, 1.5}, {2.2});
  const std::string text = model_to_json_text(m);
  const HypergeometricModel back = model_from_json_text(text);
  REQUIRE(back.a.size() == 2);
  REQUIRE(back.b.size() == 1);
  CHECK(back.a[0] == doctest::Approx(0.5));
  CHECK(back.a[1] == doctest::Approx(1.5));
  CHECK(back.b[0] == doctest::Approx(2.2));
}

TEST_CASE("model json rejects malformed input") {
  CHECK_THROWS_AS(model_from_json_text("not json"), error);
  CHECK_THROWS_AS(model_from_json_text("[1,2]"), error);
  CHECK_THROWS_AS(
      model_from_json_text(R"({"p":2,"q":1,"a":[1.0],"b":[2.0]})"), error);
  CHECK_THROWS_AS(
      model_from_json_text(R"({"p":1,"q":0,"a":["x"],"b":[]})"), error);
}

TEST_CASE("model spec strings") {
  const HypergeometricModel canon = model_from_spec("canonical");
  CHECK(canon.a.empty());
  CHECK(canon.b.empty());
  const HypergeometricModel power = model_from_spec("pho:1.5");
  REQUIRE(power.a.size() == 1);
  REQUIRE(power.b.size() == 1);
  CHECK(power.a[0] == doctest::Approx(1.0));
  CHECK(power.b[0] == doctest::Approx(2.5));
  CHECK_THROWS_AS(model_from_spec("pho:zero"), error);
  CHECK_THROWS_AS(model_from_spec("pho:-1"), error);
}

TEST_CASE("model file round trip") {
  const char* path = "ncs_model_io_test.json";
  {
    std::ofstream out(path);
    out << model_to_json_text(HypergeometricModel({1.0, 3.0}, {2.0}));
  }
  const HypergeometricModel m = model_from_file(path);
  REQUIRE(m.a.size() == 2);
  CHECK(m.a[1] == doctest::Approx(3.0));
  CHECK(m.b[0] == doctest::Approx(2.0));
  std::remove(path);
  CHECK_THROWS_AS(model_from_file(path), error);
}

TEST_CASE("text output writes files") {
  const char* path = "ncs_write_text_test.txt";
  write_text(path, "hello\n");
  std::ifstream in(path);
  std::string line;
  std::getline(in, line);
  CHECK(line == "hello");
  in.close();
  std::remove(path);
}
