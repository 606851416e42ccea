#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <optional>

#include "uls/config.hpp"
#include "uls/errors.hpp"

using namespace uls;
using json = nlohmann::json;
namespace fs = std::filesystem;

namespace {

json minimal() {
  return json::parse(R"({
    "schema": "v1",
    "equation": {"symbol": "schrodinger", "Q": [], "Nl": [{"coef": [0, -1], "p": 2, "q": 1}]},
    "data": {"generators": [1.0], "terms": [{"n": [1], "re": 0.1, "im": 0}]},
    "solve": {"T": 0.1, "n_time_nodes": 5}
  })");
}

std::optional<ErrorCode> code_of(const json& j) {
  try {
    parse_config(j);
  } catch (const Error& e) {
    return e.code();
  }
  return std::nullopt;
}

fs::path tmpdir() {
  auto p = fs::temp_directory_path() / "uls_test_config";
  fs::create_directories(p);
  return p;
}

}  // namespace

TEST(Config, ParsesMinimal) {
  const RunConfig c = parse_config(minimal());
  EXPECT_DOUBLE_EQ(c.solve.T, 0.1);
  EXPECT_EQ(c.solve.n_time_nodes, 5);
  EXPECT_FALSE(c.M.has_value());
  EXPECT_EQ(c.eq.nl.total_degree(), 3);
}

TEST(Config, DefaultsMForDerivativeNonlinearity) {
  json j = minimal();
  j["equation"]["Q"] = {0, 1};
  const RunConfig c = parse_config(j);
  ASSERT_TRUE(c.M.has_value());
  EXPECT_EQ(*c.M, Dyadic{64});
}

TEST(Config, Rejections) {
  json j = minimal();
  j["schema"] = "v2";
  EXPECT_EQ(code_of(j), ErrorCode::InvalidArgument);
  j = minimal();
  j.erase("equation");
  EXPECT_EQ(code_of(j), ErrorCode::InvalidArgument);
  j = minimal();
  j.erase("data");
  EXPECT_EQ(code_of(j), ErrorCode::InvalidArgument);
  j = minimal();
  j["solve"]["n_time_nodes"] = 4;
  EXPECT_EQ(code_of(j), ErrorCode::InvalidArgument);
  j = minimal();
  j["solve"]["T"] = -1;
  EXPECT_EQ(code_of(j), ErrorCode::InvalidArgument);
  j = minimal();
  j["solve"]["M"] = 48;
  EXPECT_EQ(code_of(j), ErrorCode::InvalidArgument);
  j = minimal();
  j["solve"]["backend"] = "gpu";
  EXPECT_EQ(code_of(j), ErrorCode::InvalidArgument);
  j = minimal();
  j["sup"] = {{"window", 0}};
  EXPECT_EQ(code_of(j), ErrorCode::InvalidArgument);
  EXPECT_EQ(code_of(json::array()), ErrorCode::InvalidArgument);
}

TEST(Config, HashIsStableAndSensitive) {
  const json a = minimal();
  json b = json::parse(a.dump());
  EXPECT_EQ(config_hash(a), config_hash(b));
  EXPECT_EQ(config_hash(a).size(), 16u);
  // key order does not matter
  const json c = json::parse(R"({"b": 1, "a": 2})");
  const json d = json::parse(R"({"a": 2, "b": 1})");
  EXPECT_EQ(config_hash(c), config_hash(d));
  b["seed"] = 1;
  EXPECT_NE(config_hash(a), config_hash(b));
  EXPECT_EQ(parse_config(a).hash(), config_hash(a));
}

TEST(Config, ShippedConfigsParse) {
  int n = 0;
  for (const auto& e : fs::directory_iterator(fs::path(ULS_SOURCE_DIR) / "configs")) {
    if (e.path().extension() != ".json") continue;
    EXPECT_NO_THROW(load_config(e.path().string())) << e.path();
    ++n;
  }
  EXPECT_GE(n, 8);
}

TEST(Config, LoadReportsMissingAndBadJson) {
  EXPECT_THROW(load_config("/nonexistent/x.json"), Error);
  const auto p = tmpdir() / "bad.json";
  std::ofstream(p) << "{ not json";
  EXPECT_THROW(load_config(p.string()), Error);
}

TEST(Csv, RoundTrip) {
  const auto p = (tmpdir() / "t.csv").string();
  CsvWriter w(p, "0123456789abcdef", "unit", {"t", "v"});
  w.row(std::vector<double>{0.0, 1.5});
  w.row(std::vector<double>{0.1, 0.1 + 0.2});
  EXPECT_THROW(w.row(std::vector<double>{1.0}), Error);
  w.close();
  std::ifstream in(p);
  std::string first;
  std::getline(in, first);
  EXPECT_EQ(first, "# config_hash=0123456789abcdef unit");
  const CsvTable t = read_csv(p);
  ASSERT_EQ(t.comments.size(), 1u);
  ASSERT_EQ(t.rows.size(), 2u);
  EXPECT_EQ(t.column("v")[1], 0.1 + 0.2);  // printed with 17 digits
  EXPECT_THROW(t.column("nope"), Error);
}

TEST(Csv, RaggedRowRejected) {
  const auto p = (tmpdir() / "ragged.csv").string();
  std::ofstream(p) << "a,b\n1,2\n3\n";
  EXPECT_THROW(read_csv(p), Error);
}

TEST(Svg, ContainsHashAndSeries) {
  CsvTable t;
  t.columns = {"x", "y"};
  for (int i = 1; i <= 5; ++i) t.rows.push_back({double(i), double(i * i)});
  PlotSpec s;
  s.x = "x";
  s.y = {"y"};
  s.logx = s.logy = true;
  s.fit = true;
  const std::string svg = render_svg(t, s, "feedfacecafebeef");
  EXPECT_NE(svg.find("<svg"), std::string::npos);
  EXPECT_NE(svg.find("feedfacecafebeef"), std::string::npos);
  EXPECT_NE(svg.find("polyline"), std::string::npos);
  s.y = {"z"};
  EXPECT_THROW(render_svg(t, s, "h"), Error);
}

TEST(FieldSpec, Kinds) {
  const json trig = json::parse(R"({"generators": [1.0], "terms": [{"n": [2], "re": 1, "im": 0}]})");
  const Field a = field_from_json(trig);
  ASSERT_TRUE(std::holds_alternative<TrigPoly>(a));
  EXPECT_EQ(std::get<TrigPoly>(a).size(), 1u);

  json g = {{"kind", "grid"}, {"L", 1.0}, {"n", 64}, {"from_trig", trig}};
  const Field b = field_from_json(g);
  ASSERT_TRUE(std::holds_alternative<GridField>(b));
  EXPECT_EQ(std::get<GridField>(b).size(), 64u);

  json r = {{"kind", "grid"}, {"L", 8.0}, {"n", 256},
            {"random", {{"seed", 3}, {"band", {0, 4}}, {"law", "flat"}}}};
  const auto r1 = std::get<GridField>(field_from_json(r));
  const auto r2 = std::get<GridField>(field_from_json(r));
  ASSERT_EQ(r1.size(), r2.size());
  for (std::size_t i = 0; i < r1.size(); ++i) ASSERT_EQ(r1.samples()[i], r2.samples()[i]);

  EXPECT_THROW(field_from_json(json{{"kind", "mesh"}}), Error);
  r["random"]["band"] = {1};
  EXPECT_THROW(field_from_json(r), Error);
  r["random"]["band"] = {0, 4};
  r["random"]["law"] = "cauchy";
  EXPECT_THROW(field_from_json(r), Error);
}
