#include <gtest/gtest.h>

#include <cstring>

#include "geodid/error.hpp"
#include "geodid/io.hpp"
#include "oracles.hpp"

namespace geodid {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;
using testing::write_text;

class IoTest : public ::testing::Test {
 protected:
  void SetUp() override { dir = testing::fresh_temp_dir("io"); }
  void TearDown() override { fs::remove_all(dir); }
  fs::path manifest(const json& j) {
    const auto p = dir / "panel.json";
    write_text(p, j.dump());
    return p;
  }
  fs::path dir;
};

bool bit_equal(double a, double b) { return std::memcmp(&a, &b, sizeof a) == 0; }

TEST_F(IoTest, InlineScalarPanel) {
  const auto p = manifest({{"space", "frobenius"},
                           {"format", "matrix-json"},
                           {"periods", 2},
                           {"units",
                            {{{"id", "a"}, {"group", nullptr}, {"outcomes", {1.0, 2.5}}},
                             {{"id", "b"}, {"treatment", {0, 1}}, {"outcomes", {json::array({json::array({3.0})}), 7.0}}}}}});
  const auto panel = io::load_panel(p);
  EXPECT_EQ(panel.units(), 2u);
  EXPECT_EQ(panel.space(), SpaceId::Frobenius);
  EXPECT_FALSE(panel.treated(0, 1));
  EXPECT_TRUE(panel.treated(1, 1));
  EXPECT_EQ(panel.group(1), 1);
  EXPECT_FALSE(panel.group(0).has_value());
  EXPECT_EQ(std::get<SymmetricMatrixPoint>(panel.outcome(1, 0)).entries()(0, 0), 3.0);
}

TEST_F(IoTest, CompositionRowNotSummingToOne) {
  write_text(dir / "a0.csv", "0.2,0.3,0.5\n");
  write_text(dir / "a1.csv", "0.2,0.3,0.4\n");
  const auto p = manifest({{"space", "sphere"},
                           {"format", "composition-csv"},
                           {"periods", 2},
                           {"units", {{{"id", "a"}, {"treatment", {0, 0}}, {"outcomes", {"a0.csv", "a1.csv"}}}}}});
  try {
    io::load_panel(p);
    FAIL();
  } catch (const InvariantViolation& e) {
    EXPECT_EQ(e.rule(), "composition.sum_to_one");
    EXPECT_EQ(e.unit(), "a");
    EXPECT_EQ(e.period(), 1);
    EXPECT_NE(std::string(e.what()).find("a1.csv"), std::string::npos);
  }
}

TEST_F(IoTest, SamplesCsvMatchesManualQuantiles) {
  testing::Rng rng(5);
  std::vector<double> draws(100);
  std::string csv;
  for (double& x : draws) {
    x = testing::normal(rng);
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g\n", x);
    csv += buf;
  }
  write_text(dir / "s.csv", csv);
  write_text(dir / "t.csv", csv);
  const auto p = manifest({{"space", "wasserstein"},
                           {"format", "samples-csv"},
                           {"periods", 2},
                           {"grid_size", 100},
                           {"units", {{{"id", 1}, {"group", 1}, {"outcomes", {"s.csv", "t.csv"}}}}}});
  const auto panel = io::load_panel(p);
  EXPECT_EQ(panel.unit_id(0), "1");
  const auto expected = quantile_from_samples(draws, 100);
  EXPECT_TRUE(std::get<QuantileCurve>(panel.outcome(0, 0)) == expected);
  // Spot check one cell by hand: p = 0.505, h = 99 * 0.505 = 49.995.
  std::sort(draws.begin(), draws.end());
  const double hand = draws[49] + 0.995 * (draws[50] - draws[49]);
  EXPECT_NEAR(std::get<QuantileCurve>(panel.outcome(0, 0))[50], hand, 1e-14);
}

TEST_F(IoTest, ParseErrorsCarryPosition) {
  const auto p = dir / "bad.json";
  write_text(p, "{\n  \"space\": \"sphere\",\n  \"periods\": ,\n}");
  try {
    io::load_panel(p);
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3);
    EXPECT_GT(e.column(), 1);
  }

  write_text(dir / "q.csv", "0.1,0.2\n0.3,abc\n");
  try {
    io::read_csv(dir / "q.csv");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2);
    EXPECT_EQ(e.column(), 5);
  }
}

TEST_F(IoTest, MissingOutcomes) {
  auto base = json{{"space", "wasserstein"}, {"format", "quantile-csv"}, {"periods", 2}};
  base["units"] = {{{"id", "a"}, {"group", nullptr}, {"outcomes", {"nope.csv", "nope.csv"}}}};
  EXPECT_THROW(io::load_panel(manifest(base)), MissingOutcome);
  base["units"] = {{{"id", "a"}, {"group", nullptr}, {"outcomes", json::array({json::array({0.0, 1.0})})}}};
  EXPECT_THROW(io::load_panel(manifest(base)), MissingOutcome);
  base["units"] = {{{"id", "a"}, {"group", nullptr}, {"outcomes", {{0.0, 1.0}, nullptr}}}};
  EXPECT_THROW(io::load_panel(manifest(base)), MissingOutcome);
}

TEST_F(IoTest, InvariantViolations) {
  auto base = json{{"space", "wasserstein"}, {"format", "quantile-csv"}, {"periods", 3}};
  base["units"] = {{{"id", "a"}, {"treatment", {0, 1, 0}}, {"outcomes", {{0.0, 1.0}, {0.0, 1.0}, {0.0, 1.0}}}}};
  try {
    io::load_panel(manifest(base));
    FAIL();
  } catch (const InvariantViolation& e) {
    EXPECT_EQ(e.rule(), "treatment.irreversible");
    EXPECT_EQ(e.unit(), "a");
    EXPECT_EQ(e.period(), 2);
  }
  base["units"] = {{{"id", "a"}, {"group", 1}, {"outcomes", {{0.0, 1.0}, {1.0, 0.0}, {0.0, 1.0}}}}};
  try {
    io::load_panel(manifest(base));
    FAIL();
  } catch (const InvariantViolation& e) {
    EXPECT_EQ(e.rule(), "quantile.monotone");
    EXPECT_EQ(e.period(), 1);
  }
  base["format"] = "composition-csv";
  EXPECT_THROW(io::load_panel(manifest(base)), InvariantViolation);
  base.erase("format");
  EXPECT_THROW(io::load_panel(manifest(base)), InvariantViolation);
}

void expect_identical(const PanelDataset& a, const PanelDataset& b) {
  ASSERT_EQ(a.units(), b.units());
  ASSERT_EQ(a.periods(), b.periods());
  for (std::size_t i = 0; i < a.units(); ++i) {
    EXPECT_EQ(a.unit_id(i), b.unit_id(i));
    for (int t = 0; t <= a.last_period(); ++t) {
      EXPECT_EQ(a.treated(i, t), b.treated(i, t));
      EXPECT_LE(testing::max_abs_diff(a.outcome(i, t), b.outcome(i, t)), 1e-15);
    }
  }
}

TEST_F(IoTest, RoundTripEveryFormat) {
  testing::Rng rng(12);
  const std::vector<std::pair<SpaceId, io::PanelFormat>> cases{
      {SpaceId::Wasserstein, io::PanelFormat::QuantileCsv},
      {SpaceId::Sphere, io::PanelFormat::CompositionCsv},
      {SpaceId::Frobenius, io::PanelFormat::MatrixCsv},
      {SpaceId::Frobenius, io::PanelFormat::MatrixJson},
  };
  for (const auto& [space, format] : cases) {
    const auto panel = testing::random_staggered_panel(rng, space, 5, 2);
    const auto first = dir / (std::string(io::to_string(format)) + "_a.json");
    const auto second = dir / (std::string(io::to_string(format)) + "_b.json");
    io::save_panel(panel, first, format);
    const auto loaded = io::load_panel(first);
    io::save_panel(loaded, second, format);
    const auto reloaded = io::load_panel(second);
    expect_identical(loaded, reloaded);
    if (space != SpaceId::Sphere) {
      expect_identical(panel, loaded);
    } else {
      // Shares are squared on save and square-rooted on load.
      for (std::size_t i = 0; i < panel.units(); ++i) {
        EXPECT_LT(testing::max_abs_diff(panel.outcome(i, 0), loaded.outcome(i, 0)), 1e-15);
      }
    }
  }
  EXPECT_THROW(io::save_panel(testing::random_two_period_panel(rng, SpaceId::Wasserstein, 3), dir / "x.json",
                              io::PanelFormat::SamplesCsv),
               InvalidArgument);
}

TEST(PointJson, BitExactRoundTrip) {
  testing::Rng rng(13);
  for (SpaceId space : {SpaceId::Wasserstein, SpaceId::Sphere, SpaceId::Frobenius}) {
    for (int rep = 0; rep < 20; ++rep) {
      const auto p = testing::random_point(rng, space);
      const auto text = io::point_to_json(p).dump();
      const auto back = io::point_from_json(json::parse(text), space);
      std::visit(
          [&](const auto& a) {
            using T = std::decay_t<decltype(a)>;
            const auto& b = std::get<T>(back);
            if constexpr (std::is_same_v<T, SymmetricMatrixPoint>) {
              for (Eigen::Index k = 0; k < a.entries().size(); ++k) {
                EXPECT_TRUE(bit_equal(a.entries().data()[k], b.entries().data()[k]));
              }
            } else if constexpr (std::is_same_v<T, QuantileCurve>) {
              for (std::size_t k = 0; k < a.grid_size(); ++k) EXPECT_TRUE(bit_equal(a[k], b[k]));
            } else {
              for (std::size_t k = 0; k < a.dimension(); ++k) EXPECT_TRUE(bit_equal(a[k], b[k]));
            }
          },
          p);
    }
  }
}

TEST(ErrorJson, CarriesStructuredFields) {
  const auto inv = io::error_to_json(InvariantViolation("treatment.irreversible", "bad", "u7", 3));
  EXPECT_EQ(inv["error"]["kind"], "InvariantViolation");
  EXPECT_EQ(inv["error"]["rule"], "treatment.irreversible");
  EXPECT_EQ(inv["error"]["unit"], "u7");
  EXPECT_EQ(inv["error"]["period"], 3);
  const auto parse = io::error_to_json(ParseError("f.csv", 2, 5, "bad"));
  EXPECT_EQ(parse["error"]["line"], 2);
  EXPECT_EQ(parse["error"]["column"], 5);
}

}  // namespace
}  // namespace geodid
