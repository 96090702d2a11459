#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <string>
#include <vector>

#include "test_support.hpp"

using namespace motionlab;
using namespace testsupport;

TEST(CloudCsv, RoundTripIsExact) {
  auto cloud = render_motion(trig_motion(), {0.3, -0.2}, ChaosGame{3000, 77});
  const std::string text = cloud_to_csv(cloud);
  const auto back = cloud_from_csv(text);
  EXPECT_EQ(back.points, cloud.points);
  EXPECT_EQ(back.meta.seed, 77u);
  EXPECT_EQ(back.meta.method, "chaos");
  EXPECT_EQ(back.meta.size_param, 3000u);
  EXPECT_EQ(back.meta.source, cloud.meta.source);
  EXPECT_EQ(cloud_to_csv(back), text);
}

TEST(CloudCsv, AcceptsPlainXYWithHeader) {
  const auto cloud = cloud_from_csv("x,y\n0.5,0.25\n\n-1e-3, 2\n");
  ASSERT_EQ(cloud.points.size(), 2u);
  EXPECT_EQ(cloud.points[1], Point(-1e-3, 2.0));
}

TEST(CloudCsv, RejectsMalformedRows) {
  EXPECT_ML_ERROR(cloud_from_csv("0.5\n"), ErrorKind::IoError);
  EXPECT_ML_ERROR(cloud_from_csv("0.5,abc\n"), ErrorKind::IoError);
  EXPECT_ML_ERROR(read_cloud("/nonexistent/cloud.csv"), ErrorKind::IoError);
}

TEST(CountsCsv, RoundTrip) {
  const auto cloud = render_limit_set(cantor_ifs(), ChaosGame{4000, 5});
  const auto dyadic = dyadic_box_counts(cloud, 0, 30);
  const auto back = counts_from_csv(counts_to_csv(dyadic));
  EXPECT_EQ(back.kind, ScaleKind::Dyadic);
  EXPECT_EQ(back.cloud_size, dyadic.cloud_size);
  EXPECT_EQ(back.distinct_points, dyadic.distinct_points);
  ASSERT_EQ(back.entries.size(), dyadic.entries.size());
  EXPECT_EQ(minkowski_estimate(back).value, minkowski_estimate(dyadic).value);

  const auto pack = packing_counts(cloud, dyadic_diameters(0, 12));
  const auto pback = counts_from_csv(counts_to_csv(pack));
  EXPECT_EQ(pback.kind, ScaleKind::Packing);
  for (std::size_t i = 0; i < pack.entries.size(); ++i) {
    EXPECT_EQ(pback.entries[i].scale, pack.entries[i].scale);
    EXPECT_EQ(pback.entries[i].count, pack.entries[i].count);
  }
  EXPECT_ML_ERROR(counts_from_csv("a,b\n1,2\n"), ErrorKind::IoError);
}

TEST(ReportCsv, RoundTrip) {
  const auto rep = check_distortion_sandwich(affine_motion(), std::vector<double>{0.0, 0.5, 0.9});
  const auto back = report_from_csv(rep.csv());
  EXPECT_EQ(back.csv(), rep.csv());
  EXPECT_EQ(back.passed, rep.passed);
  EXPECT_EQ(back.worst_param, rep.worst_param);
  EXPECT_EQ(back.worst_residual, rep.worst_residual);

  const auto failing = check_diameter_harnack(affine_motion(), std::vector<std::vector<int>>{{0, 1}, {1, 0}},
                                              disk_grid(20, 0.5), 0.9, 0.0);
  EXPECT_FALSE(report_from_csv(failing.csv()).passed);
}

TEST(ReportCsv, RejectsInconsistentFlag) {
  EXPECT_ML_ERROR(report_from_csv("check,param,residual,tolerance,passed\nx,p,1,0.5,true\n"), ErrorKind::IoError);
  EXPECT_ML_ERROR(report_from_csv("a,b\n1,2\n"), ErrorKind::IoError);
}

TEST(SweepCsv, RoundTrip) {
  const std::vector<Point> ls = {{0.0, 0.0}, {0.25, -0.5}};
  EstimatorConfig cfg;
  cfg.packing = true;
  const auto res = check_estimator_vs_theory(affine_motion(), ls, ChaosGame{20000, 3}, cfg, 1.0);
  const auto back = sweep_from_csv(res.sweep_csv());
  ASSERT_EQ(back.size(), 2u);
  for (std::size_t i = 0; i < 2; ++i) {
    EXPECT_EQ(back[i].lambda, res.samples[i].lambda);
    EXPECT_EQ(back[i].theory, res.samples[i].theory);
    EXPECT_EQ(back[i].box.value, res.samples[i].box.value);
    EXPECT_EQ(back[i].packing->value, res.samples[i].packing->value);
  }
}

TEST(CsvTable, RowWidthMustMatchHeader) {
  EXPECT_ML_ERROR(csv_table_from_string("a,b\n1,2,3\n"), ErrorKind::IoError);
  EXPECT_ML_ERROR(csv_table_from_string("# only a comment\n"), ErrorKind::IoError);
  const auto t = csv_table_from_string("param,value,bound\nk,0.5,1.25\n");
  EXPECT_EQ(t.numbers("bound"), std::vector<double>{1.25});
  EXPECT_ML_ERROR(t.numbers("missing"), ErrorKind::IoError);
}

TEST(Svg, DeterministicAndWellFormed) {
  const auto cloud = render_limit_set(cantor_ifs(), Deterministic{6});
  const std::string a = cloud_to_svg(cloud, 400);
  EXPECT_EQ(a, cloud_to_svg(cloud, 400));
  EXPECT_NE(a.find("<svg"), std::string::npos);
  EXPECT_NE(a.find("</svg>"), std::string::npos);
  std::size_t circles = 0;
  for (std::size_t pos = 0; (pos = a.find("<circle", pos)) != std::string::npos; ++pos) ++circles;
  EXPECT_EQ(circles, cloud.points.size());
  EXPECT_ML_ERROR(cloud_to_svg(cloud, 4), ErrorKind::InvalidArgument);
}

TEST(Config, RoundTripAstala) {
  const auto cfg = config_from_string(R"({"v":1,"kind":"astala","n":12,
    "harmonic":{"type":"trigpoly","c0":1.5,"cos":[0.5,0.3],"sin":[0.2]}})");
  const auto motion = build_motion(cfg);
  const auto full = materialize(cfg, motion);
  const std::string text = config_to_string(full);
  const auto again = config_from_string(text);
  EXPECT_EQ(config_to_string(again), text);
  const auto rebuilt = build_motion(again);
  EXPECT_EQ(std::get<AstalaMotion>(rebuilt).centers, std::get<AstalaMotion>(motion).centers);
  EXPECT_EQ(dimension_at(std::get<AstalaMotion>(rebuilt), {0.2, 0.3}),
            dimension_at(std::get<AstalaMotion>(motion), {0.2, 0.3}));
}

TEST(Config, RoundTripComposite) {
  const auto cfg = config_from_string(R"({"v":1,"kind":"composite","component_ns":[10,11],
    "target":[{"type":"affine","gamma":1.5},
              {"type":"sum","terms":[{"type":"affine","alpha":1,"gamma":1},
                                     {"type":"scaled","weight":0.5,"inner":{"type":"affine","gamma":1}}]}]})");
  const auto motion = build_motion(cfg);
  const auto text = config_to_string(materialize(cfg, motion));
  const auto rebuilt = build_motion(config_from_string(text));
  const auto& a = std::get<CompositeMotion>(motion);
  const auto& b = std::get<CompositeMotion>(rebuilt);
  ASSERT_EQ(a.components.size(), b.components.size());
  for (std::size_t j = 0; j < a.components.size(); ++j) {
    EXPECT_EQ(a.components[j].motion.centers, b.components[j].motion.centers);
  }
  EXPECT_EQ(dimension_at(a, {-0.4, 0.1}), dimension_at(b, {-0.4, 0.1}));
}

TEST(Config, Errors) {
  EXPECT_ML_ERROR(config_from_string("{"), ErrorKind::ConfigError);
  EXPECT_ML_ERROR(config_from_string(R"({"kind":"astala","n":10,"harmonic":{"type":"affine"}})"), ErrorKind::ConfigError);
  EXPECT_ML_ERROR(config_from_string(R"({"v":2,"kind":"astala"})"), ErrorKind::ConfigError);
  EXPECT_ML_ERROR(config_from_string(R"({"v":1,"kind":"spiral"})"), ErrorKind::ConfigError);
  EXPECT_ML_ERROR(config_from_string(R"({"v":1,"kind":"astala","n":10.5,"harmonic":{"type":"affine"}})"),
                  ErrorKind::ConfigError);
  EXPECT_ML_ERROR(config_from_string(R"({"v":1,"kind":"astala","n":10,"harmonic":{"type":"bessel"}})"),
                  ErrorKind::ConfigError);
  EXPECT_ML_ERROR(config_from_string(R"({"v":1,"kind":"astala","n":10,"harmonic":{"type":"affine","alpha":"x"}})"),
                  ErrorKind::ConfigError);
  EXPECT_ML_ERROR(config_from_string(R"({"v":1,"kind":"composite","component_ns":[10]})"), ErrorKind::ConfigError);
  EXPECT_ML_ERROR(read_config("/nonexistent/motion.json"), ErrorKind::IoError);
}

TEST(Config, BuildErrorsSurface) {
  EXPECT_ML_ERROR(build_motion(config_from_string(R"({"v":1,"kind":"astala","n":10,
    "harmonic":{"type":"affine","alpha":2,"gamma":1}})")), ErrorKind::NonPositiveHarmonic);
  EXPECT_ML_ERROR(build_motion(config_from_string(R"({"v":1,"kind":"composite","component_ns":[10,10],
    "target":[{"type":"affine","gamma":1.5}]})")), ErrorKind::BadArity);
}

TEST(Config, SampleConfigsBuild) {
  for (const auto& entry : std::filesystem::directory_iterator(MOTIONLAB_CONFIG_DIR)) {
    if (entry.path().extension() != ".json") continue;
    EXPECT_NO_THROW(build_motion(read_config(entry.path().string()))) << entry.path();
  }
}

TEST(Format, SeventeenDigitsRoundTrip) {
  CounterRng rng(1);
  for (int i = 0; i < 1000; ++i) {
    const double x = (rng.uniform() - 0.5) * std::pow(10.0, rng.uniform(-30, 30));
    EXPECT_EQ(std::stod(fmt17(x)), x);
    EXPECT_EQ(std::stod(shortest(x)), x);
  }
  EXPECT_EQ(lambda_label({0.5, -0.25}), "0.5-0.25i");
  EXPECT_EQ(lambda_label({0.0, 0.0}), "0+0i");
}
