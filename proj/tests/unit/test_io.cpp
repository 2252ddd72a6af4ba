#include <gtest/gtest.h>

#include <cmath>

#include "alphaembed/generators.hpp"
#include "alphaembed/io.hpp"

using namespace alphaembed;

TEST(JsonText, NumbersRoundTripExactly) {
  Rng rng(71);
  for (int i = 0; i < 500; ++i) {
    const double v = rng.normal() * std::pow(10.0, rng.uniform(-30, 30));
    const Json back = parse_json_text(to_json_text(Json::array({v}), -1));
    EXPECT_EQ(back[0].get<double>(), v);
  }
  EXPECT_EQ(to_json_text(Json{{"x", 0.1}}, -1), "{\"x\":0.10000000000000001}\n");
  EXPECT_EQ(to_json_text(Json{{"x", NAN}}, -1), "{\"x\":null}\n");
}

TEST(JsonText, ScalarArraysOnOneLine) {
  const std::string s = to_json_text(Json{{"p", Json::array({1.5, 2})}, {"s", "a\"b"}});
  EXPECT_NE(s.find("[1.5, 2]"), std::string::npos) << s;
  EXPECT_NE(s.find("\"a\\\"b\""), std::string::npos) << s;
}

TEST(Alpha, Tags) {
  EXPECT_EQ(alpha_from_json("inf").kind(), ExtendedAlpha::Kind::PlusInf);
  EXPECT_EQ(alpha_from_json("+inf").kind(), ExtendedAlpha::Kind::PlusInf);
  EXPECT_EQ(alpha_from_json("-inf").kind(), ExtendedAlpha::Kind::MinusInf);
  EXPECT_TRUE(alpha_from_json("zero").is_zero());
  EXPECT_TRUE(alpha_from_json(0.0).is_zero());
  EXPECT_DOUBLE_EQ(alpha_from_json(2.5).value(), 2.5);
  EXPECT_THROW(alpha_from_json("big"), DomainError);
  EXPECT_THROW(alpha_from_json(Json::array()), DomainError);
  for (const char* t : {"inf", "-inf", "zero"}) EXPECT_EQ(to_json(alpha_from_json(t)).get<std::string>(), std::string(t));
}

TEST(InstanceIo, RoundTrip) {
  Rng rng(72);
  const CubeConfig cfg = random_alpha_star(rng, ExtendedAlpha::finite(3));
  const std::string text = to_json_text(instance_to_json(ExtendedAlpha::finite(3), cfg));
  const Instance back = instance_from_json(parse_json_text(text));
  EXPECT_DOUBLE_EQ(back.alpha.value(), 3.0);
  EXPECT_EQ(back.config.side(), Side::Star);
  for (int i = 1; i <= 6; ++i) EXPECT_EQ(back.config.hex()[i], cfg.hex()[i]);
  EXPECT_EQ(back.config.center(), cfg.center());
  EXPECT_FALSE(back.corners.has_value());
}

TEST(InstanceIo, CornersRoundTrip) {
  Rng rng(73);
  const auto g = random_star_1embedding(rng);
  Json j = instance_to_json(ExtendedAlpha::finite(1), g.config);
  j["corners"] = to_json(g.corners);
  j["corners"].erase("role");
  const Instance back = instance_from_json(parse_json_text(to_json_text(j)));
  ASSERT_TRUE(back.corners.has_value());
  EXPECT_EQ(back.corners->role(), TripleRole::Triangle);
  for (std::size_t k = 0; k < 3; ++k) EXPECT_EQ(back.corners->inner[k], g.corners.inner[k]);
}

TEST(InstanceIo, Rejections) {
  const std::string hex = "[[1,0],[0.5,0.8],[-0.5,0.8],[-1,0],[-0.5,-0.8],[0.5,-0.8]]";
  auto parse = [](const std::string& s) { return instance_from_json(parse_json_text(s)); };
  EXPECT_NO_THROW(parse("{\"alpha\":1,\"hex\":" + hex + ",\"center\":[0,0],\"side\":\"star\"}"));
  EXPECT_THROW(parse("{\"alpha\":1,\"hex\":" + hex + ",\"center\":[0,0],\"side\":\"star\",\"extra\":1}"), DomainError);
  EXPECT_THROW(parse("{\"alpha\":1,\"hex\":" + hex + ",\"side\":\"star\"}"), DomainError);
  EXPECT_THROW(parse("{\"alpha\":1,\"hex\":" + hex + ",\"center\":[0,0],\"side\":\"cube\"}"), DomainError);
  EXPECT_THROW(parse("{\"alpha\":1,\"hex\":[[0,0]],\"center\":[0,0],\"side\":\"star\"}"), DomainError);
  EXPECT_THROW(parse("{\"alpha\":1,\"hex\":" + hex + ",\"center\":[1,0],\"side\":\"star\"}"), DomainError);
  EXPECT_THROW(parse_json_text("{not json"), DomainError);
}
