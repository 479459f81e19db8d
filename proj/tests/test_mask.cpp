#include <doctest.h>

#include <random>

#include <nlohmann/json.hpp>

#include "oracle.hpp"
#include "rvoseval/errors.hpp"
#include "rvoseval/json_io.hpp"
#include "rvoseval/mask.hpp"

using namespace rvoseval;

namespace {

DenseMask grid(int h, int w, std::initializer_list<std::uint8_t> px) {
  std::vector<std::uint8_t> v(px);
  return DenseMask::from_pixels(h, w, v);
}

}  // namespace

TEST_CASE("dense mask basics") {
  DenseMask m(3, 70);
  CHECK(m.count() == 0);
  CHECK_FALSE(m.any());
  m.set(2, 69);
  m.set(0, 0);
  CHECK(m.get(2, 69));
  CHECK(m.count() == 2);
  m.set(2, 69, false);
  CHECK(m.count() == 1);
  CHECK_THROWS_AS(DenseMask(0, 4), InvalidArgument);
  CHECK_THROWS_AS(DenseMask(4, -1), InvalidArgument);
}

TEST_CASE("rle golden vectors") {
  // 2x2, column-major: (0,0)=0 (1,0)=1 (0,1)=1 (1,1)=0
  const auto m = grid(2, 2, {0, 1, 1, 0});
  const RleMask rle = rle_encode(m);
  CHECK(rle.counts == std::vector<std::uint32_t>{1, 2, 1});

  const auto full = grid(2, 2, {1, 1, 1, 1});
  CHECK(rle_encode(full).counts == std::vector<std::uint32_t>{0, 4});

  const auto empty = DenseMask(3, 3);
  CHECK(rle_encode(empty).counts == std::vector<std::uint32_t>{9});

  RleMask given{2, 2, {0, 1, 2, 1}};
  const DenseMask d = rle_decode(given);
  CHECK(d.get(0, 0));
  CHECK_FALSE(d.get(1, 0));
  CHECK_FALSE(d.get(0, 1));
  CHECK(d.get(1, 1));
  CHECK(rle_encode(d) == given);
}

TEST_CASE("malformed rle is rejected") {
  CHECK_THROWS_AS(rle_decode(RleMask{2, 2, {5}}), MalformedRle);
  CHECK_THROWS_AS(rle_decode(RleMask{2, 2, {3}}), MalformedRle);
  CHECK_THROWS_AS(rle_decode(RleMask{2, 2, {}}), MalformedRle);
  CHECK_THROWS_AS(rle_decode(RleMask{2, 2, {1, 0, 3}}), MalformedRle);
  CHECK_THROWS_AS(rle_decode(RleMask{0, 2, {0}}), MalformedRle);

  CHECK_THROWS_AS(rle_from_json(nlohmann::json::parse(R"({"size":[2,2],"counts":[1,-1,4]})")),
                  MalformedRle);
  CHECK_THROWS_AS(rle_from_json(nlohmann::json::parse(R"({"size":[2,2],"counts":[1.5,2.5]})")),
                  MalformedRle);
  CHECK_THROWS_AS(rle_from_json(nlohmann::json::parse(R"({"size":[2],"counts":[4]})")),
                  MalformedRle);
  CHECK_THROWS_AS(rle_from_json(nlohmann::json::parse(R"({"counts":[4]})")), MalformedRle);
  CHECK_NOTHROW(rle_from_json(nlohmann::json::parse(R"({"size":[2,2],"counts":[4]})")));
}

TEST_CASE("rle round trip against column-major oracle") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> dim(1, 90);
  std::uniform_real_distribution<double> density(0.0, 1.0);
  for (int k = 0; k < 1000; ++k) {
    const int h = dim(rng), w = dim(rng);
    const auto g = (k % 2) ? oracle::random_noise(rng, h, w, density(rng))
                           : oracle::random_blobs(rng, h, w, 3);
    const DenseMask m = oracle::to_dense(g);
    const RleMask rle = rle_encode(m);
    REQUIRE(rle.counts == oracle::rle_counts(g));
    REQUIRE(rle_decode(rle) == m);
    REQUIRE(rle_from_json(rle_to_json(rle)) == rle);
  }
}

TEST_CASE("region iou conventions") {
  const DenseMask empty(4, 4);
  CHECK(region_iou(empty, empty) == kBothEmptyIou);
  auto a = grid(1, 4, {1, 1, 0, 0});
  auto b = grid(1, 4, {0, 1, 1, 0});
  CHECK(region_iou(a, b) == doctest::Approx(1.0 / 3.0));
  CHECK(region_iou(a, DenseMask(1, 4)) == 0.0);
  CHECK(region_iou(a, a) == 1.0);
}

TEST_CASE("boundary of small shapes") {
  auto one = grid(1, 1, {1});
  CHECK(extract_boundary(one).count() == 1);

  // A solid 4x4 square: the 12-pixel ring is boundary, the 2x2 core is not.
  DenseMask sq(6, 6);
  for (int r = 1; r < 5; ++r)
    for (int c = 1; c < 5; ++c) sq.set(r, c);
  const auto b = extract_boundary(sq);
  CHECK(b.count() == 12);
  CHECK_FALSE(b.pixels().get(2, 2));
  CHECK(b.pixels().get(1, 1));

  // Frame border acts as background.
  DenseMask full(3, 3);
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) full.set(r, c);
  CHECK(extract_boundary(full).count() == 8);
  CHECK(extract_boundary(DenseMask(5, 5)).empty());
}

TEST_CASE("boundary and dilation match brute force") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> dim(1, 140);
  std::uniform_int_distribution<int> rad(0, 5);
  for (int k = 0; k < 300; ++k) {
    const int h = dim(rng), w = dim(rng);
    const auto g = (k % 3) ? oracle::random_blobs(rng, h, w, 4) : oracle::random_noise(rng, h, w, 0.3);
    const DenseMask m = oracle::to_dense(g);
    REQUIRE(oracle::from_dense(extract_boundary(m).pixels()).px == oracle::boundary(g).px);

    const int r = rad(rng);
    const DenseMask d = dilate_chebyshev(m, r);
    oracle::Grid expect(h, w);
    const auto pts = oracle::points(g);
    for (int y = 0; y < h; ++y)
      for (int x = 0; x < w; ++x)
        for (auto [py, px] : pts)
          if (std::max(std::abs(py - y), std::abs(px - x)) <= r) {
            expect.at(y, x) = 1;
            break;
          }
    REQUIRE(oracle::from_dense(d).px == expect.px);
  }
}

TEST_CASE("counts on words with tail bits") {
  std::mt19937_64 rng(3);
  for (int w : {1, 63, 64, 65, 127, 128, 129}) {
    const auto a = oracle::random_noise(rng, 5, w, 0.5);
    const auto b = oracle::random_noise(rng, 5, w, 0.5);
    long inter = 0, uni = 0;
    for (std::size_t k = 0; k < a.px.size(); ++k) {
      inter += a.px[k] & b.px[k];
      uni += a.px[k] | b.px[k];
    }
    CHECK(intersection_count(oracle::to_dense(a), oracle::to_dense(b)) == inter);
    CHECK(union_count(oracle::to_dense(a), oracle::to_dense(b)) == uni);
  }
}

TEST_CASE("frame keys") {
  CHECK(parse_frame_key("0") == 0);
  CHECK(parse_frame_key("123") == 123);
  CHECK_FALSE(parse_frame_key("01").has_value());
  CHECK_FALSE(parse_frame_key("-1").has_value());
  CHECK_FALSE(parse_frame_key("1a").has_value());
  CHECK_FALSE(parse_frame_key("").has_value());
}
