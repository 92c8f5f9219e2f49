#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "doctest.h"
#include "realfunm/partition.hpp"

using realfunm::BlockPartition;
using realfunm::XScalar;
using realfunm::build_partition;

namespace {

std::uint64_t mix(std::uint64_t& s) {
  s += 0x9E3779B97F4A7C15ull;
  std::uint64_t z = s;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

double unit(std::uint64_t& s) { return static_cast<double>(mix(s) >> 11) * 0x1.0p-53; }

std::vector<double> sorted_uniform(int n, double lo, double hi, std::uint64_t seed) {
  std::uint64_t s = seed;
  std::vector<double> d(n);
  for (double& v : d) v = lo + (hi - lo) * unit(s);
  std::sort(d.begin(), d.end());
  return d;
}

}  // namespace

TEST_CASE("hand-sized clustering with rho 2") {
  const std::vector<double> diag{0.1, 0.9, 2.5, 3.7};
  const BlockPartition p = build_partition(diag, 2.0, 30);
  REQUIRE(p.block_count() == 2);
  CHECK(p.boundaries == std::vector<int>{0, 2, 4});
  CHECK(p.origin == 0.1);
  CHECK((p.blocks[0].beta - p.blocks[0].alpha).to_double() == doctest::Approx(0.8));
  CHECK((p.blocks[1].beta - p.blocks[1].alpha).to_double() == doctest::Approx(1.2));
  CHECK_FALSE(p.blocks[0].degenerate);
  CHECK(p.block_of(0) == 0);
  CHECK(p.block_of(1) == 0);
  CHECK(p.block_of(2) == 1);
  CHECK(p.block_of(3) == 1);
}

TEST_CASE("enclosure and midpoint data per block") {
  const std::vector<double> diag{0.1, 0.9, 2.5, 3.7};
  const BlockPartition p = build_partition(diag, 2.0, 30);
  for (int k = 0; k < 2; ++k) {
    const auto& b = p.blocks[k];
    for (int i = p.block_begin(k); i < p.block_end(k); ++i) {
      CHECK(b.alpha <= XScalar(diag[i], 30));
      CHECK(XScalar(diag[i], 30) <= b.beta);
    }
    CHECK(b.gamma == (b.alpha + b.beta) / 2L);
    CHECK(b.delta == (b.beta - b.alpha) / 2L);
  }
}

TEST_CASE("all-equal diagonal gives one degenerate block") {
  const std::vector<double> diag(6, -3.25);
  const BlockPartition p = build_partition(diag, 2.0, 30);
  REQUIRE(p.block_count() == 1);
  CHECK(p.block_size(0) == 6);
  CHECK(p.blocks[0].degenerate);
  CHECK(p.blocks[0].delta.is_zero());
  CHECK(p.blocks[0].alpha == p.blocks[0].beta);
  CHECK(p.blocks[0].gamma == XScalar(-3.25, 30));
}

TEST_CASE("256 uniform entries on [-10,0) split into the five length-2 parts") {
  const std::vector<double> diag = sorted_uniform(256, -10.0, 0.0, 7);
  const BlockPartition p = build_partition(diag, 2.0, 30);
  REQUIRE(p.block_count() == 5);
  CHECK(p.origin == diag.front());
  CHECK(p.origin == doctest::Approx(-10.0).epsilon(0.01));  // intervals anchor at the minimum
  int total = 0;
  for (int k = 0; k < 5; ++k) {
    total += p.block_size(k);
    const double lo = p.origin + 2.0 * k;
    for (int i = p.block_begin(k); i < p.block_end(k); ++i) {
      CHECK(diag[i] >= lo);
      CHECK(diag[i] < lo + 2.0);
    }
  }
  CHECK(total == 256);
}

TEST_CASE("the top entry on an interior boundary closes the last interval") {
  // 2.0 sits exactly on the boundary between [0,2) and [2,4); as the
  // maximum it is pulled down so no fresh interval opens above it
  const std::vector<double> diag{0.0, 2.0};
  const BlockPartition p = build_partition(diag, 2.0, 30);
  REQUIRE(p.block_count() == 1);
  CHECK(p.block_size(0) == 2);
  CHECK(p.blocks[0].alpha <= XScalar(30));
  CHECK(p.blocks[0].beta >= XScalar(2L, 30));

  // a non-maximal entry on the same boundary still goes up
  const std::vector<double> diag3{0.0, 2.0, 3.0};
  const BlockPartition q = build_partition(diag3, 2.0, 30);
  REQUIRE(q.block_count() == 2);
  CHECK(q.block_size(0) == 1);
  CHECK(q.block_size(1) == 2);
}

TEST_CASE("empty intervals are dropped and numbering compacted") {
  // 0.5 and 6.5 leave intervals [2.5,4.5) empty; two blocks remain
  const std::vector<double> diag{0.5, 6.5};
  const BlockPartition p = build_partition(diag, 2.0, 30);
  REQUIRE(p.block_count() == 2);
  CHECK(p.block_size(0) == 1);
  CHECK(p.block_size(1) == 1);
  CHECK(p.block_of(0) == 0);
  CHECK(p.block_of(1) == 1);
}

TEST_CASE("blocks two apart are separated by at least rho") {
  std::uint64_t s = 9;
  for (int trial = 0; trial < 25; ++trial) {
    const int n = 20 + static_cast<int>(mix(s) % 40);
    const double rho = 0.5 + 2.5 * unit(s);
    const std::vector<double> diag = sorted_uniform(n, -12.0, 0.0, mix(s));
    const BlockPartition p = build_partition(diag, rho, 30);
    int total = 0;
    for (int k = 0; k < p.block_count(); ++k) total += p.block_size(k);
    CHECK(total == n);
    for (int k = 0; k + 2 < p.block_count(); ++k)
      for (int l = k + 2; l < p.block_count(); ++l)
        CHECK(diag[p.block_begin(l)] - diag[p.block_end(k) - 1] >= rho);
    // beta - alpha never exceeds rho
    for (const auto& b : p.blocks)
      CHECK((b.beta - b.alpha).to_double() <= rho * (1.0 + 1e-15));
  }
}

TEST_CASE("directed rounding keeps the enclosure rigorous") {
  // values chosen so that the 16th significant digit actually rounds
  std::uint64_t s = 31;
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> diag(8);
    for (double& v : diag) v = -10.0 * unit(s);
    std::sort(diag.begin(), diag.end());
    const BlockPartition p = build_partition(diag, 2.0, 30);
    for (int k = 0; k < p.block_count(); ++k) {
      const auto& b = p.blocks[k];
      CHECK(b.alpha <= XScalar(diag[p.block_begin(k)], 30));
      CHECK(b.beta >= XScalar(diag[p.block_end(k) - 1], 30));
      // rounding in the 16th digit moves each end by less than 1e-14
      CHECK((XScalar(diag[p.block_begin(k)], 30) - b.alpha).to_double() <= 1e-14);
      CHECK((b.beta - XScalar(diag[p.block_end(k) - 1], 30)).to_double() <= 1e-14);
    }
  }
}

TEST_CASE("summary mentions every block") {
  const std::vector<double> diag{0.1, 0.9, 2.5, 3.7};
  const BlockPartition p = build_partition(diag, 2.0, 30);
  const std::string s = p.summary();
  CHECK(s.find("block") != std::string::npos);
  CHECK(std::count(s.begin(), s.end(), '\n') >= 2);
}

TEST_CASE("invalid inputs are rejected") {
  CHECK_THROWS_AS(build_partition({1.0, 2.0}, 0.0, 30), std::invalid_argument);
  CHECK_THROWS_AS(build_partition({1.0, 2.0}, -1.0, 30), std::invalid_argument);
  CHECK_THROWS_AS(build_partition({}, 2.0, 30), std::invalid_argument);
  CHECK_THROWS_AS(build_partition({2.0, 1.0}, 2.0, 30), std::invalid_argument);
}
