#include <stdexcept>
#include <cmath>

#include "doctest.h"
#include "dpcd/svt.hpp"

using namespace dpcd;

TEST_CASE("zeroed noise reduces to thresholding with a cutoff") {
  SparseVector svt(0.5, 2, NoiseSource::zeroed());
  CHECK(svt.query(-5) == SvtAnswer::Below);
  CHECK(svt.query(-1) == SvtAnswer::Below);
  CHECK(svt.query(3) == SvtAnswer::Above);
  CHECK(svt.above_count() == 1);

  SparseVector cut(0.5, 2, NoiseSource::zeroed());
  CHECK(cut.query(1) == SvtAnswer::Above);
  CHECK(cut.query(1) == SvtAnswer::Above);
  CHECK(cut.query(1) == SvtAnswer::Below);  // cutoff exhausted
  CHECK(cut.query(100) == SvtAnswer::Below);
  CHECK(cut.above_count() == 2);

  // The comparison is inclusive.
  SparseVector edge(0.5, 1, NoiseSource::zeroed());
  CHECK(edge.query(0) == SvtAnswer::Above);
}

TEST_CASE("above answers never exceed the cutoff") {
  SparseVector svt(1.0, 3, NoiseSource::seeded(5));
  for (int i = 0; i < 200; ++i) {
    svt.query(50.0);
    CHECK(svt.above_count() <= 3);
  }
  CHECK(svt.above_count() == 3);
}

TEST_CASE("epsilon derives from the budget") {
  SparseVector svt(0.5, 1, NoiseSource::zeroed());
  CHECK(svt.epsilon() == doctest::Approx(1.0));
  CHECK_THROWS_AS(SparseVector(0.0, 1, NoiseSource::zeroed()), std::invalid_argument);
  CHECK_THROWS_AS(SparseVector(1.0, 0, NoiseSource::zeroed()), std::invalid_argument);
}

TEST_CASE("accuracy radius formula") {
  // c=1, k=e, beta=2/e, rho=1/2: 8 * (1 + 1) / 1 = 16.
  CHECK(svt_accuracy_radius(1, std::exp(1.0), 2.0 / std::exp(1.0), 0.5) ==
        doctest::Approx(16.0));
  CHECK_THROWS_AS(svt_accuracy_radius(1, 1.0, 2.0, 0.5), std::invalid_argument);

  // Doubling the cutoff more than doubles the radius on a fixed grid.
  double prev = 0.0;
  for (uint64_t c = 1; c <= 64; c *= 2) {
    const double g = svt_accuracy_radius(c, 1024, 0.05, 1.0);
    if (prev > 0) CHECK(g > 2.0 * prev);
    prev = g;
  }
}

TEST_CASE("same seed replays the same answers") {
  SparseVector a(0.5, 5, NoiseSource::seeded(11));
  SparseVector b(0.5, 5, NoiseSource::seeded(11));
  for (int i = -10; i < 10; ++i) CHECK(a.query(i) == b.query(i));
}
