#include <doctest.h>

#include <random>

#include "skclust/metrics.hpp"
#include "testutil.hpp"

using namespace skclust;

TEST_CASE("accuracy: identity, relabeling, and a mixed case") {
  const LabelVector a = {0, 1, 0, 1};
  CHECK(accuracy(a, a) == 1.0);

  const LabelVector pred = {1, 1, 0, 0};
  const LabelVector truth = {0, 0, 1, 1};
  CHECK(accuracy(pred, truth) == 1.0);

  const LabelVector half_pred = {0, 1, 0, 1};
  const LabelVector half_truth = {0, 0, 1, 1};
  CHECK(accuracy(half_pred, half_truth) == 0.5);
}

TEST_CASE("accuracy handles unequal cluster counts via padding") {
  const LabelVector pred = {0, 1, 2, 2};
  const LabelVector truth = {0, 0, 1, 1};
  CHECK(accuracy(pred, truth) == doctest::Approx(0.75));
}

TEST_CASE("hungarian accuracy equals brute force for up to 6 clusters") {
  std::mt19937_64 rng(777);
  for (int trial = 0; trial < 100; ++trial) {
    std::uniform_int_distribution<int> cdist(2, 6);
    std::uniform_int_distribution<int> ndist(8, 40);
    const int cp = cdist(rng), ct = cdist(rng), n = ndist(rng);
    LabelVector pred, truth;
    std::uniform_int_distribution<int> pd(0, cp - 1), td(0, ct - 1);
    for (int i = 0; i < n; ++i) {
      pred.push_back(pd(rng));
      truth.push_back(td(rng));
    }
    CHECK(accuracy(pred, truth) == doctest::Approx(testutil::brute_force_accuracy(pred, truth))
                                       .epsilon(1e-14));
  }
}

TEST_CASE("nmi: identical, degenerate, and independent partitions") {
  const LabelVector a = {0, 0, 1, 1, 2};
  CHECK(nmi(a, a) == doctest::Approx(1.0).epsilon(1e-12));

  const LabelVector ones(6, 0);
  const LabelVector two_class = {0, 0, 0, 1, 1, 1};
  CHECK(nmi(ones, two_class) == 0.0);

  const LabelVector pred = {0, 1, 0, 1};
  const LabelVector truth = {0, 0, 1, 1};
  CHECK(nmi(pred, truth) == 0.0);
}

TEST_CASE("nmi arithmetic-mean variant") {
  const LabelVector pred = {0, 0, 1, 2};
  const LabelVector truth = {0, 0, 1, 1};
  const double geo = nmi(pred, truth, NmiNormalization::geometric);
  const double ari = nmi(pred, truth, NmiNormalization::arithmetic);
  CHECK(geo > 0.0);
  CHECK(ari > 0.0);
  CHECK(geo != ari);
}

TEST_CASE("purity cases") {
  const LabelVector a = {0, 1, 1, 0};
  CHECK(purity(a, a) == 1.0);

  const LabelVector pred = {0, 0, 1};
  const LabelVector truth = {0, 1, 1};
  CHECK(purity(pred, truth) == doctest::Approx(2.0 / 3.0));

  const LabelVector single(5, 0);
  const LabelVector mixed = {0, 0, 0, 1, 1};
  CHECK(purity(single, mixed) == doctest::Approx(3.0 / 5.0));
}

TEST_CASE("metrics are invariant under relabeling of either side") {
  std::mt19937_64 rng(31337);
  std::uniform_int_distribution<int> ld(0, 3);
  LabelVector pred, truth;
  for (int i = 0; i < 30; ++i) {
    pred.push_back(ld(rng));
    truth.push_back(ld(rng));
  }
  auto relabel = [](const LabelVector& v, const std::vector<int>& map) {
    LabelVector out = v;
    for (auto& x : out) x = map[static_cast<std::size_t>(x)];
    return out;
  };
  const std::vector<int> map = {2, 0, 3, 1};
  const LabelVector pred2 = relabel(pred, map);
  const LabelVector truth2 = relabel(truth, map);
  CHECK(accuracy(pred2, truth) == doctest::Approx(accuracy(pred, truth)));
  CHECK(accuracy(pred, truth2) == doctest::Approx(accuracy(pred, truth)));
  CHECK(nmi(pred2, truth) == doctest::Approx(nmi(pred, truth)));
  CHECK(purity(pred2, truth) == doctest::Approx(purity(pred, truth)));
}

TEST_CASE("accuracy is 1 exactly when partitions coincide up to relabeling") {
  const LabelVector pred = {0, 0, 1, 1, 2, 2};
  const LabelVector same = {5, 5, 3, 3, 9, 9};
  CHECK(accuracy(pred, same) == 1.0);
  const LabelVector off = {5, 5, 3, 9, 9, 9};
  CHECK(accuracy(pred, off) < 1.0);
}

TEST_CASE("contingency table sums to n and evaluate aggregates") {
  const LabelVector pred = {0, 1, 1, 2};
  const LabelVector truth = {1, 1, 0, 0};
  const MetricReport report = evaluate(pred, truth);
  CHECK(report.contingency.sum() == 4);
  CHECK(report.acc >= 0.0);
  CHECK(report.acc <= 1.0);
  CHECK(report.nmi >= 0.0);
  CHECK(report.nmi <= 1.0);
  CHECK(report.purity >= 0.0);
  CHECK(report.purity <= 1.0);
}

TEST_CASE("length mismatch raises") {
  const LabelVector a = {0, 1};
  const LabelVector b = {0, 1, 2};
  CHECK_THROWS_AS(accuracy(a, b), LengthMismatch);
  CHECK_THROWS_AS(nmi(a, b), LengthMismatch);
  CHECK_THROWS_AS(purity(a, b), LengthMismatch);
}
