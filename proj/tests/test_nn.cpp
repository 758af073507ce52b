// Copyright 2026 The nasrec Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include "nasrec/common/errors.hpp"
#include "nasrec/common/rng.hpp"
#include "nasrec/nn/adam.hpp"
#include "nasrec/nn/grad_check.hpp"
#include "nasrec/nn/init.hpp"
#include "nasrec/nn/matrix.hpp"
#include "nasrec/nn/ops.hpp"

namespace nasrec {
namespace {

TEST(DenseMatrix, RejectsMismatchedValues) {
  EXPECT_THROW(DenseMatrix(2, 3, std::vector<double>(5)), ContractViolation);
  const DenseMatrix m(2, 2, std::vector<double>{1, 2, 3, 4});
  EXPECT_EQ(m(1, 0), 3.0);
  EXPECT_EQ(DenseMatrix::identity(3)(2, 2), 1.0);
  EXPECT_EQ(DenseMatrix::identity(3)(0, 2), 0.0);
}

TEST(Ops, ReluClampsNegatives) {
  const Vector r = relu(std::vector<double>{-1.0, 0.0, 2.5});
  EXPECT_EQ(r, (Vector{0.0, 0.0, 2.5}));
}

TEST(Ops, SigmoidIsStableAtExtremes) {
  EXPECT_EQ(sigmoid(0.0), 0.5);
  EXPECT_GT(sigmoid(-800.0), -1.0);
  EXPECT_TRUE(std::isfinite(sigmoid(-800.0)));
  EXPECT_EQ(sigmoid(800.0), 1.0);
  EXPECT_NEAR(sigmoid(2.0), 1.0 / (1.0 + std::exp(-2.0)), 1e-16);
}

TEST(Ops, SoftplusMatchesDirectFormulaAndAvoidsOverflow) {
  for (double x : {-30.0, -3.0, 0.0, 1.5, 20.0}) {
    EXPECT_NEAR(softplus(x), std::log(1.0 + std::exp(x)), 1e-12) << x;
  }
  EXPECT_NEAR(softplus(1000.0), 1000.0, 1e-12);
  EXPECT_GT(softplus(-40.0), 0.0);
}

TEST(Ops, SoftmaxMatchesDirectExponentials) {
  const Vector g = softmax(std::vector<double>{1.0, 2.0, 3.0});
  const double z = std::exp(1.0) + std::exp(2.0) + std::exp(3.0);
  EXPECT_NEAR(g[0], std::exp(1.0) / z, 1e-15);
  EXPECT_NEAR(g[1], std::exp(2.0) / z, 1e-15);
  EXPECT_NEAR(g[2], std::exp(3.0) / z, 1e-15);
}

TEST(Ops, SoftmaxSurvivesHugeScores) {
  const Vector g = softmax(std::vector<double>{1000.0, 1000.0});
  EXPECT_EQ(g[0], 0.5);
  EXPECT_THROW(softmax(std::vector<double>{}), ContractViolation);
}

TEST(Ops, AffineComputesWxPlusB) {
  const DenseMatrix w(2, 3, std::vector<double>{1, 0, -1, 2, 1, 0});
  const Vector y = affine(w.view(), std::vector<double>{1, 2, 3}, std::vector<double>{0.5, -1});
  EXPECT_EQ(y, (Vector{-1.5, 3.0}));
  EXPECT_THROW(affine(w.view(), std::vector<double>{1, 2}, std::vector<double>{0, 0}),
               ContractViolation);
}

TEST(Ops, DotRejectsLengthMismatch) {
  EXPECT_THROW(dot(std::vector<double>{1, 2}, std::vector<double>{1}), ContractViolation);
}

TEST(Ops, SoftmaxHandCaseAndShiftInvariance) {
  const Vector g = softmax(std::vector<double>{0.0, std::log(3.0)});
  EXPECT_NEAR(g[0], 0.25, 1e-15);
  EXPECT_NEAR(g[1], 0.75, 1e-15);
  const Vector a = softmax(std::vector<double>{0.3, -1.2, 2.0});
  const Vector b = softmax(std::vector<double>{7.3, 5.8, 9.0});
  for (std::size_t i = 0; i < 3; ++i) EXPECT_NEAR(a[i], b[i], 1e-15);
  const Vector c = softmax(std::vector<double>{4.0, 4.0, 4.0});
  for (double x : c) EXPECT_NEAR(x, 1.0 / 3.0, 1e-16);
}

TEST(Ops, SigmoidSymmetryAndSaturation) {
  for (double x : {-5.0, -0.1, 0.7, 3.0}) EXPECT_NEAR(sigmoid(x), 1.0 - sigmoid(-x), 1e-15);
  EXPECT_NEAR(sigmoid(40.0), 1.0, 1e-15);
}

TEST(Ops, ReluIsIdempotent) {
  const Vector x{-2.0, 0.0, 3.0, -0.5};
  EXPECT_EQ(relu(relu(x)), relu(x));
  EXPECT_EQ(relu(x), (Vector{0.0, 0.0, 3.0, 0.0}));
}

TEST(Ops, AffineMatchesTripleLoopOracle) {
  Rng rng(5);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  DenseMatrix w(3, 3);
  for (double& x : w.flat()) x = u(rng);
  Vector x(3), b(3);
  for (double& v : x) v = u(rng);
  for (double& v : b) v = u(rng);
  const Vector y = affine(w.view(), x, b);
  for (std::size_t r = 0; r < 3; ++r) {
    double acc = b[r];
    for (std::size_t c = 0; c < 3; ++c) acc += w(r, c) * x[c];
    EXPECT_NEAR(y[r], acc, 1e-12);
  }
  EXPECT_EQ(affine(DenseMatrix::identity(3).view(), x, Vector(3, 0.0)), x);
  EXPECT_EQ(affine(DenseMatrix(3, 3).view(), x, b), b);
}

TEST(Adam, ZeroGradientLeavesParametersUnchanged) {
  std::vector<double> p{0.1, -0.2};
  const auto before = p;
  AdamState state(2);
  adam_step(p, std::vector<double>{0.0, 0.0}, state, 0.5);
  EXPECT_EQ(p, before);
}

TEST(Adam, FirstStepMovesEachCoordinateByAboutLr) {
  for (double g : {1e-3, 0.7, -25.0, 1e4}) {
    std::vector<double> p{0.0};
    AdamState state(1);
    adam_step(p, std::vector<double>{g}, state, 0.01);
    EXPECT_NEAR(std::abs(p[0]), 0.01, 1e-7) << g;
    EXPECT_LT(p[0] * g, 0.0);
  }
}

TEST(Adam, IdenticalStatesGiveIdenticalResults) {
  std::vector<double> p1{0.4, 0.5}, p2{0.4, 0.5};
  AdamState s1(2), s2(2);
  for (int i = 0; i < 3; ++i) {
    adam_step(p1, std::vector<double>{0.1, -0.3}, s1, 0.01);
    adam_step(p2, std::vector<double>{0.1, -0.3}, s2, 0.01);
  }
  EXPECT_EQ(p1, p2);
}

TEST(CompensatedSum, RecoversCancelledTerms) {
  CompensatedSum s;
  s.add(1e16);
  s.add(1.0);
  s.add(-1e16);
  EXPECT_EQ(s.value(), 1.0);
}

// Hand-rolled reference for two Adam steps on one coordinate.
TEST(Adam, MatchesReferenceUpdate) {
  std::vector<double> p{1.0};
  AdamState state(1);
  const double lr = 0.1;
  const double g1 = 0.5, g2 = -0.25;
  adam_step(p, std::vector<double>{g1}, state, lr);
  double m = 0.1 * g1, v = 0.001 * g1 * g1;
  double expected = 1.0 - lr * (m / 0.1) / (std::sqrt(v / 0.001) + 1e-8);
  EXPECT_NEAR(p[0], expected, 1e-15);
  adam_step(p, std::vector<double>{g2}, state, lr);
  m = 0.9 * m + 0.1 * g2;
  v = 0.999 * v + 0.001 * g2 * g2;
  const double mh = m / (1.0 - 0.81), vh = v / (1.0 - 0.999 * 0.999);
  expected -= lr * mh / (std::sqrt(vh) + 1e-8);
  EXPECT_NEAR(p[0], expected, 1e-15);
  EXPECT_EQ(state.step(), 2);
}

TEST(Adam, ZeroLearningRateLeavesParametersBitIdentical) {
  std::vector<double> p{0.3, -1.7, 2e-9};
  const auto before = p;
  AdamState state(3);
  for (int i = 0; i < 5; ++i) adam_step(p, std::vector<double>{1.0, -2.0, 3.0}, state, 0.0);
  EXPECT_EQ(p, before);
}

TEST(Adam, NonFiniteGradientNamesTheBlock) {
  std::vector<double> p{1.0, 2.0};
  AdamState state(2);
  try {
    adam_step(p, std::vector<double>{0.0, std::nan("")}, state, 0.1, "effects.out.bias");
    FAIL() << "expected TrainingError";
  } catch (const TrainingError& e) {
    EXPECT_NE(std::string(e.what()).find("effects.out.bias"), std::string::npos);
    EXPECT_NE(std::string(e.what()).find("index 1"), std::string::npos);
  }
}

TEST(Adam, LazyRowsKeepUntouchedMoments) {
  std::vector<double> table{1.0, 1.0, 1.0, 1.0};  // two rows of two
  AdamState state(4);
  state.advance();
  state.apply(2, std::span<double>(table).subspan(2, 2), std::vector<double>{1.0, 1.0}, 0.1);
  EXPECT_EQ(table[0], 1.0);
  EXPECT_EQ(state.first_moment()[0], 0.0);
  EXPECT_NE(table[2], 1.0);
  EXPECT_THROW(AdamState(1).apply(0, std::span<double>(table).first(1), std::vector<double>{1.0},
                                  0.1),
               ContractViolation);
}

TEST(Init, XavierBoundAndRange) {
  EXPECT_DOUBLE_EQ(xavier_bound(3, 5), std::sqrt(6.0 / 8.0));
  const DenseMatrix w = init_params(40, 60, 9);
  const double a = xavier_bound(40, 60);
  double mean = 0.0;
  for (double x : w.flat()) {
    EXPECT_LE(std::abs(x), a);
    mean += x;
  }
  mean /= static_cast<double>(w.size());
  // Uniform[-a, a] has sd a / sqrt(3); the sample mean of 2400 draws sits
  // well within 5 standard errors of zero.
  EXPECT_LT(std::abs(mean), 5.0 * a / std::sqrt(3.0 * 2400.0));
  EXPECT_EQ(init_params(40, 60, 9), w);
  EXPECT_NE(init_params(40, 60, 10), w);
  EXPECT_THROW(init_params(0, 3, 1), ContractViolation);
}

TEST(GradCheck, AcceptsCorrectQuadraticGradient) {
  const std::vector<double> x{0.5, -1.25, 2.0};
  std::vector<double> g;
  for (double v : x) g.push_back(2.0 * v);
  const auto r = grad_check(
      [](std::span<const double> p) {
        double s = 0.0;
        for (double v : p) s += v * v;
        return s;
      },
      x, g);
  EXPECT_LT(r.max_relative_error, 1e-8);
  EXPECT_EQ(r.checked, 3u);
}

TEST(GradCheck, FlagsWrongGradient) {
  const std::vector<double> x{1.0, 2.0};
  const auto r = grad_check([](std::span<const double> p) { return p[0] * p[1]; }, x,
                            std::vector<double>{2.0, 2.0});
  // d/dx1 = x0 = 1, so only coordinate 1 is wrong.
  EXPECT_GT(r.max_relative_error, 0.4);
  EXPECT_EQ(r.worst_index, 1u);
  EXPECT_EQ(r.worst_analytic, 2.0);
  EXPECT_NEAR(r.worst_numeric, 1.0, 1e-8);
}

TEST(GradCheck, SkipsCoordinatesNearAKink) {
  // relu(x0) + x1^2 with x0 just above the kink.
  const std::vector<double> x{1e-4, 3.0};
  const ProbeFn probe = [](std::span<const double> p) {
    return LossProbe{std::max(p[0], 0.0) + p[1] * p[1], std::abs(p[0])};
  };
  const auto r = grad_check(probe, x, std::vector<double>{1.0, 6.0});
  EXPECT_EQ(r.skipped, 2u);  // the margin is global to each evaluation
  const auto far = grad_check(probe, std::vector<double>{0.5, 3.0}, std::vector<double>{1.0, 6.0});
  EXPECT_EQ(far.skipped, 0u);
  EXPECT_LT(far.max_relative_error, 1e-8);
}

TEST(GradCheck, RelativeErrorFloor) {
  EXPECT_EQ(relative_error(0.0, 0.0), 0.0);
  EXPECT_DOUBLE_EQ(relative_error(1e-9, 0.0), 1e-9 / 1e-8);
  EXPECT_DOUBLE_EQ(relative_error(2.0, 1.0), 0.5);
}

}  // namespace
}  // namespace nasrec
