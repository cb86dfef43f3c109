#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"
#include "twc/special_functions.hpp"

namespace twc {
namespace {

TEST(IncompleteBeta, ClosedForms) {
  // I_x(1, 1) = x, I_x(a, 1) = x^a, I_x(1, b) = 1 - (1 - x)^b.
  for (double x : {0.0, 0.1, 0.37, 0.5, 0.9, 1.0}) {
    EXPECT_NEAR(regularized_incomplete_beta(1, 1, x), x, 1e-14);
    EXPECT_NEAR(regularized_incomplete_beta(3.5, 1, x), std::pow(x, 3.5), 1e-13);
    EXPECT_NEAR(regularized_incomplete_beta(1, 2.5, x), 1 - std::pow(1 - x, 2.5), 1e-13);
  }
}

TEST(IncompleteBeta, Symmetry) {
  for (double a : {0.5, 2.0, 17.0}) {
    for (double b : {0.5, 3.0, 40.0}) {
      for (double x : {0.05, 0.3, 0.8}) {
        EXPECT_NEAR(regularized_incomplete_beta(a, b, x), 1 - regularized_incomplete_beta(b, a, 1 - x), 1e-12);
      }
    }
  }
}

TEST(StudentT, AgreesWithIntegrationOracle) {
  for (double df : {1.0, 2.0, 3.7, 8.0, 30.0, 250.0}) {
    for (double t : {0.01, 0.5, 1.0, 2.0, 3.3, 8.0}) {
      EXPECT_NEAR(student_t_two_sided_p(t, df), oracle::t_two_sided_p_by_integration(t, df), 1e-6)
          << "t=" << t << " df=" << df;
      EXPECT_EQ(student_t_two_sided_p(-t, df), student_t_two_sided_p(t, df));
    }
  }
}

TEST(StudentT, KnownValues) {
  EXPECT_EQ(student_t_two_sided_p(0.0, 5.0), 1.0);
  // Cauchy: P(|T| >= 1) = 1/2.
  EXPECT_NEAR(student_t_two_sided_p(1.0, 1.0), 0.5, 1e-12);
  // df = 2 has the closed form 1 - t / sqrt(2 + t^2).
  EXPECT_NEAR(student_t_two_sided_p(1.5, 2.0), 1 - 1.5 / std::sqrt(2 + 2.25), 1e-12);
  EXPECT_NEAR(student_t_two_sided_p(2.306004, 8.0), 0.05, 1e-6);
}

}  // namespace
}  // namespace twc
