#include <gtest/gtest.h>

#include "cpburgers/verify.hpp"

TEST(Verify, AllSuitesPass) {
  for (const auto& r : cpb::run_verify()) EXPECT_TRUE(r.passed) << r.name << ": " << r.detail;
}

TEST(Verify, TamperedStencilBreaksSkewSymmetryOnly) {
  cpb::VerifyOptions options;
  options.tamper_stencil = true;
  for (const auto& r : cpb::run_verify(options)) {
    if (r.name == "discretization.skew_symmetry")
      EXPECT_FALSE(r.passed);
    else
      EXPECT_TRUE(r.passed) << r.name;
  }
}
