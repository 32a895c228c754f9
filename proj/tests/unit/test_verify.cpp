#include <gtest/gtest.h>

#include "kreinlab/verify.hpp"
#include "test_util.hpp"

namespace kreinlab {
namespace {

using test::kind_of;

VerifyOptions small(const std::string& suite, std::size_t trials) {
  VerifyOptions o;
  o.suite = suite;
  o.trials = trials;
  return o;
}

TEST(Verify, RejectsBadArguments) {
  EXPECT_EQ(kind_of([] { run_verify(small("nope", 1)); }), ErrorKind::kInvalidArgument);
  EXPECT_EQ(kind_of([] { run_verify(small("lemmas", 0)); }), ErrorKind::kInvalidArgument);
  EXPECT_EQ(kind_of([] { run_property("no_such_property", {}); }), ErrorKind::kInvalidArgument);
}

TEST(Verify, SuitesListProperties) {
  EXPECT_EQ(verify_suites().front(), "all");
  EXPECT_FALSE(property_names("lemmas").empty());
  EXPECT_FALSE(property_names("sums").empty());
  EXPECT_EQ(property_names("all").size(),
            property_names("lemmas").size() + property_names("sums").size() + property_names("scenarios").size());
}

TEST(Verify, LemmasPassWithFewTrials) {
  const VerifyReport r = run_verify(small("lemmas", 5));
  EXPECT_TRUE(r.all_passed());
  EXPECT_EQ(r.borderline_total(), 0u);
  for (const PropertyResult& p : r.properties) {
    EXPECT_EQ(p.trials, 5u) << p.name;
    EXPECT_EQ(p.passed, 5u) << p.name;
  }
}

TEST(Verify, SeededRunsAreReproducible) {
  VerifyOptions o = small("lemmas", 10);
  o.seed = 42;
  const PropertyResult a = run_property("classification_basis_invariant", o);
  const PropertyResult b = run_property("classification_basis_invariant", o);
  EXPECT_EQ(a.worst, b.worst);
  EXPECT_EQ(a.passed, b.passed);
}

TEST(Verify, CoarseToleranceFlagsBorderlineInsteadOfFailing) {
  VerifyOptions o = small("lemmas", 20);
  o.tol.relative_eps = 1e-2;
  const VerifyReport r = run_verify(o);
  EXPECT_TRUE(r.all_passed());
  EXPECT_GT(r.borderline_total(), 0u);
}

}  // namespace
}  // namespace kreinlab
