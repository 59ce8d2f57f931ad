#include <cmath>
#include <stdexcept>
#include <vector>

#include "bochnerlab/classify.hpp"
#include "bochnerlab/manifold.hpp"
#include "doctest.h"

using namespace bochnerlab;
using verify::classify;
using verify::neighborhood_scan;

TEST_SUITE("classify") {

TEST_CASE("flat Kaehler chart is consistent on every count") {
  auto man = manifold::make_zoo("flat_cn");
  auto c = classify(man, man.default_point, 1e-8);
  CHECK(c.n == 3);
  CHECK(c.bochner0);
  CHECK(c.kahler);
  CHECK(c.flat);
  CHECK(c.verdict == "consistent");
  CHECK(c.warnings.empty());
  CHECK(c.r_norm <= 1e-12);
}

TEST_CASE("six-sphere point fails all three flags yet stays consistent") {
  auto man = manifold::make_zoo("s6_nearly_kahler");
  auto c = classify(man, man.default_point, 1e-8);
  CHECK(!c.bochner0);
  CHECK(!c.kahler);
  CHECK(!c.flat);
  CHECK(c.verdict == "consistent");
  CHECK(c.nabla_j_norm > 0.1);
  CHECK(c.b_norm > 1e-3 * c.r_norm);
}

TEST_CASE("twisted flat chart realizes the hypothesis side of the statement") {
  auto man = manifold::make_zoo("flat_twisted_j");
  auto c = classify(man, man.default_point, 1e-8);
  CHECK(c.bochner0);
  CHECK(!c.kahler);
  CHECK(c.flat);
  CHECK(c.verdict == "consistent");
  CHECK(c.nabla_j_norm > 1e-3);
}

TEST_CASE("verdict is monotone when the tolerance loosens") {
  // consistent at some tol must stay consistent at every larger tol
  for (const char* name : {"flat_cn", "flat_twisted_j", "s6_nearly_kahler"}) {
    auto man = manifold::make_zoo(name);
    auto p = manifold::random_domain_point(man, 7);
    bool seen_candidate = false;
    for (double tol = 1e-12; tol <= 1e-2 * 1.0000001; tol *= 100.0) {
      auto c = classify(man, p, tol);
      if (c.verdict == "violation-candidate") seen_candidate = true;
      if (seen_candidate) CHECK(c.verdict != "consistent");
      CAPTURE(name);
      CAPTURE(tol);
      CHECK(c.verdict != "violation-candidate");
    }
  }
}

TEST_CASE("low complex dimension is reported not applicable") {
  manifold::ZooParams params;
  params.n = 2;
  auto man = manifold::make_zoo("flat_cn", params);
  auto c = classify(man, man.default_point, 1e-8);
  CHECK(c.n == 2);
  CHECK(c.verdict == "not-applicable");
  REQUIRE(!c.warnings.empty());
  CHECK(c.warnings[0].find("n > 2") != std::string::npos);
}

TEST_CASE("charts without a complex structure are rejected") {
  auto man = manifold::make_zoo("round_sphere_diag");
  CHECK_THROWS_AS(classify(man, man.default_point, 1e-8), std::invalid_argument);
}

TEST_CASE("scan over the twisted chart confirms flatness nearby") {
  auto man = manifold::make_zoo("flat_twisted_j");
  auto rep = neighborhood_scan(man, man.default_point, 0.5, 3);
  CHECK(rep.requested == 729);
  CHECK(rep.sampled + rep.clipped == rep.requested);
  CHECK(rep.sampled > 0);
  CHECK(rep.max_r_norm <= 1e-10);
}

TEST_CASE("scan clips to the declared chart domain") {
  auto man = manifold::make_zoo("round_sphere_diag");
  REQUIRE(!man.domain.empty());
  // a huge radius leaves the chart almost everywhere; those nodes are
  // dropped and counted, not errors
  auto wide = neighborhood_scan(man, man.default_point, 100.0, 2);
  CHECK(wide.clipped > 0);
  CHECK(wide.sampled + wide.clipped == wide.requested);
  auto tight = neighborhood_scan(man, man.default_point, 0.05, 3);
  CHECK(tight.clipped == 0);
  CHECK(tight.sampled == tight.requested);
  CHECK(tight.max_r_norm > 0.01);  // the round sphere is nowhere flat
}

TEST_CASE("degenerate scan arguments are validated") {
  auto man = manifold::make_zoo("flat_cn");
  std::vector<double> bad(man.dim - 1, 0.0);
  CHECK_THROWS_AS(neighborhood_scan(man, bad, 0.5, 3), std::invalid_argument);
  CHECK_THROWS_AS(neighborhood_scan(man, man.default_point, 0.5, 0),
                  std::invalid_argument);
  CHECK_THROWS_AS(neighborhood_scan(man, man.default_point, -1.0, 3),
                  std::invalid_argument);
  auto rep = neighborhood_scan(man, man.default_point, 0.0, 1);
  CHECK(rep.requested == 1);
  CHECK(rep.sampled == 1);
  CHECK(rep.max_r_norm <= 1e-12);
}

}  // TEST_SUITE
