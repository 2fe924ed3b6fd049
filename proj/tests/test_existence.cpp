#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <memory>

#include "ptv/catalog.hpp"
#include "ptv/existence.hpp"
#include "support/fixtures.hpp"

using namespace ptv;
using namespace ptv::testsupport;

namespace {

CoveringData one_class(ElemIdx x, long alpha) { return CoveringData{{{x, alpha}}}; }

}  // namespace

TEST_CASE("search realizes the pair-orbit branch data") {
  const auto& a4 = catalog_entry("a4");
  const auto& g = a4.orbit.group();
  const auto t = find_branch_tuple(g, one_class(a4.named_class("C3"), 4), 1);
  REQUIRE(t.has_value());
  CHECK(t->elements.size() == 4);
  CHECK(verify_tuple(g, *t));
  for (ElemIdx x : t->elements) CHECK(g.element_order(x) == 3);

  const auto& a5 = catalog_entry("a5");
  const auto t5 =
      find_branch_tuple(a5.orbit.group(), one_class(a5.named_class("C3"), 6), 1);
  REQUIRE(t5.has_value());
  CHECK(verify_tuple(a5.orbit.group(), *t5));
}

TEST_CASE("search realizes the exceptional branch data") {
  const auto& e6 = catalog_entry("e6");
  const auto& g = e6.orbit.group();
  const int c1 = g.cyclic_class_id(e6.named_class("C1"));

  const auto t = find_branch_tuple(g, one_class(e6.named_class("C1"), 12), 7);
  REQUIRE(t.has_value());
  CHECK(t->elements.size() == 12);
  CHECK(verify_tuple(g, *t));
  for (ElemIdx x : t->elements) {
    CHECK(g.element_order(x) == 2);
    CHECK(g.cyclic_class_id(x) == c1);
  }

  // Mixed branch data: twelve reflection points and two rotation points.
  CoveringData mixed;
  mixed.branch.push_back({e6.named_class("C1"), 12});
  mixed.branch.push_back({e6.named_class("C2"), 2});
  const auto tm = find_branch_tuple(g, mixed, 7);
  REQUIRE(tm.has_value());
  CHECK(tm->elements.size() == 14);
  CHECK(verify_tuple(g, *tm));
}

TEST_CASE("two points of one rotation class never generate") {
  // Both slots land in one cyclic subgroup (the second is the inverse of
  // the first), so generation fails structurally on every attempt.
  const auto& e6 = catalog_entry("e6");
  const auto t = find_branch_tuple(e6.orbit.group(),
                                   one_class(e6.named_class("C2"), 2), 1, 3000);
  CHECK_FALSE(t.has_value());
}

TEST_CASE("a single branch point is rejected without sampling") {
  const auto& a4 = catalog_entry("a4");
  const auto t =
      find_branch_tuple(a4.orbit.group(), one_class(a4.named_class("C3"), 1), 1);
  CHECK_FALSE(t.has_value());
}

TEST_CASE("search is deterministic in the seed") {
  const auto& a4 = catalog_entry("a4");
  const auto& g = a4.orbit.group();
  const auto cov = one_class(a4.named_class("C3"), 4);
  const auto t1 = find_branch_tuple(g, cov, 42);
  const auto t2 = find_branch_tuple(g, cov, 42);
  REQUIRE(t1.has_value());
  REQUIRE(t2.has_value());
  CHECK(t1->elements == t2->elements);
  CHECK(t1->class_ids == t2->class_ids);
}

TEST_CASE("tuple verification checks all three conditions") {
  // Permutation model of the alternating group on four letters; the
  // tuple (012),(021),(013),(031) multiplies to the identity pairwise
  // and its entries already generate everything.
  auto g0 = FiniteMatrixGroup::enumerate(
      4, {perm_matrix({1, 2, 0, 3}), perm_matrix({0, 2, 3, 1})});
  REQUIRE(g0.order() == 12);
  const ElemIdx r012 = g0.find(perm_matrix({1, 2, 0, 3})).value();
  const ElemIdx r021 = g0.inverse(r012);
  const ElemIdx r013 = g0.find(perm_matrix({1, 3, 2, 0})).value();
  const ElemIdx r031 = g0.inverse(r013);
  const int cls = g0.cyclic_class_id(r012);

  BranchTuple t;
  t.elements = {r012, r021, r013, r031};
  t.class_ids = {cls, cls, cls, cls};
  CHECK(verify_tuple(g0, t));

  // Identity in a slot: class membership fails.
  BranchTuple bad = t;
  bad.elements[1] = g0.identity();
  CHECK_FALSE(verify_tuple(g0, bad));

  // Class assignment disagrees with the slot's element.
  bad = t;
  const ElemIdx invol = g0.find(perm_matrix({1, 0, 3, 2})).value();
  bad.class_ids[0] = g0.cyclic_class_id(invol);
  CHECK_FALSE(verify_tuple(g0, bad));

  // Broken product.
  bad = t;
  bad.elements[3] = t.elements[2];
  CHECK_FALSE(verify_tuple(g0, bad));

  // Trivial product in a proper subgroup: generation fails.
  BranchTuple sub;
  sub.elements = {r012, r021};
  sub.class_ids = {cls, cls};
  CHECK_FALSE(verify_tuple(g0, sub));

  // Malformed shapes.
  bad = t;
  bad.class_ids.pop_back();
  CHECK_FALSE(verify_tuple(g0, bad));
  CHECK_FALSE(verify_tuple(g0, BranchTuple{}));
  bad = t;
  bad.elements[0] = static_cast<ElemIdx>(g0.order());
  CHECK_FALSE(verify_tuple(g0, bad));
}

TEST_CASE("search rejects malformed requests") {
  const auto& a4 = catalog_entry("a4");
  const auto& g = a4.orbit.group();
  CHECK_THROWS_WITH_AS(find_branch_tuple(g, CoveringData{}, 1),
                       doctest::Contains("EmptyBranchData"), ValidationError);
  CHECK_THROWS_WITH_AS(
      find_branch_tuple(g, one_class(a4.named_class("C3"), 0), 1),
      doctest::Contains("BadBranchData"), ValidationError);
  CHECK_THROWS_WITH_AS(
      find_branch_tuple(g, one_class(a4.named_class("C3"), 4), 1, 0),
      doctest::Contains("BadBranchData"), ValidationError);
  CHECK_THROWS_WITH_AS(
      find_branch_tuple(g, one_class(g.identity(), 4), 1),
      doctest::Contains("TrivialCyclicSubgroup"), ValidationError);
}
