#include <catch2/catch_amalgamated.hpp>

#include "ioco/iso.hpp"
#include "support/helpers.hpp"

using ioco::Model;

TEST_CASE("isomorphism ignores state names and order") {
  for (const auto& name : {"vending_s", "vending_e", "drink_c", "eft_s", "quotient_r"}) {
    Model m = support::fixture(name);
    CHECK(ioco::isomorphic(m, support::permuted(m, 11)));
    CHECK(ioco::isomorphic(m, support::permuted(m, 97)));
  }
}

TEST_CASE("isomorphism needs matching alphabets and shape") {
  Model s = support::fixture("vending_s");
  Model e = support::fixture("vending_e");
  CHECK_FALSE(ioco::isomorphic(s, e));
  // same alphabet, different transition structure
  Model m = support::fixture("drink_m");
  Model p = support::fixture("drink_p");
  CHECK(m.inputs == p.inputs);
  CHECK(m.outputs == p.outputs);
  CHECK_FALSE(ioco::isomorphic(m, p));
}

TEST_CASE("unreachable clutter does not affect isomorphism") {
  Model a = ioco::parse_model("name a\noutputs x\ninit s0\ntrans s0 x s0\n");
  Model b = ioco::parse_model(
      "name b\noutputs x\ninit s0\ntrans s0 x s0\ntrans junk x s0\n");
  CHECK(ioco::isomorphic(a, b));
}

TEST_CASE("nondeterministic models go through the backtracking path") {
  Model a = ioco::parse_model(R"(name a
inputs go
outputs x y
init s0
trans s0 go s1
trans s0 go s2
trans s1 x s1
trans s2 y s2
)");
  CHECK(ioco::isomorphic(a, support::permuted(a, 3)));

  // swap which branch does what: still isomorphic (the branches are symmetric
  // up to relabeling states, not labels)
  Model b = ioco::parse_model(R"(name b
inputs go
outputs x y
init s0
trans s0 go s1
trans s0 go s2
trans s1 y s1
trans s2 x s2
)");
  CHECK(ioco::isomorphic(a, b));

  // collapse the two branches onto one state: different state count
  Model c = ioco::parse_model(R"(name c
inputs go
outputs x y
init s0
trans s0 go s1
trans s1 x s1
trans s1 y s1
)");
  CHECK_FALSE(ioco::isomorphic(a, c));
}

TEST_CASE("canonical text distinguishes deterministic models") {
  Model m = support::fixture("drink_m");
  CHECK(ioco::canonical_text(m) == ioco::canonical_text(support::permuted(m, 5)));
  CHECK(ioco::canonical_text(m) != ioco::canonical_text(support::fixture("drink_c")));

  Model nd = ioco::parse_model(
      "name nd\ninputs go\ninit s0\ntrans s0 go s0\ntrans s0 go s1\n");
  CHECK_THROWS_AS(ioco::canonical_text(nd), ioco::ModelError);
}

TEST_CASE("embedding: sub-automaton simulation") {
  Model full = ioco::parse_model(R"(name full
kind sa
inputs a
outputs x
init q0
trans q0 a q1
trans q0 delta q0
trans q1 x q2
trans q1 delta q0
trans q2 delta q2
)");
  Model sub = ioco::parse_model(R"(name sub
kind sa
inputs a
outputs x
init p0
trans p0 a p1
trans p1 x p2
trans p2 delta p2
)");
  auto rep = ioco::embeds_into(sub, full);
  CHECK(rep.embeds);
  CHECK(rep.injective);

  // an edge the host lacks is an obstruction, reported with its location
  Model extra = ioco::parse_model(R"(name extra
kind sa
inputs a
outputs x
init p0
trans p0 a p1
trans p1 x p2
trans p2 x p2
trans p2 delta p2
)");
  auto bad = ioco::embeds_into(extra, full);
  CHECK_FALSE(bad.embeds);
  CHECK_THAT(bad.detail, Catch::Matchers::ContainsSubstring("x"));
}

TEST_CASE("embedding can fold a cycle onto a loop, losing injectivity") {
  Model two = ioco::parse_model(R"(name two
kind sa
outputs x
init p0
trans p0 x p1
trans p1 x p0
)");
  Model loop = ioco::parse_model("name loop\nkind sa\noutputs x\ninit q0\ntrans q0 x q0\n");
  auto rep = ioco::embeds_into(two, loop);
  CHECK(rep.embeds);
  CHECK_FALSE(rep.injective);
}
