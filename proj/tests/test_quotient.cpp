#include <catch2/catch_amalgamated.hpp>

#include "ioco/iso.hpp"
#include "ioco/quotient.hpp"
#include "support/helpers.hpp"

using ioco::Model;

namespace {

// vending_s without the return-to-idle step after dispensing; the derived
// component requirement for this one gets stuck after quiescence
const char* vending_l_text =
    "name vending_l\n"
    "inputs c\n"
    "outputs r t\n"
    "init s0\n"
    "trans s0 c s1\n"
    "trans s1 r s2\n"
    "trans s1 tau s3\n"
    "trans s3 t s4\n";

ioco::QuotientAutomaton vending_quotient() {
  Model spec = support::fixture("vending_s");
  Model env = support::fixture("vending_e");
  return ioco::build_quotient(spec, env, ioco::derive_interface(spec, env));
}

ioco::QuotientAutomaton vending_l_quotient() {
  Model spec = ioco::parse_model(vending_l_text);
  Model env = support::fixture("vending_e");
  return ioco::build_quotient(spec, env, ioco::derive_interface(spec, env));
}

ioco::QuotientAutomaton eft_quotient_built() {
  Model spec = support::fixture("eft_s");
  Model env = support::fixture("eft_e");
  return ioco::build_quotient(spec, env, ioco::derive_interface(spec, env));
}

}  // namespace

TEST_CASE("executing component labels over the joint spec and platform view") {
  Model spec = support::fixture("eft_s");
  Model env = support::fixture("eft_e");
  ioco::PairSystem sys(&spec, &env, ioco::derive_interface(spec, env));
  auto names = [&](const ioco::PairSystem::PairSet& q) {
    std::vector<std::string> v;
    for (auto [s, e] : q)
      v.push_back(sys.spec_power().node_name(s) + "/" + sys.env_power().node_name(e));
    std::sort(v.begin(), v.end());
    return v;
  };

  auto init = sys.initial();
  // the platform times out only after a request went through unanswered
  auto after_t = sys.execute(init, "t");
  CHECK(names(after_t) == std::vector<std::string>{"{q1}/{e2}"});
  // and it never times out twice
  CHECK(sys.execute(after_t, "t").empty());
  // a reversal can be demanded before, during, or after the payment rounds
  auto after_rev = sys.execute(init, "rev_rq");
  CHECK(names(after_rev) ==
        std::vector<std::string>{"{q2,q3}/{e1}", "{q2,q3}/{e3}", "{q4,q5}/{e0}"});

  CHECK_THROWS_WITH(sys.execute(init, "p_rq"),
                    Catch::Matchers::ContainsSubstring("shared with the platform"));
  CHECK_THROWS_WITH(sys.execute(init, "confirm"),
                    Catch::Matchers::ContainsSubstring("neither alphabet"));
}

TEST_CASE("component requirement for the transfer switch") {
  auto q = eft_quotient_built();
  CHECK(q.sa.inputs == std::vector<std::string>{"t"});
  CHECK(q.sa.outputs == std::vector<std::string>{"rev_rq"});
  REQUIRE(q.sa.n_states() == 9);

  Model expected = ioco::parse_model(
      "name expected\n"
      "kind sa\n"
      "inputs t\n"
      "outputs rev_rq\n"
      "init P0\n"
      "trans P0 t P1\n"
      "trans P0 rev_rq P2\n"
      "trans P1 rev_rq P3\n"
      "trans P2 t P6\n"
      "trans P2 rev_rq P4\n"
      "trans P2 delta P8\n"
      "trans P3 rev_rq P3\n"
      "trans P3 delta P5\n"
      "trans P4 t P6\n"
      "trans P4 rev_rq P4\n"
      "trans P4 delta P8\n"
      "trans P5 delta P5\n"
      "trans P6 rev_rq P6\n"
      "trans P6 delta P7\n"
      "trans P7 delta P7\n"
      "trans P8 delta P8\n");
  CHECK(ioco::isomorphic(q.sa, expected));

  // the drawn version leaves some late quiescence loops out but is otherwise
  // a faithful picture: it embeds, one state to one state
  auto emb = ioco::embeds_into(support::fixture("eft_quotient"), q.sa);
  CHECK(emb.embeds);
  CHECK(emb.injective);

  auto rep = ioco::check_quotient_valid(
      q, ioco::derive_interface(support::fixture("eft_s"), support::fixture("eft_e")));
  CHECK(rep.valid);
}

TEST_CASE("component requirement for the drink dispenser") {
  auto q = vending_quotient();
  CHECK(q.sa.inputs == std::vector<std::string>{"order"});
  CHECK(q.sa.outputs == std::vector<std::string>{"error", "r", "t"});
  REQUIRE(q.sa.n_states() == 15);

  Model expected = ioco::parse_model(
      "name expected\n"
      "kind sa\n"
      "inputs order\n"
      "outputs error r t\n"
      "init N0\n"
      "trans N0 order N1\n"
      "trans N0 error N7\n"
      "trans N0 delta N2\n"
      "trans N1 order N1\n"
      "trans N1 t N3\n"
      "trans N1 r N8\n"
      "trans N1 error N5\n"
      "trans N1 delta N2\n"
      "trans N2 order N1\n"
      "trans N2 delta N2\n"
      "trans N3 order N14\n"
      "trans N3 error N6\n"
      "trans N3 delta N4\n"
      "trans N4 delta N4\n"
      "trans N5 order N1\n"
      "trans N5 t N12\n"
      "trans N5 r N11\n"
      "trans N5 error N5\n"
      "trans N5 delta N2\n"
      "trans N6 error N6\n"
      "trans N6 delta N4\n"
      "trans N7 order N1\n"
      "trans N7 error N7\n"
      "trans N7 delta N2\n"
      "trans N8 order N13\n"
      "trans N8 error N9\n"
      "trans N8 delta N10\n"
      "trans N9 error N9\n"
      "trans N9 delta N10\n"
      "trans N10 delta N10\n"
      "trans N11 order N13\n"
      "trans N11 error N9\n"
      "trans N11 delta N10\n"
      "trans N12 order N14\n"
      "trans N12 error N6\n"
      "trans N12 delta N4\n"
      "trans N13 error N9\n"
      "trans N13 delta N10\n"
      "trans N14 error N6\n"
      "trans N14 delta N4\n");
  CHECK(ioco::isomorphic(q.sa, expected));

  auto emb = ioco::embeds_into(support::fixture("quotient_r"), q.sa);
  CHECK(emb.embeds);
  CHECK(emb.injective);

  auto rep = ioco::check_quotient_valid(
      q, ioco::derive_interface(support::fixture("vending_s"), support::fixture("vending_e")));
  CHECK(rep.valid);
}

TEST_CASE("component requirement for the dispenser that skips the reset") {
  auto q = vending_l_quotient();
  REQUIRE(q.sa.n_states() == 10);

  Model expected = ioco::parse_model(
      "name expected\n"
      "kind sa\n"
      "inputs order\n"
      "outputs error r t\n"
      "init i0\n"
      "trans i0 order i1\n"
      "trans i0 error i7\n"
      "trans i1 t i8\n"
      "trans i1 r i9\n"
      "trans i1 error i5\n"
      "trans i5 t i3\n"
      "trans i5 r i11\n"
      "trans i5 error i5\n"
      "trans i7 order i1\n"
      "trans i7 error i7\n"
      "trans i8 error i3\n"
      "trans i8 delta i4\n"
      "trans i9 error i11\n"
      "trans i9 delta i12\n"
      "trans i3 error i3\n"
      "trans i3 delta i4\n"
      "trans i4 delta i4\n"
      "trans i11 error i11\n"
      "trans i11 delta i12\n"
      "trans i12 delta i12\n");
  CHECK(ioco::isomorphic(q.sa, expected));

  // two states can only move if the platform accepts an error report first
  Model spec = ioco::parse_model(vending_l_text);
  auto rep = ioco::check_quotient_valid(
      q, ioco::derive_interface(spec, support::fixture("vending_e")));
  CHECK_FALSE(rep.valid);
  int blocked = 0;
  for (const auto& v : rep.violations)
    if (v.find("every available output needs the platform") != std::string::npos) ++blocked;
  CHECK(blocked == 2);

  // the drawn version folds equivalent dead ends together, so it still
  // embeds, but not one to one
  auto emb = ioco::embeds_into(support::fixture("quotient_i"), q.sa);
  CHECK(emb.embeds);
  CHECK_FALSE(emb.injective);
}

TEST_CASE("a platform with no labels leaves the specification as requirement") {
  Model spec = support::fixture("vending_s");
  Model env = ioco::parse_model("name idle\ninit e\n");
  auto iface = ioco::derive_interface(spec, env);
  CHECK(iface.shared.empty());
  CHECK(iface.quotient_inputs == spec.inputs);
  CHECK(iface.quotient_outputs == spec.outputs);

  auto q = ioco::build_quotient(spec, env, iface);
  // post-quiescence states are kept apart from their plain twins
  CHECK(q.sa.n_states() == 7);
  CHECK(ioco::isomorphic(support::merge_delta_twins(q), ioco::delta_transform(spec)));
}

TEST_CASE("structural invariants of built requirements") {
  Model lspec = ioco::parse_model(vending_l_text);
  auto iface_v = ioco::derive_interface(support::fixture("vending_s"), support::fixture("vending_e"));
  auto iface_l = ioco::derive_interface(lspec, support::fixture("vending_e"));
  std::pair<ioco::QuotientAutomaton, ioco::Interface> cases[] = {
      {vending_quotient(), iface_v},
      {vending_l_quotient(), iface_l},
  };
  for (auto& [q, iface] : cases) {
    CAPTURE(q.sa.name);
    REQUIRE(q.sa.is_sa);
    CHECK(q.sa.inputs == iface.quotient_inputs);
    CHECK(q.sa.outputs == iface.quotient_outputs);
    REQUIRE(q.flagged.size() == q.sa.states.size());
    for (ioco::StateId s = 0; s < q.sa.n_states(); ++s) {
      // flagged states carry the marker in their name
      bool marked = q.sa.states[s].size() >= 2 &&
                    q.sa.states[s].compare(q.sa.states[s].size() - 2, 2, "@d") == 0;
      CHECK(marked == (q.flagged[s] != 0));
      // at most one edge per label: the requirement is deterministic
      std::vector<ioco::LabelId> seen;
      for (const ioco::Edge& e : q.sa.adj[s]) {
        CHECK(std::count(seen.begin(), seen.end(), e.label) == 0);
        seen.push_back(e.label);
      }
      // right after quiescence, no output the platform would have to accept
      if (q.flagged[s])
        for (const ioco::Edge& e : q.sa.adj[s])
          if (e.label != ioco::label_delta)
            CHECK_FALSE(std::find(iface.env_hidden_inputs.begin(), iface.env_hidden_inputs.end(),
                                  q.sa.label_name(e.label)) != iface.env_hidden_inputs.end());
    }
    // the textual form survives a round trip
    CHECK(ioco::isomorphic(ioco::parse_model(ioco::serialize_model(q.sa)), q.sa));
  }
}

TEST_CASE("decomposability verdicts") {
  Model env = support::fixture("vending_e");

  SECTION("the dispenser spec splits over the coin handler") {
    Model spec = support::fixture("vending_s");
    auto rep = ioco::check_decomposable(spec, env, ioco::derive_interface(spec, env));
    CHECK(rep.decomposable);
    CHECK(rep.quotient_built);
    CHECK(rep.reasons.empty());
    CHECK(rep.quotient.sa.n_states() == 15);
  }

  SECTION("the variant without the reset does not split") {
    Model spec = ioco::parse_model(vending_l_text);
    auto rep = ioco::check_decomposable(spec, env, ioco::derive_interface(spec, env));
    CHECK_FALSE(rep.decomposable);
    CHECK(rep.quotient_built);
    REQUIRE_FALSE(rep.reasons.empty());
    CHECK(rep.reasons[0] == "the derived component requirement is not well-formed:");
    CHECK(rep.reasons.size() == 3);
  }

  SECTION("a divergent specification is rejected before any construction") {
    Model spec = ioco::parse_model(
        "name d\ninputs c\noutputs r t\ninit s\ntrans s tau s\n");
    auto rep = ioco::check_decomposable(spec, env, ioco::derive_interface(spec, env));
    CHECK_FALSE(rep.decomposable);
    CHECK_FALSE(rep.quotient_built);
    REQUIRE_FALSE(rep.reasons.empty());
    CHECK(rep.reasons[0] == "specification has an internal cycle");
  }

  SECTION("a platform that is not input-enabled is rejected") {
    Model spec = support::fixture("vending_s");
    Model bad_env = support::fixture("drink_m");
    auto rep = ioco::check_decomposable(spec, bad_env, ioco::derive_interface(spec, bad_env));
    CHECK_FALSE(rep.decomposable);
    REQUIRE_FALSE(rep.reasons.empty());
    CHECK_THAT(rep.reasons[0],
               Catch::Matchers::ContainsSubstring("platform model is not input-enabled"));
  }

  SECTION("platform-private output loops are rejected") {
    Model spec = support::fixture("vending_s");
    Model loopy = ioco::parse_model(
        "name loopy\ninputs c\noutputs z\ninit e0\ntrans e0 c e0\ntrans e0 z e0\n");
    auto rep = ioco::check_decomposable(spec, loopy, ioco::derive_interface(spec, loopy));
    CHECK_FALSE(rep.decomposable);
    REQUIRE_FALSE(rep.reasons.empty());
    CHECK_THAT(rep.reasons[0], Catch::Matchers::ContainsSubstring(
                                   "platform-private outputs can cycle"));
  }

  SECTION("a platform that oversteps the specification is rejected") {
    Model spec = support::fixture("vending_s");
    Model refunding = support::fixture("money_r");
    auto rep = ioco::check_decomposable(spec, refunding, ioco::derive_interface(spec, refunding));
    CHECK_FALSE(rep.decomposable);
    CHECK_FALSE(rep.quotient_built);
    REQUIRE_FALSE(rep.reasons.empty());
    CHECK_THAT(rep.reasons[0], Catch::Matchers::ContainsSubstring(
                                   "platform can show r after \"c t\""));
  }
}
