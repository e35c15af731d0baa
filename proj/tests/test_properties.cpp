#include <catch2/catch_amalgamated.hpp>

#include "ioco/compose.hpp"
#include "ioco/conformance.hpp"
#include "ioco/iso.hpp"
#include "ioco/quotient.hpp"
#include "support/generators.hpp"
#include "support/helpers.hpp"

using ioco::Model;

TEST_CASE("determinizing preserves the bounded suspension language") {
  std::mt19937_64 rng(9001);
  for (int i = 0; i < 60; ++i) {
    Model m = support::random_iolts(rng);
    CAPTURE(i, ioco::serialize_model(m));
    Model d = ioco::delta_transform(m);
    CHECK(ioco::bounded_straces(m, 4) == ioco::bounded_straces(d, 4));
    CHECK(ioco::check_sa_valid(d).valid);
  }
}

TEST_CASE("the subset-walk verdict matches a direct bounded search") {
  std::mt19937_64 rng(4242);
  std::vector<std::string> ins{"a", "b"}, outs{"x", "y"};
  int deep = 0;
  for (int i = 0; i < 40; ++i) {
    Model impl = support::input_completed(support::random_iolts_over(rng, ins, outs, {}));
    Model spec = support::random_iolts_over(rng, ins, outs, {});
    CAPTURE(i, ioco::serialize_model(impl), ioco::serialize_model(spec));

    auto v = ioco::ioco_check(impl, spec);
    auto o = support::oracle_ioco(impl, spec, 5);
    if (v.holds) {
      CHECK(o.holds);
    } else if (v.trace.size() <= 5) {
      CHECK_FALSE(o.holds);
      CHECK(support::verify_violation(impl, spec, v.trace, v.offending));
    } else {
      // past the oracle's horizon; replay the witness on the raw semantics
      ++deep;
      CHECK(support::verify_violation(impl, spec, v.trace, v.offending));
    }
  }
  INFO("witnesses beyond the oracle depth: " << deep);
}

TEST_CASE("every input-enabled model fits itself as a platform") {
  std::mt19937_64 rng(515);
  for (int i = 0; i < 10; ++i) {
    Model env = support::random_iots(rng);
    CAPTURE(i, ioco::serialize_model(env));
    auto v = ioco::inclusion_check(env, env, ioco::derive_interface(env, env));
    CHECK(v.holds);
  }
}

TEST_CASE("composition does not care about operand order") {
  std::mt19937_64 rng(31337);
  support::RandomOpts small;
  small.max_states = 4;
  small.max_trans = 8;
  for (int i = 0; i < 15; ++i) {
    Model a = support::random_iolts_over(rng, {"a"}, {"x"}, small);
    Model b = support::random_iolts_over(rng, {"x"}, {"z"}, small);
    CAPTURE(i, ioco::serialize_model(a), ioco::serialize_model(b));
    CHECK(ioco::isomorphic(ioco::parallel(a, b), ioco::parallel(b, a)));
  }
}

TEST_CASE("hiding in stages equals hiding at once") {
  std::mt19937_64 rng(777);
  for (int i = 0; i < 15; ++i) {
    Model m = support::random_iolts_over(rng, {"a"}, {"x", "y"}, {});
    CAPTURE(i, ioco::serialize_model(m));
    Model steps = ioco::hide(ioco::hide(m, {"x"}), {"y"});
    CHECK(ioco::isomorphic(steps, ioco::hide(m, {"x", "y"})));
  }
}

TEST_CASE("the textual form is lossless and stable") {
  std::mt19937_64 rng(606);
  for (int i = 0; i < 20; ++i) {
    Model m = support::random_iolts(rng);
    std::string text = ioco::serialize_model(m);
    CAPTURE(i, text);
    Model back = ioco::parse_model(text);
    CHECK(ioco::isomorphic(back, m));
    CHECK(ioco::serialize_model(back) == text);
  }
}

TEST_CASE("sampled decomposable scenes produce well-formed requirements") {
  std::mt19937_64 rng(88);
  for (int i = 0; i < 3; ++i) {
    auto smp = support::decomposable_pair(rng, i == 1);
    CAPTURE(i, ioco::serialize_model(smp.spec), ioco::serialize_model(smp.env));
    const Model& q = smp.quotient.sa;
    REQUIRE(q.is_sa);
    CHECK(q.inputs == smp.iface.quotient_inputs);
    CHECK(q.outputs == smp.iface.quotient_outputs);
    for (ioco::StateId s = 0; s < q.n_states(); ++s) {
      std::vector<ioco::LabelId> seen;
      for (const ioco::Edge& e : q.adj[s]) {
        CHECK(std::count(seen.begin(), seen.end(), e.label) == 0);
        seen.push_back(e.label);
      }
    }
    CHECK(ioco::check_quotient_valid(smp.quotient, smp.iface).valid);
    // the component that induced the scene is one conforming answer
    Model visible = ioco::hide(ioco::parallel(smp.comp, smp.env), smp.traffic);
    CHECK(ioco::ioco_check(visible, smp.spec).holds);
  }
}
