#pragma once

// The bundled model corpus: a beverage dispenser specification with the
// money and drink parts it splits into, and an electronic funds transfer
// switch. Tests load these by name; `fixtures` in the command line tool
// writes them out as .im files.

#include <fstream>
#include <map>
#include <string>

#include "model.hpp"

namespace ioco::fixtures {

// Dispenser behaviour as the customer sees it: a coin is either refunded
// or, after an internal commitment, answered with tea. The two outcomes end
// in distinct final states.
inline constexpr const char* vending_s = R"(# Beverage dispenser, customer view.
name vending_s
inputs c
outputs r t
init s0
trans s0 c s1
trans s1 r s2
trans s1 tau s3
trans s3 t s4
trans s3 tau s0
)";

// Money component of the dispenser: accepts the coin, may order a drink
// from its partner, and tolerates error signals at any point.
inline constexpr const char* vending_e = R"(# Money handling part of the dispenser.
name vending_e
inputs c error
outputs order
init e0
trans e0 c e1
trans e0 error e0
trans e1 order e2
trans e1 tau e0
trans e2 tau e0
)";

// Money handler that additionally refunds the coin when the drink part
// reports an error after an order went out.
inline constexpr const char* money_r = R"(name money_r
inputs c error
outputs order r
init r0
trans r0 c r1
trans r0 error r0
trans r1 order r2
trans r1 tau r0
trans r2 error r3
trans r2 tau r0
trans r3 r r0
trans r3 tau r2
)";

// Drink part: one order produces tea or an error report, then it is spent.
inline constexpr const char* drink_m = R"(name drink_m
inputs order
outputs error t
init m0
trans m0 order m1
trans m1 error m2
trans m1 t m3
)";

// Drink part that keeps repeating its error report instead of going quiet.
inline constexpr const char* drink_p = R"(name drink_p
inputs order
outputs error t
init p0
trans p0 order p1
trans p1 error p2
trans p1 t p3
trans p2 error p2
trans p2 tau p0
)";

// Drink part that swallows repeated orders and alternates error reports; a
// useful counterexample, since it may signal an error before any tea.
inline constexpr const char* drink_c = R"(name drink_c
inputs order
outputs error t
init c0
trans c0 order c1
trans c1 error c2
trans c1 order c1
trans c1 t c3
trans c2 error c0
trans c2 order c2
trans c3 order c3
)";

// Requirement on the drink part derived from vending_s running on
// vending_e, in the shape it is usually drawn (some transitions between
// equivalent states are left out).
inline constexpr const char* quotient_r = R"(name quotient_r
kind sa
inputs order
outputs error r t
init q0
trans q0 delta q2
trans q0 error q7
trans q0 order q1
trans q1 error q5
trans q1 t q3
trans q2 delta q2
trans q2 order q1
trans q3 delta q4
trans q3 error q6
trans q4 delta q4
trans q5 delta q2
trans q5 error q5
trans q5 order q1
trans q6 delta q4
trans q6 error q6
trans q7 delta q2
trans q7 error q7
trans q7 order q1
)";

// Like quotient_r but derived from the dispenser without its internal
// retry, which cuts every way back to the initial state: after the first
// order the component can never be asked again, so its only independent
// moves early on are error reports.
inline constexpr const char* quotient_i = R"(name quotient_i
kind sa
inputs order
outputs error r t
init q0
trans q0 error q7
trans q0 order q1
trans q1 error q5
trans q1 t q2
trans q2 delta q8
trans q2 error q3
trans q3 delta q4
trans q3 error q6
trans q4 delta q4
trans q5 error q5
trans q6 delta q4
trans q6 error q6
trans q7 error q7
trans q7 order q1
trans q8 delta q8
)";

// Funds transfer switch: a payment request is answered by a payment or a
// reversal; once reversing, it may keep reversing forever or settle.
inline constexpr const char* eft_s = R"(# Funds transfer switch, whole-system view.
name eft_s
inputs p_rs
outputs p_rq rev_rq
init q0
trans q0 p_rq q1
trans q0 rev_rq q4
trans q1 p_rs q2
trans q1 rev_rq q2
trans q2 rev_rq q2
trans q2 tau q3
trans q4 p_rq q4
trans q4 rev_rq q4
trans q4 tau q5
)";

// Platform part of the switch: forwards payment requests and turns the
// response into a terminal notification.
inline constexpr const char* eft_e = R"(name eft_e
inputs p_rs
outputs p_rq t
init e0
trans e0 p_rq e1
trans e0 p_rs e0
trans e1 p_rs e3
trans e1 t e2
trans e2 p_rs e2
trans e3 p_rs e3
)";

// Requirement on the missing switch component, as usually drawn.
inline constexpr const char* eft_quotient = R"(name eft_quotient
kind sa
inputs t
outputs rev_rq
init q0
trans q0 rev_rq q2
trans q0 t q1
trans q1 rev_rq q3
trans q2 rev_rq q4
trans q2 t q6
trans q3 delta q5
trans q3 rev_rq q3
trans q4 rev_rq q4
trans q4 t q6
trans q5 delta q5
trans q6 delta q7
trans q6 rev_rq q6
trans q7 delta q7
)";

inline const std::map<std::string, const char*>& all() {
  static const std::map<std::string, const char*> m = {
      {"vending_s", vending_s},   {"vending_e", vending_e}, {"money_r", money_r},
      {"drink_m", drink_m},       {"drink_p", drink_p},     {"drink_c", drink_c},
      {"quotient_r", quotient_r}, {"quotient_i", quotient_i},
      {"eft_s", eft_s},           {"eft_e", eft_e},         {"eft_quotient", eft_quotient},
  };
  return m;
}

inline std::string text(const std::string& name) {
  auto it = all().find(name);
  if (it == all().end()) throw ModelError("no bundled model named " + name);
  return it->second;
}

inline Model load(const std::string& name) { return parse_model(text(name)); }

inline void write_all(const std::string& dir) {
  for (const auto& [name, body] : all()) {
    std::string path = dir + "/" + name + ".im";
    std::ofstream os(path, std::ios::binary);
    if (!os) throw ModelError("cannot write " + path);
    os << body;
  }
}

}  // namespace ioco::fixtures
