#pragma once

// Graphviz rendering. Inputs are prefixed with '?', outputs with '!',
// internal steps show as the tau glyph and quiescence as delta. State
// names are used verbatim (post-quiescence states already carry their @d
// suffix in the name).

#include <sstream>
#include <string>

#include "model.hpp"

namespace ioco {

namespace detail {

inline std::string dot_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

}  // namespace detail

inline std::string to_dot(const Model& m) {
  std::ostringstream os;
  os << "digraph \"" << detail::dot_escape(m.name.empty() ? std::string("model") : m.name)
     << "\" {\n"
     << "  rankdir=LR;\n"
     << "  node [shape=circle, fontsize=11];\n"
     << "  __init__ [shape=point, label=\"\"];\n";
  for (StateId s = 0; s < m.n_states(); ++s)
    os << "  s" << s << " [label=\"" << detail::dot_escape(m.states[s]) << "\"];\n";
  os << "  __init__ -> s" << m.init << ";\n";
  for (StateId s = 0; s < m.n_states(); ++s)
    for (const Edge& e : m.adj[s]) {
      std::string lbl;
      if (e.label == label_tau)
        lbl = "τ";
      else if (e.label == label_delta)
        lbl = "δ";
      else
        lbl = (m.is_input(e.label) ? "?" : "!") + m.label_name(e.label);
      os << "  s" << s << " -> s" << e.dst << " [label=\"" << detail::dot_escape(lbl) << "\"];\n";
    }
  os << "}\n";
  return os.str();
}

}  // namespace ioco
