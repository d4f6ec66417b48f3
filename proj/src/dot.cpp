#include "bddts/dot.hpp"

#include <sstream>

namespace bddts {

namespace {

std::string quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    if (c == '\n') {
      out += "\\n";
      continue;
    }
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::string toDot(const Bddts& b) {
  std::ostringstream os;
  os << "digraph bddts {\n  rankdir=LR;\n  __start [shape=point];\n";
  for (std::size_t i = 0; i < b.locations.size(); ++i) {
    const auto& l = b.locations[i];
    std::string label = l.name + "\n" + (l.nature == Nature::Open ? "open" : "closed");
    if (auto it = b.outputGuards.find(l.name); it != b.outputGuards.end()) label += "\nOG: " + it->second.str();
    os << "  n" << i << " [label=" << quote(label) << ", shape=" << (l.nature == Nature::Open ? "ellipse" : "box")
       << (l.nature == Nature::Closed ? ", style=filled, fillcolor=lightgray" : "") << "];\n";
  }
  auto id = [&](const std::string& name) {
    for (std::size_t i = 0; i < b.locations.size(); ++i) {
      if (b.locations[i].name == name) return "n" + std::to_string(i);
    }
    return std::string("__missing");
  };
  os << "  __start -> " << id(b.initial) << " [label=" << quote("IG: " + b.inputGuard.str()) << "];\n";
  for (const auto& s : b.switches) {
    const Gate* g = b.findGate(s.gate);
    std::string label = std::string(g && g->dir == Direction::Input ? "?" : "!") + s.gate + " [" + s.guard.str() + "]";
    if (!s.assign.empty()) label += " /" + str(s.assign);
    os << "  " << id(s.from) << " -> " << id(s.to) << " [label=" << quote(label) << "];\n";
  }
  os << "}\n";
  return os.str();
}

std::string toDot(const TestCase& tc) {
  std::ostringstream os;
  os << "digraph testcase {\n  rankdir=LR;\n  __start [shape=point];\n";
  for (std::size_t i = 0; i < tc.states.size(); ++i) {
    const auto& s = tc.states[i];
    os << "  q" << i;
    if (i == tc.failState) {
      os << " [label=\"q_f\", shape=doubleoctagon];\n";
      continue;
    }
    std::string label = "q" + std::to_string(i) + ": " + s.location + "\n" + str(s.values);
    std::string shape = tc.pass.count(i) ? "doublecircle" : (s.nature == Nature::Closed ? "box" : "ellipse");
    os << " [label=" << quote(label) << ", shape=" << shape << (s.expanded ? "" : ", style=dashed") << "];\n";
  }
  os << "  __start -> q" << tc.initial << ";\n";
  for (const auto& t : tc.transitions) {
    os << "  q" << t.from << " -> q" << t.to << " [label=" << quote(t.label.str()) << "];\n";
  }
  os << "}\n";
  return os.str();
}

}  // namespace bddts
