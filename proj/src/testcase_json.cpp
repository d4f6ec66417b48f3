#include "bddts/testcase_json.hpp"

#include "bddts/error.hpp"

namespace bddts {

Json toJson(const Gate& g) {
  Json j{{"name", g.name}, {"dir", g.dir == Direction::Input ? "input" : "output"}, {"params", g.params}};
  if (!g.renames.empty()) j["renames"] = g.renames;
  return j;
}

Gate gateFromJson(const Json& j) {
  Gate g;
  g.name = j.at("name").get<std::string>();
  const auto dir = j.at("dir").get<std::string>();
  if (dir != "input" && dir != "output") throw Error(ErrorCode::InvalidModel, "gate " + g.name + ": bad dir " + dir);
  g.dir = dir == "input" ? Direction::Input : Direction::Output;
  g.params = j.at("params").get<std::vector<std::string>>();
  if (j.contains("renames")) g.renames = j["renames"].get<std::map<std::string, std::string>>();
  return g;
}

Json toJson(const GateValue& u) {
  Json vals = Json::array();
  for (const auto& v : u.values) vals.push_back(toJson(v));
  return {{"gate", u.gate}, {"values", vals}};
}

Json toJson(const TestCase& tc) {
  Json j;
  j["gates"] = Json::array();
  for (const auto& g : tc.gates) j["gates"].push_back(toJson(g));
  j["initial"] = tc.initial;
  j["fail"] = tc.failState;
  j["pass"] = tc.pass;
  j["states"] = Json::array();
  for (std::size_t i = 0; i < tc.states.size(); ++i) {
    const auto& s = tc.states[i];
    j["states"].push_back({{"id", i},
                           {"location", s.location},
                           {"nature", s.nature == Nature::Open ? "open" : "closed"},
                           {"values", toJson(s.values)},
                           {"expanded", s.expanded}});
  }
  j["transitions"] = Json::array();
  for (const auto& t : tc.transitions) {
    Json e = toJson(t.label);
    e["from"] = t.from;
    e["to"] = t.to;
    j["transitions"].push_back(e);
  }
  return j;
}

TestCase testCaseFromJson(const Json& j) {
  TestCase tc;
  try {
    for (const auto& g : j.at("gates")) tc.gates.push_back(gateFromJson(g));
    tc.initial = j.at("initial").get<std::size_t>();
    tc.failState = j.at("fail").get<std::size_t>();
    for (const auto& p : j.at("pass")) tc.pass.insert(p.get<std::size_t>());
    for (const auto& s : j.at("states")) {
      TestCase::State st;
      if (s.at("id").get<std::size_t>() != tc.states.size()) throw Error(ErrorCode::InvalidModel, "test case state ids must be consecutive");
      st.location = s.at("location").get<std::string>();
      st.nature = s.at("nature").get<std::string>() == "closed" ? Nature::Closed : Nature::Open;
      for (const auto& [k, v] : s.at("values").items()) st.values.emplace(VarKey{k, 0}, valueFromJson(v));
      st.expanded = s.at("expanded").get<bool>();
      tc.states.push_back(std::move(st));
    }
    for (const auto& t : j.at("transitions")) {
      GateValue u{t.at("gate").get<std::string>(), {}};
      for (const auto& v : t.at("values")) u.values.push_back(valueFromJson(v));
      tc.transitions.push_back({t.at("from").get<std::size_t>(), std::move(u), t.at("to").get<std::size_t>()});
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::InvalidModel, std::string("malformed test case: ") + e.what());
  }
  const std::size_t n = tc.states.size();
  if (tc.initial >= n || tc.failState >= n) throw Error(ErrorCode::InvalidModel, "test case state index out of range");
  for (const auto& t : tc.transitions) {
    if (t.from >= n || t.to >= n) throw Error(ErrorCode::InvalidModel, "test case transition out of range");
  }
  tc.reindex();
  return tc;
}

Json toJson(const Verdict& v) {
  return {{"verdict", verdictName(v.kind)}, {"prefix", v.prefix}, {"truncated", v.truncated}};
}

}  // namespace bddts
