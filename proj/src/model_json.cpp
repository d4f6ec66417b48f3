#include "bddts/model_json.hpp"

#include <fstream>
#include <sstream>

#include "bddts/error.hpp"
#include "bddts/parse.hpp"

namespace bddts {

namespace {

[[noreturn]] void invalid(const std::string& msg) { throw Error(ErrorCode::InvalidModel, msg); }

void onlyKeys(const Json& j, std::initializer_list<const char*> allowed, const std::string& where) {
  if (!j.is_object()) invalid(where + ": expected an object");
  for (const auto& [k, _] : j.items()) {
    bool ok = false;
    for (const char* a : allowed) ok = ok || k == a;
    if (!ok) invalid(where + ": unknown field '" + k + "'");
  }
}

const Json& field(const Json& j, const char* key, const std::string& where) {
  auto it = j.find(key);
  if (it == j.end()) invalid(where + ": missing field '" + key + "'");
  return *it;
}

std::string text(const Json& j, const char* key, const std::string& where) {
  const Json& v = field(j, key, where);
  if (!v.is_string()) invalid(where + ": field '" + key + "' must be a string");
  return v.get<std::string>();
}

const char* natureName(Nature n) { return n == Nature::Open ? "open" : "closed"; }
const char* dirName(Direction d) { return d == Direction::Input ? "input" : "output"; }

const char* kindName(VarKind k) {
  switch (k) {
    case VarKind::Model: return "model";
    case VarKind::Context: return "context";
    case VarKind::Interaction: return "interaction";
  }
  return "?";
}

}  // namespace

Json toJson(const Sort& s) {
  Json j;
  j["name"] = s.name;
  switch (s.kind) {
    case Sort::Kind::Bool: j["kind"] = "bool"; break;
    case Sort::Kind::Int:
      j["kind"] = "int";
      j["lo"] = s.lo;
      j["hi"] = s.hi;
      break;
    case Sort::Kind::Enum:
      j["kind"] = "enum";
      j["values"] = s.literals;
      break;
    case Sort::Kind::List:
      j["kind"] = "list";
      j["element"] = s.element;
      j["max_length"] = s.maxLength;
      break;
  }
  return j;
}

Sort sortFromJson(const Json& j) {
  onlyKeys(j, {"name", "kind", "lo", "hi", "values", "element", "max_length"}, "sort");
  Sort s;
  s.name = text(j, "name", "sort");
  const std::string where = "sort " + s.name;
  const std::string kind = text(j, "kind", where);
  try {
    if (kind == "bool") {
      s.kind = Sort::Kind::Bool;
    } else if (kind == "int") {
      s.kind = Sort::Kind::Int;
      s.lo = field(j, "lo", where).get<std::int64_t>();
      s.hi = field(j, "hi", where).get<std::int64_t>();
    } else if (kind == "enum") {
      s.kind = Sort::Kind::Enum;
      s.literals = field(j, "values", where).get<std::vector<std::string>>();
    } else if (kind == "list") {
      s.kind = Sort::Kind::List;
      s.element = text(j, "element", where);
      s.maxLength = field(j, "max_length", where).get<int>();
    } else {
      invalid(where + ": unknown kind '" + kind + "'");
    }
  } catch (const nlohmann::json::exception& e) {
    invalid(where + ": " + e.what());
  }
  return s;
}

DomainSpec domainFromJson(const Json& j) {
  onlyKeys(j, {"sorts"}, "domain");
  DomainSpec d;
  for (const auto& s : field(j, "sorts", "domain")) d.add(sortFromJson(s));
  return d;
}

Json toJson(const DomainSpec& d) {
  Json j;
  j["sorts"] = Json::array();
  for (const auto& s : d.declared()) j["sorts"].push_back(toJson(s));
  return j;
}

Json toJson(const Value& v) {
  switch (v.kind()) {
    case Value::Kind::Bool: return v.asBool();
    case Value::Kind::Int: return v.asInt();
    case Value::Kind::Enum: return v.str();
    case Value::Kind::List: {
      Json a = Json::array();
      for (const auto& x : v.items()) a.push_back(toJson(x));
      return a;
    }
  }
  return nullptr;
}

Value valueFromJson(const Json& j) {
  if (j.is_boolean()) return Value::boolean(j.get<bool>());
  if (j.is_number_integer()) return Value::integer(j.get<std::int64_t>());
  if (j.is_string()) {
    auto s = j.get<std::string>();
    auto pos = s.find("::");
    if (pos == std::string::npos) invalid("enumeration value '" + s + "' must be written Sort::Literal");
    return Value::enumeration(s.substr(0, pos), s.substr(pos + 2));
  }
  if (j.is_array()) {
    std::vector<Value> xs;
    for (const auto& x : j) xs.push_back(valueFromJson(x));
    return Value::list(std::move(xs));
  }
  invalid("unsupported value " + j.dump());
}

Value valueFromJson(const Json& j, const std::string& sort, const DomainSpec& d) {
  const Sort& s = d.sort(sort);
  Value v;
  if (s.kind == Sort::Kind::Enum && j.is_string() &&
      j.get<std::string>().find("::") == std::string::npos) {
    v = Value::enumeration(s.name, j.get<std::string>());
  } else if (s.kind == Sort::Kind::List && j.is_array()) {
    std::vector<Value> xs;
    for (const auto& x : j) xs.push_back(valueFromJson(x, s.element, d));
    v = Value::list(std::move(xs));
  } else {
    v = valueFromJson(j);
  }
  for (const auto& u : d.universe(sort)) {
    if (u == v) return u;
  }
  throw Error(ErrorCode::SortMismatch, v.str() + " is not a value of sort " + sort);
}

Json toJson(const Bddts& b) {
  Json j;
  j["sorts"] = Json::array();
  for (const auto& s : b.sorts) j["sorts"].push_back(toJson(s));
  j["variables"] = Json::array();
  for (const auto& v : b.variables) {
    j["variables"].push_back({{"name", v.name}, {"sort", v.sort}, {"kind", kindName(v.kind)}});
  }
  j["gates"] = Json::array();
  for (const auto& g : b.gates) {
    Json jg{{"name", g.name}, {"dir", dirName(g.dir)}, {"params", g.params}};
    if (!g.renames.empty()) jg["renames"] = g.renames;
    j["gates"].push_back(jg);
  }
  j["locations"] = Json::array();
  for (const auto& l : b.locations) {
    Json jl{{"name", l.name}, {"nature", natureName(l.nature)}};
    if (auto it = b.outputGuards.find(l.name); it != b.outputGuards.end()) jl["og"] = it->second.str();
    j["locations"].push_back(jl);
  }
  j["initial"] = b.initial;
  j["ig"] = b.inputGuard.str();
  j["switches"] = Json::array();
  for (const auto& s : b.switches) {
    Json assign = Json::object();
    for (const auto& [k, e] : s.assign) assign[k.str()] = e.str();
    j["switches"].push_back(
        {{"from", s.from}, {"gate", s.gate}, {"guard", s.guard.str()}, {"assign", assign}, {"to", s.to}});
  }
  if (b.saturated) j["saturated"] = true;
  return j;
}

Bddts modelFromJson(const Json& j) {
  onlyKeys(j, {"sorts", "variables", "gates", "locations", "initial", "ig", "switches", "saturated"},
           "model");
  Bddts b;
  try {
    if (j.contains("sorts")) {
      for (const auto& s : j["sorts"]) b.sorts.push_back(sortFromJson(s));
    }
    DomainSpec d = b.domain();
    for (const auto& v : field(j, "variables", "model")) {
      onlyKeys(v, {"name", "sort", "kind"}, "variable");
      Variable var;
      var.name = text(v, "name", "variable");
      var.sort = text(v, "sort", "variable");
      const std::string kind = text(v, "kind", "variable " + var.name);
      if (kind == "model") var.kind = VarKind::Model;
      else if (kind == "context") var.kind = VarKind::Context;
      else if (kind == "interaction") var.kind = VarKind::Interaction;
      else invalid("variable " + var.name + ": unknown kind '" + kind + "'");
      if (!d.has(var.sort)) invalid("variable " + var.name + ": unknown sort '" + var.sort + "'");
      b.variables.push_back(var);
    }
    for (const auto& g : field(j, "gates", "model")) {
      onlyKeys(g, {"name", "dir", "params", "renames"}, "gate");
      Gate gate;
      gate.name = text(g, "name", "gate");
      const std::string dir = text(g, "dir", "gate " + gate.name);
      if (dir == "input") gate.dir = Direction::Input;
      else if (dir == "output") gate.dir = Direction::Output;
      else invalid("gate " + gate.name + ": unknown dir '" + dir + "'");
      gate.params = field(g, "params", "gate " + gate.name).get<std::vector<std::string>>();
      if (g.contains("renames")) gate.renames = g["renames"].get<std::map<std::string, std::string>>();
      b.gates.push_back(gate);
    }
    const SortTable scope = b.sortTable();
    for (const auto& l : field(j, "locations", "model")) {
      onlyKeys(l, {"name", "nature", "og"}, "location");
      Location loc;
      loc.name = text(l, "name", "location");
      const std::string nature = text(l, "nature", "location " + loc.name);
      if (nature == "open") loc.nature = Nature::Open;
      else if (nature == "closed") loc.nature = Nature::Closed;
      else invalid("location " + loc.name + ": unknown nature '" + nature + "'");
      if (l.contains("og")) {
        b.outputGuards[loc.name] = parseTerm(text(l, "og", "location " + loc.name), scope, d);
      }
      b.locations.push_back(loc);
    }
    b.initial = text(j, "initial", "model");
    b.inputGuard = j.contains("ig") ? parseTerm(text(j, "ig", "model"), scope, d) : Term::boolean(true);
    for (const auto& s : field(j, "switches", "model")) {
      onlyKeys(s, {"from", "gate", "guard", "assign", "to"}, "switch");
      Switch sw;
      sw.from = text(s, "from", "switch");
      sw.gate = text(s, "gate", "switch");
      sw.to = text(s, "to", "switch");
      sw.guard = s.contains("guard") ? parseTerm(text(s, "guard", "switch"), scope, d) : Term::boolean(true);
      if (s.contains("assign")) {
        const Json& a = s["assign"];
        if (!a.is_object()) invalid("switch assign must be an object");
        for (const auto& [k, e] : a.items()) {
          if (!e.is_string()) invalid("switch assign: term for " + k + " must be a string");
          if (!scope.count(k)) throw Error(ErrorCode::UnknownGateOrVariable, "assignment to unknown variable " + k);
          sw.assign.emplace(VarKey{k, 0}, parseTerm(e.get<std::string>(), scope, d));
        }
      }
      b.switches.push_back(std::move(sw));
    }
    if (j.contains("saturated")) b.saturated = j["saturated"].get<bool>();
  } catch (const nlohmann::json::exception& e) {
    invalid(std::string("malformed model: ") + e.what());
  }
  return b;
}

Valuation iniFromJson(const Json& j, const Bddts& b, const DomainSpec& d) {
  if (!j.is_object()) invalid("ini: expected an object");
  Valuation v;
  for (const auto& [k, x] : j.items()) {
    const Variable* var = b.findVariable(k);
    if (!var || var->kind == VarKind::Interaction) {
      throw Error(ErrorCode::UnknownGateOrVariable, "ini: unknown state variable " + k);
    }
    v.emplace(VarKey{k, 0}, valueFromJson(x, var->sort, d));
  }
  for (const auto& var : b.stateVariables()) {
    if (!v.count(VarKey{var.name, 0})) throw Error(ErrorCode::IniNotTotal, "ini: no value for " + var.name);
  }
  return v;
}

Json toJson(const Valuation& v) {
  Json j = Json::object();
  for (const auto& [k, x] : v) j[k.str()] = toJson(x);
  return j;
}

Json readJsonFile(const std::filesystem::path& p) {
  std::ifstream in(p);
  if (!in) throw Error(ErrorCode::Io, "cannot read " + p.string());
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ParseError, p.string() + ": " + e.what());
  }
}

void writeFile(const std::filesystem::path& p, const std::string& contents) {
  std::ofstream out(p);
  if (!out) throw Error(ErrorCode::Io, "cannot write " + p.string());
  out << contents;
}

}  // namespace bddts
