#include "bddts/cli.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>

#include "bddts/composition.hpp"
#include "bddts/concrete.hpp"
#include "bddts/dot.hpp"
#include "bddts/error.hpp"
#include "bddts/model_json.hpp"
#include "bddts/saturation.hpp"
#include "bddts/scenario.hpp"
#include "bddts/symbolic.hpp"
#include "bddts/testcase_json.hpp"

namespace bddts::cli {

namespace {

struct Config {
  std::string domainPath;
  bool json = false;

  std::string input;
  std::string second;
  std::string output;
  std::string left;
  std::string right;
  std::string iniPath;
  std::string sutPath;
  int maxSigma = 4;
  int depth = kDefaultDepth;
  int maxSteps = 50;
  std::size_t isoCap = kDefaultIsoCap;
  std::uint64_t seed = 0;
};

class Session {
 public:
  Session(const Config& c, std::ostream& out, std::ostream& err) : c_(c), out_(out), err_(err) {
    if (!c_.domainPath.empty()) domain_ = domainFromJson(readJsonFile(c_.domainPath));
  }

  Bddts loadModel(const std::string& path) const { return modelFrom(readJsonFile(path)); }

  Bddts modelFrom(Json j) const {
    if (domain_) {
      if (!j.contains("sorts")) j["sorts"] = Json::array();
      for (const auto& s : domain_->declared()) {
        bool present = false;
        for (const auto& t : j["sorts"]) present = present || t.value("name", "") == s.name;
        if (!present) j["sorts"].push_back(toJson(s));
      }
    }
    return modelFromJson(j);
  }

  DomainSpec domainFor(const Bddts& b) const {
    DomainSpec d = b.domain();
    if (domain_) {
      for (const auto& s : domain_->declared()) d.add(s);
    }
    return d;
  }

  void emit(const std::string& text) const {
    if (c_.output.empty()) {
      out_ << text;
    } else {
      writeFile(c_.output, text);
    }
  }

  std::vector<Valuation> inis(const Bddts& b, const DomainSpec& d) const {
    if (c_.iniPath.empty()) return allInis(b, d);
    Json j = readJsonFile(c_.iniPath);
    std::vector<Valuation> out;
    if (j.is_array()) {
      for (const auto& x : j) out.push_back(iniFromJson(x, b, d));
    } else {
      out.push_back(iniFromJson(j, b, d));
    }
    return out;
  }

  int parse() const {
    std::ifstream in(c_.input);
    if (!in) throw Error(ErrorCode::Io, "cannot read " + c_.input);
    std::stringstream ss;
    ss << in.rdbuf();
    Bddts b = parseScenario(ss.str());
    auto report = validate(b, b.domain());
    if (!report.ok()) err_ << "warning: scenario model does not validate:\n" << report.str();
    emit(toJson(b).dump(2) + "\n");
    return kExitOk;
  }

  int validateCmd() const {
    Bddts b = loadModel(c_.input);
    auto r = validate(b, domainFor(b));
    if (c_.json) {
      Json j{{"valid", r.ok()}, {"violations", Json::array()}};
      for (const auto& v : r.violations) j["violations"].push_back({{"kind", v.kind}, {"message", v.message}});
      out_ << j.dump(2) << "\n";
    } else {
      out_ << (r.ok() ? "valid\n" : r.str());
    }
    return r.ok() ? kExitOk : kExitNegative;
  }

  int saturateCmd() const {
    Bddts b = loadModel(c_.input);
    if (b.saturated) throw Error(ErrorCode::ValidationFailed, c_.input + " is already saturated");
    auto res = saturate(b, domainFor(b));
    err_ << "added " << res.added.size() << " switches, enriched " << res.modifiedInitial.size()
         << " initial switches\n";
    emit(toJson(res.model).dump(2) + "\n");
    return kExitOk;
  }

  int composeCmd() const {
    Bddts b1 = loadModel(c_.input);
    Bddts b2 = loadModel(c_.second);
    DomainSpec d = domainFor(b1);
    Bddts c = disjunction(b1, b2, d);
    emit(toJson(c).dump(2) + "\n");
    return kExitOk;
  }

  int isoCmd() const {
    Bddts b1 = loadModel(c_.input);
    Bddts b2 = loadModel(c_.second);
    auto w = isomorphic(b1, b2, domainFor(b1), c_.isoCap);
    if (c_.json) {
      Json j{{"isomorphic", w.has_value()}};
      if (w) j["locations"] = w->locations;
      out_ << j.dump(2) << "\n";
    } else if (w) {
      out_ << "isomorphic\n";
      for (const auto& [a, b] : w->locations) out_ << "  " << a << " -> " << b << "\n";
    } else {
      out_ << "not isomorphic\n";
    }
    return w ? kExitOk : kExitNegative;
  }

  std::vector<Bddts> loadList(const std::string& list) const {
    std::vector<Bddts> out;
    std::istringstream in(list);
    for (std::string p; std::getline(in, p, ',');) {
      if (!p.empty()) out.push_back(loadModel(p));
    }
    if (out.empty()) throw Error(ErrorCode::Io, "empty model list");
    return out;
  }

  int checkEquivCmd() const {
    auto left = loadList(c_.left);
    auto right = loadList(c_.right);
    DomainSpec d = domainFor(left.front());
    auto rep = testingEquivalent(left, right, inis(left.front(), d), c_.maxSigma, d);
    if (c_.json) {
      Json j{{"equivalent", rep.equivalent}, {"bound", rep.bound}, {"checks", rep.checks}};
      if (rep.counterexample) {
        const auto& ce = *rep.counterexample;
        j["counterexample"] = {{"ini", toJson(ce.ini)},
                               {"sigma", ce.sigma},
                               {"side", ce.side},
                               {"valuation", toJson(ce.witness)},
                               {"left", ce.left.str()},
                               {"right", ce.right.str()}};
      }
      out_ << j.dump(2) << "\n";
    } else {
      out_ << rep.str() << "\n";
    }
    return rep.equivalent ? kExitOk : kExitNegative;
  }

  int genTestsCmd() const {
    Bddts b = loadModel(c_.input);
    if (!b.saturated) err_ << "note: " << c_.input << " is not marked saturated\n";
    DomainSpec d = domainFor(b);
    if (c_.iniPath.empty()) throw Error(ErrorCode::IniNotTotal, "gen-tests needs --ini");
    auto ini = inis(b, d);
    if (ini.size() != 1) throw Error(ErrorCode::IniNotTotal, "gen-tests takes a single initialization");
    TestCase tc = deriveTestCase(b, ini.front(), d, c_.depth);
    err_ << tc.states.size() << " states, " << tc.transitions.size() << " transitions, " << tc.pass.size()
         << " pass states\n";
    emit(toJson(tc).dump(2) + "\n");
    return kExitOk;
  }

  int runCmd() const {
    TestCase tc = testCaseFromJson(readJsonFile(c_.input));
    Json sj = readJsonFile(c_.sutPath);
    for (const auto& [k, _] : sj.items()) {
      if (k != "model" && k != "ini") throw Error(ErrorCode::InvalidModel, "sut: unknown field '" + k + "'");
    }
    if (!sj.contains("model") || !sj.contains("ini")) throw Error(ErrorCode::InvalidModel, "sut needs 'model' and 'ini'");
    Json mj = sj["model"];
    if (mj.is_string()) {
      std::filesystem::path p = mj.get<std::string>();
      if (p.is_relative()) p = std::filesystem::path(c_.sutPath).parent_path() / p;
      mj = readJsonFile(p);
    }
    Sut sut{modelFrom(mj), {}};
    DomainSpec d = domainFor(sut.model);
    sut.ini = iniFromJson(sj["ini"], sut.model, d);
    auto r = runAgainstSut(tc, sut, d, c_.seed, c_.maxSteps);
    if (c_.json) {
      Json j = toJson(r.verdict);
      j["trace"] = Json::array();
      for (const auto& u : r.trace) j["trace"].push_back(toJson(u));
      j["transcript"] = r.transcript;
      j["budget_exceeded"] = r.budgetExceeded;
      out_ << j.dump(2) << "\n";
    } else {
      for (const auto& line : r.transcript) out_ << line << "\n";
    }
    return r.verdict.kind == VerdictKind::Pass ? kExitOk : kExitNegative;
  }

  int exportDotCmd() const {
    Json j = readJsonFile(c_.input);
    if (j.contains("states") && j.contains("transitions")) {
      emit(toDot(testCaseFromJson(j)));
    } else {
      emit(toDot(modelFrom(j)));
    }
    return kExitOk;
  }

 private:
  const Config& c_;
  std::ostream& out_;
  std::ostream& err_;
  std::optional<DomainSpec> domain_;
};

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"BDD transition systems: saturation, composition, equivalence checking and test generation", "bddts"};
  app.require_subcommand(1);
  Config c;
  app.add_option("--domain", c.domainPath, "Domain spec JSON supplying sort universes");
  app.add_flag("--json", c.json, "Machine-readable report on stdout");

  auto* parse = app.add_subcommand("parse", "Translate a scenario into a model");
  parse->add_option("scenario", c.input)->required()->check(CLI::ExistingFile);
  parse->add_option("-o,--output", c.output);

  auto* val = app.add_subcommand("validate", "Check model well-formedness");
  val->add_option("model", c.input)->required()->check(CLI::ExistingFile);

  auto* sat = app.add_subcommand("saturate", "Saturate a model");
  sat->add_option("model", c.input)->required()->check(CLI::ExistingFile);
  sat->add_option("-o,--output", c.output);

  auto* comp = app.add_subcommand("compose", "Disjunction of two saturated models");
  comp->add_option("left", c.input)->required()->check(CLI::ExistingFile);
  comp->add_option("right", c.second)->required()->check(CLI::ExistingFile);
  comp->add_option("-o,--output", c.output);

  auto* iso = app.add_subcommand("iso", "Decide isomorphism of two models");
  iso->add_option("left", c.input)->required()->check(CLI::ExistingFile);
  iso->add_option("right", c.second)->required()->check(CLI::ExistingFile);
  iso->add_option("--cap", c.isoCap, "Maximum locations per model")->check(CLI::PositiveNumber);

  auto* eq = app.add_subcommand("check-equiv", "Bounded testing-equivalence check");
  eq->add_option("--left", c.left, "Comma-separated model files")->required();
  eq->add_option("--right", c.right, "Comma-separated model files")->required();
  eq->add_option("--ini", c.iniPath, "Initialization JSON (object or array); default: all");
  eq->add_option("--max-sigma", c.maxSigma, "Bound on interaction sequence length")->check(CLI::PositiveNumber);

  auto* gen = app.add_subcommand("gen-tests", "Derive a test case");
  gen->add_option("model", c.input)->required()->check(CLI::ExistingFile);
  gen->add_option("--ini", c.iniPath)->required()->check(CLI::ExistingFile);
  gen->add_option("--depth", c.depth)->check(CLI::PositiveNumber);
  gen->add_option("-o,--output", c.output);

  auto* runc = app.add_subcommand("run", "Execute a test case against a simulated system");
  runc->add_option("testcase", c.input)->required()->check(CLI::ExistingFile);
  runc->add_option("--sut", c.sutPath)->required()->check(CLI::ExistingFile);
  runc->add_option("--seed", c.seed);
  runc->add_option("--max-steps", c.maxSteps)->check(CLI::PositiveNumber);

  auto* dot = app.add_subcommand("export-dot", "Render a model or test case as DOT");
  dot->add_option("input", c.input)->required()->check(CLI::ExistingFile);
  dot->add_option("-o,--output", c.output);

  std::vector<std::string> argv{"bddts"};
  argv.insert(argv.end(), args.begin(), args.end());
  std::vector<char*> ptrs;
  for (auto& a : argv) ptrs.push_back(a.data());
  try {
    app.parse(static_cast<int>(ptrs.size()), ptrs.data());
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitError;
  }

  try {
    Session s(c, out, err);
    if (*parse) return s.parse();
    if (*val) return s.validateCmd();
    if (*sat) return s.saturateCmd();
    if (*comp) return s.composeCmd();
    if (*iso) return s.isoCmd();
    if (*eq) return s.checkEquivCmd();
    if (*gen) return s.genTestsCmd();
    if (*runc) return s.runCmd();
    if (*dot) return s.exportDotCmd();
  } catch (const Error& e) {
    err << "error: " << errorCodeName(e.code()) << ": " << e.what() << "\n";
    return kExitError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}

}  // namespace bddts::cli
