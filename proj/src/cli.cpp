#include "moncol/cli.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "moncol/colimit.hpp"
#include "moncol/coproduct.hpp"
#include "moncol/graphs.hpp"
#include "moncol/spec.hpp"

namespace moncol {

using Json = nlohmann::ordered_json;

namespace {

constexpr std::size_t kTableLimit = 64;
constexpr std::size_t kShownViolations = 5;

struct Flags {
  bool violation = false;
  bool budget = false;
  bool truncated = false;

  std::string status() const {
    if (violation) return "law-violation";
    if (budget) return "budget-exhausted";
    if (truncated) return "truncated";
    return "ok";
  }
};

Json report_json(const LawReport& r, Flags& flags) {
  Json j;
  j["subject"] = r.subject;
  j["checked"] = r.checked;
  j["violations"] = r.violation_count;
  j["clean"] = r.clean();
  if (!r.clean()) {
    flags.violation = true;
    Json examples = Json::array();
    for (std::size_t i = 0; i < std::min(r.violations.size(), kShownViolations); ++i) {
      examples.push_back({{"law", r.violations[i].law}, {"where", r.violations[i].where}, {"detail", r.violations[i].detail}});
    }
    j["counterexamples"] = examples;
  }
  if (!r.notes.empty()) j["notes"] = r.notes;
  return j;
}

std::vector<std::string> strs(std::span<const Atom> atoms) {
  std::vector<std::string> out;
  for (const auto& a : atoms) out.push_back(a.str());
  return out;
}

std::size_t max_size(const RunConfig& c) { return *std::max_element(c.sizes.begin(), c.sizes.end()); }

std::vector<Object> objects_for(const ShapePtr& shape, const std::vector<std::size_t>& sizes) {
  std::vector<Object> out;
  const std::size_t top = *std::max_element(sizes.begin(), sizes.end());
  if (shape->variant == Variant::FinSet) {
    for (auto n : sizes) out.push_back(sample_set(n));
    return out;
  }
  for (const auto& x : sample_objects(shape, top)) {
    if (std::find(sizes.begin(), sizes.end(), x.size()) != sizes.end()) out.push_back(x);
  }
  return out;
}

std::vector<Object> small(const std::vector<Object>& xs, std::size_t n) {
  std::vector<Object> out;
  for (const auto& x : xs) {
    if (x.size() <= n) out.push_back(x);
  }
  return out;
}

/// Carrier, unit and (when small) multiplication of T at A.
Json monad_table(const Monad& t, const Object& a, Flags& flags) {
  const Object ta = t.apply(a);
  Json j;
  j["object"] = a.str();
  j["size"] = ta.size();
  if (ta.sort_count() == 1) {
    j["carrier"] = strs(ta.carrier(0));
  } else {
    Json carriers;
    for (std::size_t s = 0; s < ta.sort_count(); ++s) carriers["sort " + std::to_string(s)] = strs(ta.carrier(s));
    j["carrier"] = carriers;
  }
  if (ta.truncation()) {
    flags.truncated = true;
    j["truncated_at_depth"] = *ta.truncation();
  }
  Json unit = Json::array();
  for (std::size_t s = 0; s < a.sort_count(); ++s) {
    for (const auto& x : a.carrier(s)) unit.push_back({x.str(), t.unit(a, s, x).str()});
  }
  j["unit"] = unit;
  if (ta.size() <= kTableLimit) {
    const Object tta = t.apply(ta);
    if (tta.size() <= kTableLimit) {
      Json mult = Json::array();
      for (std::size_t s = 0; s < tta.sort_count(); ++s) {
        for (const auto& x : tta.carrier(s)) mult.push_back({x.str(), t.join(a, s, x).str()});
      }
      j["mult"] = mult;
    }
  }
  return j;
}

Json tables(const Monad& t, const std::vector<Object>& objects, Flags& flags) {
  Json out = Json::array();
  for (const auto& a : objects) out.push_back(monad_table(t, a, flags));
  return out;
}

Json chain_json(const ChainSummary& c) {
  return {{"functor", c.functor}, {"seed", c.seed},         {"vertices", c.vertices},
          {"edges", c.edges},     {"loops", c.loops},       {"converged", c.status.converged()},
          {"level", c.status.converged() ? Json(c.status.level) : Json(nullptr)}};
}

Json counterexample_json(const CounterexampleReport& r, Flags& flags) {
  Json chains = Json::array();
  for (const auto& c : r.chains) chains.push_back(chain_json(c));
  return {{"chains", chains}, {"checks", report_json(r.checks, flags)}, {"verdict", r.verdict}};
}

SpecFile the_spec(const RunConfig& c) { return load_spec(c.specs.front()); }

// ---------------------------------------------------------------- commands

Json cmd_check_laws(const RunConfig& c, Flags& flags) {
  const SpecFile spec = the_spec(c);
  const auto monads = build_monads(spec, c.depth, c.seed);
  const auto samples = law_samples(spec.base, max_size(c));
  Json j;
  Json ms = Json::array();
  for (const auto& m : monads) ms.push_back(report_json(monad_law_check(m, samples), flags));
  j["monads"] = ms;
  Json fs = Json::array();
  for (const auto& a : build_arrows(spec, monads)) fs.push_back(report_json(morphism_law_check(a.mor, samples), flags));
  j["morphisms"] = fs;
  return j;
}

Json colimit_json(const ColimitResult& r, const std::vector<Object>& objects, std::size_t bound, Flags& flags) {
  Json j;
  j["monad"] = r.monad.name();
  j["tables"] = tables(r.monad, objects, flags);
  j["laws"] = report_json(r.report, flags);
  if (const auto* q = as_quotient(r.monad)) {
    Json rounds = Json::array();
    for (const auto& a : objects) rounds.push_back({{"object", a.str()}, {"rounds", q->reflect(a)->rounds}, {"TA", q->reflect(a)->ta.size()}});
    j["closure_rounds"] = rounds;
  }
  j["universal"] = report_json(check_colimit_universal(r, small(objects, 1), bound), flags);
  return j;
}

/// The coequalizer of the free monads on H and K is the free monad on L.
Json graph_request(const RunConfig& c, Flags& flags) {
  const auto report = demo_no_coequalizer(c.budget);
  Json j = counterexample_json(report, flags);
  const auto& l = report.chains.back();
  j["request"] = "coequalizer of the free monads on H and K along sigma, tau";
  j["growth"] = l.vertices;
  if (!l.status.converged()) flags.budget = true;
  return j;
}

Json cmd_coequalizer(const RunConfig& c, Flags& flags) {
  const SpecFile spec = the_spec(c);
  if (spec.functor_pair) return graph_request(c, flags);
  const auto monads = build_monads(spec, c.depth, c.seed);
  const auto arrows = build_arrows(spec, monads);
  if (arrows.size() != 2 || arrows[0].from != arrows[1].from || arrows[0].to != arrows[1].to) {
    throw Error(ErrorKind::ParseError, "a coequalizer needs exactly two parallel morphisms");
  }
  const auto samples = law_samples(spec.base, max_size(c));
  const auto r = coequalize_monads(arrows[0].mor, arrows[1].mor, samples, c.budget);
  return colimit_json(r, objects_for(spec.base, c.sizes), 2, flags);
}

Json cmd_cointersection(const RunConfig& c, Flags& flags) {
  const SpecFile spec = the_spec(c);
  const auto monads = build_monads(spec, c.depth, c.seed);
  std::vector<MonadMorphism> es;
  for (const auto& a : build_arrows(spec, monads)) es.push_back(a.mor);
  const auto samples = law_samples(spec.base, max_size(c));
  const auto r = cointersection(es, samples, c.budget);
  return colimit_json(r, objects_for(spec.base, c.sizes), 2, flags);
}

Json cmd_colimit(const RunConfig& c, Flags& flags) {
  const SpecFile spec = the_spec(c);
  if (spec.functor_pair) return graph_request(c, flags);
  const auto monads = build_monads(spec, c.depth, c.seed);
  const DiagramOfMonads d{monads, build_arrows(spec, monads)};
  const auto samples = law_samples(spec.base, max_size(c));
  const auto objects = objects_for(spec.base, c.sizes);
  std::optional<std::size_t> terminal;
  if (spec.terminal) terminal = spec.monad_index(*spec.terminal);
  for (std::size_t j = 0; !terminal && j < monads.size(); ++j) {
    try {
      auto r = colimit_weakly_terminal(d, j, samples, c.budget);
      Json out = colimit_json(r, objects, 2, flags);
      out["path"] = "weakly terminal node " + spec.monads[j].name;
      return out;
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::NotWeaklyTerminal) throw;
    }
  }
  if (terminal) {
    Json out = colimit_json(colimit_weakly_terminal(d, *terminal, samples, c.budget), objects, 2, flags);
    out["path"] = "weakly terminal node " + *spec.terminal;
    return out;
  }
  // coproduct of the nodes, then the coequalizer of inj_to . f and inj_from
  const Monad sum = coproduct_monad(monads, samples, c.budget);
  std::vector<MonadMorphism> inj;
  for (std::size_t k = 0; k < monads.size(); ++k) inj.push_back(coproduct_injection(sum, k));
  ReflectionSpec rs{sum, {}, {}, c.budget};
  for (const auto& a : d.arrows) rs.pairs.push_back({compose(inj[a.to], a.mor), inj[a.from]});
  std::vector<LegBuilder> legs;
  for (std::size_t k = 0; k < monads.size(); ++k) {
    legs.push_back([i = inj[k]](const MonadMorphism& projection) { return compose(projection, i); });
  }
  const auto r = colimit_by_reflection(rs, d, legs, samples, "Colim");
  Json out = colimit_json(r, objects, 2, flags);
  out["path"] = "coproduct then coequalizer";
  return out;
}

Json cmd_coproduct(const RunConfig& c, Flags& flags) {
  const SpecFile spec = the_spec(c);
  const auto monads = build_monads(spec, c.depth, c.seed);
  const auto samples = law_samples(spec.base, max_size(c));
  const auto objects = objects_for(spec.base, c.sizes);
  const Monad r = coproduct_monad(monads, samples, c.budget);
  const auto* impl = as_coproduct(r);
  Json j;
  j["monad"] = r.name();
  Json ts = Json::array();
  std::vector<Object> converged;
  for (const auto& a : objects) {
    try {
      Json t = monad_table(r, a, flags);
      t["level"] = impl->layered(a)->chain.status.level;
      ts.push_back(t);
      converged.push_back(a);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::BudgetExhausted) throw;
      flags.budget = true;
      const auto run = coproduct_chain(impl->seps(), a, c.budget);
      ts.push_back({{"object", a.str()}, {"status", "budget-exhausted"}, {"growth", run.status.growth}});
    }
  }
  j["tables"] = ts;
  if (r.truncation()) {
    flags.truncated = true;
    Json per = Json::array();
    std::vector<std::vector<std::set<Atom>>> carriers;
    SpecFile free_depth = spec;
    std::size_t top = c.depth;
    for (auto& m : free_depth.monads) {
      if (m.depth) top = std::max(top, *m.depth);
      m.depth.reset();
    }
    for (std::size_t d = 0; d <= top; ++d) {
      const Monad rd = coproduct_monad(build_monads(free_depth, d, c.seed), samples, c.budget);
      Json row{{"depth", d}};
      std::vector<std::size_t> sizes;
      carriers.emplace_back();
      for (const auto& a : converged) {
        const Object ra = rd.apply(a);
        sizes.push_back(ra.size());
        carriers.back().emplace_back(ra.carrier(0).begin(), ra.carrier(0).end());
      }
      row["sizes"] = sizes;
      per.push_back(row);
    }
    LawReport mono;
    mono.subject = "carriers grow with the depth";
    for (std::size_t d = 0; d + 1 < carriers.size(); ++d) {
      for (std::size_t k = 0; k < converged.size(); ++k) {
        mono.expect(std::includes(carriers[d + 1][k].begin(), carriers[d + 1][k].end(), carriers[d][k].begin(),
                                  carriers[d][k].end()),
                    "R_d A is contained in R_d+1 A", converged[k].str() + " at depth " + std::to_string(d));
      }
    }
    j["per_depth"] = per;
    j["per_depth_agreement"] = report_json(mono, flags);
  }
  j["decomposition"] = report_json(decomposition_check(r, converged), flags);
  j["universal"] = report_json(verify_universal(r, small(converged, 1), 2), flags);
  if (monads.size() == 2) {
    LawReport pair;
    for (const auto& a : small(objects, 2)) pair.merge(compact_pair_check(impl->seps()[0], impl->seps()[1], a, c.budget));
    pair.subject = "compact pair formula";
    j["compact_pair"] = report_json(pair, flags);
  }
  return j;
}

Json cmd_counterexample(const RunConfig& c, Flags& flags) {
  Json j;
  j["no_coequalizer"] = counterexample_json(demo_no_coequalizer(c.budget), flags);
  j["no_cointersection"] = counterexample_json(demo_no_cointersection(c.budget), flags);
  return j;
}

std::string status_of(ErrorKind k) {
  switch (k) {
    case ErrorKind::ParseError:
    case ErrorKind::InvalidArgument:
    case ErrorKind::MixedVariants:
    case ErrorKind::UnsupportedVariant:
    case ErrorKind::NotWeaklyTerminal:
    case ErrorKind::NonTerminatingRules:
      return "parse-error";
    case ErrorKind::NotSeparated:
    case ErrorKind::NonMonicUnit:
      return "not-separated";
    case ErrorKind::BudgetExhausted:
    case ErrorKind::CeilingExceeded:
      return "budget-exhausted";
    case ErrorKind::DepthExceeded:
      return "truncated";
    default:
      return "law-violation";
  }
}

void render_text(const Json& j, std::size_t indent, std::ostringstream& out) {
  const std::string pad(indent, ' ');
  auto scalar = [](const Json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); };
  auto flat = [](const Json& v) {
    return std::all_of(v.begin(), v.end(), [](const Json& e) { return e.is_primitive(); });
  };
  for (auto it = j.begin(); it != j.end(); ++it) {
    const Json& v = it.value();
    if (v.is_primitive()) {
      out << pad << it.key() << ": " << scalar(v) << "\n";
    } else if (v.is_array() && flat(v)) {
      out << pad << it.key() << ":";
      for (std::size_t i = 0; i < v.size(); ++i) out << (i ? ", " : " ") << scalar(v[i]);
      out << "\n";
    } else if (v.is_array()) {
      out << pad << it.key() << ":\n";
      for (const auto& e : v) {
        if (e.is_object()) {
          out << pad << "  -\n";
          render_text(e, indent + 4, out);
        } else {
          out << pad << "  -";
          for (std::size_t i = 0; i < e.size(); ++i) out << (i ? " -> " : " ") << scalar(e[i]);
          out << "\n";
        }
      }
    } else {
      out << pad << it.key() << ":\n";
      render_text(v, indent + 2, out);
    }
  }
}

}  // namespace

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names{"check-laws", "coproduct", "coequalizer",
                                              "cointersection", "colimit", "counterexample"};
  return names;
}

void RunConfig::validate() const {
  const auto& names = command_names();
  if (std::find(names.begin(), names.end(), command) == names.end()) {
    throw Error(ErrorKind::InvalidArgument, "unknown command '" + command + "'");
  }
  if (budget < 1) throw Error(ErrorKind::InvalidArgument, "budget must be at least 1");
  if (sizes.empty()) throw Error(ErrorKind::InvalidArgument, "sizes must be nonempty");
  if (command != "counterexample" && specs.size() != 1) {
    throw Error(ErrorKind::InvalidArgument, command + " takes exactly one spec file");
  }
}

int exit_code_of(const Json& payload) {
  const std::string s = payload.value("status", "ok");
  if (s == "ok") return kExitOk;
  if (s == "law-violation") return kExitLawViolation;
  if (s == "parse-error") return kExitParseError;
  if (s == "not-separated") return kExitNotSeparated;
  return kExitBudget;
}

CommandResult run_command(const RunConfig& c) {
  CommandResult out;
  Json& j = out.payload;
  j["command"] = c.command;
  Flags flags;
  try {
    c.validate();
    Json body;
    if (c.command == "check-laws") body = cmd_check_laws(c, flags);
    if (c.command == "coproduct") body = cmd_coproduct(c, flags);
    if (c.command == "coequalizer") body = cmd_coequalizer(c, flags);
    if (c.command == "cointersection") body = cmd_cointersection(c, flags);
    if (c.command == "colimit") body = cmd_colimit(c, flags);
    if (c.command == "counterexample") body = cmd_counterexample(c, flags);
    j["result"] = body;
    j["status"] = flags.status();
  } catch (const Error& e) {
    j["error"] = {{"kind", to_string(e.kind())}, {"message", e.what()}};
    j["status"] = status_of(e.kind());
  }
  out.exit_code = exit_code_of(j);
  j["exit_code"] = out.exit_code;
  return out;
}

std::string render(const CommandResult& result, OutputFormat format) {
  if (format == OutputFormat::Structured) return result.payload.dump(2) + "\n";
  std::ostringstream out;
  render_text(result.payload, 0, out);
  return out.str();
}

}  // namespace moncol
