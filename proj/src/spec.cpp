#include "moncol/spec.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

namespace moncol {

namespace {

std::vector<std::string> words(std::string_view line) {
  std::vector<std::string> out;
  std::istringstream in{std::string(line)};
  for (std::string w; in >> w;) out.push_back(w);
  return out;
}

std::string strip_comment(const std::string& line) {
  const auto hash = line.find('#');
  return hash == std::string::npos ? line : line.substr(0, hash);
}

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

[[noreturn]] void fail(std::size_t line, const std::string& what) {
  throw Error(ErrorKind::ParseError, "line " + std::to_string(line) + ": " + what);
}

std::size_t number(const std::string& w, std::size_t line) {
  if (w.empty() || w.find_first_not_of("0123456789") != std::string::npos) fail(line, "expected a number, got '" + w + "'");
  return std::stoul(w);
}

const std::map<std::string, std::size_t> kArgsAllowed{
    {"identity", 0}, {"exception", 99}, {"exception-zero", 99}, {"terminal", 0}, {"terminal-zero", 0},
    {"reader", 99},  {"writer", 2},     {"powerset", 0},        {"free", 2}};

std::size_t sort_of(const Signature& sig, const std::string& name, std::size_t line) {
  for (std::size_t i = 0; i < sig.sorts.size(); ++i) {
    if (sig.sorts[i] == name) return i;
  }
  fail(line, "unknown sort '" + name + "'");
}

}  // namespace

std::size_t SpecFile::monad_index(const std::string& name) const {
  for (std::size_t i = 0; i < monads.size(); ++i) {
    if (monads[i].name == name) return i;
  }
  throw Error(ErrorKind::ParseError, "unknown monad '" + name + "'");
}

SpecFile parse_spec(std::string_view text) {
  SpecFile spec;
  std::istringstream in{std::string(text)};
  std::string raw;
  std::size_t line = 0;
  bool header = false;
  MonadDecl* open = nullptr;
  while (std::getline(in, raw)) {
    ++line;
    const std::string body = trim(strip_comment(raw));
    if (body.empty()) continue;
    const auto w = words(body);
    if (!header) {
      if (w.size() != 2 || w[0] != "moncol") fail(line, "expected header 'moncol 1'");
      spec.version = static_cast<int>(number(w[1], line));
      if (spec.version != 1) fail(line, "unsupported spec version " + w[1]);
      header = true;
      continue;
    }
    if (open) {
      Presentation& p = *open->presentation;
      if (w[0] == "end") {
        try {
          p.signature.validate();
        } catch (const Error& e) {
          fail(line, e.what());
        }
        open = nullptr;
      } else if (w[0] == "sorts") {
        if (!p.signature.ops.empty()) fail(line, "sorts must come before operations");
        p.signature.sorts.assign(w.begin() + 1, w.end());
        if (p.signature.sorts.empty()) fail(line, "no sorts");
      } else if (w[0] == "op") {
        if (w.size() == 3) {
          if (p.signature.sorts.size() != 1) fail(line, "give argument sorts in a many-sorted signature");
          p.signature.ops.push_back({w[1], std::vector<std::size_t>(number(w[2], line), 0), 0});
        } else if (w.size() >= 5 && w[2] == ":" && w[w.size() - 2] == "->") {
          OpSymbol op{w[1], {}, sort_of(p.signature, w.back(), line)};
          for (std::size_t i = 3; i + 2 < w.size(); ++i) op.args.push_back(sort_of(p.signature, w[i], line));
          p.signature.ops.push_back(std::move(op));
        } else {
          fail(line, "expected 'op NAME ARITY' or 'op NAME : SORTS -> SORT'");
        }
      } else if (w[0] == "rule") {
        try {
          p.rules.push_back(parse_rule(trim(body.substr(4)), p.signature));
        } catch (const Error& e) {
          fail(line, e.what());
        }
      } else {
        fail(line, "unexpected '" + w[0] + "' inside a presentation");
      }
      continue;
    }
    if (w[0] == "base") {
      if (w.size() == 2 && w[1] == "set") {
        spec.base = Shape::set();
      } else if (w.size() == 2 && w[1] == "graph") {
        spec.base = Shape::graph();
      } else if (w.size() >= 3 && w[1] == "sorted") {
        spec.base = Shape::sorted({w.begin() + 2, w.end()});
      } else {
        fail(line, "expected 'base set', 'base graph' or 'base sorted NAMES'");
      }
    } else if (w[0] == "monad") {
      if (w.size() < 4 || w[2] != "=") fail(line, "expected 'monad NAME = KIND ...'");
      if (!spec.base) spec.base = Shape::set();
      MonadDecl d{w[1], w[3], {w.begin() + 4, w.end()}, std::nullopt, std::nullopt, line};
      for (const auto& other : spec.monads) {
        if (other.name == d.name) fail(line, "monad '" + d.name + "' declared twice");
      }
      auto allowed = kArgsAllowed.find(d.kind);
      if (allowed == kArgsAllowed.end()) fail(line, "unknown monad kind '" + d.kind + "'");
      if (d.args.size() > allowed->second) fail(line, "too many arguments for " + d.kind);
      if (d.kind == "writer") {
        if (d.args.empty()) fail(line, "writer needs the order of the cyclic monoid");
        number(d.args[0], line);
        if (d.args.size() == 2 && d.args[1] != "project") fail(line, "expected 'project'");
      }
      if (d.kind == "free") {
        if (spec.base->variant == Variant::FinGraph) fail(line, "presentations need a set or sorted base");
        if (!d.args.empty()) {
          if (d.args.size() != 2 || d.args[0] != "depth") fail(line, "expected 'free [depth N]'");
          d.depth = number(d.args[1], line);
        }
        Presentation p;
        if (spec.base->variant == Variant::SortedFinSet) p.signature.sorts = spec.base->sorts;
        d.presentation = std::move(p);
      }
      spec.monads.push_back(std::move(d));
      if (spec.monads.back().presentation) open = &spec.monads.back();
    } else if (w[0] == "morphism") {
      if (w.size() < 8 || w[2] != ":" || w[4] != "->" || w[6] != "=") {
        fail(line, "expected 'morphism NAME : SOURCE -> TARGET = KIND ...'");
      }
      MorphismDecl d{w[1], w[3], w[5], w[7], {}, line};
      for (std::size_t i = 8; i < w.size(); ++i) {
        const auto eq = w[i].find('=');
        if (eq == std::string::npos || eq == 0 || eq + 1 == w[i].size()) fail(line, "expected FROM=TO, got " + w[i]);
        d.mapping.emplace_back(w[i].substr(0, eq), w[i].substr(eq + 1));
      }
      if (d.kind != "identity" && d.kind != "exception" && d.kind != "translation" && d.kind != "unit") {
        fail(line, "unknown morphism kind '" + d.kind + "'");
      }
      for (const auto& n : {d.source, d.target}) {
        bool known = false;
        for (const auto& m : spec.monads) known = known || m.name == n;
        if (!known) fail(line, "unknown monad '" + n + "'");
      }
      spec.morphisms.push_back(std::move(d));
    } else if (w[0] == "terminal") {
      if (w.size() != 2) fail(line, "expected 'terminal NAME'");
      spec.terminal = w[1];
    } else if (w[0] == "functors") {
      if (w.size() != 3 || w[1] != "sigma" || w[2] != "tau") fail(line, "expected 'functors sigma tau'");
      if (!spec.base || spec.base->variant != Variant::FinGraph) fail(line, "the loop functors live on graphs");
      spec.functor_pair = true;
    } else {
      fail(line, "unknown statement '" + w[0] + "'");
    }
  }
  if (!header) throw Error(ErrorKind::ParseError, "empty spec: expected header 'moncol 1'");
  if (open) fail(line, "presentation of '" + open->name + "' is missing 'end'");
  if (!spec.base) spec.base = Shape::set();
  if (spec.terminal) spec.monad_index(*spec.terminal);
  return spec;
}

SpecFile load_spec(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::ParseError, "cannot read " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  return parse_spec(text.str());
}

Monad build_monad(const SpecFile& spec, const MonadDecl& d, std::size_t depth, std::uint64_t seed) {
  const ShapePtr& shape = spec.base;
  if (d.kind == "identity") return identity_monad(shape);
  if (d.kind == "free") {
    return Monad(std::make_shared<PresentedMonadImpl>(*d.presentation, d.depth.value_or(depth), d.name, seed));
  }
  BuiltinParams params;
  BuiltinKind kind{};
  if (d.kind == "exception") {
    kind = BuiltinKind::Exception;
    params.names = d.args;
  } else if (d.kind == "exception-zero") {
    kind = BuiltinKind::ExceptionZero;
    params.names = d.args;
  } else if (d.kind == "terminal") {
    kind = BuiltinKind::Terminal;
  } else if (d.kind == "terminal-zero") {
    kind = BuiltinKind::TerminalZero;
  } else if (d.kind == "reader") {
    kind = BuiltinKind::Reader;
    params.names = d.args;
  } else if (d.kind == "writer") {
    kind = BuiltinKind::Writer;
    params.monoid = Monoid::cyclic(std::stoul(d.args[0]));
    params.writer_project = d.args.size() == 2;
  } else {
    kind = BuiltinKind::NonemptyPowerset;
  }
  return builtin_monad(kind, params, shape);
}

std::vector<Monad> build_monads(const SpecFile& spec, std::size_t depth, std::uint64_t seed) {
  std::vector<Monad> out;
  for (const auto& d : spec.monads) out.push_back(build_monad(spec, d, depth, seed));
  return out;
}

MonadMorphism build_morphism(const SpecFile& spec, const MorphismDecl& d, const std::vector<Monad>& monads) {
  const Monad& s = monads.at(spec.monad_index(d.source));
  const Monad& t = monads.at(spec.monad_index(d.target));
  const std::string where = "line " + std::to_string(d.line) + ": ";
  MonadMorphism out;
  if (d.kind == "identity") {
    if (d.source != d.target) throw Error(ErrorKind::ParseError, where + "identity needs equal source and target");
    out = identity_morphism(s);
  } else if (d.kind == "exception") {
    const auto& src = spec.monads[spec.monad_index(d.source)];
    const auto& tgt = spec.monads[spec.monad_index(d.target)];
    if (src.kind != "exception" || tgt.kind != "exception") {
      throw Error(ErrorKind::ParseError, where + "exception morphisms join exception monads");
    }
    std::map<std::string, std::string> m(d.mapping.begin(), d.mapping.end());
    for (const auto& e : src.args) {
      if (!m.count(e)) throw Error(ErrorKind::ParseError, where + "exception " + e + " is not mapped");
      if (std::find(tgt.args.begin(), tgt.args.end(), m[e]) == tgt.args.end()) {
        throw Error(ErrorKind::ParseError, where + m[e] + " is not an exception of " + tgt.name);
      }
    }
    out = exception_morphism(s, t, [m](const Atom& e) { return Atom::name(m.at(e.text())); });
  } else if (d.kind == "translation") {
    if (!as_presented(s) || !as_presented(t)) {
      throw Error(ErrorKind::ParseError, where + "translations join presented monads");
    }
    out = translation_morphism(s, t, {d.mapping.begin(), d.mapping.end()});
  } else {
    if (spec.monads[spec.monad_index(d.source)].kind != "identity") {
      throw Error(ErrorKind::ParseError, where + "unit morphisms start at an identity monad");
    }
    out = MonadMorphism{"", s, t, [t](const Object& a, std::size_t sort, const Atom& x) { return t.unit(a, sort, x); }};
  }
  out.name = d.name;
  return out;
}

std::vector<DiagramArrow> build_arrows(const SpecFile& spec, const std::vector<Monad>& monads) {
  std::vector<DiagramArrow> out;
  for (const auto& d : spec.morphisms) {
    out.push_back({spec.monad_index(d.source), spec.monad_index(d.target), build_morphism(spec, d, monads)});
  }
  return out;
}

}  // namespace moncol
