#include <chrono>
#include <cstdio>
#include <functional>
#include <set>
#include <string>
#include <vector>

#include "moncol/cli.hpp"
#include "moncol/colimit.hpp"
#include "moncol/coproduct.hpp"
#include "moncol/graphs.hpp"
#include "moncol/presentation.hpp"

using namespace moncol;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
  std::size_t checks = 0;

  void expect(bool ok, const std::string& what) {
    ++checks;
    if (!ok && pass) {
      pass = false;
      detail = what;
    }
  }
  void absorb(const LawReport& r) {
    checks += r.checked;
    if (!r.clean() && pass) {
      pass = false;
      detail = r.str();
    }
  }
};

using Ops = std::vector<std::pair<std::string, std::size_t>>;

Object names_set(std::size_t n, const std::string& prefix) {
  std::vector<Atom> e;
  for (std::size_t i = 0; i < n; ++i) e.push_back(Atom::name(prefix + std::to_string(i)));
  return Object::set(e);
}

Monad exc_n(std::size_t n, const std::string& prefix) { return exception_monad(names_set(n, prefix)); }

Monad free_unary(const std::string& op, std::size_t depth) {
  return presented_monad({Signature::single_sorted({{op, 1}}), {}}, depth, "F" + op);
}

std::set<Atom> atoms(const Object& x) { return {x.carrier(0).begin(), x.carrier(0).end()}; }

// coproduct atoms as atoms of Exception(E + F): i+1:(1:x) becomes 1:(i:x)
Atom relabel(const Atom& r) {
  if (r.kind() != Atom::Kind::Tag) return r;
  if (r.index() == 0) return Atom::tag(0, relabel(r.inner()));
  return Atom::tag(1, Atom::tag(r.index() - 1, r.inner().inner()));
}

// coproduct atom as a term over the union signature
Atom decode(const Atom& r) {
  if (r.index() == 0) return Atom::var(r.inner());
  std::function<Atom(const Atom&)> go = [&](const Atom& t) {
    if (t.kind() == Atom::Kind::Var) return decode(t.inner());
    std::vector<Atom> args;
    for (const auto& c : t.children()) args.push_back(go(c));
    return Atom::op(t.text(), std::move(args));
  };
  return go(r.inner());
}

// words over {s, t} of length <= d applied to each leaf
std::set<Atom> unary_towers(const std::vector<Atom>& leaves, std::size_t d) {
  std::set<Atom> out;
  std::vector<Atom> level;
  for (const auto& a : leaves) level.push_back(Atom::var(a));
  out.insert(level.begin(), level.end());
  for (std::size_t k = 1; k <= d; ++k) {
    std::vector<Atom> next;
    for (const auto& t : level) {
      next.push_back(Atom::op("s", {t}));
      next.push_back(Atom::op("t", {t}));
    }
    out.insert(next.begin(), next.end());
    level = std::move(next);
  }
  return out;
}

// number of terms of depth <= d: N_0 = n, N_k = n + sum over ops of N_(k-1)^arity
std::size_t term_count(const Ops& ops, std::size_t n, std::size_t d) {
  std::size_t count = n;
  for (std::size_t k = 1; k <= d; ++k) {
    std::size_t next = n;
    for (const auto& [name, arity] : ops) {
      std::size_t p = 1;
      for (std::size_t i = 0; i < arity; ++i) p *= count;
      next += p;
    }
    count = next;
  }
  return count;
}

std::vector<Ops> small_signatures() {
  std::vector<Ops> out;
  for (std::size_t a = 0; a <= 2; ++a) out.push_back({{"f", a}});
  for (std::size_t a = 0; a <= 2; ++a) {
    for (std::size_t b = a; b <= 2; ++b) out.push_back({{"f", a}, {"g", b}});
  }
  return out;
}

Outcome monad_laws() {
  Outcome out;
  BuiltinParams params;
  params.names = {"e1", "e2"};
  const auto kinds = {BuiltinKind::Exception, BuiltinKind::ExceptionZero, BuiltinKind::Terminal,
                      BuiltinKind::TerminalZero, BuiltinKind::Reader, BuiltinKind::Writer,
                      BuiltinKind::NonemptyPowerset};
  for (const auto& shape : {Shape::set(), Shape::graph()}) {
    const auto samples = law_samples(shape, shape->variant == Variant::FinGraph ? 2 : 3);
    out.absorb(monad_law_check(identity_monad(shape), samples));
    for (auto kind : kinds) {
      if (kind == BuiltinKind::NonemptyPowerset && shape->variant == Variant::FinGraph) continue;
      out.absorb(monad_law_check(builtin_monad(kind, params, shape), samples));
    }
  }
  // negative control: the projecting writer must fail
  params.writer_project = true;
  out.expect(!monad_law_check(builtin_monad(BuiltinKind::Writer, params, Shape::set()), law_samples(Shape::set(), 1)).clean(),
             "projecting writer passes the laws");
  return out;
}

Outcome free_decomposition() {
  Outcome out;
  const std::vector<Object> samples{sample_set(0), sample_set(1), sample_set(2)};
  for (const auto& ops : small_signatures()) {
    const Presentation p{Signature::single_sorted(ops), {}};
    out.absorb(free_monad_decomposition_check(p, samples, 3));
    for (std::size_t d = 0; d <= 3; ++d) {
      const Monad f = presented_monad(p, d);
      for (const auto& a : samples) {
        out.expect(f.apply(a).size() == term_count(ops, a.size(), d), "term count at depth " + std::to_string(d));
      }
    }
  }
  return out;
}

Outcome exception_coproduct() {
  Outcome out;
  const auto samples = sample_sets(3);
  for (std::size_t ne = 0; ne <= 3; ++ne) {
    for (std::size_t nf = 0; nf <= 3; ++nf) {
      const Monad r = coproduct_monad({exc_n(ne, "e"), exc_n(nf, "f")}, samples);
      const Monad sum = exception_monad(coproduct({names_set(ne, "e"), names_set(nf, "f")}).object);
      const Monad f = exc_n(nf, "f");
      const std::string where = "E=" + std::to_string(ne) + " F=" + std::to_string(nf);
      for (const auto& a : samples) {
        const Object ra = r.apply(a);
        std::set<Atom> relabeled;
        for (const auto& x : ra.carrier(0)) relabeled.insert(relabel(x));
        out.expect(relabeled == atoms(sum.apply(a)), "carrier " + where);
        for (const auto& x : a.carrier(0)) out.expect(relabel(r.unit(a, 0, x)) == sum.unit(a, 0, x), "unit " + where);
        const Object rra = r.apply(ra);
        for (const auto& x : rra.carrier(0)) {
          out.expect(relabel(r.join(a, 0, x)) == sum.join(a, 0, relabel(x)), "mult " + where);
        }
        const auto level = as_coproduct(r)->layered(a)->chain.status;
        out.expect(level.converged() && level.level <= 2, "converged within 2 " + where);
        // S(A + E) with S = Exception(F)
        const Object sae = f.apply(coproduct({a, names_set(ne, "e")}).object);
        std::set<Atom> mapped;
        for (const auto& x : ra.carrier(0)) {
          if (x.index() == 0) mapped.insert(Atom::tag(0, Atom::tag(0, x.inner())));
          if (x.index() == 1) mapped.insert(Atom::tag(0, Atom::tag(1, x.inner().inner())));
          if (x.index() == 2) mapped.insert(x.inner());
        }
        out.expect(mapped == atoms(sae), "S(A + E) " + where);
      }
    }
  }
  return out;
}

Outcome free_coproduct() {
  Outcome out;
  for (std::size_t d = 0; d <= 4; ++d) {
    const Monad r = coproduct_monad({free_unary("s", d), free_unary("t", d)}, sample_sets(2));
    for (std::size_t n = 0; n <= 2; ++n) {
      const Object a = sample_set(n);
      std::set<Atom> decoded;
      const Object ra = r.apply(a);
      for (const auto& x : ra.carrier(0)) decoded.insert(decode(x));
      out.expect(decoded == unary_towers({a.carrier(0).begin(), a.carrier(0).end()}, d),
                 "depth " + std::to_string(d) + " |A|=" + std::to_string(n));
    }
  }
  return out;
}

Outcome universal() {
  Outcome out;
  for (std::size_t ne = 0; ne <= 3; ++ne) {
    for (std::size_t nf = 0; nf <= 3; ++nf) {
      const Monad r = coproduct_monad({exc_n(ne, "e"), exc_n(nf, "f")}, sample_sets(2));
      out.absorb(verify_universal(r, sample_sets(1), 2));
    }
  }
  for (std::size_t d = 0; d <= 4; ++d) {
    const Monad r = coproduct_monad({free_unary("s", d), free_unary("t", d)}, sample_sets(2));
    out.absorb(verify_universal(r, sample_sets(1), 2));
  }
  return out;
}

Outcome compact_pair() {
  Outcome out;
  const auto samples = sample_sets(2);
  for (std::size_t ne = 0; ne <= 3; ++ne) {
    for (std::size_t nf = 0; nf <= 3; ++nf) {
      const auto e = unit_complement(exc_n(ne, "e"), samples);
      const auto f = unit_complement(exc_n(nf, "f"), samples);
      for (const auto& a : sample_sets(3)) out.absorb(compact_pair_check(e, f, a, 4));
    }
  }
  for (std::size_t d = 0; d <= 4; ++d) {
    const auto s = unit_complement(free_unary("s", d), samples);
    const auto t = unit_complement(free_unary("t", d), samples);
    for (const auto& a : sample_sets(2)) out.absorb(compact_pair_check(s, t, a, 4));
  }
  return out;
}

MonadMorphism send(const Monad& s, const Monad& t, std::map<std::string, std::string> m, const std::string& name) {
  auto f = exception_morphism(s, t, [m](const Atom& e) { return Atom::name(m.at(e.text())); });
  f.name = name;
  return f;
}

Outcome exception_merge() {
  Outcome out;
  const Monad s = exception_monad(Object::set(names({"e"})));
  const Monad t = exception_monad(Object::set(names({"e1", "e2"})));
  const Monad one = exception_monad(Object::set(names({"e"})));
  const auto c = coequalize_monads(send(s, t, {{"e", "e1"}}, "p"), send(s, t, {{"e", "e2"}}, "q"), sample_sets(3));
  out.absorb(c.report);
  const auto* q = as_quotient(c.monad);
  out.expect(q != nullptr, "coequalizer is a quotient");
  if (!q) return out;
  for (const auto& a : sample_sets(3)) {
    const Object ra = c.monad.apply(a);
    // the classes of A + {e1 ~ e2} against Exception({e})
    const auto iso = [](const Atom& x) { return x.index() == 0 ? x : Atom::tag(1, Atom::name("e")); };
    std::set<Atom> mapped;
    for (const auto& x : ra.carrier(0)) mapped.insert(iso(x));
    out.expect(mapped.size() == ra.size() && mapped == atoms(one.apply(a)), "R A is A + {e} at " + a.str());
    for (const auto& x : a.carrier(0)) out.expect(iso(c.monad.unit(a, 0, x)) == one.unit(a, 0, x), "unit at " + a.str());
    const Object rra = c.monad.apply(ra);
    for (const auto& x : rra.carrier(0)) {
      const Atom inner = x.index() == 0 ? Atom::tag(0, iso(x.inner())) : iso(x);
      out.expect(iso(c.monad.join(a, 0, x)) == one.join(a, 0, inner), "mult at " + a.str());
    }
    const auto r = q->reflect(a);
    out.expect(r->rounds <= r->ta.size(), "closure rounds within |T A| at " + a.str());
  }
  out.absorb(check_colimit_universal(c, sample_sets(1), 2));
  return out;
}

void factorization_case(Outcome& out, const MonadMorphism& f, const std::vector<Object>& samples,
                        const std::function<bool(const Object&, const Object&)>& image_ok) {
  const auto fact = factorize_monad_morphism(f, samples);
  out.absorb(fact.report);
  out.absorb(monad_law_check(fact.image, samples));
  for (const auto& a : samples) {
    const Morphism e = fact.epi.at(a);
    const Morphism m = fact.mono.at(a);
    out.expect(e.is_epi(), f.name + ": e surjective at " + a.str());
    out.expect(m.is_mono(), f.name + ": m injective at " + a.str());
    out.expect(compose(m, e) == f.at(a), f.name + ": m . e = f at " + a.str());
    out.expect(image_ok(a, fact.image.apply(a)), f.name + ": image at " + a.str());
  }
}

Outcome factorization() {
  Outcome out;
  const auto samples = sample_sets(2);
  {
    const Monad s = exception_monad(Object::set(names({"e"})));
    const Monad t = exception_monad(Object::set(names({"e", "f"})));
    auto f = exception_morphism(s, t, [](const Atom& x) { return x; });
    f.name = "inclusion";
    factorization_case(out, f, samples, [&](const Object& a, const Object& ra) { return ra.size() == s.apply(a).size(); });
    const auto fact = factorize_monad_morphism(f, samples);
    for (const auto& a : samples) out.expect(fact.epi.at(a).is_iso(), "inclusion: e iso at " + a.str());
  }
  {
    const Signature sig = Signature::single_sorted({{"s", 1}});
    Presentation idem{sig, {}};
    idem.rules.push_back(parse_rule("s(s(x1)) -> s(x1)", sig));
    const Monad s = presented_monad({sig, {}}, 3, "Fs");
    const Monad t = presented_monad(idem, 3, "Fs/ss=s");
    auto f = translation_morphism(s, t);
    f.name = "idempotent quotient";
    // normal forms reached from the image: x and s(x) for each leaf
    factorization_case(out, f, samples, [](const Object& a, const Object& ra) {
      std::set<Atom> expected;
      for (const auto& x : a.carrier(0)) {
        expected.insert(Atom::var(x));
        expected.insert(Atom::op("s", {Atom::var(x)}));
      }
      return atoms(ra) == expected;
    });
  }
  {
    const Monad s = exception_monad(Object::set(names({"e1", "e2"})));
    const Monad t = exception_monad(Object::set(names({"e"})));
    const auto f = send(s, t, {{"e1", "e"}, {"e2", "e"}}, "collapse");
    factorization_case(out, f, samples, [&](const Object& a, const Object& ra) { return atoms(ra) == atoms(t.apply(a)); });
  }
  return out;
}

Outcome counterexample() {
  Outcome out;
  const auto report = demo_no_coequalizer(3);
  out.absorb(report.checks);
  out.expect(report.chains.size() == 3, "three chains");
  if (report.chains.size() != 3) return out;
  for (std::size_t i = 0; i < 2; ++i) {
    const auto& c = report.chains[i];
    out.expect(c.status.converged() && c.status.level == 1, c.functor + " converges in one step");
  }
  const auto& l = report.chains[2];
  out.expect(l.vertices == std::vector<std::size_t>{1, 3, 9, 513}, "L vertex counts");
  for (std::size_t k = 0; k + 1 < l.vertices.size(); ++k) out.expect(l.vertices[k] < l.vertices[k + 1], "L grows");
  out.expect(!l.status.converged(), "L budget exhausted");
  return out;
}

Outcome cross_path() {
  Outcome out;
  const auto run = [](const std::string& command, const std::string& spec) {
    RunConfig c;
    c.command = command;
    c.specs = {std::string(MONCOL_SPEC_DIR) + "/" + spec + ".spec"};
    c.sizes = {0, 1, 2, 3};
    return run_command(c);
  };
  const auto coeq = run("coequalizer", "exception_merge");
  out.expect(coeq.exit_code == kExitOk, "coequalizer exit code");
  for (const auto* spec : {"exception_merge", "exception_merge_terminal"}) {
    const auto colim = run("colimit", spec);
    out.expect(colim.exit_code == kExitOk, std::string("colimit exit code on ") + spec);
    const auto& a = colim.payload["result"]["tables"];
    const auto& b = coeq.payload["result"]["tables"];
    out.expect(a.size() == 4 && a == b, std::string("tables agree on ") + spec);
  }
  return out;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"monad-law suite on builtin monads", monad_laws},
      {"free monad decomposition", free_decomposition},
      {"exception coproduct is exact", exception_coproduct},
      {"free coproduct against term oracle", free_coproduct},
      {"coproduct universal property", universal},
      {"compact pair formula", compact_pair},
      {"exception merge coequalizer", exception_merge},
      {"monad morphism factorization", factorization},
      {"graph counterexample chains", counterexample},
      {"colimit and coequalizer paths agree", cross_path},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("criterion %zu: %s  %s (%zu checks, %.2fs)%s%s\n", i + 1, o.pass ? "PASS" : "FAIL",
                criteria[i].first.c_str(), o.checks, secs, o.pass ? "" : "  ", o.detail.c_str());
    std::fflush(stdout);
    if (!o.pass) ++failed;
  }
  return failed == 0 ? 0 : 1;
}
