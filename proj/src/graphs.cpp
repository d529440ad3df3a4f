#include "moncol/graphs.hpp"

#include <array>

namespace moncol {

const char* const kDivergenceVerdict =
    "no initial algebra of L found within budget; growth is evidence only, not a proof of non-existence";

namespace {

constexpr std::size_t kV = 0;
constexpr std::size_t kE = 1;

void require_graph(const Object& x) {
  if (x.variant() != Variant::FinGraph) throw Error(ErrorKind::UnsupportedVariant, "loop functors act on graphs");
}

std::vector<Atom> loop_subsets(const Object& x) {
  const auto loops = LoopSet::of(x).loops;
  if (loops.size() >= 20 || (std::size_t{1} << loops.size()) > kAtomCeiling) {
    throw Error(ErrorKind::CeilingExceeded, "powerset of " + std::to_string(loops.size()) + " loops");
  }
  std::vector<Atom> out;
  for (std::size_t mask = 0; mask < (std::size_t{1} << loops.size()); ++mask) {
    std::vector<Atom> members;
    for (std::size_t i = 0; i < loops.size(); ++i) {
      if (mask & (std::size_t{1} << i)) members.push_back(loops[i]);
    }
    out.push_back(Atom::set(std::move(members)));
  }
  return out;
}

Atom image(const Morphism& f, const Atom& m) {
  std::vector<Atom> out;
  for (const auto& l : m.children()) out.push_back(f(kE, l));
  return Atom::set(std::move(out));
}

Object h_obj(const Object& x) {
  require_graph(x);
  return Object::graph(loop_subsets(x), {});
}

Object k_obj(const Object& x) {
  require_graph(x);
  std::vector<Atom> vertices;
  std::vector<std::array<Atom, 3>> edges;
  for (const auto& m : loop_subsets(x)) {
    vertices.push_back(Atom::tag(0, m));
    vertices.push_back(Atom::tag(1, m));
    edges.push_back({m, Atom::tag(0, m), Atom::tag(1, m)});
  }
  return Object::graph(std::move(vertices), edges);
}

Object l_obj(const Object& x) {
  require_graph(x);
  std::vector<std::array<Atom, 3>> edges;
  const auto subsets = loop_subsets(x);
  for (const auto& m : subsets) edges.push_back({m, m, m});
  return Object::graph(subsets, edges);
}

Endofunctor loop_functor(const std::string& name, Object (*obj)(const Object&)) {
  Endofunctor h;
  h.name = name;
  h.shape = Shape::graph();
  h.on_obj = obj;
  h.on_mor = [obj](const Morphism& f) {
    return Morphism::from_fn(obj(f.dom()), obj(f.cod()), [&](std::size_t, const Atom& x) {
      return x.kind() == Atom::Kind::Tag ? Atom::tag(x.index(), image(f, x.inner())) : image(f, x);
    });
  };
  return h;
}

NatTrans injection(const std::string& name, std::size_t side) {
  return {name, functor_H(), functor_K(), [side](const Object& x) {
            return Morphism::from_fn(h_obj(x), k_obj(x), [side](std::size_t, const Atom& m) { return Atom::tag(side, m); });
          }};
}

/// Summands 0..2 are copies of H sent by the given sides, summand 3 is K sent by the identity.
NatTrans folding(const std::string& name, std::array<std::size_t, 3> sides) {
  const Endofunctor hhat = functor_Hhat();
  return {name, hhat, functor_K(), [hhat, sides](const Object& x) {
            return Morphism::from_fn(hhat(x), k_obj(x), [&](std::size_t, const Atom& u) {
              return u.index() == 3 ? u.inner() : Atom::tag(sides[u.index()], u.inner());
            });
          }};
}

ChainSummary summarize(const std::string& functor, const std::string& seed, const ChainRun& run) {
  ChainSummary out{functor, seed, {}, {}, {}, run.status};
  for (const auto& w : run.stages) {
    out.vertices.push_back(w.size(kV));
    out.edges.push_back(w.size(kE));
    out.loops.push_back(LoopSet::of(w).loops.size());
  }
  return out;
}

std::vector<Object> graph_samples() { return sample_graphs(2); }

/// Iso L X -> Q sending M to the class of `vertex(M)` and `edge(M)`.
bool matches_l(const Object& x, const Quotient& q, const std::function<Atom(std::size_t, const Atom&)>& lift) {
  const Object lx = l_obj(x);
  if (lx.size(kV) != q.object.size(kV) || lx.size(kE) != q.object.size(kE)) return false;
  try {
    return Morphism::from_fn(lx, q.object, [&](std::size_t s, const Atom& m) { return q.projection(s, lift(s, m)); })
        .is_iso();
  } catch (const Error&) {
    return false;
  }
}

void check_l_chain(CounterexampleReport& out, std::size_t budget) {
  const Object seed = one_loop_graph();
  const auto run = free_algebra_chain(functor_L(), seed, budget);
  const auto summary = summarize("L", seed.str(), run);
  out.chains.push_back(summary);
  auto& r = out.checks;
  for (std::size_t k = 0; k + 1 < summary.vertices.size(); ++k) {
    const std::string where = "L stage " + std::to_string(k + 1);
    r.expect(summary.vertices[k + 1] > summary.vertices[k], "L chain grows strictly", where);
    r.expect(summary.vertices[k + 1] == 1 + (std::size_t{1} << summary.loops[k]), "vertices(W_k+1) = 1 + 2^loops(W_k)",
             where, std::to_string(summary.vertices[k + 1]));
  }
  for (std::size_t k = 0; k < summary.vertices.size(); ++k) {
    r.expect(summary.loops[k] == summary.edges[k], "every edge of an L stage is a loop", "L stage " + std::to_string(k));
  }
  r.expect(!run.status.converged(), "L chain does not converge within budget", std::to_string(budget));
  out.verdict = run.status.converged() ? "L chain converged" : kDivergenceVerdict;
}

}  // namespace

LoopSet LoopSet::of(const Object& graph) {
  require_graph(graph);
  LoopSet out{graph, {}};
  for (std::size_t i = 0; i < graph.size(kE); ++i) {
    if (graph.arrow_index(0, i) == graph.arrow_index(1, i)) out.loops.push_back(graph.carrier(kE)[i]);
  }
  return out;
}

Endofunctor functor_H() { return loop_functor("H", h_obj); }
Endofunctor functor_K() { return loop_functor("K", k_obj); }
Endofunctor functor_L() { return loop_functor("L", l_obj); }

std::pair<NatTrans, NatTrans> transformations_sigma_tau() { return {injection("sigma", 0), injection("tau", 1)}; }

LawReport naturality_check(const NatTrans& t, const std::vector<Object>& samples, std::size_t hom_limit) {
  LawReport report;
  report.subject = "naturality of " + t.name;
  for (const auto& x : samples) {
    for (const auto& y : samples) {
      for (const auto& f : all_morphisms(x, y, hom_limit)) {
        const Morphism lhs = compose(t.component(y), t.source(f));
        const Morphism rhs = compose(t.target(f), t.component(x));
        report.expect(lhs == rhs, "naturality square", f.str());
      }
    }
  }
  return report;
}

Endofunctor functor_Hhat() {
  Endofunctor h;
  h.name = "H+H+H+K";
  h.shape = Shape::graph();
  h.on_obj = [](const Object& x) { return coproduct(Shape::graph(), {h_obj(x), h_obj(x), h_obj(x), k_obj(x)}).object; };
  h.on_mor = [](const Morphism& f) {
    const Morphism hf = functor_H()(f);
    return coproduct_map({hf, hf, hf, functor_K()(f)});
  };
  return h;
}

std::pair<NatTrans, NatTrans> split_epis() {
  return {folding("sigma0", {0, 0, 1}), folding("tau0", {1, 0, 1})};
}

Object one_loop_graph() {
  return Object::graph({Atom::name("v")}, {{Atom::name("l"), Atom::name("v"), Atom::name("v")}});
}

CounterexampleReport demo_no_coequalizer(std::size_t budget) {
  CounterexampleReport out;
  auto& r = out.checks;
  r.subject = "no coequalizer of monads on graphs";
  const auto samples = graph_samples();
  for (const auto& h : {functor_H(), functor_K(), functor_L()}) r.merge(functor_law_check(h, samples));
  const auto [sigma, tau] = transformations_sigma_tau();
  r.merge(naturality_check(sigma, samples));
  r.merge(naturality_check(tau, samples));
  for (const auto& x : samples) {
    const Quotient q = coequalize_morphisms(sigma.component(x), tau.component(x));
    r.expect(matches_l(x, q, [](std::size_t s, const Atom& m) { return s == kV ? Atom::tag(0, m) : m; }),
             "coequalizer of sigma_X, tau_X is L X", x.str());
  }
  for (const auto& h : {functor_H(), functor_K()}) {
    for (const auto& x : samples) {
      const auto run = free_algebra_chain(h, x, budget);
      r.expect(LoopSet::of(run.stages[1]).loops.size() == LoopSet::of(x).loops.size(), "X + HX has the loops of X",
               h.name + " at " + x.str());
      if (budget >= 2) {
        r.expect(run.status.converged() && run.status.level == 1, "converges in one step", h.name + " at " + x.str(),
                 run.status.str());
      }
    }
  }
  for (const auto& h : {functor_H(), functor_K()}) {
    const auto run = free_algebra_chain(h, one_loop_graph(), budget);
    out.chains.push_back(summarize(h.name, one_loop_graph().str(), run));
  }
  check_l_chain(out, budget);
  return out;
}

CounterexampleReport demo_no_cointersection(std::size_t budget) {
  CounterexampleReport out;
  auto& r = out.checks;
  r.subject = "no cointersection of split epis on graphs";
  auto samples = graph_samples();
  const Endofunctor hhat = functor_Hhat();
  const Endofunctor k = functor_K();
  const auto [sigma0, tau0] = split_epis();
  r.merge(naturality_check(sigma0, samples));
  r.merge(naturality_check(tau0, samples));
  for (const auto& x : samples) {
    const Coproduct parts = coproduct(Shape::graph(), {h_obj(x), h_obj(x), h_obj(x), k_obj(x)});
    const Morphism section = parts.injections[3].mor;
    const Morphism s0 = sigma0.component(x);
    const Morphism t0 = tau0.component(x);
    r.expect(compose(s0, section).is_identity_on_atoms(), "sigma0 . section = id", x.str());
    r.expect(compose(t0, section).is_identity_on_atoms(), "tau0 . section = id", x.str());
    r.expect(s0.is_epi() && t0.is_epi(), "split epis are surjective", x.str());

    // pushout of K <- Hhat -> K
    const Object kx = k(x);
    const Coproduct two = coproduct(Shape::graph(), {kx, kx});
    Partition p(two.object);
    const Object hx = hhat(x);
    for (std::size_t s = 0; s < hx.sort_count(); ++s) {
      for (const auto& u : hx.carrier(s)) {
        p.merge(s, *two.object.index_of(s, Atom::tag(0, s0(s, u))), *two.object.index_of(s, Atom::tag(1, t0(s, u))));
      }
    }
    const Quotient q = quotient(two.object, std::move(p));
    r.expect(matches_l(x, q, [](std::size_t s, const Atom& m) { return Atom::tag(0, s == kV ? Atom::tag(0, m) : m); }),
             "pushout of sigma0, tau0 is L X", x.str());
  }
  check_l_chain(out, budget);
  return out;
}

}  // namespace moncol
