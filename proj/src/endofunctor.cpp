#include "moncol/endofunctor.hpp"

#include <map>

namespace moncol {

Endofunctor identity_functor(const ShapePtr& shape) {
  return {"Id", shape, [](const Object& x) { return x; }, [](const Morphism& f) { return f; }, true, std::nullopt};
}

Endofunctor constant_functor(const Object& value) {
  return {"Const(" + value.str() + ")", value.shape(), [value](const Object&) { return value; },
          [value](const Morphism&) { return Morphism::identity(value); }, true, std::nullopt};
}

Endofunctor coproduct_with(const Object& e) {
  return {"Id+" + e.str(), e.shape(), [e](const Object& x) { return coproduct({x, e}).object; },
          [e](const Morphism& f) { return coproduct_map({f, Morphism::identity(e)}); }, true, std::nullopt};
}

namespace {

Object nonempty_subsets(const Object& x) {
  if (x.variant() != Variant::FinSet) throw Error(ErrorKind::UnsupportedVariant, "powerset acts on finite sets");
  const std::size_t n = x.size();
  if (n >= 20 || (std::size_t{1} << n) - 1 > kAtomCeiling) {
    throw Error(ErrorKind::CeilingExceeded, "powerset of " + std::to_string(n) + " atoms");
  }
  std::vector<Atom> subsets;
  for (std::size_t mask = 1; mask < (std::size_t{1} << n); ++mask) {
    std::vector<Atom> members;
    for (std::size_t i = 0; i < n; ++i) {
      if (mask & (std::size_t{1} << i)) members.push_back(x.carrier(0)[i]);
    }
    subsets.push_back(Atom::set(std::move(members)));
  }
  return Object::set(std::move(subsets));
}

}  // namespace

Endofunctor nonempty_powerset_functor() {
  Endofunctor p;
  p.name = "P+";
  p.shape = Shape::set();
  p.on_obj = nonempty_subsets;
  p.on_mor = [](const Morphism& f) {
    return Morphism::from_fn(nonempty_subsets(f.dom()), nonempty_subsets(f.cod()), [&](std::size_t, const Atom& s) {
      std::vector<Atom> image;
      for (const auto& m : s.children()) image.push_back(f(0, m));
      return Atom::set(std::move(image));
    });
  };
  return p;
}

Endofunctor compose(const Endofunctor& g, const Endofunctor& f) {
  Endofunctor out;
  out.name = g.name + "." + f.name;
  out.shape = f.shape;
  out.on_obj = [g, f](const Object& x) { return g(f(x)); };
  out.on_mor = [g, f](const Morphism& m) { return g(f(m)); };
  out.preserves_monos_claimed = g.preserves_monos_claimed && f.preserves_monos_claimed;
  out.finitary_budget = merge_truncation(g.finitary_budget, f.finitary_budget);
  return out;
}

namespace {

void require_budget(std::size_t budget) {
  if (budget == 0) throw Error(ErrorKind::InvalidArgument, "budget must be at least 1");
}

void check_link(const Morphism& link, std::size_t k, const std::string& functor) {
  if (!link.is_mono()) {
    throw Error(ErrorKind::MonoViolation,
                "link " + std::to_string(k) + " of the chain of " + functor + " is not injective");
  }
}

ChainStatus exhausted(const std::vector<Object>& stages, std::string reason) {
  ChainStatus st;
  st.kind = ChainStatus::Kind::BudgetExhausted;
  for (const auto& s : stages) st.growth.push_back(s.size());
  st.reason = std::move(reason);
  return st;
}

ChainStatus finish(const ChainRun& run, const ShapePtr& shape) {
  auto colim = chain_colimit(run.links, run.links.size(), shape);
  colim.status.growth.clear();
  for (const auto& s : run.stages) colim.status.growth.push_back(s.size());
  return colim.status;
}

}  // namespace

FreeAlgebraChain free_algebra_chain(const Endofunctor& h, const Object& x, std::size_t budget) {
  require_budget(budget);
  if (!h.preserves_monos_claimed) {
    throw Error(ErrorKind::MonoViolation, h.name + " does not claim to preserve monomorphisms");
  }
  FreeAlgebraChain out;
  out.stages.push_back(x);
  std::optional<Coproduct> last;
  try {
    for (std::size_t i = 0; i < budget; ++i) {
      const Object& w = out.stages.back();
      Coproduct next = coproduct(x.shape(), {x, h(w)});
      Morphism link = i == 0 ? next.injections[0].mor
                             : coproduct_map({Morphism::identity(x), h(out.links.back().mor)});
      check_link(link, i, h.name);
      out.stages.push_back(next.object);
      out.links.push_back(InjectionWitness::of(link));
      const bool too_big = next.object.size() > kAtomCeiling;
      last = std::move(next);
      if (link.is_epi() || too_big) break;
    }
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::CeilingExceeded) throw;
    out.status = exhausted(out.stages, e.what());
    return out;
  }
  out.status = finish(out, x.shape());
  if (out.status.converged()) {
    const std::size_t k = out.status.level;
    const Morphism inv = inverse(out.links[k].mor);
    out.universal = compose(inv, last->injections[0].mor);
    out.algebra = HAlgebra{out.stages[k], compose(inv, last->injections[1].mor)};
  }
  return out;
}

ChainRun iterate_chain(const Endofunctor& h, const Object& seed, const Morphism& first, std::size_t budget) {
  require_budget(budget);
  ChainRun out;
  out.stages.push_back(seed);
  try {
    for (std::size_t i = 0; i < budget; ++i) {
      Morphism link = i == 0 ? first : h(out.links.back().mor);
      check_link(link, i, h.name);
      out.stages.push_back(link.cod());
      out.links.push_back(InjectionWitness::of(link));
      if (link.is_epi() || link.cod().size() > kAtomCeiling) break;
    }
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::CeilingExceeded) throw;
    out.status = exhausted(out.stages, e.what());
    return out;
  }
  out.status = finish(out, seed.shape());
  return out;
}

InitialAlgebraResult initial_algebra(const Endofunctor& h, std::size_t budget) {
  const Object zero = Object::initial(h.shape);
  auto run = iterate_chain(h, zero, Morphism::from_initial(h(zero)), budget);
  if (!run.status.converged()) {
    throw Error(ErrorKind::BudgetExhausted, "no initial algebra of " + h.name + " within budget: " + run.status.str());
  }
  const std::size_t k = run.status.level;
  const Morphism& link = run.links[k].mor;
  InitialAlgebraResult out{run.stages[k], inverse(link), link, k, run.status};
  if (!compose(out.structure, out.structure_inverse).is_identity_on_atoms() ||
      !compose(out.structure_inverse, out.structure).is_identity_on_atoms()) {
    throw Error(ErrorKind::InvalidArgument, "structure of " + h.name + " failed to invert");
  }
  return out;
}

PrefixpointResult is_prefixpoint(const Endofunctor& h, const Object& z) {
  PrefixpointResult out;
  Object hz;
  try {
    hz = h(z);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::CeilingExceeded) throw;
    out.reason = e.what();
    return out;
  }
  for (std::size_t s = 0; s < z.sort_count(); ++s) {
    if (hz.size(s) > z.size(s)) {
      out.reason = "sort " + z.shape()->sorts[s] + ": " + std::to_string(hz.size(s)) + " > " + std::to_string(z.size(s));
      return out;
    }
  }
  out.witness = find_mono(hz, z);
  out.holds = out.witness.has_value();
  if (!out.holds) out.reason = "no injective morphism H(Z) -> Z";
  return out;
}

LawReport functor_law_check(const Endofunctor& h, const std::vector<Object>& samples, std::size_t hom_limit) {
  LawReport report;
  report.subject = "functor " + h.name;
  std::vector<Object> images;
  std::vector<bool> usable;
  for (const auto& a : samples) {
    try {
      images.push_back(h(a));
      usable.push_back(true);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::CeilingExceeded) throw;
      images.emplace_back();
      usable.push_back(false);
      report.note("skipped " + a.str() + ": " + e.what());
    }
  }
  const std::size_t n = samples.size();
  // hom[a][b] holds (f, H f) pairs.
  std::vector<std::vector<std::vector<std::pair<Morphism, std::optional<Morphism>>>>> hom(
      n, std::vector<std::vector<std::pair<Morphism, std::optional<Morphism>>>>(n));
  for (std::size_t a = 0; a < n; ++a) {
    if (!usable[a]) continue;
    const auto id = h(Morphism::identity(samples[a]));
    report.expect(id == Morphism::identity(images[a]), "identity", samples[a].str(), "H(id) = " + id.str());
    for (std::size_t b = 0; b < n; ++b) {
      if (!usable[b]) continue;
      for (auto& f : all_morphisms(samples[a], samples[b], hom_limit)) {
        std::optional<Morphism> hf;
        try {
          hf = h(f);
        } catch (const Error& e) {
          report.fail("well-formed", f.str(), e.what());
        }
        if (hf) {
          report.expect(hf->dom() == images[a] && hf->cod() == images[b], "typing", f.str(),
                        "H(f) has the wrong domain or codomain");
          if (h.preserves_monos_claimed && f.is_mono()) {
            report.expect(hf->is_mono(), "mono preservation", f.str(), "H(f) = " + hf->str());
          }
        }
        hom[a][b].emplace_back(std::move(f), std::move(hf));
      }
    }
  }
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      for (std::size_t c = 0; c < n; ++c) {
        for (const auto& [f, hf] : hom[a][b]) {
          if (!hf) continue;
          for (const auto& [g, hg] : hom[b][c]) {
            if (!hg) continue;
            const auto lhs = h(compose(g, f));
            const auto rhs = compose(*hg, *hf);
            report.expect(lhs == rhs, "composition", g.str() + " . " + f.str(),
                          "H(g.f) = " + lhs.str() + " but H(g).H(f) = " + rhs.str());
          }
        }
      }
    }
  }
  return report;
}

}  // namespace moncol
