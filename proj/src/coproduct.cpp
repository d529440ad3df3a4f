#include "moncol/coproduct.hpp"

#include <algorithm>
#include <set>
#include <tuple>
#include <unordered_map>

namespace moncol {

Object tagged_sum(const ShapePtr& shape, const std::vector<std::pair<std::size_t, Object>>& parts) {
  std::vector<std::vector<Atom>> carriers(shape->sorts.size());
  std::vector<std::vector<std::pair<Atom, Atom>>> arrows(shape->arrows.size());
  std::optional<std::size_t> trunc;
  std::set<std::size_t> tags;
  for (const auto& [tag, x] : parts) {
    if (!tags.insert(tag).second) throw Error(ErrorKind::InvalidArgument, "repeated tag in a tagged sum");
    if (!same_shape(*x.shape(), *shape)) throw Error(ErrorKind::MixedVariants, "tagged sum of objects of another shape");
    for (std::size_t s = 0; s < x.sort_count(); ++s) {
      for (const auto& a : x.carrier(s)) carriers[s].push_back(Atom::tag(tag, a));
    }
    for (std::size_t k = 0; k < arrows.size(); ++k) {
      const std::size_t from = shape->arrows[k].from;
      for (std::size_t i = 0; i < x.size(from); ++i) {
        arrows[k].emplace_back(Atom::tag(tag, x.carrier(from)[i]), Atom::tag(tag, x.arrow_apply(k, i)));
      }
    }
    trunc = merge_truncation(trunc, x.truncation());
  }
  return Object::make(shape, std::move(carriers), arrows, trunc);
}

Morphism tagged_sum_map(const ShapePtr& shape, const std::vector<std::pair<std::size_t, Morphism>>& parts) {
  std::vector<std::pair<std::size_t, Object>> doms, cods;
  std::map<std::size_t, const Morphism*> by_tag;
  for (const auto& [tag, f] : parts) {
    doms.emplace_back(tag, f.dom());
    cods.emplace_back(tag, f.cod());
    by_tag[tag] = &f;
  }
  return Morphism::from_fn(tagged_sum(shape, doms), tagged_sum(shape, cods), [&](std::size_t s, const Atom& x) {
    return Atom::tag(x.index(), (*by_tag.at(x.index()))(s, x.inner()));
  });
}

Morphism family_component(const Morphism& f, std::size_t i) {
  const Object dom = f.dom().component(i);
  const Object cod = f.cod().component(i);
  const std::size_t k = dom.sort_count();
  Morphism::Table table(f.table().begin() + static_cast<std::ptrdiff_t>(i * k),
                        f.table().begin() + static_cast<std::ptrdiff_t>((i + 1) * k));
  return unchecked_morphism(dom, cod, std::move(table));
}

Morphism family_morphism(const ShapePtr& base, const std::vector<Morphism>& components) {
  std::vector<Object> doms, cods;
  Morphism::Table table;
  for (const auto& c : components) {
    doms.push_back(c.dom());
    cods.push_back(c.cod());
    table.insert(table.end(), c.table().begin(), c.table().end());
  }
  return Morphism::make(Object::family(base, doms), Object::family(base, cods), std::move(table));
}

Object context(const Object& a, const std::vector<Object>& layers, std::size_t i) {
  std::vector<std::pair<std::size_t, Object>> parts{{0, a}};
  for (std::size_t j = 0; j < layers.size(); ++j) {
    if (j != i) parts.emplace_back(j + 1, layers[j]);
  }
  return tagged_sum(a.shape(), parts);
}

Endofunctor build_HA(const std::vector<SeparatedRep>& seps, const Object& a) {
  if (seps.empty()) throw Error(ErrorKind::InvalidArgument, "coproduct of no monads");
  const ShapePtr base = a.shape();
  for (const auto& s : seps) {
    if (!same_shape(*s.monad().shape(), *base)) throw Error(ErrorKind::MixedVariants, "monads over different bases");
  }
  const std::size_t n = seps.size();
  Endofunctor h;
  h.name = "H_A";
  h.shape = Shape::family(base, n);
  h.on_obj = [seps, a, base, n](const Object& x) {
    std::vector<Object> layers, out;
    for (std::size_t i = 0; i < n; ++i) layers.push_back(x.component(i));
    for (std::size_t i = 0; i < n; ++i) out.push_back(seps[i].complement(context(a, layers, i)));
    return Object::family(base, out);
  };
  h.on_mor = [seps, a, base, n](const Morphism& m) {
    std::vector<Morphism> comps, out;
    for (std::size_t i = 0; i < n; ++i) comps.push_back(family_component(m, i));
    for (std::size_t i = 0; i < n; ++i) {
      std::vector<std::pair<std::size_t, Morphism>> parts{{0, Morphism::identity(a)}};
      for (std::size_t j = 0; j < n; ++j) {
        if (j != i) parts.emplace_back(j + 1, comps[j]);
      }
      out.push_back(seps[i].complement_map(tagged_sum_map(base, parts)));
    }
    return family_morphism(base, out);
  };
  for (const auto& s : seps) h.finitary_budget = merge_truncation(h.finitary_budget, s.monad().truncation());
  return h;
}

ChainRun coproduct_chain(const std::vector<SeparatedRep>& seps, const Object& a, std::size_t budget) {
  const Endofunctor h = build_HA(seps, a);
  const Object zero = Object::initial(h.shape);
  return iterate_chain(h, zero, Morphism::from_initial(h(zero)), budget);
}

// ---------------------------------------------------------------- the coproduct monad

CoproductMonadImpl::CoproductMonadImpl(std::vector<SeparatedRep> seps, std::size_t budget, std::string name)
    : seps_(std::move(seps)), budget_(budget), name_(std::move(name)) {
  if (seps_.empty()) throw Error(ErrorKind::InvalidArgument, "coproduct of no monads");
}

std::shared_ptr<const LayeredCarrier> CoproductMonadImpl::layered(const Object& a) const {
  return cache_.get(a, [&] {
    auto l = std::make_shared<LayeredCarrier>();
    l->base = a;
    l->chain = coproduct_chain(seps_, a, budget_);
    if (!l->chain.status.converged()) {
      throw Error(ErrorKind::BudgetExhausted, name_ + " on " + a.str() + ": " + l->chain.status.str());
    }
    const std::size_t n = seps_.size();
    const Object& fam = l->chain.stages[l->chain.status.level];
    for (std::size_t i = 0; i < n; ++i) l->layers.push_back(fam.component(i));
    l->first_level.resize(n);
    for (std::size_t k = 1; k <= l->chain.status.level; ++k) {
      for (std::size_t i = 0; i < n; ++i) {
        const Object stage = l->chain.stages[k].component(i);
        for (std::size_t s = 0; s < stage.sort_count(); ++s) {
          for (const auto& x : stage.carrier(s)) l->first_level[i].emplace(x, k);
        }
      }
    }
    std::vector<std::pair<std::size_t, Object>> parts{{0, a}};
    for (std::size_t i = 0; i < n; ++i) parts.emplace_back(i + 1, l->layers[i]);
    l->assembled = tagged_sum(a.shape(), parts);
    for (std::size_t i = 0; i < n; ++i) {
      const Monad& t = seps_[i].monad();
      l->contexts.push_back(context(a, l->layers, i));
      l->free.push_back(t.apply(l->contexts[i]));
      const Object& y = l->contexts[i];
      l->phi_inverse.push_back(Morphism::from_fn(l->assembled, l->free[i], [&](std::size_t s, const Atom& r) {
        return r.index() == i + 1 ? r.inner() : t.unit(y, s, r);
      }));
    }
    return std::shared_ptr<const LayeredCarrier>(std::move(l));
  });
}

Object CoproductMonadImpl::apply(const Object& a) const { return layered(a)->assembled; }

Atom CoproductMonadImpl::unit(const Object&, std::size_t, const Atom& x) const { return Atom::tag(0, x); }

Atom CoproductMonadImpl::phi(const LayeredCarrier& l, std::size_t i, std::size_t sort, const Atom& w) const {
  const Monad& t = seps_[i].monad();
  if (!l.layers[i].contains(sort, w)) {
    // an element of the unit image
    for (const auto& y : l.contexts[i].carrier(sort)) {
      if (t.unit(l.contexts[i], sort, y) == w) return y;
    }
    throw Error(ErrorKind::InvalidArgument, w.str() + " is outside " + t.name() + " of the context");
  }
  return Atom::tag(i + 1, w);
}

Atom CoproductMonadImpl::structure(const Object& a, std::size_t i, std::size_t sort, const Atom& w) const {
  const auto l = layered(a);
  const Monad& t = seps_[i].monad();
  const Atom u = t.fmap(l->phi_inverse[i], sort, w);
  return phi(*l, i, sort, t.join(l->contexts[i], sort, u));
}

Atom extend_atom(const CoproductMonadImpl& r, const LayeredCarrier& l, const std::function<Atom(std::size_t, const Atom&)>& f,
                 const Object& target, const std::vector<ElementStructure>& structures, std::size_t sort,
                 const Atom& x, std::map<SortedAtom, Atom>& memo) {
  const SortedAtom key{sort, x};
  if (auto it = memo.find(key); it != memo.end()) return it->second;
  Atom out;
  if (x.kind() != Atom::Kind::Tag) throw Error(ErrorKind::InvalidArgument, x.str() + " is not an atom of a coproduct");
  if (x.index() == 0) {
    out = f(sort, x.inner());
  } else {
    const std::size_t i = x.index() - 1;
    const Monad& t = r.seps()[i].monad();
    const Object& y = l.contexts[i];
    std::vector<SortedAtom> below;
    if (auto supp = t.support(sort, x.inner())) {
      below = std::move(*supp);
    } else {
      // everything built before x
      const std::size_t level = l.first_level[i].at(x.inner());
      for (std::size_t s = 0; s < y.sort_count(); ++s) {
        for (const auto& c : y.carrier(s)) {
          if (c.index() == 0 || l.first_level[c.index() - 1].at(c.inner()) < level) below.emplace_back(s, c);
        }
      }
    }
    const Object sub = subobject(y, below);
    Morphism::Table table(sub.sort_count());
    for (std::size_t s = 0; s < sub.sort_count(); ++s) {
      for (const auto& c : sub.carrier(s)) {
        const Atom image = extend_atom(r, l, f, target, structures, s, c, memo);
        auto idx = target.index_of(s, image);
        if (!idx) throw Error(ErrorKind::InvalidArgument, image.str() + " is outside the target carrier");
        table[s].push_back(*idx);
      }
    }
    out = structures[i](sort, t.fmap(unchecked_morphism(sub, target, std::move(table)), sort, x.inner()));
  }
  memo.emplace(key, out);
  return out;
}

Atom CoproductMonadImpl::fmap(const Morphism& f, std::size_t sort, const Atom& t) const {
  const auto l = layered(f.dom());
  const Object b = f.cod();
  const Object rb = apply(b);
  std::vector<ElementStructure> structures;
  for (std::size_t i = 0; i < seps_.size(); ++i) {
    structures.push_back([this, b, i](std::size_t s, const Atom& w) { return structure(b, i, s, w); });
  }
  std::map<SortedAtom, Atom> memo;
  return extend_atom(*this, *l, [&](std::size_t s, const Atom& x) { return Atom::tag(0, f(s, x)); }, rb, structures,
                     sort, t, memo);
}

Atom CoproductMonadImpl::join(const Object& a, std::size_t sort, const Atom& tt) const {
  const Object ra = apply(a);
  const auto l = layered(ra);
  std::vector<ElementStructure> structures;
  for (std::size_t i = 0; i < seps_.size(); ++i) {
    structures.push_back([this, a, i](std::size_t s, const Atom& w) { return structure(a, i, s, w); });
  }
  std::map<SortedAtom, Atom> memo;
  return extend_atom(*this, *l, [](std::size_t, const Atom& x) { return x; }, ra, structures, sort, tt, memo);
}

std::optional<std::vector<SortedAtom>> CoproductMonadImpl::support(std::size_t sort, const Atom& t) const {
  if (t.kind() != Atom::Kind::Tag) return std::nullopt;
  if (t.index() == 0) return std::vector<SortedAtom>{{sort, t.inner()}};
  const auto inner = seps_[t.index() - 1].monad().support(sort, t.inner());
  if (!inner) return std::nullopt;
  std::set<SortedAtom> out;
  for (const auto& [s, y] : *inner) {
    const auto below = support(s, y);
    if (!below) return std::nullopt;
    out.insert(below->begin(), below->end());
  }
  return std::vector<SortedAtom>(out.begin(), out.end());
}

std::optional<std::size_t> CoproductMonadImpl::truncation() const {
  std::optional<std::size_t> out;
  for (const auto& s : seps_) out = merge_truncation(out, s.monad().truncation());
  return out;
}

Monad coproduct_monad(const std::vector<Monad>& monads, const std::vector<Object>& samples, std::size_t budget,
                      const std::string& name) {
  std::vector<SeparatedRep> seps;
  std::string joined;
  for (const auto& m : monads) {
    try {
      seps.push_back(unit_complement(m, samples));
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::NonMonicUnit) throw;
      throw Error(ErrorKind::NotSeparated, m.name() + " is not separated: " + e.what());
    }
    joined += (joined.empty() ? "" : " + ") + m.name();
  }
  return Monad(std::make_shared<CoproductMonadImpl>(std::move(seps), budget, name.empty() ? joined : name));
}

const CoproductMonadImpl* as_coproduct(const Monad& m) {
  return m ? dynamic_cast<const CoproductMonadImpl*>(&m.impl()) : nullptr;
}

namespace {

const CoproductMonadImpl& require_coproduct(const Monad& r) {
  const auto* c = as_coproduct(r);
  if (!c) throw Error(ErrorKind::InvalidArgument, r.name() + " is not a coproduct monad");
  return *c;
}

std::vector<Monad> summands(const CoproductMonadImpl& c) {
  std::vector<Monad> out;
  for (const auto& s : c.seps()) out.push_back(s.monad());
  return out;
}

Morphism coproduct_unit(const Object& a, const Object& ra) {
  return Morphism::from_fn(a, ra, [](std::size_t, const Atom& x) { return Atom::tag(0, x); });
}

}  // namespace

Morphism extend_to_hom(const Monad& r, const Morphism& f, const MultiAlgebra& target) {
  const auto& c = require_coproduct(r);
  if (target.structures.size() != c.seps().size()) {
    throw Error(ErrorKind::InvalidArgument, "target needs one structure per summand");
  }
  const auto l = c.layered(f.dom());
  std::vector<ElementStructure> structures;
  for (const auto& b : target.structures) {
    structures.push_back([&b](std::size_t s, const Atom& w) { return b(s, w); });
  }
  std::map<SortedAtom, Atom> memo;
  return Morphism::from_fn(l->assembled, target.carrier, [&](std::size_t s, const Atom& x) {
    return extend_atom(c, *l, [&](std::size_t s0, const Atom& a) { return f(s0, a); }, target.carrier, structures, s,
                       x, memo);
  });
}

MonadMorphism coproduct_injection(const Monad& r, std::size_t i) {
  const auto& c = require_coproduct(r);
  const Monad s = c.seps().at(i).monad();
  return {"inj" + std::to_string(i) + "(" + s.name() + ")", s, r,
          [r, s, i](const Object& a, std::size_t sort, const Atom& t) {
            const auto& c = require_coproduct(r);
            return c.structure(a, i, sort, s.fmap(coproduct_unit(a, c.apply(a)), sort, t));
          }};
}

MultiAlgebra coproduct_candidate(const Monad& r, const Object& a) {
  const auto& c = require_coproduct(r);
  MultiAlgebra out{c.apply(a), {}};
  for (std::size_t i = 0; i < c.seps().size(); ++i) {
    const Monad& s = c.seps()[i].monad();
    out.structures.push_back(Morphism::from_fn(s.apply(out.carrier), out.carrier, [&](std::size_t sort, const Atom& w) {
      return c.structure(a, i, sort, w);
    }));
  }
  return out;
}

LawReport decomposition_check(const Monad& r, const std::vector<Object>& samples) {
  const auto& c = require_coproduct(r);
  LawReport report;
  report.subject = "layers of " + r.name();
  for (const auto& a : samples) {
    const auto l = c.layered(a);
    const std::string where = a.str();
    std::size_t total = a.size();
    for (const auto& x : l->layers) total += x.size();
    report.expect(l->assembled.size() == total, "R A = A + layers, disjoint", where);
    const auto& run = l->chain;
    for (std::size_t k = 0; k < run.links.size(); ++k) {
      report.expect(run.links[k].mor.is_mono(), "chain link injective", where + " link " + std::to_string(k));
      report.expect(run.links[k].mor.is_identity_on_atoms(), "chain link is an inclusion",
                    where + " link " + std::to_string(k));
    }
    const std::size_t level = run.status.level;
    if (level + 1 < run.stages.size()) {
      report.expect(run.stages[level + 1] == run.stages[level], "stage after convergence is unchanged", where);
    }
    for (std::size_t i = 0; i < c.seps().size(); ++i) {
      const std::string at = where + " summand " + std::to_string(i);
      const Morphism& inv = l->phi_inverse[i];
      if (!report.expect(inv.is_iso(), "R A = Y_i + X_i is S_i Y_i", at, inv.str())) continue;
      const Morphism phi = Morphism::from_fn(l->free[i], l->assembled, [&](std::size_t s, const Atom& w) {
        return c.phi(*l, i, s, w);
      });
      report.expect(compose(phi, inv).is_identity_on_atoms(), "phi . phi^-1 = id", at);
      report.expect(compose(inv, phi).is_identity_on_atoms(), "phi^-1 . phi = id", at);
    }
  }
  return report;
}

LawReport verify_universal(const Monad& r, const std::vector<Object>& samples, std::size_t bound) {
  const auto& c = require_coproduct(r);
  const std::vector<Monad> ts = summands(c);
  LawReport report;
  report.subject = "universal property of " + r.name();
  for (const auto& a : samples) {
    const MultiAlgebra candidate = coproduct_candidate(r, a);
    const Witness witness = [&r](const MultiAlgebra& target, const Morphism& f) { return extend_to_hom(r, f, target); };
    report.merge(check_free_multi_algebra(ts, {}, candidate, coproduct_unit(a, candidate.carrier), bound, witness));
  }
  return report;
}

namespace {

/// W -> complement of s on A + W, with W tagged `tag`.
Endofunctor over_a(const SeparatedRep& s, const Object& a, std::size_t tag, const std::string& name) {
  Endofunctor h;
  h.name = name;
  h.shape = a.shape();
  h.on_obj = [s, a, tag](const Object& w) { return s.complement(tagged_sum(a.shape(), {{0, a}, {tag, w}})); };
  h.on_mor = [s, a, tag](const Morphism& m) {
    return s.complement_map(tagged_sum_map(a.shape(), {{0, Morphism::identity(a)}, {tag, m}}));
  };
  return h;
}

const Object& stage(const ChainRun& run, std::size_t m) { return run.stages[std::min(m, run.stages.size() - 1)]; }

bool covers(const ChainRun& run, std::size_t m) { return m < run.stages.size() || run.status.converged(); }

}  // namespace

LawReport compact_pair_check(const SeparatedRep& s, const SeparatedRep& t, const Object& a, std::size_t budget) {
  LawReport report;
  report.subject = "compact pair " + s.monad().name() + ", " + t.monad().name();
  // layer 0 holds S-bar elements over A + Y (tag 2), layer 1 T-bar elements over A + X (tag 1)
  const Endofunctor f = over_a(s, a, 2, "F");
  const Endofunctor g = over_a(t, a, 1, "G");
  const Endofunctor fg = compose(f, g);
  const Endofunctor gf = compose(g, f);
  const Object zero = Object::initial(a.shape());
  const std::size_t half = budget / 2 + 1;
  const ChainRun fg_even = iterate_chain(fg, zero, Morphism::from_initial(fg(zero)), half);
  const ChainRun gf_even = iterate_chain(gf, zero, Morphism::from_initial(gf(zero)), half);
  const Object f0 = f(zero);
  const Object g0 = g(zero);
  const ChainRun fg_odd = iterate_chain(fg, f0, f(Morphism::from_initial(g(f0))), half);
  const ChainRun gf_odd = iterate_chain(gf, g0, g(Morphism::from_initial(f(g0))), half);
  const ChainRun h = coproduct_chain({s, t}, a, budget);
  report.note("H_A chain: " + h.status.str());
  report.note("FG chain: " + fg_even.status.str());
  report.note("GF chain: " + gf_even.status.str());
  for (std::size_t k = 0; k <= budget; ++k) {
    if (!covers(h, k)) break;
    const Object& hk = stage(h, k);
    const std::size_t m = k / 2;
    const ChainRun& xs = k % 2 ? fg_odd : fg_even;
    const ChainRun& ys = k % 2 ? gf_odd : gf_even;
    const std::string where = "stage " + std::to_string(k);
    if (covers(xs, m)) report.expect(hk.component(0) == stage(xs, m), "X_k agrees with FG", where);
    if (covers(ys, m)) report.expect(hk.component(1) == stage(ys, m), "Y_k agrees with GF", where);
  }
  if (h.status.converged()) {
    const Object& limit = stage(h, h.status.level);
    for (const auto& [side, comp, e] : {std::tuple{"mu FG", 0, fg}, std::tuple{"mu GF", 1, gf}}) {
      try {
        const auto init = initial_algebra(e, budget);
        report.expect(init.carrier == limit.component(static_cast<std::size_t>(comp)), std::string(side) + " is the limit component",
                      a.str());
      } catch (const Error& err) {
        if (err.kind() != ErrorKind::BudgetExhausted) throw;
        report.note(std::string(side) + ": " + err.what());
      }
    }
  }
  return report;
}

}  // namespace moncol
