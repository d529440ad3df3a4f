#include "moncol/colimit.hpp"

#include <map>

namespace moncol {

namespace {

/// Identity on atoms from a quotient (named by least atoms) back into T A.
Morphism section_of(const Object& q, const Object& ta) {
  Morphism::Table table(q.sort_count());
  for (std::size_t s = 0; s < q.sort_count(); ++s) {
    for (const auto& x : q.carrier(s)) table[s].push_back(*ta.index_of(s, x));
  }
  return unchecked_morphism(q, ta, std::move(table));
}

}  // namespace

QuotientMonadImpl::QuotientMonadImpl(ReflectionSpec spec, std::string name)
    : spec_(std::move(spec)), name_(std::move(name)) {
  if (!spec_.base) throw Error(ErrorKind::InvalidArgument, "quotient of a missing monad");
  if (name_.empty()) name_ = spec_.base.name() + "/~";
}

std::shared_ptr<const Reflection> QuotientMonadImpl::reflect(const Object& a) const {
  return cache_.get(a, [&] {
    const Monad& t = spec_.base;
    auto r = std::make_shared<Reflection>();
    r->ta = t.apply(a);
    const Object& ta = r->ta;
    Partition part(ta);
    if (!ta.empty()) {
      const Object tta = t.apply(ta);
      const Morphism mu = t.mult(a);
      auto mu_index = [&](std::size_t s, const Atom& u) { return mu.at(s, *tta.index_of(s, u)); };

      for (const auto& pair : spec_.pairs) {
        const Object sta = pair.p.source.apply(ta);
        for (std::size_t s = 0; s < sta.sort_count(); ++s) {
          for (const auto& y : sta.carrier(s)) {
            r->seed_merges += part.merge(s, mu_index(s, pair.p.component(ta, s, y)),
                                         mu_index(s, pair.q.component(ta, s, y)));
          }
        }
      }
      for (const auto& e : spec_.kernels) {
        for (std::size_t s = 0; s < ta.sort_count(); ++s) {
          std::map<Atom, std::size_t> fibre;
          for (std::size_t i = 0; i < ta.size(s); ++i) {
            auto [it, fresh] = fibre.emplace(e.component(a, s, ta.carrier(s)[i]), i);
            if (!fresh) r->seed_merges += part.merge(s, it->second, i);
          }
        }
      }

      for (;;) {
        ++r->rounds;
        if (ta.truncation() && r->rounds > spec_.budget) {
          throw Error(ErrorKind::BudgetExhausted, name_ + ": closure on " + a.str() + " did not stabilize within " +
                                                      std::to_string(spec_.budget) + " rounds");
        }
        // Congruence: u, v with T pi(u) = T pi(v) force mu(u) ~ mu(v).
        Quotient q;
        std::map<std::pair<std::size_t, Atom>, std::size_t> image;
        for (;;) {
          q = quotient(ta, part);
          image.clear();
          bool merged = false;
          for (std::size_t s = 0; s < tta.sort_count(); ++s) {
            for (std::size_t k = 0; k < tta.size(s); ++k) {
              const Atom& u = tta.carrier(s)[k];
              auto [it, fresh] = image.emplace(std::make_pair(s, t.fmap(q.projection, s, u)), mu.at(s, k));
              if (!fresh) merged |= part.merge(s, it->second, mu.at(s, k));
            }
          }
          if (!merged) break;
        }
        const Object tq = t.apply(q.object);
        const Morphism section = section_of(q.object, ta);
        // Structure b: T Q -> Q of the quotient algebra, as indices of T A.
        auto b = [&](std::size_t s, const Atom& v) -> std::size_t {
          auto it = image.find({s, v});
          if (it != image.end()) return it->second;
          return mu_index(s, t.fmap(section, s, v));
        };
        bool merged = false;
        for (const auto& pair : spec_.pairs) {
          const Object sq = pair.p.source.apply(q.object);
          for (std::size_t s = 0; s < sq.sort_count(); ++s) {
            for (const auto& y : sq.carrier(s)) {
              merged |= part.merge(s, b(s, pair.p.component(q.object, s, y)), b(s, pair.q.component(q.object, s, y)));
            }
          }
        }
        for (const auto& e : spec_.kernels) {
          for (std::size_t s = 0; s < tq.sort_count(); ++s) {
            std::map<Atom, std::size_t> fibre;
            for (const auto& v : tq.carrier(s)) {
              auto [it, fresh] = fibre.emplace(e.component(q.object, s, v), b(s, v));
              if (!fresh) merged |= part.merge(s, it->second, b(s, v));
            }
          }
        }
        if (!merged) {
          r->quotient = std::move(q);
          break;
        }
      }
    } else {
      r->quotient = quotient(ta, part);
    }
    return std::shared_ptr<const Reflection>(std::move(r));
  });
}

Object QuotientMonadImpl::apply(const Object& a) const {
  const auto r = reflect(a);
  return r->quotient.object.with_truncation(r->ta.truncation());
}

Atom QuotientMonadImpl::project(const Object& a, std::size_t sort, const Atom& t) const {
  return reflect(a)->quotient.projection(sort, t);
}

Atom QuotientMonadImpl::fmap(const Morphism& f, std::size_t sort, const Atom& t) const {
  return project(f.cod(), sort, spec_.base.fmap(f, sort, t));
}

Atom QuotientMonadImpl::unit(const Object& a, std::size_t sort, const Atom& x) const {
  return project(a, sort, spec_.base.unit(a, sort, x));
}

Atom QuotientMonadImpl::join(const Object& a, std::size_t sort, const Atom& tt) const {
  const auto r = reflect(a);
  const Morphism section = section_of(r->quotient.object, r->ta);
  return r->quotient.projection(sort, spec_.base.join(a, sort, spec_.base.fmap(section, sort, tt)));
}

std::optional<std::vector<SortedAtom>> QuotientMonadImpl::support(std::size_t sort, const Atom& t) const {
  return spec_.base.support(sort, t);
}

Monad quotient_monad(ReflectionSpec spec, const std::string& name) {
  return Monad(std::make_shared<QuotientMonadImpl>(std::move(spec), name));
}

const QuotientMonadImpl* as_quotient(const Monad& m) {
  return m ? dynamic_cast<const QuotientMonadImpl*>(&m.impl()) : nullptr;
}

// ---------------------------------------------------------------- colimits

ColimitResult colimit_by_reflection(ReflectionSpec spec, DiagramOfMonads diagram, const std::vector<LegBuilder>& legs,
                                    const std::vector<Object>& samples, const std::string& name) {
  if (legs.size() != diagram.nodes.size()) throw Error(ErrorKind::InvalidArgument, "one leg per node expected");
  ColimitResult out;
  const Monad base = spec.base;
  out.monad = quotient_monad(std::move(spec), name);
  const QuotientMonadImpl* r = as_quotient(out.monad);
  auto keep = out.monad.impl_ptr();
  const MonadMorphism projection{"pi", base, out.monad, [keep, r](const Object& a, std::size_t s, const Atom& t) {
                                   return r->project(a, s, t);
                                 }};
  for (const auto& leg : legs) out.legs.push_back(leg(projection));
  out.diagram = std::move(diagram);

  LawReport& report = out.report;
  report.subject = out.monad.name();
  report.merge(monad_law_check(out.monad, samples));
  report.merge(morphism_law_check(projection, samples));
  for (const auto& leg : out.legs) report.merge(morphism_law_check(leg, samples));
  for (const auto& a : samples) {
    for (const auto& arrow : out.diagram.arrows) {
      const Morphism via = compose(out.legs[arrow.to].at(a), arrow.mor.at(a));
      report.expect(via == out.legs[arrow.from].at(a), "cocone commutes along " + arrow.mor.name, a.str());
    }
    const auto refl = r->reflect(a);
    report.expect(refl->rounds <= std::max<std::size_t>(refl->ta.size(), 1), "closure rounds <= |T A|", a.str(),
                  std::to_string(refl->rounds) + " rounds");
    report.note(a.str() + ": |T A| = " + std::to_string(refl->ta.size()) + ", |R A| = " +
                std::to_string(refl->quotient.object.size()) + ", rounds " + std::to_string(refl->rounds));
    if (refl->ta.truncation()) report.note(a.str() + ": values truncated at depth " + std::to_string(*refl->ta.truncation()));
  }
  return out;
}

ColimitResult coequalize_monads(const MonadMorphism& p, const MonadMorphism& q, const std::vector<Object>& samples,
                                std::size_t budget) {
  ReflectionSpec spec{p.target, {{p, q}}, {}, budget};
  DiagramOfMonads d{{p.source, p.target}, {{0, 1, p}, {0, 1, q}}};
  const std::vector<LegBuilder> legs{[p](const MonadMorphism& pi) { return compose(pi, p); },
                                     [](const MonadMorphism& pi) { return pi; }};
  auto out = colimit_by_reflection(std::move(spec), std::move(d), legs, samples,
                                   "Coeq(" + p.name + "," + q.name + ")");
  for (const auto& a : samples) {
    const Morphism pa = compose(out.legs[1].at(a), p.at(a));
    const Morphism qa = compose(out.legs[1].at(a), q.at(a));
    out.report.expect(pa == qa, "pi . p = pi . q", a.str());
  }
  return out;
}

ColimitResult cointersection(const std::vector<MonadMorphism>& es, const std::vector<Object>& samples,
                             std::size_t budget) {
  if (es.empty()) throw Error(ErrorKind::InvalidArgument, "cointersection of no morphisms");
  const Monad t = es.front().source;
  for (const auto& e : es) {
    if (e.source.impl_ptr() != t.impl_ptr()) throw Error(ErrorKind::InvalidArgument, "morphisms with different sources");
    for (const auto& a : samples) {
      if (!e.at(a).is_epi()) {
        throw Error(ErrorKind::InvalidArgument, e.name + " is not surjective at " + a.str());
      }
    }
  }
  ReflectionSpec spec{t, {}, es, budget};
  DiagramOfMonads d;
  d.nodes.push_back(t);
  std::vector<LegBuilder> legs{[](const MonadMorphism& pi) { return pi; }};
  for (std::size_t i = 0; i < es.size(); ++i) {
    d.nodes.push_back(es[i].target);
    d.arrows.push_back({0, i + 1, es[i]});
    const MonadMorphism e = es[i];
    legs.push_back([e, t](const MonadMorphism& pi) {
      auto pc = pi.component;
      return MonadMorphism{"inj(" + e.name + ")", e.target, pi.target,
                           [e, t, pc](const Object& a, std::size_t s, const Atom& y) {
                             const Object ta = t.apply(a);
                             for (const auto& x : ta.carrier(s)) {
                               if (e.component(a, s, x) == y) return pc(a, s, x);
                             }
                             throw Error(ErrorKind::InvalidArgument, y.str() + " has no preimage under " + e.name);
                           }};
    });
  }
  std::string name = "Coint(";
  for (std::size_t i = 0; i < es.size(); ++i) name += (i ? "," : "") + es[i].name;
  return colimit_by_reflection(std::move(spec), std::move(d), legs, samples, name + ")");
}

ColimitResult colimit_weakly_terminal(const DiagramOfMonads& d, std::size_t j, const std::vector<Object>& samples,
                                      std::size_t budget) {
  if (j >= d.nodes.size()) throw Error(ErrorKind::InvalidArgument, "node index out of range");
  constexpr std::size_t kPathsPerNode = 16;
  std::vector<std::vector<MonadMorphism>> paths(d.nodes.size());
  paths[j].push_back(identity_morphism(d.nodes[j]));
  std::vector<std::vector<MonadMorphism>> frontier = paths;
  for (std::size_t len = 1; len <= d.nodes.size(); ++len) {
    std::vector<std::vector<MonadMorphism>> next(d.nodes.size());
    for (const auto& arrow : d.arrows) {
      for (const auto& p : frontier[arrow.to]) {
        if (paths[arrow.from].size() >= kPathsPerNode) break;
        MonadMorphism c = compose(p, arrow.mor);
        paths[arrow.from].push_back(c);
        next[arrow.from].push_back(std::move(c));
      }
    }
    frontier = std::move(next);
  }
  ReflectionSpec spec{d.nodes[j], {}, {}, budget};
  std::vector<LegBuilder> legs;
  for (std::size_t k = 0; k < d.nodes.size(); ++k) {
    if (paths[k].empty()) {
      throw Error(ErrorKind::NotWeaklyTerminal, "node " + std::to_string(k) + " has no arrow into node " +
                                                    std::to_string(j));
    }
    for (std::size_t m = 1; m < paths[k].size(); ++m) spec.pairs.push_back({paths[k][0], paths[k][m]});
    const MonadMorphism first = paths[k][0];
    legs.push_back([first](const MonadMorphism& pi) { return compose(pi, first); });
  }
  return colimit_by_reflection(std::move(spec), d, legs, samples, "Colim@" + d.nodes[j].name());
}

MultiAlgebra colimit_candidate(const ColimitResult& c, const Object& a) {
  MultiAlgebra m;
  m.carrier = c.monad.apply(a);
  const Object rra = c.monad.apply(m.carrier);
  const Morphism mu = c.monad.mult(a);
  for (std::size_t k = 0; k < c.diagram.nodes.size(); ++k) {
    const Morphism leg = c.legs[k].at(m.carrier, c.diagram.nodes[k].apply(m.carrier), rra);
    m.structures.push_back(compose(mu, leg));
  }
  return m;
}

LawReport check_colimit_universal(const ColimitResult& c, const std::vector<Object>& samples, std::size_t bound) {
  LawReport report;
  report.subject = "universal property of " + c.monad.name();
  for (const auto& a : samples) {
    report.merge(check_free_multi_algebra(c.diagram.nodes, c.diagram.arrows, colimit_candidate(c, a), c.monad.unit(a),
                                          bound));
  }
  return report;
}

MultiAlgebra with_junk_atom(const std::vector<Monad>& ts, const MultiAlgebra& m, const Atom& junk) {
  if (m.carrier.empty()) throw Error(ErrorKind::InvalidArgument, "junk needs a nonempty carrier");
  std::vector<std::vector<Atom>> carriers;
  for (std::size_t s = 0; s < m.carrier.sort_count(); ++s) {
    carriers.emplace_back(m.carrier.carrier(s).begin(), m.carrier.carrier(s).end());
  }
  std::size_t sort = 0;
  while (m.carrier.size(sort) == 0) ++sort;
  carriers[sort].push_back(junk);
  std::vector<std::vector<std::pair<Atom, Atom>>> arrows(m.carrier.shape()->arrows.size());
  for (std::size_t k = 0; k < arrows.size(); ++k) {
    const auto& arrow = m.carrier.shape()->arrows[k];
    for (std::size_t i = 0; i < m.carrier.size(arrow.from); ++i) {
      arrows[k].emplace_back(m.carrier.carrier(arrow.from)[i], m.carrier.arrow_apply(k, i));
    }
    if (arrow.from == sort) arrows[k].emplace_back(junk, m.carrier.carrier(arrow.to).front());
  }
  MultiAlgebra out;
  out.carrier = Object::make(m.carrier.shape(), std::move(carriers), arrows);
  const Atom fallback = m.carrier.carrier(sort).front();
  const Morphism retract = Morphism::from_fn(out.carrier, m.carrier, [&](std::size_t s, const Atom& x) {
    return x == junk && s == sort ? fallback : x;
  });
  for (std::size_t i = 0; i < ts.size(); ++i) {
    const Object tj = ts[i].apply(out.carrier);
    const Atom eta_junk = ts[i].unit(out.carrier, sort, junk);
    out.structures.push_back(Morphism::from_fn(tj, out.carrier, [&](std::size_t s, const Atom& u) {
      if (s == sort && u == eta_junk) return junk;
      return m.structures[i](s, ts[i].fmap(retract, s, u));
    }));
  }
  return out;
}

}  // namespace moncol
