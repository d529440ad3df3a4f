#include "moncol/algebra.hpp"

#include <map>

namespace moncol {

// ---------------------------------------------------------------- solver

struct MapSolver::State {
  std::vector<std::size_t> parent;
  std::vector<long> value;
  std::vector<std::vector<std::size_t>> members;
  std::vector<char> done;

  std::size_t find(std::size_t v) {
    while (parent[v] != v) {
      parent[v] = parent[parent[v]];
      v = parent[v];
    }
    return v;
  }
};

MapSolver::MapSolver(Object dom, Object cod) : dom_(std::move(dom)), cod_(std::move(cod)) {
  if (!same_shape(*dom_.shape(), *cod_.shape())) throw Error(ErrorKind::MixedVariants, "solver across shapes");
  for (std::size_t s = 0; s < dom_.sort_count(); ++s) {
    offset_.push_back(sort_of_.size());
    sort_of_.insert(sort_of_.end(), dom_.size(s), s);
  }
  watchers_.resize(sort_of_.size());
  const auto& arrows = dom_.shape()->arrows;
  for (std::size_t a = 0; a < arrows.size(); ++a) {
    for (std::size_t i = 0; i < dom_.size(arrows[a].from); ++i) {
      add(var(arrows[a].to, dom_.arrow_index(a, i)), {var(arrows[a].from, i)},
          [this, a](const std::vector<std::size_t>& v) { return Target::value(cod_.arrow_index(a, v[0])); });
    }
  }
}

void MapSolver::fix(std::size_t v, std::size_t value) { fixed_.emplace_back(v, value); }

void MapSolver::add(std::size_t lhs, std::vector<std::size_t> scope, Rule rule) {
  const std::size_t id = constraints_.size();
  for (auto v : scope) watchers_[v].push_back(id);
  constraints_.push_back({lhs, std::move(scope), std::move(rule)});
}

bool MapSolver::assign(State& s, std::size_t v, std::size_t value, std::vector<std::size_t>& queue) const {
  const std::size_t r = s.find(v);
  if (s.value[r] >= 0) return static_cast<std::size_t>(s.value[r]) == value;
  if (value >= cod_.size(sort_of_[v])) return false;
  s.value[r] = static_cast<long>(value);
  for (auto m : s.members[r]) queue.insert(queue.end(), watchers_[m].begin(), watchers_[m].end());
  return true;
}

bool MapSolver::unify(State& s, std::size_t a, std::size_t b, std::vector<std::size_t>& queue) const {
  std::size_t ra = s.find(a), rb = s.find(b);
  if (ra == rb) return true;
  if (s.value[ra] >= 0 && s.value[rb] >= 0) return s.value[ra] == s.value[rb];
  if (s.members[ra].size() < s.members[rb].size()) std::swap(ra, rb);
  if (s.value[ra] < 0 && s.value[rb] >= 0) {
    for (auto m : s.members[ra]) queue.insert(queue.end(), watchers_[m].begin(), watchers_[m].end());
    s.value[ra] = s.value[rb];
  } else if (s.value[ra] >= 0 && s.value[rb] < 0) {
    for (auto m : s.members[rb]) queue.insert(queue.end(), watchers_[m].begin(), watchers_[m].end());
  }
  s.parent[rb] = ra;
  s.members[ra].insert(s.members[ra].end(), s.members[rb].begin(), s.members[rb].end());
  s.members[rb].clear();
  return true;
}

bool MapSolver::propagate(State& s, std::vector<std::size_t> queue) const {
  std::vector<std::size_t> vals;
  while (!queue.empty()) {
    const std::size_t c = queue.back();
    queue.pop_back();
    if (s.done[c]) continue;
    const Constraint& k = constraints_[c];
    vals.clear();
    bool ready = true;
    for (auto v : k.scope) {
      const long x = s.value[s.find(v)];
      if (x < 0) {
        ready = false;
        break;
      }
      vals.push_back(static_cast<std::size_t>(x));
    }
    if (!ready) continue;
    s.done[c] = 1;
    const auto t = k.rule(vals);
    if (!t) continue;
    const bool ok = t->is_var ? unify(s, k.lhs, t->index, queue) : assign(s, k.lhs, t->index, queue);
    if (!ok) return false;
  }
  return true;
}

void MapSolver::search(State s, std::size_t limit, std::vector<Morphism>& out) const {
  std::size_t open = var_count();
  for (std::size_t v = 0; v < var_count(); ++v) {
    if (s.value[s.find(v)] < 0) {
      open = v;
      break;
    }
  }
  if (open == var_count()) {
    Morphism::Table table(dom_.sort_count());
    for (std::size_t v = 0; v < var_count(); ++v) {
      table[sort_of_[v]].push_back(static_cast<std::size_t>(s.value[s.find(v)]));
    }
    out.push_back(unchecked_morphism(dom_, cod_, std::move(table)));
    return;
  }
  for (std::size_t c = 0; c < cod_.size(sort_of_[open]) && out.size() < limit; ++c) {
    State next = s;
    std::vector<std::size_t> queue;
    if (assign(next, open, c, queue) && propagate(next, std::move(queue))) search(std::move(next), limit, out);
  }
}

std::vector<Morphism> MapSolver::solve(std::size_t limit) const {
  State s;
  const std::size_t n = var_count();
  s.parent.resize(n);
  s.value.assign(n, -1);
  s.members.resize(n);
  s.done.assign(constraints_.size(), 0);
  for (std::size_t v = 0; v < n; ++v) {
    s.parent[v] = v;
    s.members[v] = {v};
  }
  std::vector<std::size_t> queue(constraints_.size());
  for (std::size_t c = 0; c < constraints_.size(); ++c) queue[c] = constraints_.size() - 1 - c;
  for (auto [v, value] : fixed_) {
    if (!assign(s, v, value, queue)) return {};
  }
  std::vector<Morphism> out;
  if (limit == 0 || !propagate(s, std::move(queue))) return out;
  search(std::move(s), limit, out);
  return out;
}

// ---------------------------------------------------------------- lifted constraints

Object subobject(const Object& x, const std::vector<SortedAtom>& atoms) {
  std::vector<std::vector<char>> keep(x.sort_count());
  for (std::size_t s = 0; s < x.sort_count(); ++s) keep[s].assign(x.size(s), 0);
  std::vector<std::pair<std::size_t, std::size_t>> work;
  for (const auto& [s, a] : atoms) {
    auto i = x.index_of(s, a);
    if (!i) throw Error(ErrorKind::InvalidArgument, a.str() + " is not in " + x.str());
    work.emplace_back(s, *i);
  }
  const auto& arrows = x.shape()->arrows;
  while (!work.empty()) {
    auto [s, i] = work.back();
    work.pop_back();
    if (keep[s][i]) continue;
    keep[s][i] = 1;
    for (std::size_t a = 0; a < arrows.size(); ++a) {
      if (arrows[a].from == s) work.emplace_back(arrows[a].to, x.arrow_index(a, i));
    }
  }
  std::vector<std::vector<Atom>> carriers(x.sort_count());
  for (std::size_t s = 0; s < x.sort_count(); ++s) {
    for (std::size_t i = 0; i < x.size(s); ++i) {
      if (keep[s][i]) carriers[s].push_back(x.carrier(s)[i]);
    }
  }
  std::vector<std::vector<std::pair<Atom, Atom>>> pairs(arrows.size());
  for (std::size_t a = 0; a < arrows.size(); ++a) {
    for (std::size_t i = 0; i < x.size(arrows[a].from); ++i) {
      if (keep[arrows[a].from][i]) pairs[a].emplace_back(x.carrier(arrows[a].from)[i], x.arrow_apply(a, i));
    }
  }
  return Object::make(x.shape(), std::move(carriers), pairs);
}

namespace {

/// For every u in T(dom): h(lhs(u)) = finish(T h (u)).
void add_lifted(MapSolver& solver, const Monad& t, const Object& tdom,
                const std::function<std::size_t(std::size_t, std::size_t)>& lhs,
                const std::function<std::optional<MapSolver::Target>(std::size_t, const Atom&)>& finish) {
  const Object& dom = solver.dom();
  const Object& cod = solver.cod();
  std::map<std::vector<SortedAtom>, std::pair<Object, std::vector<std::size_t>>> subs;
  for (std::size_t sort = 0; sort < tdom.sort_count(); ++sort) {
    for (std::size_t idx = 0; idx < tdom.size(sort); ++idx) {
      const Atom& u = tdom.carrier(sort)[idx];
      auto supp = t.support(sort, u);
      std::vector<SortedAtom> key;
      if (supp) {
        key = std::move(*supp);
        std::sort(key.begin(), key.end());
        key.erase(std::unique(key.begin(), key.end()), key.end());
      } else {
        for (std::size_t s = 0; s < dom.sort_count(); ++s) {
          for (const auto& a : dom.carrier(s)) key.emplace_back(s, a);
        }
      }
      auto it = subs.find(key);
      if (it == subs.end()) {
        Object sub = subobject(dom, key);
        std::vector<std::size_t> scope;
        for (std::size_t s = 0; s < sub.sort_count(); ++s) {
          for (const auto& a : sub.carrier(s)) scope.push_back(solver.var(s, *dom.index_of(s, a)));
        }
        it = subs.emplace(key, std::make_pair(std::move(sub), std::move(scope))).first;
      }
      const Object sub = it->second.first;
      solver.add(lhs(sort, idx), it->second.second,
                 [t, sub, cod, sort, u, finish](const std::vector<std::size_t>& vals) -> std::optional<MapSolver::Target> {
                   Morphism::Table table(sub.sort_count());
                   std::size_t k = 0;
                   for (std::size_t s = 0; s < sub.sort_count(); ++s) {
                     for (std::size_t i = 0; i < sub.size(s); ++i) table[s].push_back(vals[k++]);
                   }
                   try {
                     return finish(sort, t.fmap(unchecked_morphism(sub, cod, std::move(table)), sort, u));
                   } catch (const Error& e) {
                     if (e.kind() == ErrorKind::DepthExceeded) return std::nullopt;
                     throw;
                   }
                 });
    }
  }
}

}  // namespace

void add_homomorphism_constraints(MapSolver& solver, const Monad& t, const Morphism& s, const Morphism& b) {
  add_lifted(
      solver, t, s.dom(), [&](std::size_t sort, std::size_t idx) { return solver.var(sort, s.at(sort, idx)); },
      [b](std::size_t sort, const Atom& r) -> std::optional<MapSolver::Target> {
        auto j = b.dom().index_of(sort, r);
        if (!j) return std::nullopt;
        return MapSolver::Target::value(b.at(sort, *j));
      });
}

// ---------------------------------------------------------------- algebras

LawReport em_law_check(const Monad& t, const Morphism& a) {
  LawReport report;
  report.subject = "algebra " + t.name() + " on " + a.cod().str();
  const Object& b = a.cod();
  const Object& tb = a.dom();
  for (std::size_t s = 0; s < b.sort_count(); ++s) {
    for (const auto& x : b.carrier(s)) {
      report.expect(a(s, t.unit(b, s, x)) == x, "a . eta = id", x.str());
    }
  }
  const Object ttb = t.apply(tb);
  for (std::size_t s = 0; s < ttb.sort_count(); ++s) {
    for (const auto& u : ttb.carrier(s)) {
      Atom lifted;
      try {
        lifted = t.fmap(a, s, u);
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::DepthExceeded) throw;
        continue;
      }
      const Atom lhs = a(s, t.join(b, s, u));
      const Atom rhs = a(s, lifted);
      report.expect(lhs == rhs, "a . mu = a . T a", u.str(), lhs.str() + " vs " + rhs.str());
    }
  }
  return report;
}

std::vector<Morphism> em_algebras(const Monad& t, const Object& b, std::size_t limit) {
  const Object tb = t.apply(b);
  MapSolver solver(tb, b);
  for (std::size_t s = 0; s < b.sort_count(); ++s) {
    for (std::size_t i = 0; i < b.size(s); ++i) {
      solver.fix(solver.var(s, *tb.index_of(s, t.unit(b, s, b.carrier(s)[i]))), i);
    }
  }
  const Object ttb = t.apply(tb);
  add_lifted(
      solver, t, ttb,
      [&](std::size_t sort, std::size_t idx) {
        return solver.var(sort, *tb.index_of(sort, t.join(b, sort, ttb.carrier(sort)[idx])));
      },
      [&solver, tb](std::size_t sort, const Atom& r) -> std::optional<MapSolver::Target> {
        auto j = tb.index_of(sort, r);
        if (!j) return std::nullopt;
        return MapSolver::Target::var(solver.var(sort, *j));
      });
  return solver.solve(limit);
}

LawReport multi_algebra_check(const std::vector<Monad>& ts, const std::vector<DiagramArrow>& arrows,
                              const MultiAlgebra& m) {
  LawReport report;
  report.subject = "multi-algebra on " + m.carrier.str();
  if (m.structures.size() != ts.size()) throw Error(ErrorKind::InvalidArgument, "one structure per monad expected");
  for (std::size_t i = 0; i < ts.size(); ++i) report.merge(em_law_check(ts[i], m.structures[i]));
  for (const auto& arrow : arrows) {
    const Morphism theta = arrow.mor.at(m.carrier, m.structures[arrow.from].dom(), m.structures[arrow.to].dom());
    report.expect(compose(m.structures[arrow.to], theta) == m.structures[arrow.from], "triangle along " + arrow.mor.name,
                  m.carrier.str());
  }
  return report;
}

std::vector<MultiAlgebra> multi_algebras(const std::vector<Monad>& ts, const std::vector<DiagramArrow>& arrows,
                                         const Object& b, std::size_t limit) {
  std::vector<std::vector<Morphism>> choices;
  for (const auto& t : ts) choices.push_back(em_algebras(t, b));
  std::vector<Morphism> thetas;
  for (const auto& arrow : arrows) thetas.push_back(arrow.mor.at(b, ts[arrow.from].apply(b), ts[arrow.to].apply(b)));
  std::vector<MultiAlgebra> out;
  MultiAlgebra current{b, {}};
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (out.size() >= limit) return;
    if (i == ts.size()) {
      out.push_back(current);
      return;
    }
    for (const auto& a : choices[i]) {
      current.structures.push_back(a);
      bool ok = true;
      for (std::size_t k = 0; k < arrows.size() && ok; ++k) {
        const auto& arrow = arrows[k];
        if (std::max(arrow.from, arrow.to) != i) continue;
        ok = compose(current.structures[arrow.to], thetas[k]) == current.structures[arrow.from];
      }
      if (ok) rec(i + 1);
      current.structures.pop_back();
    }
  };
  rec(0);
  return out;
}

std::vector<Morphism> mediating_maps(const std::vector<Monad>& ts, const MultiAlgebra& from, const Morphism& unit,
                                     const MultiAlgebra& to, const Morphism& f, std::size_t limit) {
  MapSolver solver(from.carrier, to.carrier);
  for (std::size_t s = 0; s < unit.dom().sort_count(); ++s) {
    for (std::size_t i = 0; i < unit.dom().size(s); ++i) solver.fix(solver.var(s, unit.at(s, i)), f.at(s, i));
  }
  for (std::size_t i = 0; i < ts.size(); ++i) add_homomorphism_constraints(solver, ts[i], from.structures[i], to.structures[i]);
  return solver.solve(limit);
}

LawReport check_free_multi_algebra(const std::vector<Monad>& ts, const std::vector<DiagramArrow>& arrows,
                                   const MultiAlgebra& candidate, const Morphism& unit, std::size_t bound,
                                   const Witness& witness) {
  LawReport report;
  const Object& a = unit.dom();
  report.subject = "free multi-algebra over " + a.str();
  report.merge(multi_algebra_check(ts, arrows, candidate));
  std::size_t targets = 0;
  for (const auto& b : sample_objects(a.shape(), bound)) {
    for (const auto& target : multi_algebras(ts, arrows, b)) {
      ++targets;
      for (const auto& f : all_morphisms(a, b)) {
        const auto sols = mediating_maps(ts, candidate, unit, target, f, 2);
        const std::string where = "B=" + b.str() + " f=" + f.str();
        report.expect(!sols.empty(), "mediating map exists", where);
        report.expect(sols.size() <= 1, "mediating map unique", where, "at least two homomorphisms extend f");
        if (witness && sols.size() == 1) {
          const Morphism w = witness(target, f);
          report.expect(w == sols.front(), "construction gives the mediating map", where, w.str());
        }
      }
    }
  }
  report.note(std::to_string(targets) + " targets on carriers of size <= " + std::to_string(bound));
  return report;
}

}  // namespace moncol
