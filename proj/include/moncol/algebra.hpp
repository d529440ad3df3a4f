#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "moncol/monad.hpp"

namespace moncol {

/// Smallest subobject of `x` containing the atoms.
Object subobject(const Object& x, const std::vector<SortedAtom>& atoms);

/// Unknown morphism h: dom -> cod, filled in by constraint propagation and
/// branching. Structure arrows of the base category are enforced.
class MapSolver {
 public:
  /// Right-hand side of h(lhs) = rhs: another unknown or a fixed value.
  struct Target {
    bool is_var = false;
    std::size_t index = 0;

    static Target var(std::size_t v) { return {true, v}; }
    static Target value(std::size_t c) { return {false, c}; }
  };
  /// Evaluated once every scope unknown has a value; nullopt imposes nothing.
  using Rule = std::function<std::optional<Target>(const std::vector<std::size_t>& scope_values)>;

  MapSolver(Object dom, Object cod);

  const Object& dom() const { return dom_; }
  const Object& cod() const { return cod_; }
  std::size_t var(std::size_t sort, std::size_t i) const { return offset_[sort] + i; }
  std::size_t var_count() const { return sort_of_.size(); }

  /// h(x) = c; an immediate contradiction makes the problem infeasible.
  void fix(std::size_t v, std::size_t value);
  void add(std::size_t lhs, std::vector<std::size_t> scope, Rule rule);

  /// Up to `limit` solutions, in lexicographic order of branching.
  std::vector<Morphism> solve(std::size_t limit = kAtomCeiling) const;
  std::size_t count(std::size_t limit) const { return solve(limit).size(); }

 private:
  struct Constraint {
    std::size_t lhs;
    std::vector<std::size_t> scope;
    Rule rule;
  };
  struct State;

  bool propagate(State& s, std::vector<std::size_t> queue) const;
  bool assign(State& s, std::size_t v, std::size_t value, std::vector<std::size_t>& queue) const;
  bool unify(State& s, std::size_t a, std::size_t b, std::vector<std::size_t>& queue) const;
  void search(State s, std::size_t limit, std::vector<Morphism>& out) const;

  Object dom_;
  Object cod_;
  std::vector<std::size_t> offset_;
  std::vector<std::size_t> sort_of_;
  std::vector<Constraint> constraints_;
  std::vector<std::vector<std::size_t>> watchers_;
  std::vector<std::pair<std::size_t, std::size_t>> fixed_;
};

/// h(s(u)) = b(T h (u)) for every u in T(dom h), with s: T dom -> dom and b: T cod -> cod.
void add_homomorphism_constraints(MapSolver& solver, const Monad& t, const Morphism& s, const Morphism& b);

/// a . eta = id and a . mu = a . T a, exactly on the finite carrier.
LawReport em_law_check(const Monad& t, const Morphism& a);
/// Every Eilenberg-Moore structure T B -> B, up to `limit`.
std::vector<Morphism> em_algebras(const Monad& t, const Object& b, std::size_t limit = kAtomCeiling);

/// Connecting morphism between two nodes of a diagram of monads.
struct DiagramArrow {
  std::size_t from;
  std::size_t to;
  MonadMorphism mor;
};

/// One carrier with a structure for every monad of a diagram.
struct MultiAlgebra {
  Object carrier;
  std::vector<Morphism> structures;
};

/// Each structure is an Eilenberg-Moore algebra and a_from = a_to . theta for every arrow.
LawReport multi_algebra_check(const std::vector<Monad>& ts, const std::vector<DiagramArrow>& arrows,
                              const MultiAlgebra& m);
std::vector<MultiAlgebra> multi_algebras(const std::vector<Monad>& ts, const std::vector<DiagramArrow>& arrows,
                                         const Object& b, std::size_t limit = kAtomCeiling);

/// Homomorphisms h: from -> to of multi-algebras with h . unit = f.
std::vector<Morphism> mediating_maps(const std::vector<Monad>& ts, const MultiAlgebra& from, const Morphism& unit,
                                     const MultiAlgebra& to, const Morphism& f, std::size_t limit = 2);

/// Candidate map built by a construction, checked against the enumeration.
using Witness = std::function<Morphism(const MultiAlgebra& target, const Morphism& f)>;

/// Free multi-algebra property of (candidate, unit) over A: for every target
/// on carriers of size <= bound and every f: A -> B there is exactly one
/// mediating homomorphism.
LawReport check_free_multi_algebra(const std::vector<Monad>& ts, const std::vector<DiagramArrow>& arrows,
                                   const MultiAlgebra& candidate, const Morphism& unit, std::size_t bound,
                                   const Witness& witness = {});

}  // namespace moncol
