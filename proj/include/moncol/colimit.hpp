#pragma once

#include <memory>
#include <string>
#include <vector>

#include "moncol/algebra.hpp"
#include "moncol/cache.hpp"

namespace moncol {

/// p, q: S -> T; algebras b of T must satisfy b . p_B = b . q_B.
struct ParallelPair {
  MonadMorphism p;
  MonadMorphism q;
};

/// Subcategory of T-algebras cut out by parallel pairs and by kernels of
/// morphisms e: T -> T' (b must be constant on the fibres of e_B).
struct ReflectionSpec {
  Monad base;
  std::vector<ParallelPair> pairs;
  std::vector<MonadMorphism> kernels;
  /// Round limit, enforced on truncation-marked values only.
  std::size_t budget = 64;
};

/// Free algebra on A in the subcategory: a quotient of T A.
struct Reflection {
  Object ta;
  Quotient quotient;
  /// Outer rounds of congruence closure followed by the condition test.
  std::size_t rounds = 0;
  std::size_t seed_merges = 0;
};

/// R A = T A / ~ with unit pi . eta and multiplication pi . mu . T s for the
/// least-atom section s.
class QuotientMonadImpl : public MonadImpl {
 public:
  QuotientMonadImpl(ReflectionSpec spec, std::string name);

  std::string name() const override { return name_; }
  ShapePtr shape() const override { return spec_.base.shape(); }
  Object apply(const Object& a) const override;
  Atom fmap(const Morphism& f, std::size_t sort, const Atom& t) const override;
  Atom unit(const Object& a, std::size_t sort, const Atom& x) const override;
  Atom join(const Object& a, std::size_t sort, const Atom& tt) const override;
  std::optional<std::vector<SortedAtom>> support(std::size_t sort, const Atom& t) const override;
  std::optional<std::size_t> truncation() const override { return spec_.base.truncation(); }
  bool preserves_monos_claimed() const override { return spec_.base.impl().preserves_monos_claimed(); }

  const ReflectionSpec& spec() const { return spec_; }
  std::shared_ptr<const Reflection> reflect(const Object& a) const;
  /// pi_A(t) for t in T A.
  Atom project(const Object& a, std::size_t sort, const Atom& t) const;

 private:
  ReflectionSpec spec_;
  std::string name_;
  ObjectCache<std::shared_ptr<const Reflection>> cache_;
};

Monad quotient_monad(ReflectionSpec spec, const std::string& name = {});
const QuotientMonadImpl* as_quotient(const Monad& m);

struct DiagramOfMonads {
  std::vector<Monad> nodes;
  std::vector<DiagramArrow> arrows;
};

struct ColimitResult {
  Monad monad;
  /// One leg per diagram node into the colimit.
  std::vector<MonadMorphism> legs;
  /// The diagram the legs are indexed by.
  DiagramOfMonads diagram;
  LawReport report;
};

/// Coequalizer of p, q: S -> T. The diagram has nodes (S, T).
ColimitResult coequalize_monads(const MonadMorphism& p, const MonadMorphism& q, const std::vector<Object>& samples,
                                std::size_t budget = 64);
/// Wide pushout of morphisms with common source and surjective components.
ColimitResult cointersection(const std::vector<MonadMorphism>& es, const std::vector<Object>& samples,
                             std::size_t budget = 64);
/// Colimit of a diagram in which every node has a path into node j; paths
/// of length up to the node count are used.
ColimitResult colimit_weakly_terminal(const DiagramOfMonads& d, std::size_t j, const std::vector<Object>& samples,
                                      std::size_t budget = 64);
/// Builds a leg of the colimit from the projection T -> R.
using LegBuilder = std::function<MonadMorphism(const MonadMorphism& projection)>;
/// Quotient of the base monad with the given legs, checked on samples.
ColimitResult colimit_by_reflection(ReflectionSpec spec, DiagramOfMonads diagram, const std::vector<LegBuilder>& legs,
                                    const std::vector<Object>& samples, const std::string& name);

/// (R A, mu^R . leg_k) as a multi-algebra over the diagram, with unit eta^R_A.
MultiAlgebra colimit_candidate(const ColimitResult& c, const Object& a);
/// Free multi-algebra property of every R A over the samples.
LawReport check_colimit_universal(const ColimitResult& c, const std::vector<Object>& samples, std::size_t bound);

/// The candidate with one extra atom fixed by every structure; uniqueness
/// of mediating maps must then fail.
MultiAlgebra with_junk_atom(const std::vector<Monad>& ts, const MultiAlgebra& m, const Atom& junk);

}  // namespace moncol
