#pragma once

#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "moncol/algebra.hpp"
#include "moncol/cache.hpp"
#include "moncol/endofunctor.hpp"

namespace moncol {

/// Union of the parts with every atom x of part (tag, X) renamed to tag:x.
/// Tags must be distinct; structure arrows are carried over.
Object tagged_sum(const ShapePtr& shape, const std::vector<std::pair<std::size_t, Object>>& parts);
/// Sum of maps between tagged sums with the same tags.
Morphism tagged_sum_map(const ShapePtr& shape, const std::vector<std::pair<std::size_t, Morphism>>& parts);

/// Component i of a morphism of families.
Morphism family_component(const Morphism& f, std::size_t i);
/// The family morphism with the given components.
Morphism family_morphism(const ShapePtr& base, const std::vector<Morphism>& components);

/// Y_i = A + sum of X_j over j != i, with A tagged 0 and X_j tagged j + 1.
Object context(const Object& a, const std::vector<Object>& layers, std::size_t i);

/// H_A(X)_i = complement of S_i on Y_i, an endofunctor of families of width |seps|.
Endofunctor build_HA(const std::vector<SeparatedRep>& seps, const Object& a);

/// The chain of H_A from the empty family; stages are families.
ChainRun coproduct_chain(const std::vector<SeparatedRep>& seps, const Object& a, std::size_t budget);

/// R A = A + sum of layers X_i, assembled with A tagged 0 and X_i tagged i + 1.
struct LayeredCarrier {
  Object base;
  std::vector<Object> layers;
  /// Y_i = A + sum of X_j, j != i.
  std::vector<Object> contexts;
  /// S_i Y_i.
  std::vector<Object> free;
  Object assembled;
  /// Chain level at which each layer atom first appears.
  std::vector<std::map<Atom, std::size_t>> first_level;
  ChainRun chain;
  /// R A -> S_i Y_i: eta on Y_i, the inclusion on X_i.
  std::vector<Morphism> phi_inverse;
};

class CoproductMonadImpl : public MonadImpl {
 public:
  CoproductMonadImpl(std::vector<SeparatedRep> seps, std::size_t budget, std::string name);

  std::string name() const override { return name_; }
  ShapePtr shape() const override { return seps_.front().monad().shape(); }
  Object apply(const Object& a) const override;
  Atom fmap(const Morphism& f, std::size_t sort, const Atom& t) const override;
  Atom unit(const Object& a, std::size_t sort, const Atom& x) const override;
  Atom join(const Object& a, std::size_t sort, const Atom& tt) const override;
  std::optional<std::vector<SortedAtom>> support(std::size_t sort, const Atom& t) const override;
  std::optional<std::size_t> truncation() const override;

  const std::vector<SeparatedRep>& seps() const { return seps_; }
  std::size_t budget() const { return budget_; }
  /// Throws BudgetExhausted when the chain does not converge.
  std::shared_ptr<const LayeredCarrier> layered(const Object& a) const;

  /// w in S_i Y_i as an atom of R A.
  Atom phi(const LayeredCarrier& l, std::size_t i, std::size_t sort, const Atom& w) const;
  /// sigma_i: S_i R A -> R A, the free S_i-structure transported along phi.
  Atom structure(const Object& a, std::size_t i, std::size_t sort, const Atom& w) const;

 private:
  std::vector<SeparatedRep> seps_;
  std::size_t budget_;
  std::string name_;
  ObjectCache<std::shared_ptr<const LayeredCarrier>> cache_;
};

/// Coproduct of separated monads. Monads that are not separated on the
/// samples raise NotSeparated.
Monad coproduct_monad(const std::vector<Monad>& monads, const std::vector<Object>& samples, std::size_t budget = 16,
                      const std::string& name = {});
const CoproductMonadImpl* as_coproduct(const Monad& m);

/// Element-level structure S_i B -> B.
using ElementStructure = std::function<Atom(std::size_t sort, const Atom& w)>;

/// The unique map R A -> B that extends f: A -> B and is a homomorphism for
/// every structure, built by recursion over the layers.
Atom extend_atom(const CoproductMonadImpl& r, const LayeredCarrier& l, const std::function<Atom(std::size_t, const Atom&)>& f,
                 const Object& target, const std::vector<ElementStructure>& structures, std::size_t sort,
                 const Atom& x, std::map<SortedAtom, Atom>& memo);
Morphism extend_to_hom(const Monad& r, const Morphism& f, const MultiAlgebra& target);

/// S_i -> R, sigma_i . S_i(eta^R).
MonadMorphism coproduct_injection(const Monad& r, std::size_t i);
/// (R A, sigma_i) as a multi-algebra over the summands.
MultiAlgebra coproduct_candidate(const Monad& r, const Object& a);

/// S_i Y_i = Y_i + X_i both ways, A and the layers disjoint, chain links injective.
LawReport decomposition_check(const Monad& r, const std::vector<Object>& samples);
/// Free multi-algebra property of every R A over the samples, with
/// extend_to_hom as the witness for existence.
LawReport verify_universal(const Monad& r, const std::vector<Object>& samples, std::size_t bound);

/// Stages of the H_A chain against iterates of FG and GF with
/// F W = S-bar(A + W) and G W = T-bar(A + W).
LawReport compact_pair_check(const SeparatedRep& s, const SeparatedRep& t, const Object& a, std::size_t budget);

}  // namespace moncol
