#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "moncol/base.hpp"
#include "moncol/report.hpp"

namespace moncol {

struct Endofunctor {
  std::string name;
  ShapePtr shape;
  std::function<Object(const Object&)> on_obj;
  std::function<Morphism(const Morphism&)> on_mor;
  bool preserves_monos_claimed = true;
  /// Depth bound for functors whose values are truncated.
  std::optional<std::size_t> finitary_budget;

  Object operator()(const Object& x) const { return on_obj(x); }
  Morphism operator()(const Morphism& f) const { return on_mor(f); }
};

Endofunctor identity_functor(const ShapePtr& shape);
Endofunctor constant_functor(const Object& value);
/// X -> X + E.
Endofunctor coproduct_with(const Object& e);
/// Nonempty finite subsets, direct image on maps. Finite sets only.
Endofunctor nonempty_powerset_functor();
/// G . F
Endofunctor compose(const Endofunctor& g, const Endofunctor& f);

struct HAlgebra {
  Object carrier;
  Morphism structure;
};

struct ChainRun {
  std::vector<Object> stages;
  std::vector<InjectionWitness> links;
  ChainStatus status;
};

struct FreeAlgebraChain : ChainRun {
  /// Present on convergence: the free algebra on X and its universal arrow X -> W_k.
  std::optional<HAlgebra> algebra;
  std::optional<Morphism> universal;
};

/// W_0 = X, W_{i+1} = X + H W_i, links inl then id + H(link).
FreeAlgebraChain free_algebra_chain(const Endofunctor& h, const Object& x, std::size_t budget = 16);

/// W_0 = seed, W_{i+1} = H W_i, linked by `first` and then H(link).
ChainRun iterate_chain(const Endofunctor& h, const Object& seed, const Morphism& first, std::size_t budget);

struct InitialAlgebraResult {
  Object carrier;
  Morphism structure;
  Morphism structure_inverse;
  std::size_t stage = 0;
  ChainStatus status;
};

/// The chain from 0; throws BudgetExhausted with the growth profile.
InitialAlgebraResult initial_algebra(const Endofunctor& h, std::size_t budget = 16);

struct PrefixpointResult {
  bool holds = false;
  std::optional<Morphism> witness;
  std::string reason;
};

PrefixpointResult is_prefixpoint(const Endofunctor& h, const Object& z);

/// Identity, composition and mono preservation over every morphism between
/// the samples (at most `hom_limit` per pair).
LawReport functor_law_check(const Endofunctor& h, const std::vector<Object>& samples,
                            std::size_t hom_limit = 256);

}  // namespace moncol
