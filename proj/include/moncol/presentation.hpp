#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "moncol/cache.hpp"
#include "moncol/monad.hpp"

namespace moncol {

struct OpSymbol {
  std::string name;
  std::vector<std::size_t> args;
  std::size_t result = 0;

  std::size_t arity() const { return args.size(); }
};

struct Signature {
  std::vector<std::string> sorts{"*"};
  std::vector<OpSymbol> ops;

  /// One sort `*`; ops given as (name, arity).
  static Signature single_sorted(const std::vector<std::pair<std::string, std::size_t>>& ops);
  ShapePtr shape() const;
  const OpSymbol* find(const std::string& name) const;
  std::size_t sort_index(const std::string& name) const;
  void validate() const;
};

/// Oriented equation over terms whose variables are `Atom::var(Atom::name("x1"))`.
struct Rule {
  Atom lhs;
  Atom rhs;
};

struct Presentation {
  Signature signature;
  std::vector<Rule> rules;
};

/// Terms are written `f(x1,c,g(x2))`; names starting with `x` followed by
/// digits are variables, every other name must be an operation symbol.
Atom parse_term(std::string_view text, const Signature& sig);
Rule parse_rule(std::string_view text, const Signature& sig);

/// Leftmost-innermost rewriting with a size-decreasing measure.
class RewriteSystem {
 public:
  explicit RewriteSystem(Presentation p);

  const Presentation& presentation() const { return p_; }
  /// Throws NonTerminatingRules when a step fails to shrink the term.
  Atom normalize(const Atom& t) const;
  bool reducible_at_root(const Atom& t) const;
  /// Every critical pair, each checked for joinability.
  LawReport critical_pairs() const;

 private:
  Atom normalize(const Atom& t, std::size_t& steps) const;
  Presentation p_;
};

/// Terms of total depth at most `depth` in normal form, plus every variable
/// leaf. Values carry a truncation marker when deeper normal forms exist.
class PresentedMonadImpl : public MonadImpl {
 public:
  PresentedMonadImpl(Presentation p, std::size_t depth, std::string name = {}, std::uint64_t seed = 0x5eed);

  std::string name() const override { return name_; }
  ShapePtr shape() const override { return shape_; }
  Object apply(const Object& a) const override;
  Atom fmap(const Morphism& f, std::size_t sort, const Atom& t) const override;
  Atom unit(const Object& a, std::size_t sort, const Atom& x) const override;
  Atom join(const Object& a, std::size_t sort, const Atom& tt) const override;
  std::optional<std::vector<SortedAtom>> support(std::size_t sort, const Atom& t) const override;
  std::vector<Atom> generators(const Object& x, std::size_t sort) const override;
  std::optional<std::size_t> truncation() const override { return depth_; }

  const RewriteSystem& rewriting() const { return rs_; }
  const Signature& signature() const { return rs_.presentation().signature; }
  std::size_t depth() const { return depth_; }
  /// Normal form, rejecting results deeper than the bound.
  Atom normal_form(const Atom& t) const;
  /// Terms of depth <= d over A without the truncation flag, per sort.
  std::vector<std::vector<Atom>> enumerate(const Object& a, std::size_t d) const;
  bool deeper_terms_exist(const Object& a) const;

 private:
  RewriteSystem rs_;
  std::size_t depth_;
  std::string name_;
  ShapePtr shape_;
  std::uint64_t seed_;
  ObjectCache<Object> cache_;
};

Monad presented_monad(const Presentation& p, std::size_t depth, const std::string& name = {});
/// The presentation behind a presented monad, or null.
const PresentedMonadImpl* as_presented(const Monad& m);

/// Signature functor H_Sigma on objects: one atom f(x1..xn) per operation and argument tuple.
Object signature_functor(const Signature& sig, const Object& x);

/// F A = eta[A] + (H_Sigma F A) at every depth up to `depth`, with eta the
/// left injection, and F(m) injective for injective m between the samples.
LawReport free_monad_decomposition_check(const Presentation& p, const std::vector<Object>& samples,
                                         std::size_t depth);

/// Renames operation symbols and normalizes in the target.
MonadMorphism translation_morphism(const Monad& source, const Monad& target,
                                   const std::map<std::string, std::string>& symbols = {});
/// Exception(E) into a presented monad with one constant per exception.
MonadMorphism exceptions_as_constants(const Monad& exception, const Monad& presented);

}  // namespace moncol
