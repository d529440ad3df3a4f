#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "moncol/base.hpp"
#include "moncol/endofunctor.hpp"
#include "moncol/report.hpp"

namespace moncol {

/// An element of one sort.
using SortedAtom = std::pair<std::size_t, Atom>;

/// Element-level description of a monad on finite objects. T A is
/// materialized by `apply`; everything else works one atom at a time so that
/// T T T A never has to be built.
class MonadImpl {
 public:
  virtual ~MonadImpl() = default;

  virtual std::string name() const = 0;
  virtual ShapePtr shape() const = 0;
  virtual Object apply(const Object& a) const = 0;
  /// (T f)(t) for t in T(dom f).
  virtual Atom fmap(const Morphism& f, std::size_t sort, const Atom& t) const = 0;
  /// eta_A(x)
  virtual Atom unit(const Object& a, std::size_t sort, const Atom& x) const = 0;
  /// mu_A(tt) for tt in T T A.
  virtual Atom join(const Object& a, std::size_t sort, const Atom& tt) const = 0;

  /// Atoms of A that t depends on; nullopt when unknown.
  virtual std::optional<std::vector<SortedAtom>> support(std::size_t sort, const Atom& t) const;
  /// Elements of T X that the law checks visit. Defaults to all of T X.
  virtual std::vector<Atom> generators(const Object& x, std::size_t sort) const;
  virtual std::optional<std::size_t> truncation() const { return std::nullopt; }
  virtual bool preserves_monos_claimed() const { return true; }
};

class Monad {
 public:
  Monad() = default;
  explicit Monad(std::shared_ptr<const MonadImpl> impl) : impl_(std::move(impl)) {}

  const MonadImpl& impl() const { return *impl_; }
  std::shared_ptr<const MonadImpl> impl_ptr() const { return impl_; }
  explicit operator bool() const { return impl_ != nullptr; }

  std::string name() const { return impl_->name(); }
  ShapePtr shape() const { return impl_->shape(); }
  std::optional<std::size_t> truncation() const { return impl_->truncation(); }

  Object apply(const Object& a) const { return impl_->apply(a); }
  Atom fmap(const Morphism& f, std::size_t sort, const Atom& t) const { return impl_->fmap(f, sort, t); }
  Atom unit(const Object& a, std::size_t sort, const Atom& x) const { return impl_->unit(a, sort, x); }
  Atom join(const Object& a, std::size_t sort, const Atom& tt) const { return impl_->join(a, sort, tt); }
  std::optional<std::vector<SortedAtom>> support(std::size_t sort, const Atom& t) const {
    return impl_->support(sort, t);
  }
  std::vector<Atom> generators(const Object& x, std::size_t sort) const { return impl_->generators(x, sort); }

  /// T f between materialized T A and T B.
  Morphism map(const Morphism& f) const;
  Morphism map(const Morphism& f, const Object& ta, const Object& tb) const;
  Morphism unit(const Object& a) const;
  Morphism mult(const Object& a) const;

  /// The underlying endofunctor.
  Endofunctor functor() const;

 private:
  std::shared_ptr<const MonadImpl> impl_;
};

struct Monoid {
  std::vector<std::string> elements;
  std::vector<std::vector<std::size_t>> table;
  std::size_t unit = 0;

  /// Z/n under addition, elements "0".."n-1".
  static Monoid cyclic(std::size_t n);
  std::size_t index_of(const std::string& e) const;
  bool lawful() const;
};

Monad identity_monad(const ShapePtr& shape);
/// A + E. E fixes the base category.
Monad exception_monad(const Object& e);
/// 0 -> 0, otherwise A + E.
Monad exception_zero_monad(const Object& e);
Monad terminal_monad(const ShapePtr& shape);
Monad terminal_zero_monad(const ShapePtr& shape);
/// A^E: tuples indexed by the exponent names; on graphs the |E|-fold product.
Monad reader_monad(const ShapePtr& shape, std::vector<Atom> exponent);
/// M x A. With `project` the multiplication forgets the outer element, which
/// breaks the unit law; it exists as a negative control.
Monad writer_monad(const ShapePtr& shape, Monoid m, bool project = false);
/// Nonempty finite subsets; finite sets and sorted sets only.
Monad nonempty_powerset_monad(const ShapePtr& shape);

enum class BuiltinKind { Exception, ExceptionZero, Terminal, TerminalZero, Reader, Writer, NonemptyPowerset };

struct BuiltinParams {
  /// Exceptions (put in every sort, as vertices on graphs) or reader exponents.
  std::vector<std::string> names;
  Monoid monoid = Monoid::cyclic(2);
  bool writer_project = false;
};

Monad builtin_monad(BuiltinKind kind, const BuiltinParams& params, const ShapePtr& shape);

struct MonadMorphism {
  std::string name;
  Monad source;
  Monad target;
  /// theta_A(s) for s in S A.
  std::function<Atom(const Object& a, std::size_t sort, const Atom& s)> component;

  Morphism at(const Object& a) const;
  Morphism at(const Object& a, const Object& sa, const Object& ta) const;
};

MonadMorphism identity_morphism(const Monad& t);
/// g . f
MonadMorphism compose(const MonadMorphism& g, const MonadMorphism& f);
/// Exception(E) -> Exception(F) induced by a map on exceptions.
MonadMorphism exception_morphism(const Monad& source, const Monad& target, std::function<Atom(const Atom&)> on_exceptions);

/// Objects of size <= max_size used by exhaustive checks (graphs: at most two loops).
std::vector<Object> law_samples(const ShapePtr& shape, std::size_t max_size);

LawReport monad_law_check(const Monad& t, const std::vector<Object>& samples, std::size_t hom_limit = 4096);
LawReport morphism_law_check(const MonadMorphism& f, const std::vector<Object>& samples,
                             std::size_t hom_limit = 4096);

/// A monad whose unit is a coproduct injection S A = A + S-bar A, checked on samples.
class SeparatedRep {
 public:
  SeparatedRep(Monad monad, LawReport certificate) : monad_(std::move(monad)), certificate_(std::move(certificate)) {}

  const Monad& monad() const { return monad_; }
  const LawReport& certificate() const { return certificate_; }
  /// S A minus the unit image; throws NonMonicUnit when eta_A is not injective.
  Object complement(const Object& a) const;
  /// Restriction of S(m) to complements, for injective m.
  Morphism complement_map(const Morphism& m) const;
  /// The complement functor on objects and monomorphisms.
  Endofunctor complement_functor() const;

 private:
  Monad monad_;
  LawReport certificate_;
};

SeparatedRep unit_complement(const Monad& t, const std::vector<Object>& samples);

struct MonadFactorization {
  MonadMorphism epi;
  MonadMorphism mono;
  Monad image;
  LawReport report;
};

/// Componentwise image factorization; the multiplication of the image comes
/// from the diagonal fill-in and is checked to be well defined.
MonadFactorization factorize_monad_morphism(const MonadMorphism& f, const std::vector<Object>& samples);

}  // namespace moncol
