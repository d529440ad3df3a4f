#pragma once

// Finite instances of the set-like base categories: finite sets, finite
// many-sorted sets and finite graphs. All three are presheaves on a small
// shape (sorts plus structure arrows between sorts), which is how they are
// represented here; a family of objects indexed by a finite set is again such
// a presheaf on the disjoint union of shapes.

#include <array>
#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "moncol/atom.hpp"
#include "moncol/error.hpp"

namespace moncol {

enum class Variant { FinSet, SortedFinSet, FinGraph, Family };

const char* to_string(Variant v);

struct Shape;
using ShapePtr = std::shared_ptr<const Shape>;

struct Shape {
  struct Arrow {
    std::string name;
    std::size_t from;
    std::size_t to;
  };

  Variant variant = Variant::FinSet;
  std::vector<std::string> sorts;
  std::vector<Arrow> arrows;
  /// Base shape and width for families; null for the plain variants.
  ShapePtr base;
  std::size_t components = 1;

  static ShapePtr set();
  static ShapePtr sorted(std::vector<std::string> sort_names);
  static ShapePtr graph();
  static ShapePtr family(const ShapePtr& base, std::size_t width);
};

bool same_shape(const Shape& a, const Shape& b);

class Object {
 public:
  /// The empty finite set.
  Object();

  /// Carriers may be given unsorted; duplicates are rejected. Each arrow is
  /// listed as (source atom, target atom) pairs and must be total.
  static Object make(ShapePtr shape, std::vector<std::vector<Atom>> carriers,
                     const std::vector<std::vector<std::pair<Atom, Atom>>>& arrows = {},
                     std::optional<std::size_t> truncation = std::nullopt);
  static Object set(std::vector<Atom> atoms);
  static Object sorted(const ShapePtr& shape, std::vector<std::vector<Atom>> carriers);
  /// Edges are (edge, source vertex, target vertex).
  static Object graph(std::vector<Atom> vertices, const std::vector<std::array<Atom, 3>>& edges);
  static Object initial(const ShapePtr& shape);
  /// One atom `*` in every sort; every structure arrow is forced.
  static Object terminal(const ShapePtr& shape);
  static Object family(const std::vector<Object>& components);
  static Object family(const ShapePtr& base, const std::vector<Object>& components);

  const ShapePtr& shape() const;
  Variant variant() const { return shape()->variant; }
  std::size_t sort_count() const;
  std::span<const Atom> carrier(std::size_t sort) const;
  std::size_t size() const;
  std::size_t size(std::size_t sort) const;
  bool empty() const { return size() == 0; }

  std::optional<std::size_t> index_of(std::size_t sort, const Atom& atom) const;
  bool contains(std::size_t sort, const Atom& atom) const { return index_of(sort, atom).has_value(); }
  /// Index (in the target sort) of the image of element `i` under structure arrow `arrow`.
  std::size_t arrow_index(std::size_t arrow, std::size_t i) const;
  const Atom& arrow_apply(std::size_t arrow, std::size_t i) const;

  /// Depth marker carried by values of depth-truncated functors.
  std::optional<std::size_t> truncation() const;
  Object with_truncation(std::optional<std::size_t> depth) const;

  Object component(std::size_t i) const;
  std::size_t components() const { return shape()->components; }

  std::string str() const;

  friend bool operator==(const Object& a, const Object& b);
  friend bool operator<(const Object& a, const Object& b);

 private:
  struct Data {
    ShapePtr shape;
    std::vector<std::vector<Atom>> carriers;
    std::vector<std::vector<std::size_t>> arrows;
    std::optional<std::size_t> truncation;
  };
  explicit Object(std::shared_ptr<const Data> d) : d_(std::move(d)) {}
  std::shared_ptr<const Data> d_;

  friend class ObjectBuilder;
};

/// Combine two depth markers: the result is truncated when either is.
std::optional<std::size_t> merge_truncation(std::optional<std::size_t> a,
                                            std::optional<std::size_t> b);

class Morphism {
 public:
  using Table = std::vector<std::vector<std::size_t>>;

  Morphism() = default;
  /// Validates totality, range and commutation with structure arrows.
  static Morphism make(Object dom, Object cod, Table maps);
  static Morphism from_fn(Object dom, Object cod,
                          const std::function<Atom(std::size_t, const Atom&)>& fn);
  static Morphism identity(const Object& a);
  /// Identity on atoms; every atom of `sub` must occur in `super`.
  static Morphism inclusion(const Object& sub, const Object& super);
  /// The unique map out of the empty object.
  static Morphism from_initial(const Object& cod);

  const Object& dom() const { return dom_; }
  const Object& cod() const { return cod_; }
  const Table& table() const { return maps_; }
  std::size_t at(std::size_t sort, std::size_t i) const { return maps_[sort][i]; }
  Atom operator()(std::size_t sort, const Atom& x) const;
  const Atom& image(std::size_t sort, std::size_t i) const;

  bool is_mono() const;
  bool is_epi() const;
  bool is_iso() const { return is_mono() && is_epi(); }
  /// True when every atom is sent to an equal atom.
  bool is_identity_on_atoms() const;

  std::string str() const;

  friend bool operator==(const Morphism& a, const Morphism& b);

 private:
  Morphism(Object dom, Object cod, Table maps)
      : dom_(std::move(dom)), cod_(std::move(cod)), maps_(std::move(maps)) {}
  static void validate(const Object& dom, const Object& cod, const Table& maps);

  Object dom_;
  Object cod_;
  Table maps_;

  friend Morphism compose(const Morphism& g, const Morphism& f);
  friend Morphism unchecked_morphism(Object dom, Object cod, Table maps);
};

/// g ∘ f
Morphism compose(const Morphism& g, const Morphism& f);
/// Skips commutation checks; used by solvers that fill a table incrementally.
Morphism unchecked_morphism(Object dom, Object cod, Morphism::Table maps);
/// Inverse of a bijective morphism.
Morphism inverse(const Morphism& iso);
/// Some injective morphism a -> b, if one exists.
std::optional<Morphism> find_mono(const Object& a, const Object& b);

struct InjectionWitness {
  Morphism mor;
  bool mono_checked = false;

  static InjectionWitness of(Morphism m);
};

struct Coproduct {
  Object object;
  std::vector<InjectionWitness> injections;
};

/// Disjoint union, atoms tagged `i:x` by summand position.
Coproduct coproduct(const std::vector<Object>& parts);
Coproduct coproduct(const ShapePtr& shape, const std::vector<Object>& parts);
/// [f_0, ..., f_n]: coproduct -> common codomain.
Morphism copair(const Coproduct& sum, const std::vector<Morphism>& legs, const Object& cod);
/// f_0 + ... + f_n between coproducts of domains and codomains.
Morphism coproduct_map(const std::vector<Morphism>& fs);

/// Union-find per sort over the elements of one object.
class Partition {
 public:
  explicit Partition(const Object& obj);
  std::size_t find(std::size_t sort, std::size_t i) const;
  bool merge(std::size_t sort, std::size_t i, std::size_t j);
  bool same(std::size_t sort, std::size_t i, std::size_t j) const { return find(sort, i) == find(sort, j); }
  std::size_t class_count() const;
  /// Coarsen until structure arrows respect the classes.
  bool close_under_arrows(const Object& obj);

 private:
  mutable std::vector<std::vector<std::size_t>> parent_;
};

struct Quotient {
  Object object;
  Morphism projection;
};

/// Quotient by the least congruence containing `partition`; classes are named
/// by their least atom.
Quotient quotient(const Object& obj, Partition partition);
Quotient coequalize_morphisms(const Morphism& f, const Morphism& g);

struct Factorization {
  Morphism epi;
  InjectionWitness mono;
  /// Least-atom preimage of every image atom, per sort.
  Morphism::Table section;
  /// Graph epimorphisms need not split; false when the chosen section is not a morphism.
  bool section_is_morphism = true;
};

Factorization factorize(const Morphism& f);

struct ChainStatus {
  enum class Kind { Converged, BudgetExhausted };
  Kind kind = Kind::BudgetExhausted;
  std::size_t level = 0;
  std::vector<std::size_t> growth;
  std::string reason;

  bool converged() const { return kind == Kind::Converged; }
  std::string str() const;
};

struct ChainColimit {
  Object object;
  ChainStatus status;
};

/// Colimit of a chain of monomorphisms given by its links; only the first
/// `budget` links are inspected.
ChainColimit chain_colimit(const std::vector<InjectionWitness>& links, std::size_t budget,
                           const ShapePtr& shape = Shape::set());

/// Every morphism A -> B, up to `limit` of them.
std::vector<Morphism> all_morphisms(const Object& a, const Object& b,
                                    std::size_t limit = kAtomCeiling);
/// Every function on the underlying sorted sets (ignores structure arrows).
std::size_t count_functions(const Object& a, const Object& b);

/// {a, b, c, ...} with n atoms.
Object sample_set(std::size_t n);
std::vector<Object> sample_sets(std::size_t max_size);
/// Graphs with at most two vertices, at most two edges, at most `max_loops` loops.
std::vector<Object> sample_graphs(std::size_t max_loops);
std::vector<Object> sample_sorted(const ShapePtr& shape, std::size_t max_total);
std::vector<Object> sample_objects(const ShapePtr& shape, std::size_t max_size);

}  // namespace moncol
