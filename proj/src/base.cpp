#include "moncol/base.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <numeric>
#include <sstream>

namespace moncol {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::MixedVariants: return "MixedVariants";
    case ErrorKind::NonMonoInChain: return "NonMonoInChain";
    case ErrorKind::MonoViolation: return "MonoViolation";
    case ErrorKind::NotSeparated: return "NotSeparated";
    case ErrorKind::NonMonicUnit: return "NonMonicUnit";
    case ErrorKind::NonTerminatingRules: return "NonTerminatingRules";
    case ErrorKind::DepthExceeded: return "DepthExceeded";
    case ErrorKind::FillInFailure: return "FillInFailure";
    case ErrorKind::NotWeaklyTerminal: return "NotWeaklyTerminal";
    case ErrorKind::CeilingExceeded: return "CeilingExceeded";
    case ErrorKind::BudgetExhausted: return "BudgetExhausted";
    case ErrorKind::UnsupportedVariant: return "UnsupportedVariant";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
  }
  return "Error";
}

const char* to_string(Variant v) {
  switch (v) {
    case Variant::FinSet: return "FinSet";
    case Variant::SortedFinSet: return "SortedFinSet";
    case Variant::FinGraph: return "FinGraph";
    case Variant::Family: return "Family";
  }
  return "?";
}

// ---------------------------------------------------------------- shapes

ShapePtr Shape::set() {
  static const ShapePtr s = std::make_shared<const Shape>(Shape{Variant::FinSet, {"*"}, {}, nullptr, 1});
  return s;
}

ShapePtr Shape::sorted(std::vector<std::string> sort_names) {
  return std::make_shared<const Shape>(Shape{Variant::SortedFinSet, std::move(sort_names), {}, nullptr, 1});
}

ShapePtr Shape::graph() {
  static const ShapePtr s = std::make_shared<const Shape>(
      Shape{Variant::FinGraph, {"V", "E"}, {{"s", 1, 0}, {"t", 1, 0}}, nullptr, 1});
  return s;
}

ShapePtr Shape::family(const ShapePtr& base, std::size_t width) {
  Shape out;
  out.variant = Variant::Family;
  out.base = base;
  out.components = width;
  const std::size_t k = base->sorts.size();
  for (std::size_t c = 0; c < width; ++c) {
    for (const auto& s : base->sorts) out.sorts.push_back(std::to_string(c) + "." + s);
    for (const auto& a : base->arrows) {
      out.arrows.push_back({std::to_string(c) + "." + a.name, c * k + a.from, c * k + a.to});
    }
  }
  return std::make_shared<const Shape>(std::move(out));
}

bool same_shape(const Shape& a, const Shape& b) {
  if (&a == &b) return true;
  if (a.variant != b.variant || a.sorts != b.sorts || a.arrows.size() != b.arrows.size() ||
      a.components != b.components) {
    return false;
  }
  for (std::size_t i = 0; i < a.arrows.size(); ++i) {
    if (a.arrows[i].from != b.arrows[i].from || a.arrows[i].to != b.arrows[i].to ||
        a.arrows[i].name != b.arrows[i].name) {
      return false;
    }
  }
  if (a.base && b.base) return same_shape(*a.base, *b.base);
  return !a.base && !b.base;
}

// ---------------------------------------------------------------- objects

class ObjectBuilder {
 public:
  static Object raw(ShapePtr shape, std::vector<std::vector<Atom>> carriers,
                    std::vector<std::vector<std::size_t>> arrows,
                    std::optional<std::size_t> truncation) {
    return Object(std::make_shared<const Object::Data>(
        Object::Data{std::move(shape), std::move(carriers), std::move(arrows), truncation}));
  }
  static const Object::Data& data(const Object& o) { return *o.d_; }
};

Object::Object() : Object(ObjectBuilder::raw(Shape::set(), {{}}, {}, std::nullopt)) {}

Object Object::make(ShapePtr shape, std::vector<std::vector<Atom>> carriers,
                    const std::vector<std::vector<std::pair<Atom, Atom>>>& arrows,
                    std::optional<std::size_t> truncation) {
  if (carriers.size() != shape->sorts.size()) {
    throw Error(ErrorKind::InvalidArgument, "carrier count does not match the shape's sorts");
  }
  for (auto& c : carriers) {
    std::sort(c.begin(), c.end());
    if (std::adjacent_find(c.begin(), c.end()) != c.end()) {
      throw Error(ErrorKind::InvalidArgument, "duplicate atom in carrier");
    }
  }
  if (arrows.size() != shape->arrows.size()) {
    throw Error(ErrorKind::InvalidArgument, "structure arrow count does not match the shape");
  }
  std::vector<std::vector<std::size_t>> tables(arrows.size());
  auto find = [&](std::size_t sort, const Atom& a) -> std::size_t {
    const auto& c = carriers[sort];
    auto it = std::lower_bound(c.begin(), c.end(), a);
    if (it == c.end() || !(*it == a)) {
      throw Error(ErrorKind::InvalidArgument, "structure arrow mentions unknown atom " + a.str());
    }
    return static_cast<std::size_t>(it - c.begin());
  };
  for (std::size_t k = 0; k < arrows.size(); ++k) {
    const auto& ar = shape->arrows[k];
    constexpr std::size_t unset = std::numeric_limits<std::size_t>::max();
    tables[k].assign(carriers[ar.from].size(), unset);
    for (const auto& [src, tgt] : arrows[k]) {
      const std::size_t i = find(ar.from, src);
      if (tables[k][i] != unset) throw Error(ErrorKind::InvalidArgument, "arrow defined twice at " + src.str());
      tables[k][i] = find(ar.to, tgt);
    }
    for (auto v : tables[k]) {
      if (v == unset) throw Error(ErrorKind::InvalidArgument, "structure arrow " + ar.name + " is not total");
    }
  }
  return ObjectBuilder::raw(std::move(shape), std::move(carriers), std::move(tables), truncation);
}

Object Object::set(std::vector<Atom> atoms) { return make(Shape::set(), {std::move(atoms)}); }

Object Object::sorted(const ShapePtr& shape, std::vector<std::vector<Atom>> carriers) {
  if (!shape->arrows.empty()) throw Error(ErrorKind::InvalidArgument, "sorted objects have no structure arrows");
  return make(shape, std::move(carriers));
}

Object Object::graph(std::vector<Atom> vertices, const std::vector<std::array<Atom, 3>>& edges) {
  std::vector<Atom> es;
  std::vector<std::pair<Atom, Atom>> src, tgt;
  for (const auto& [e, s, t] : edges) {
    es.push_back(e);
    src.emplace_back(e, s);
    tgt.emplace_back(e, t);
  }
  return make(Shape::graph(), {std::move(vertices), std::move(es)}, {src, tgt});
}

Object Object::initial(const ShapePtr& shape) {
  std::vector<std::vector<std::size_t>> arrows(shape->arrows.size());
  return ObjectBuilder::raw(shape, std::vector<std::vector<Atom>>(shape->sorts.size()), arrows, std::nullopt);
}

Object Object::terminal(const ShapePtr& shape) {
  std::vector<std::vector<Atom>> carriers(shape->sorts.size(), {Atom::name("*")});
  std::vector<std::vector<std::size_t>> arrows(shape->arrows.size(), {0});
  return ObjectBuilder::raw(shape, std::move(carriers), std::move(arrows), std::nullopt);
}

Object Object::family(const std::vector<Object>& components) {
  if (components.empty()) throw Error(ErrorKind::InvalidArgument, "family of width 0 needs an explicit base shape");
  return family(components.front().shape(), components);
}

Object Object::family(const ShapePtr& base, const std::vector<Object>& components) {
  auto shape = Shape::family(base, components.size());
  std::vector<std::vector<Atom>> carriers;
  std::vector<std::vector<std::size_t>> arrows;
  std::optional<std::size_t> trunc;
  for (const auto& c : components) {
    if (!same_shape(*c.shape(), *base)) throw Error(ErrorKind::MixedVariants, "family components differ in shape");
    const auto& d = ObjectBuilder::data(c);
    carriers.insert(carriers.end(), d.carriers.begin(), d.carriers.end());
    arrows.insert(arrows.end(), d.arrows.begin(), d.arrows.end());
    trunc = merge_truncation(trunc, d.truncation);
  }
  return ObjectBuilder::raw(shape, std::move(carriers), std::move(arrows), trunc);
}

const ShapePtr& Object::shape() const { return d_->shape; }
std::size_t Object::sort_count() const { return d_->carriers.size(); }
std::span<const Atom> Object::carrier(std::size_t sort) const { return d_->carriers[sort]; }

std::size_t Object::size() const {
  std::size_t n = 0;
  for (const auto& c : d_->carriers) n += c.size();
  return n;
}

std::size_t Object::size(std::size_t sort) const { return d_->carriers[sort].size(); }

std::optional<std::size_t> Object::index_of(std::size_t sort, const Atom& atom) const {
  const auto& c = d_->carriers[sort];
  auto it = std::lower_bound(c.begin(), c.end(), atom);
  if (it == c.end() || !(*it == atom)) return std::nullopt;
  return static_cast<std::size_t>(it - c.begin());
}

std::size_t Object::arrow_index(std::size_t arrow, std::size_t i) const { return d_->arrows[arrow][i]; }

const Atom& Object::arrow_apply(std::size_t arrow, std::size_t i) const {
  return d_->carriers[shape()->arrows[arrow].to][d_->arrows[arrow][i]];
}

std::optional<std::size_t> Object::truncation() const { return d_->truncation; }

Object Object::with_truncation(std::optional<std::size_t> depth) const {
  return ObjectBuilder::raw(d_->shape, d_->carriers, d_->arrows, depth);
}

Object Object::component(std::size_t i) const {
  const auto& s = *shape();
  if (s.variant != Variant::Family || i >= s.components) {
    throw Error(ErrorKind::InvalidArgument, "not a family component");
  }
  const std::size_t k = s.base->sorts.size();
  const std::size_t a = s.base->arrows.size();
  std::vector<std::vector<Atom>> carriers(d_->carriers.begin() + static_cast<std::ptrdiff_t>(i * k),
                                          d_->carriers.begin() + static_cast<std::ptrdiff_t>((i + 1) * k));
  std::vector<std::vector<std::size_t>> arrows(d_->arrows.begin() + static_cast<std::ptrdiff_t>(i * a),
                                               d_->arrows.begin() + static_cast<std::ptrdiff_t>((i + 1) * a));
  return ObjectBuilder::raw(s.base, std::move(carriers), std::move(arrows), d_->truncation);
}

std::string Object::str() const {
  std::ostringstream out;
  const auto& s = *shape();
  auto carrier_str = [&](std::size_t sort) {
    std::string r = "{";
    for (std::size_t i = 0; i < size(sort); ++i) {
      if (i) r += ",";
      r += carrier(sort)[i].str();
      for (std::size_t k = 0; k < s.arrows.size(); ++k) {
        // graphs print edges as e:s->t
        if (s.arrows[k].from == sort && s.arrows.size() % 2 == 0 && k % 2 == 0 &&
            k + 1 < s.arrows.size() && s.arrows[k + 1].from == sort) {
          r += "[" + arrow_apply(k, i).str() + "->" + arrow_apply(k + 1, i).str() + "]";
        }
      }
    }
    return r + "}";
  };
  if (s.variant == Variant::FinSet) {
    out << carrier_str(0);
  } else {
    for (std::size_t sort = 0; sort < sort_count(); ++sort) {
      if (sort) out << " ";
      out << s.sorts[sort] << carrier_str(sort);
    }
  }
  if (truncation()) out << " (truncated at depth " << *truncation() << ")";
  return out.str();
}

bool operator==(const Object& a, const Object& b) {
  if (a.d_ == b.d_) return true;
  return same_shape(*a.shape(), *b.shape()) && a.d_->carriers == b.d_->carriers &&
         a.d_->arrows == b.d_->arrows;
}

bool operator<(const Object& a, const Object& b) {
  if (a.d_ == b.d_) return false;
  const auto& sa = *a.shape();
  const auto& sb = *b.shape();
  if (sa.variant != sb.variant) return sa.variant < sb.variant;
  if (sa.sorts != sb.sorts) return sa.sorts < sb.sorts;
  if (sa.components != sb.components) return sa.components < sb.components;
  if (a.d_->carriers != b.d_->carriers) return a.d_->carriers < b.d_->carriers;
  return a.d_->arrows < b.d_->arrows;
}

std::optional<std::size_t> merge_truncation(std::optional<std::size_t> a, std::optional<std::size_t> b) {
  if (a && b) return std::min(*a, *b);
  return a ? a : b;
}

// ---------------------------------------------------------------- morphisms

void Morphism::validate(const Object& dom, const Object& cod, const Table& maps) {
  if (!same_shape(*dom.shape(), *cod.shape())) {
    throw Error(ErrorKind::MixedVariants, "morphism between objects of different shapes");
  }
  if (maps.size() != dom.sort_count()) throw Error(ErrorKind::InvalidArgument, "morphism table has wrong sort count");
  for (std::size_t s = 0; s < maps.size(); ++s) {
    if (maps[s].size() != dom.size(s)) throw Error(ErrorKind::InvalidArgument, "morphism is not total");
    for (auto j : maps[s]) {
      if (j >= cod.size(s)) throw Error(ErrorKind::InvalidArgument, "morphism leaves its codomain");
    }
  }
  const auto& arrows = dom.shape()->arrows;
  for (std::size_t k = 0; k < arrows.size(); ++k) {
    for (std::size_t i = 0; i < dom.size(arrows[k].from); ++i) {
      if (maps[arrows[k].to][dom.arrow_index(k, i)] != cod.arrow_index(k, maps[arrows[k].from][i])) {
        throw Error(ErrorKind::InvalidArgument,
                    "morphism does not commute with structure arrow " + arrows[k].name + " at " +
                        dom.carrier(arrows[k].from)[i].str());
      }
    }
  }
}

Morphism Morphism::make(Object dom, Object cod, Table maps) {
  validate(dom, cod, maps);
  return Morphism(std::move(dom), std::move(cod), std::move(maps));
}

Morphism unchecked_morphism(Object dom, Object cod, Morphism::Table maps) {
  return Morphism(std::move(dom), std::move(cod), std::move(maps));
}

Morphism Morphism::from_fn(Object dom, Object cod, const std::function<Atom(std::size_t, const Atom&)>& fn) {
  Table maps(dom.sort_count());
  for (std::size_t s = 0; s < dom.sort_count(); ++s) {
    maps[s].reserve(dom.size(s));
    for (const auto& x : dom.carrier(s)) {
      const Atom y = fn(s, x);
      auto j = cod.index_of(s, y);
      if (!j) throw Error(ErrorKind::InvalidArgument, "image " + y.str() + " of " + x.str() + " is not in the codomain");
      maps[s].push_back(*j);
    }
  }
  return make(std::move(dom), std::move(cod), std::move(maps));
}

Morphism Morphism::identity(const Object& a) {
  Table maps(a.sort_count());
  for (std::size_t s = 0; s < a.sort_count(); ++s) {
    maps[s].resize(a.size(s));
    std::iota(maps[s].begin(), maps[s].end(), std::size_t{0});
  }
  return Morphism(a, a, std::move(maps));
}

Morphism Morphism::inclusion(const Object& sub, const Object& super) {
  return from_fn(sub, super, [](std::size_t, const Atom& x) { return x; });
}

Morphism Morphism::from_initial(const Object& cod) {
  return make(Object::initial(cod.shape()), cod, Table(cod.sort_count()));
}

Atom Morphism::operator()(std::size_t sort, const Atom& x) const {
  auto i = dom_.index_of(sort, x);
  if (!i) throw Error(ErrorKind::InvalidArgument, x.str() + " is not in the domain");
  return cod_.carrier(sort)[maps_[sort][*i]];
}

const Atom& Morphism::image(std::size_t sort, std::size_t i) const { return cod_.carrier(sort)[maps_[sort][i]]; }

bool Morphism::is_mono() const {
  for (std::size_t s = 0; s < maps_.size(); ++s) {
    std::vector<bool> hit(cod_.size(s), false);
    for (auto j : maps_[s]) {
      if (hit[j]) return false;
      hit[j] = true;
    }
  }
  return true;
}

bool Morphism::is_epi() const {
  for (std::size_t s = 0; s < maps_.size(); ++s) {
    std::vector<bool> hit(cod_.size(s), false);
    for (auto j : maps_[s]) hit[j] = true;
    if (std::find(hit.begin(), hit.end(), false) != hit.end()) return false;
  }
  return true;
}

bool Morphism::is_identity_on_atoms() const {
  for (std::size_t s = 0; s < maps_.size(); ++s) {
    for (std::size_t i = 0; i < maps_[s].size(); ++i) {
      if (!(dom_.carrier(s)[i] == image(s, i))) return false;
    }
  }
  return true;
}

std::string Morphism::str() const {
  std::string out;
  for (std::size_t s = 0; s < maps_.size(); ++s) {
    if (maps_.size() > 1) out += dom_.shape()->sorts[s] + ":";
    out += "{";
    for (std::size_t i = 0; i < maps_[s].size(); ++i) {
      if (i) out += ",";
      out += dom_.carrier(s)[i].str() + "->" + image(s, i).str();
    }
    out += "}";
    if (s + 1 < maps_.size()) out += " ";
  }
  return out;
}

bool operator==(const Morphism& a, const Morphism& b) {
  return a.maps_ == b.maps_ && a.dom_ == b.dom_ && a.cod_ == b.cod_;
}

Morphism compose(const Morphism& g, const Morphism& f) {
  if (!(f.cod() == g.dom())) throw Error(ErrorKind::InvalidArgument, "composing non-composable morphisms");
  Morphism::Table maps(f.maps_.size());
  for (std::size_t s = 0; s < maps.size(); ++s) {
    maps[s].reserve(f.maps_[s].size());
    for (auto j : f.maps_[s]) maps[s].push_back(g.maps_[s][j]);
  }
  return Morphism(f.dom(), g.cod(), std::move(maps));
}

Morphism inverse(const Morphism& iso) {
  if (!iso.is_iso()) throw Error(ErrorKind::InvalidArgument, "inverse of a non-bijective morphism");
  Morphism::Table maps(iso.table().size());
  for (std::size_t s = 0; s < maps.size(); ++s) {
    maps[s].resize(iso.table()[s].size());
    for (std::size_t i = 0; i < maps[s].size(); ++i) maps[s][iso.at(s, i)] = i;
  }
  return unchecked_morphism(iso.cod(), iso.dom(), std::move(maps));
}

InjectionWitness InjectionWitness::of(Morphism m) {
  const bool mono = m.is_mono();
  return {std::move(m), mono};
}

// ---------------------------------------------------------------- coproducts

Coproduct coproduct(const std::vector<Object>& parts) {
  return coproduct(parts.empty() ? Shape::set() : parts.front().shape(), parts);
}

Coproduct coproduct(const ShapePtr& shape, const std::vector<Object>& parts) {
  for (const auto& p : parts) {
    if (!same_shape(*p.shape(), *shape)) {
      throw Error(ErrorKind::MixedVariants, std::string("coproduct of ") + to_string(shape->variant) + " with " +
                                                to_string(p.variant()));
    }
  }
  const std::size_t sorts = shape->sorts.size();
  std::vector<std::vector<Atom>> carriers(sorts);
  std::vector<std::vector<std::size_t>> arrows(shape->arrows.size());
  std::optional<std::size_t> trunc;
  std::vector<std::vector<std::size_t>> offsets(parts.size(), std::vector<std::size_t>(sorts, 0));
  for (std::size_t i = 0; i < parts.size(); ++i) {
    for (std::size_t s = 0; s < sorts; ++s) {
      offsets[i][s] = carriers[s].size();
      for (const auto& x : parts[i].carrier(s)) carriers[s].push_back(Atom::tag(i, x));
    }
    trunc = merge_truncation(trunc, parts[i].truncation());
  }
  // Tags order by index first, so concatenation is already sorted.
  for (std::size_t k = 0; k < shape->arrows.size(); ++k) {
    const auto& ar = shape->arrows[k];
    for (std::size_t i = 0; i < parts.size(); ++i) {
      for (std::size_t e = 0; e < parts[i].size(ar.from); ++e) {
        arrows[k].push_back(offsets[i][ar.to] + parts[i].arrow_index(k, e));
      }
    }
  }
  Coproduct out{ObjectBuilder::raw(shape, std::move(carriers), std::move(arrows), trunc), {}};
  for (std::size_t i = 0; i < parts.size(); ++i) {
    Morphism::Table maps(sorts);
    for (std::size_t s = 0; s < sorts; ++s) {
      maps[s].resize(parts[i].size(s));
      std::iota(maps[s].begin(), maps[s].end(), offsets[i][s]);
    }
    out.injections.push_back({unchecked_morphism(parts[i], out.object, std::move(maps)), true});
  }
  return out;
}

Morphism copair(const Coproduct& sum, const std::vector<Morphism>& legs, const Object& cod) {
  if (legs.size() != sum.injections.size()) throw Error(ErrorKind::InvalidArgument, "copair needs one leg per summand");
  Morphism::Table maps(sum.object.sort_count());
  for (std::size_t i = 0; i < legs.size(); ++i) {
    if (!(legs[i].dom() == sum.injections[i].mor.dom()) || !(legs[i].cod() == cod)) {
      throw Error(ErrorKind::InvalidArgument, "copair leg has the wrong type");
    }
    for (std::size_t s = 0; s < maps.size(); ++s) {
      for (auto j : legs[i].table()[s]) maps[s].push_back(j);
    }
  }
  return Morphism::make(sum.object, cod, std::move(maps));
}

Morphism coproduct_map(const std::vector<Morphism>& fs) {
  std::vector<Object> doms, cods;
  for (const auto& f : fs) {
    doms.push_back(f.dom());
    cods.push_back(f.cod());
  }
  auto shape = fs.empty() ? Shape::set() : fs.front().dom().shape();
  const auto d = coproduct(shape, doms);
  const auto c = coproduct(shape, cods);
  std::vector<Morphism> legs;
  for (std::size_t i = 0; i < fs.size(); ++i) legs.push_back(compose(c.injections[i].mor, fs[i]));
  return copair(d, legs, c.object);
}

// ---------------------------------------------------------------- quotients

Partition::Partition(const Object& obj) : parent_(obj.sort_count()) {
  for (std::size_t s = 0; s < obj.sort_count(); ++s) {
    parent_[s].resize(obj.size(s));
    std::iota(parent_[s].begin(), parent_[s].end(), std::size_t{0});
  }
}

std::size_t Partition::find(std::size_t sort, std::size_t i) const {
  auto& p = parent_[sort];
  std::size_t root = i;
  while (p[root] != root) root = p[root];
  while (p[i] != root) {
    const std::size_t next = p[i];
    p[i] = root;
    i = next;
  }
  return root;
}

bool Partition::merge(std::size_t sort, std::size_t i, std::size_t j) {
  const std::size_t a = find(sort, i);
  const std::size_t b = find(sort, j);
  if (a == b) return false;
  // Keep the smaller index as root so roots are least members.
  if (a < b) {
    parent_[sort][b] = a;
  } else {
    parent_[sort][a] = b;
  }
  return true;
}

std::size_t Partition::class_count() const {
  std::size_t n = 0;
  for (std::size_t s = 0; s < parent_.size(); ++s) {
    for (std::size_t i = 0; i < parent_[s].size(); ++i) n += find(s, i) == i ? 1 : 0;
  }
  return n;
}

bool Partition::close_under_arrows(const Object& obj) {
  bool any = false;
  const auto& arrows = obj.shape()->arrows;
  bool changed = !arrows.empty();
  while (changed) {
    changed = false;
    for (std::size_t k = 0; k < arrows.size(); ++k) {
      std::map<std::size_t, std::size_t> target_of_class;
      for (std::size_t i = 0; i < obj.size(arrows[k].from); ++i) {
        const std::size_t root = find(arrows[k].from, i);
        const std::size_t tgt = obj.arrow_index(k, i);
        auto [it, fresh] = target_of_class.emplace(root, tgt);
        if (!fresh && merge(arrows[k].to, it->second, tgt)) changed = any = true;
      }
    }
  }
  return any;
}

Quotient quotient(const Object& obj, Partition partition) {
  partition.close_under_arrows(obj);
  const std::size_t sorts = obj.sort_count();
  std::vector<std::vector<Atom>> carriers(sorts);
  Morphism::Table proj(sorts);
  for (std::size_t s = 0; s < sorts; ++s) {
    std::vector<std::size_t> new_index(obj.size(s), 0);
    for (std::size_t i = 0; i < obj.size(s); ++i) {
      const std::size_t root = partition.find(s, i);
      if (root == i) {
        new_index[i] = carriers[s].size();
        carriers[s].push_back(obj.carrier(s)[i]);
      }
      proj[s].push_back(new_index[root]);
    }
  }
  std::vector<std::vector<std::size_t>> arrows(obj.shape()->arrows.size());
  for (std::size_t k = 0; k < arrows.size(); ++k) {
    const auto& ar = obj.shape()->arrows[k];
    for (std::size_t i = 0; i < obj.size(ar.from); ++i) {
      if (partition.find(ar.from, i) == i) arrows[k].push_back(proj[ar.to][obj.arrow_index(k, i)]);
    }
  }
  auto q = ObjectBuilder::raw(obj.shape(), std::move(carriers), std::move(arrows), obj.truncation());
  return {q, Morphism::make(obj, q, std::move(proj))};
}

Quotient coequalize_morphisms(const Morphism& f, const Morphism& g) {
  if (!(f.dom() == g.dom()) || !(f.cod() == g.cod())) {
    throw Error(ErrorKind::InvalidArgument, "coequalizer needs a parallel pair");
  }
  Partition p(f.cod());
  for (std::size_t s = 0; s < f.dom().sort_count(); ++s) {
    for (std::size_t i = 0; i < f.dom().size(s); ++i) p.merge(s, f.at(s, i), g.at(s, i));
  }
  return quotient(f.cod(), std::move(p));
}

Factorization factorize(const Morphism& f) {
  const Object& cod = f.cod();
  const std::size_t sorts = cod.sort_count();
  constexpr std::size_t none = std::numeric_limits<std::size_t>::max();
  std::vector<std::vector<std::size_t>> first_preimage(sorts);
  std::vector<std::vector<Atom>> carriers(sorts);
  std::vector<std::vector<std::size_t>> image_index(sorts);
  for (std::size_t s = 0; s < sorts; ++s) {
    first_preimage[s].assign(cod.size(s), none);
    for (std::size_t i = 0; i < f.dom().size(s); ++i) {
      auto& slot = first_preimage[s][f.at(s, i)];
      if (slot == none) slot = i;
    }
    image_index[s].assign(cod.size(s), none);
    for (std::size_t j = 0; j < cod.size(s); ++j) {
      if (first_preimage[s][j] != none) {
        image_index[s][j] = carriers[s].size();
        carriers[s].push_back(cod.carrier(s)[j]);
      }
    }
  }
  std::vector<std::vector<std::size_t>> arrows(cod.shape()->arrows.size());
  for (std::size_t k = 0; k < arrows.size(); ++k) {
    const auto& ar = cod.shape()->arrows[k];
    for (std::size_t j = 0; j < cod.size(ar.from); ++j) {
      if (image_index[ar.from][j] != none) arrows[k].push_back(image_index[ar.to][cod.arrow_index(k, j)]);
    }
  }
  auto image = ObjectBuilder::raw(cod.shape(), std::move(carriers), std::move(arrows), cod.truncation());
  Morphism::Table epi(sorts), mono(sorts), section(sorts);
  for (std::size_t s = 0; s < sorts; ++s) {
    for (std::size_t i = 0; i < f.dom().size(s); ++i) epi[s].push_back(image_index[s][f.at(s, i)]);
    for (std::size_t j = 0; j < cod.size(s); ++j) {
      if (image_index[s][j] != none) {
        mono[s].push_back(j);
        section[s].push_back(first_preimage[s][j]);
      }
    }
  }
  Factorization out{Morphism::make(f.dom(), image, std::move(epi)),
                    InjectionWitness::of(Morphism::make(image, cod, std::move(mono))), section, true};
  const auto& shape_arrows = cod.shape()->arrows;
  for (std::size_t k = 0; k < shape_arrows.size() && out.section_is_morphism; ++k) {
    for (std::size_t j = 0; j < image.size(shape_arrows[k].from); ++j) {
      if (section[shape_arrows[k].to][image.arrow_index(k, j)] !=
          f.dom().arrow_index(k, section[shape_arrows[k].from][j])) {
        out.section_is_morphism = false;
        break;
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------- chains

std::string ChainStatus::str() const {
  std::string out = converged() ? "Converged(" + std::to_string(level) + ")" : "BudgetExhausted";
  if (!growth.empty()) {
    out += " sizes=";
    for (std::size_t i = 0; i < growth.size(); ++i) out += (i ? "," : "") + std::to_string(growth[i]);
  }
  if (!reason.empty()) out += " (" + reason + ")";
  return out;
}

ChainColimit chain_colimit(const std::vector<InjectionWitness>& links, std::size_t budget, const ShapePtr& shape) {
  ChainColimit out{Object::initial(shape), {}};
  if (links.empty()) {
    out.status.kind = ChainStatus::Kind::Converged;
    out.status.level = 0;
    out.status.growth = {0};
    return out;
  }
  out.status.growth.push_back(links.front().mor.dom().size());
  const std::size_t inspected = std::min(budget, links.size());
  for (std::size_t k = 0; k < inspected; ++k) {
    const auto& link = links[k].mor;
    if (k > 0 && !(links[k - 1].mor.cod() == link.dom())) {
      throw Error(ErrorKind::InvalidArgument, "chain links are not composable at " + std::to_string(k));
    }
    if (!link.is_mono()) throw Error(ErrorKind::NonMonoInChain, "link " + std::to_string(k) + " is not injective");
    out.status.growth.push_back(link.cod().size());
    if (link.is_epi()) {
      out.status.kind = ChainStatus::Kind::Converged;
      out.status.level = k;
      out.object = link.dom();
      return out;
    }
  }
  out.status.kind = ChainStatus::Kind::BudgetExhausted;
  out.status.reason = "no bijective link among the first " + std::to_string(inspected);
  out.object = links[inspected - 1].mor.cod().with_truncation(inspected);
  return out;
}

// ---------------------------------------------------------------- enumeration

namespace {

// Sorts ordered so that every arrow target precedes its source.
std::vector<std::size_t> assignment_order(const Shape& shape) {
  std::vector<std::size_t> order;
  std::vector<bool> placed(shape.sorts.size(), false);
  while (order.size() < shape.sorts.size()) {
    bool progress = false;
    for (std::size_t s = 0; s < shape.sorts.size(); ++s) {
      if (placed[s]) continue;
      bool ready = true;
      for (const auto& a : shape.arrows) {
        if (a.from == s && a.to != s && !placed[a.to]) ready = false;
      }
      if (ready) {
        placed[s] = true;
        order.push_back(s);
        progress = true;
      }
    }
    if (!progress) throw Error(ErrorKind::UnsupportedVariant, "cyclic shape");
  }
  return order;
}

}  // namespace

std::vector<Morphism> all_morphisms(const Object& a, const Object& b, std::size_t limit) {
  std::vector<Morphism> out;
  if (!same_shape(*a.shape(), *b.shape())) return out;
  const auto& shape = *a.shape();
  std::vector<std::pair<std::size_t, std::size_t>> slots;
  for (auto s : assignment_order(shape)) {
    for (std::size_t i = 0; i < a.size(s); ++i) slots.emplace_back(s, i);
  }
  Morphism::Table maps(a.sort_count());
  for (std::size_t s = 0; s < a.sort_count(); ++s) maps[s].assign(a.size(s), 0);
  std::function<void(std::size_t)> go = [&](std::size_t pos) {
    if (out.size() >= limit) return;
    if (pos == slots.size()) {
      out.push_back(unchecked_morphism(a, b, maps));
      return;
    }
    const auto [s, i] = slots[pos];
    for (std::size_t c = 0; c < b.size(s); ++c) {
      bool ok = true;
      for (std::size_t k = 0; k < shape.arrows.size() && ok; ++k) {
        if (shape.arrows[k].from == s) ok = b.arrow_index(k, c) == maps[shape.arrows[k].to][a.arrow_index(k, i)];
      }
      if (!ok) continue;
      maps[s][i] = c;
      go(pos + 1);
    }
  };
  go(0);
  return out;
}

std::optional<Morphism> find_mono(const Object& a, const Object& b) {
  if (!same_shape(*a.shape(), *b.shape())) return std::nullopt;
  for (std::size_t s = 0; s < a.sort_count(); ++s) {
    if (a.size(s) > b.size(s)) return std::nullopt;
  }
  const auto& shape = *a.shape();
  if (shape.arrows.empty()) {
    Morphism::Table maps(a.sort_count());
    for (std::size_t s = 0; s < a.sort_count(); ++s) {
      maps[s].resize(a.size(s));
      std::iota(maps[s].begin(), maps[s].end(), std::size_t{0});
    }
    return Morphism::make(a, b, std::move(maps));
  }
  std::vector<std::pair<std::size_t, std::size_t>> slots;
  for (auto s : assignment_order(shape)) {
    for (std::size_t i = 0; i < a.size(s); ++i) slots.emplace_back(s, i);
  }
  Morphism::Table maps(a.sort_count());
  std::vector<std::vector<bool>> used(b.sort_count());
  for (std::size_t s = 0; s < a.sort_count(); ++s) {
    maps[s].assign(a.size(s), 0);
    used[s].assign(b.size(s), false);
  }
  std::function<bool(std::size_t)> go = [&](std::size_t pos) {
    if (pos == slots.size()) return true;
    const auto [s, i] = slots[pos];
    for (std::size_t c = 0; c < b.size(s); ++c) {
      if (used[s][c]) continue;
      bool ok = true;
      for (std::size_t k = 0; k < shape.arrows.size() && ok; ++k) {
        if (shape.arrows[k].from == s) ok = b.arrow_index(k, c) == maps[shape.arrows[k].to][a.arrow_index(k, i)];
      }
      if (!ok) continue;
      maps[s][i] = c;
      used[s][c] = true;
      if (go(pos + 1)) return true;
      used[s][c] = false;
    }
    return false;
  };
  if (!go(0)) return std::nullopt;
  return Morphism::make(a, b, std::move(maps));
}

std::size_t count_functions(const Object& a, const Object& b) {
  std::size_t n = 1;
  for (std::size_t s = 0; s < a.sort_count(); ++s) {
    for (std::size_t i = 0; i < a.size(s); ++i) {
      if (b.size(s) != 0 && n > kAtomCeiling * 1000 / b.size(s)) return std::numeric_limits<std::size_t>::max();
      n *= b.size(s);
    }
  }
  return n;
}

namespace {

std::string letter_name(std::size_t i) {
  static const char* letters = "abcdefghijklmnopqrstuvwxyz";
  return i < 26 ? std::string(1, letters[i]) : "a" + std::to_string(i);
}

}  // namespace

Object sample_set(std::size_t n) {
  std::vector<Atom> atoms;
  for (std::size_t i = 0; i < n; ++i) atoms.push_back(Atom::name(letter_name(i)));
  return Object::set(std::move(atoms));
}

std::vector<Object> sample_sets(std::size_t max_size) {
  std::vector<Object> out;
  for (std::size_t n = 0; n <= max_size; ++n) out.push_back(sample_set(n));
  return out;
}

std::vector<Object> sample_graphs(std::size_t max_loops) {
  std::vector<Object> out;
  for (std::size_t nv = 0; nv <= 2; ++nv) {
    std::vector<Atom> vs;
    for (std::size_t i = 0; i < nv; ++i) vs.push_back(Atom::name("v" + std::to_string(i)));
    std::vector<std::pair<std::size_t, std::size_t>> endpoints;
    for (std::size_t s = 0; s < nv; ++s) {
      for (std::size_t t = 0; t < nv; ++t) endpoints.emplace_back(s, t);
    }
    // Up to two edges, endpoint choices non-decreasing to skip relabelings.
    out.push_back(Object::graph(vs, {}));
    for (std::size_t p = 0; p < endpoints.size(); ++p) {
      const auto [s1, t1] = endpoints[p];
      const std::size_t loops1 = s1 == t1 ? 1 : 0;
      if (loops1 <= max_loops) {
        out.push_back(Object::graph(vs, {{Atom::name("e0"), vs[s1], vs[t1]}}));
      }
      for (std::size_t q = p; q < endpoints.size(); ++q) {
        const auto [s2, t2] = endpoints[q];
        if (loops1 + (s2 == t2 ? 1 : 0) > max_loops) continue;
        out.push_back(Object::graph(vs, {{Atom::name("e0"), vs[s1], vs[t1]}, {Atom::name("e1"), vs[s2], vs[t2]}}));
      }
    }
  }
  return out;
}

std::vector<Object> sample_sorted(const ShapePtr& shape, std::size_t max_total) {
  std::vector<Object> out;
  const std::size_t k = shape->sorts.size();
  std::vector<std::size_t> sizes(k, 0);
  std::function<void(std::size_t, std::size_t)> go = [&](std::size_t sort, std::size_t left) {
    if (sort == k) {
      std::vector<std::vector<Atom>> carriers(k);
      for (std::size_t s = 0; s < k; ++s) {
        for (std::size_t i = 0; i < sizes[s]; ++i) carriers[s].push_back(Atom::name(letter_name(i)));
      }
      out.push_back(Object::make(shape, std::move(carriers)));
      return;
    }
    for (std::size_t n = 0; n <= left; ++n) {
      sizes[sort] = n;
      go(sort + 1, left - n);
    }
  };
  go(0, max_total);
  return out;
}

std::vector<Object> sample_objects(const ShapePtr& shape, std::size_t max_size) {
  switch (shape->variant) {
    case Variant::FinSet: return sample_sets(max_size);
    case Variant::SortedFinSet: return sample_sorted(shape, max_size);
    case Variant::FinGraph: return sample_graphs(std::min<std::size_t>(max_size, 2));
    case Variant::Family: break;
  }
  throw Error(ErrorKind::UnsupportedVariant, "no sample objects for families");
}

}  // namespace moncol
