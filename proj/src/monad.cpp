#include "moncol/monad.hpp"

#include <algorithm>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include "moncol/cache.hpp"

namespace moncol {

std::optional<std::vector<SortedAtom>> MonadImpl::support(std::size_t, const Atom&) const { return std::nullopt; }

std::vector<Atom> MonadImpl::generators(const Object& x, std::size_t sort) const {
  const Object tx = apply(x);
  return {tx.carrier(sort).begin(), tx.carrier(sort).end()};
}

Morphism Monad::map(const Morphism& f) const { return map(f, apply(f.dom()), apply(f.cod())); }

Morphism Monad::map(const Morphism& f, const Object& ta, const Object& tb) const {
  return Morphism::from_fn(ta, tb, [&](std::size_t s, const Atom& t) { return impl_->fmap(f, s, t); });
}

Morphism Monad::unit(const Object& a) const {
  return Morphism::from_fn(a, apply(a), [&](std::size_t s, const Atom& x) { return impl_->unit(a, s, x); });
}

Morphism Monad::mult(const Object& a) const {
  const Object ta = apply(a);
  return Morphism::from_fn(apply(ta), ta, [&](std::size_t s, const Atom& tt) { return impl_->join(a, s, tt); });
}

Endofunctor Monad::functor() const {
  Monad self = *this;
  Endofunctor h;
  h.name = name();
  h.shape = shape();
  h.on_obj = [self](const Object& x) { return self.apply(x); };
  h.on_mor = [self](const Morphism& f) { return self.map(f); };
  h.preserves_monos_claimed = impl_->preserves_monos_claimed();
  h.finitary_budget = truncation();
  return h;
}

// ---------------------------------------------------------------- monoids

Monoid Monoid::cyclic(std::size_t n) {
  Monoid m;
  for (std::size_t i = 0; i < n; ++i) m.elements.push_back(std::to_string(i));
  m.table.assign(n, std::vector<std::size_t>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) m.table[i][j] = (i + j) % n;
  }
  return m;
}

std::size_t Monoid::index_of(const std::string& e) const {
  auto it = std::find(elements.begin(), elements.end(), e);
  if (it == elements.end()) throw Error(ErrorKind::InvalidArgument, "unknown monoid element " + e);
  return static_cast<std::size_t>(it - elements.begin());
}

bool Monoid::lawful() const {
  const std::size_t n = elements.size();
  if (unit >= n || table.size() != n) return false;
  for (const auto& row : table) {
    if (row.size() != n) return false;
    for (auto v : row) {
      if (v >= n) return false;
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (table[unit][i] != i || table[i][unit] != i) return false;
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t k = 0; k < n; ++k) {
        if (table[table[i][j]][k] != table[i][table[j][k]]) return false;
      }
    }
  }
  return true;
}

// ---------------------------------------------------------------- builtins

namespace {

Atom arrow_of(const Object& a, std::size_t arrow, const Atom& x) {
  const std::size_t from = a.shape()->arrows[arrow].from;
  auto i = a.index_of(from, x);
  if (!i) throw Error(ErrorKind::InvalidArgument, x.str() + " is not an element of " + a.str());
  return a.arrow_apply(arrow, *i);
}

/// Object with the given carriers whose structure arrows are computed elementwise.
Object build(const ShapePtr& shape, std::vector<std::vector<Atom>> carriers,
             const std::function<Atom(std::size_t, const Atom&)>& act) {
  std::vector<std::vector<std::pair<Atom, Atom>>> arrows(shape->arrows.size());
  for (std::size_t k = 0; k < shape->arrows.size(); ++k) {
    for (const auto& x : carriers[shape->arrows[k].from]) arrows[k].emplace_back(x, act(k, x));
  }
  return Object::make(shape, std::move(carriers), arrows);
}

void require_shape(const ShapePtr& expected, const Object& a, const std::string& who) {
  if (!same_shape(*expected, *a.shape())) {
    throw Error(ErrorKind::MixedVariants, who + " on " + to_string(expected->variant) + " applied to a " +
                                              to_string(a.variant()) + " object");
  }
}

class IdentityImpl : public MonadImpl {
 public:
  explicit IdentityImpl(ShapePtr shape) : shape_(std::move(shape)) {}
  std::string name() const override { return "Id"; }
  ShapePtr shape() const override { return shape_; }
  Object apply(const Object& a) const override { return a; }
  Atom fmap(const Morphism& f, std::size_t s, const Atom& t) const override { return f(s, t); }
  Atom unit(const Object&, std::size_t, const Atom& x) const override { return x; }
  Atom join(const Object&, std::size_t, const Atom& tt) const override { return tt; }
  std::optional<std::vector<SortedAtom>> support(std::size_t s, const Atom& t) const override {
    return std::vector<SortedAtom>{{s, t}};
  }

 private:
  ShapePtr shape_;
};

class ExceptionImpl : public MonadImpl {
 public:
  ExceptionImpl(Object e, bool zero) : e_(std::move(e)), zero_(zero) {}
  std::string name() const override { return std::string(zero_ ? "ExceptionZero" : "Exception") + e_.str(); }
  ShapePtr shape() const override { return e_.shape(); }
  Object apply(const Object& a) const override {
    require_shape(e_.shape(), a, name());
    if (zero_ && a.empty()) return a;
    return coproduct(e_.shape(), {a, e_}).object;
  }
  Atom fmap(const Morphism& f, std::size_t s, const Atom& t) const override {
    return t.index() == 0 ? Atom::tag(0, f(s, t.inner())) : t;
  }
  Atom unit(const Object&, std::size_t, const Atom& x) const override { return Atom::tag(0, x); }
  Atom join(const Object&, std::size_t, const Atom& tt) const override { return tt.index() == 0 ? tt.inner() : tt; }
  std::optional<std::vector<SortedAtom>> support(std::size_t s, const Atom& t) const override {
    if (t.index() == 0) return std::vector<SortedAtom>{{s, t.inner()}};
    return std::vector<SortedAtom>{};
  }

 private:
  Object e_;
  bool zero_;
};

class TerminalImpl : public MonadImpl {
 public:
  TerminalImpl(ShapePtr shape, bool zero) : shape_(std::move(shape)), zero_(zero) {}
  std::string name() const override { return zero_ ? "TerminalZero" : "Terminal"; }
  ShapePtr shape() const override { return shape_; }
  Object apply(const Object& a) const override {
    require_shape(shape_, a, name());
    if (zero_ && a.empty()) return a;
    return Object::terminal(shape_);
  }
  Atom fmap(const Morphism&, std::size_t, const Atom&) const override { return star(); }
  Atom unit(const Object&, std::size_t, const Atom&) const override { return star(); }
  Atom join(const Object&, std::size_t, const Atom&) const override { return star(); }
  std::optional<std::vector<SortedAtom>> support(std::size_t, const Atom&) const override {
    return std::vector<SortedAtom>{};
  }

 private:
  static Atom star() { return Atom::name("*"); }
  ShapePtr shape_;
  bool zero_;
};

class ReaderImpl : public MonadImpl {
 public:
  ReaderImpl(ShapePtr shape, std::vector<Atom> exponent) : shape_(std::move(shape)), exponent_(std::move(exponent)) {}
  std::string name() const override { return "Reader" + Object::set(exponent_).str(); }
  ShapePtr shape() const override { return shape_; }
  Object apply(const Object& a) const override {
    require_shape(shape_, a, name());
    const std::size_t k = exponent_.size();
    std::vector<std::vector<Atom>> carriers(a.sort_count());
    for (std::size_t s = 0; s < a.sort_count(); ++s) {
      std::size_t count = 1;
      for (std::size_t i = 0; i < k; ++i) {
        count *= a.size(s);
        if (count > kAtomCeiling) throw Error(ErrorKind::CeilingExceeded, name() + " of " + a.str());
      }
      std::vector<std::size_t> digits(k, 0);
      for (std::size_t c = 0; c < count; ++c) {
        std::vector<Atom> parts;
        for (auto d : digits) parts.push_back(a.carrier(s)[d]);
        carriers[s].push_back(Atom::tuple(std::move(parts)));
        for (std::size_t i = k; i-- > 0;) {
          if (++digits[i] < a.size(s)) break;
          digits[i] = 0;
        }
      }
    }
    return build(shape_, std::move(carriers), [&](std::size_t arrow, const Atom& t) {
      std::vector<Atom> parts;
      for (const auto& c : t.children()) parts.push_back(arrow_of(a, arrow, c));
      return Atom::tuple(std::move(parts));
    });
  }
  Atom fmap(const Morphism& f, std::size_t s, const Atom& t) const override {
    std::vector<Atom> parts;
    for (const auto& c : t.children()) parts.push_back(f(s, c));
    return Atom::tuple(std::move(parts));
  }
  Atom unit(const Object&, std::size_t, const Atom& x) const override {
    return Atom::tuple(std::vector<Atom>(exponent_.size(), x));
  }
  Atom join(const Object&, std::size_t, const Atom& tt) const override {
    std::vector<Atom> parts;
    for (std::size_t e = 0; e < exponent_.size(); ++e) parts.push_back(tt.child(e).child(e));
    return Atom::tuple(std::move(parts));
  }
  std::optional<std::vector<SortedAtom>> support(std::size_t s, const Atom& t) const override {
    std::vector<SortedAtom> out;
    for (const auto& c : t.children()) out.emplace_back(s, c);
    return out;
  }

 private:
  ShapePtr shape_;
  std::vector<Atom> exponent_;
};

class WriterImpl : public MonadImpl {
 public:
  WriterImpl(ShapePtr shape, Monoid m, bool project) : shape_(std::move(shape)), m_(std::move(m)), project_(project) {
    if (!m_.lawful()) throw Error(ErrorKind::InvalidArgument, "writer needs a lawful monoid");
  }
  std::string name() const override {
    std::string out = "Writer(";
    for (std::size_t i = 0; i < m_.elements.size(); ++i) out += (i ? "," : "") + m_.elements[i];
    return out + (project_ ? ";project)" : ")");
  }
  ShapePtr shape() const override { return shape_; }
  Object apply(const Object& a) const override {
    require_shape(shape_, a, name());
    std::vector<std::vector<Atom>> carriers(a.sort_count());
    for (std::size_t s = 0; s < a.sort_count(); ++s) {
      for (const auto& e : m_.elements) {
        for (const auto& x : a.carrier(s)) carriers[s].push_back(pair(e, x));
      }
    }
    return build(shape_, std::move(carriers), [&](std::size_t arrow, const Atom& t) {
      return Atom::tuple({t.child(0), arrow_of(a, arrow, t.child(1))});
    });
  }
  Atom fmap(const Morphism& f, std::size_t s, const Atom& t) const override {
    return Atom::tuple({t.child(0), f(s, t.child(1))});
  }
  Atom unit(const Object&, std::size_t, const Atom& x) const override { return pair(m_.elements[m_.unit], x); }
  Atom join(const Object&, std::size_t, const Atom& tt) const override {
    const Atom& inner = tt.child(1);
    if (project_) return inner;
    const std::size_t m = m_.index_of(tt.child(0).text());
    const std::size_t n = m_.index_of(inner.child(0).text());
    return pair(m_.elements[m_.table[m][n]], inner.child(1));
  }
  std::optional<std::vector<SortedAtom>> support(std::size_t s, const Atom& t) const override {
    return std::vector<SortedAtom>{{s, t.child(1)}};
  }

 private:
  static Atom pair(const std::string& m, const Atom& x) { return Atom::tuple({Atom::name(m), x}); }
  ShapePtr shape_;
  Monoid m_;
  bool project_;
};

class PowersetImpl : public MonadImpl {
 public:
  explicit PowersetImpl(ShapePtr shape) : shape_(std::move(shape)) {
    if (!shape_->arrows.empty()) {
      throw Error(ErrorKind::UnsupportedVariant, "the nonempty powerset monad is only provided on (sorted) sets");
    }
  }
  std::string name() const override { return "NonemptyPowerset"; }
  ShapePtr shape() const override { return shape_; }
  Object apply(const Object& a) const override {
    require_shape(shape_, a, name());
    std::vector<std::vector<Atom>> carriers(a.sort_count());
    for (std::size_t s = 0; s < a.sort_count(); ++s) carriers[s] = subsets(a, s);
    return Object::make(shape_, std::move(carriers));
  }
  Atom fmap(const Morphism& f, std::size_t s, const Atom& t) const override {
    std::vector<Atom> image;
    for (const auto& m : t.children()) image.push_back(f(s, m));
    return Atom::set(std::move(image));
  }
  Atom unit(const Object&, std::size_t, const Atom& x) const override { return Atom::set({x}); }
  Atom join(const Object&, std::size_t, const Atom& tt) const override {
    std::vector<Atom> all;
    for (const auto& t : tt.children()) all.insert(all.end(), t.children().begin(), t.children().end());
    return Atom::set(std::move(all));
  }
  std::optional<std::vector<SortedAtom>> support(std::size_t s, const Atom& t) const override {
    std::vector<SortedAtom> out;
    for (const auto& c : t.children()) out.emplace_back(s, c);
    return out;
  }
  /// Both sides of every law preserve unions, so on large inputs
  /// singletons and pairs are enough.
  std::vector<Atom> generators(const Object& x, std::size_t sort) const override {
    if (x.size(sort) < 16) return subsets(x, sort);
    std::vector<Atom> out;
    const auto c = x.carrier(sort);
    for (std::size_t i = 0; i < c.size(); ++i) {
      out.push_back(Atom::set({c[i]}));
      for (std::size_t j = i + 1; j < c.size(); ++j) out.push_back(Atom::set({c[i], c[j]}));
    }
    return out;
  }

 private:
  std::vector<Atom> subsets(const Object& a, std::size_t s) const {
    const std::size_t n = a.size(s);
    if (n >= 20 || (std::size_t{1} << n) - 1 > kAtomCeiling) {
      throw Error(ErrorKind::CeilingExceeded, "powerset of " + std::to_string(n) + " atoms");
    }
    std::vector<Atom> out;
    for (std::size_t mask = 1; mask < (std::size_t{1} << n); ++mask) {
      std::vector<Atom> members;
      for (std::size_t i = 0; i < n; ++i) {
        if (mask & (std::size_t{1} << i)) members.push_back(a.carrier(s)[i]);
      }
      out.push_back(Atom::set(std::move(members)));
    }
    return out;
  }
  ShapePtr shape_;
};

}  // namespace

Monad identity_monad(const ShapePtr& shape) { return Monad(std::make_shared<IdentityImpl>(shape)); }
Monad exception_monad(const Object& e) { return Monad(std::make_shared<ExceptionImpl>(e, false)); }
Monad exception_zero_monad(const Object& e) { return Monad(std::make_shared<ExceptionImpl>(e, true)); }
Monad terminal_monad(const ShapePtr& shape) { return Monad(std::make_shared<TerminalImpl>(shape, false)); }
Monad terminal_zero_monad(const ShapePtr& shape) { return Monad(std::make_shared<TerminalImpl>(shape, true)); }
Monad reader_monad(const ShapePtr& shape, std::vector<Atom> exponent) {
  return Monad(std::make_shared<ReaderImpl>(shape, std::move(exponent)));
}
Monad writer_monad(const ShapePtr& shape, Monoid m, bool project) {
  return Monad(std::make_shared<WriterImpl>(shape, std::move(m), project));
}
Monad nonempty_powerset_monad(const ShapePtr& shape) { return Monad(std::make_shared<PowersetImpl>(shape)); }

Monad builtin_monad(BuiltinKind kind, const BuiltinParams& params, const ShapePtr& shape) {
  auto exceptions = [&] {
    std::vector<Atom> atoms;
    for (const auto& n : params.names) atoms.push_back(Atom::name(n));
    if (shape->variant == Variant::FinGraph) return Object::graph(atoms, {});
    return Object::make(shape, std::vector<std::vector<Atom>>(shape->sorts.size(), atoms),
                        std::vector<std::vector<std::pair<Atom, Atom>>>(shape->arrows.size()));
  };
  switch (kind) {
    case BuiltinKind::Exception: return exception_monad(exceptions());
    case BuiltinKind::ExceptionZero: return exception_zero_monad(exceptions());
    case BuiltinKind::Terminal: return terminal_monad(shape);
    case BuiltinKind::TerminalZero: return terminal_zero_monad(shape);
    case BuiltinKind::Reader: {
      std::vector<Atom> exponent;
      for (const auto& n : params.names) exponent.push_back(Atom::name(n));
      return reader_monad(shape, std::move(exponent));
    }
    case BuiltinKind::Writer: return writer_monad(shape, params.monoid, params.writer_project);
    case BuiltinKind::NonemptyPowerset: return nonempty_powerset_monad(shape);
  }
  throw Error(ErrorKind::InvalidArgument, "unknown builtin monad");
}

// ---------------------------------------------------------------- morphisms

Morphism MonadMorphism::at(const Object& a) const { return at(a, source.apply(a), target.apply(a)); }

Morphism MonadMorphism::at(const Object& a, const Object& sa, const Object& ta) const {
  return Morphism::from_fn(sa, ta, [&](std::size_t s, const Atom& x) { return component(a, s, x); });
}

MonadMorphism identity_morphism(const Monad& t) {
  return {"id", t, t, [](const Object&, std::size_t, const Atom& x) { return x; }};
}

MonadMorphism compose(const MonadMorphism& g, const MonadMorphism& f) {
  auto gc = g.component;
  auto fc = f.component;
  return {g.name + "." + f.name, f.source, g.target,
          [gc, fc](const Object& a, std::size_t s, const Atom& x) { return gc(a, s, fc(a, s, x)); }};
}

MonadMorphism exception_morphism(const Monad& source, const Monad& target, std::function<Atom(const Atom&)> on) {
  return {"exc", source, target, [on](const Object&, std::size_t, const Atom& t) {
            return t.index() == 0 ? t : Atom::tag(1, on(t.inner()));
          }};
}

// ---------------------------------------------------------------- law checks

std::vector<Object> law_samples(const ShapePtr& shape, std::size_t max_size) {
  if (shape->variant == Variant::FinGraph) {
    std::vector<Object> out;
    for (auto& g : sample_graphs(2)) {
      if (g.size() <= max_size) out.push_back(std::move(g));
    }
    return out;
  }
  return sample_objects(shape, max_size);
}

LawReport monad_law_check(const Monad& t, const std::vector<Object>& samples, std::size_t hom_limit) {
  LawReport report;
  report.subject = "monad " + t.name();
  std::vector<std::optional<Object>> images;
  for (const auto& a : samples) {
    const std::string where = a.str();
    images.emplace_back();
    try {
      const Object ta = t.apply(a);
      images.back() = ta;
      const Morphism eta = t.unit(a);
      const Object tta = t.apply(ta);
      const Morphism mu = Morphism::from_fn(tta, ta, [&](std::size_t s, const Atom& x) { return t.join(a, s, x); });
      const Morphism t_eta = t.map(eta, ta, tta);
      for (std::size_t s = 0; s < ta.sort_count(); ++s) {
        for (const auto& x : ta.carrier(s)) {
          const Atom l = t.join(a, s, t.unit(ta, s, x));
          report.expect(l == x, "left unit: mu . eta T = id", where + " at " + x.str(), "got " + l.str());
          const Atom r = t.join(a, s, t_eta.image(s, *ta.index_of(s, x)));
          report.expect(r == x, "right unit: mu . T eta = id", where + " at " + x.str(), "got " + r.str());
        }
        for (const auto& ttt : t.generators(tta, s)) {
          const Atom l = t.join(a, s, t.fmap(mu, s, ttt));
          const Atom r = t.join(a, s, t.join(ta, s, ttt));
          report.expect(l == r, "associativity: mu . T mu = mu . mu T", where + " at " + ttt.str(),
                        l.str() + " vs " + r.str());
        }
      }
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::CeilingExceeded) {
        report.note("skipped " + where + ": " + e.what());
      } else {
        report.fail("well-formed", where, e.what());
      }
    }
  }
  for (std::size_t i = 0; i < samples.size(); ++i) {
    if (!images[i]) continue;
    const Object& a = samples[i];
    const Object& ta = *images[i];
    report.expect(t.map(Morphism::identity(a), ta, ta) == Morphism::identity(ta), "functor identity", a.str());
    for (std::size_t j = 0; j < samples.size(); ++j) {
      if (!images[j]) continue;
      const Object& b = samples[j];
      const Object& tb = *images[j];
      for (const auto& f : all_morphisms(a, b, hom_limit)) {
        const std::string where = f.str();
        try {
          const Morphism tf = t.map(f, ta, tb);
          if (t.impl().preserves_monos_claimed() && f.is_mono()) {
            report.expect(tf.is_mono(), "mono preservation", where, "T f = " + tf.str());
          }
          for (std::size_t s = 0; s < a.sort_count(); ++s) {
            for (const auto& x : a.carrier(s)) {
              const Atom l = tf(s, t.unit(a, s, x));
              const Atom r = t.unit(b, s, f(s, x));
              report.expect(l == r, "unit naturality", where + " at " + x.str(), l.str() + " vs " + r.str());
            }
            for (const auto& tt : t.generators(ta, s)) {
              const Atom l = t.fmap(f, s, t.join(a, s, tt));
              const Atom r = t.join(b, s, t.fmap(tf, s, tt));
              report.expect(l == r, "multiplication naturality", where + " at " + tt.str(),
                            l.str() + " vs " + r.str());
            }
          }
        } catch (const Error& e) {
          if (e.kind() == ErrorKind::CeilingExceeded) {
            report.note("skipped " + where + ": " + e.what());
          } else {
            report.fail("well-formed", where, e.what());
          }
        }
      }
    }
  }
  return report;
}

LawReport morphism_law_check(const MonadMorphism& f, const std::vector<Object>& samples, std::size_t hom_limit) {
  LawReport report;
  report.subject = "monad morphism " + f.name + ": " + f.source.name() + " -> " + f.target.name();
  const Monad& S = f.source;
  const Monad& T = f.target;
  for (const auto& a : samples) {
    const std::string where = a.str();
    try {
      const Object sa = S.apply(a);
      const Object ta = T.apply(a);
      const Morphism fa = f.at(a, sa, ta);
      for (std::size_t s = 0; s < a.sort_count(); ++s) {
        for (const auto& x : a.carrier(s)) {
          const Atom l = fa(s, S.unit(a, s, x));
          report.expect(l == T.unit(a, s, x), "unit: f . eta = eta", where + " at " + x.str(), "got " + l.str());
        }
      }
      const Object ssa = S.apply(sa);
      for (std::size_t s = 0; s < sa.sort_count(); ++s) {
        for (const auto& ss : S.generators(sa, s)) {
          const Atom l = fa(s, S.join(a, s, ss));
          const Atom r = T.join(a, s, T.fmap(fa, s, f.component(sa, s, ss)));
          report.expect(l == r, "multiplication: f . mu = mu . (f*f)", where + " at " + ss.str(),
                        l.str() + " vs " + r.str());
        }
      }
      for (const auto& b : samples) {
        for (const auto& g : all_morphisms(a, b, hom_limit)) {
          for (std::size_t s = 0; s < sa.sort_count(); ++s) {
            for (const auto& x : sa.carrier(s)) {
              const Atom l = f.component(b, s, S.fmap(g, s, x));
              const Atom r = T.fmap(g, s, fa(s, x));
              report.expect(l == r, "naturality", g.str() + " at " + x.str(), l.str() + " vs " + r.str());
            }
          }
        }
      }
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::CeilingExceeded) {
        report.note("skipped " + where + ": " + e.what());
      } else {
        report.fail("well-formed", where, e.what());
      }
    }
  }
  return report;
}

// ---------------------------------------------------------------- separated monads

Object SeparatedRep::complement(const Object& a) const {
  const Object ta = monad_.apply(a);
  std::vector<std::vector<Atom>> carriers(ta.sort_count());
  for (std::size_t s = 0; s < ta.sort_count(); ++s) {
    std::unordered_set<Atom, AtomHash> units;
    for (const auto& x : a.carrier(s)) units.insert(monad_.unit(a, s, x));
    if (units.size() != a.size(s)) {
      throw Error(ErrorKind::NonMonicUnit, "unit of " + monad_.name() + " is not injective on " + a.str());
    }
    for (const auto& t : ta.carrier(s)) {
      if (!units.count(t)) carriers[s].push_back(t);
    }
  }
  std::vector<std::vector<std::pair<Atom, Atom>>> arrows(ta.shape()->arrows.size());
  for (std::size_t k = 0; k < arrows.size(); ++k) {
    const auto& ar = ta.shape()->arrows[k];
    for (const auto& t : carriers[ar.from]) {
      const Atom target = ta.arrow_apply(k, *ta.index_of(ar.from, t));
      if (!std::binary_search(carriers[ar.to].begin(), carriers[ar.to].end(), target)) {
        throw Error(ErrorKind::NotSeparated, monad_.name() + ": complement of the unit is not a subobject at " + t.str());
      }
      arrows[k].emplace_back(t, target);
    }
  }
  return Object::make(ta.shape(), std::move(carriers), arrows, ta.truncation());
}

Morphism SeparatedRep::complement_map(const Morphism& m) const {
  if (!m.is_mono()) throw Error(ErrorKind::MonoViolation, "complement acts on monomorphisms only");
  const Object ca = complement(m.dom());
  const Object cb = complement(m.cod());
  Morphism out;
  try {
    out = Morphism::from_fn(ca, cb, [&](std::size_t s, const Atom& t) { return monad_.fmap(m, s, t); });
  } catch (const Error& e) {
    throw Error(ErrorKind::NotSeparated, monad_.name() + ": S(m) leaves the complement: " + e.what());
  }
  if (!out.is_mono()) throw Error(ErrorKind::NotSeparated, monad_.name() + ": S(m) is not injective on complements");
  return out;
}

Endofunctor SeparatedRep::complement_functor() const {
  SeparatedRep self = *this;
  Endofunctor h;
  h.name = monad_.name() + "-bar";
  h.shape = monad_.shape();
  h.on_obj = [self](const Object& x) { return self.complement(x); };
  h.on_mor = [self](const Morphism& m) { return self.complement_map(m); };
  h.finitary_budget = monad_.truncation();
  return h;
}

SeparatedRep unit_complement(const Monad& t, const std::vector<Object>& samples) {
  LawReport cert;
  cert.subject = "separated " + t.name();
  SeparatedRep rep(t, {});
  if (!t.impl().preserves_monos_claimed()) {
    throw Error(ErrorKind::NotSeparated, t.name() + " does not preserve monomorphisms");
  }
  for (const auto& a : samples) {
    const Object ta = t.apply(a);
    const Object ca = rep.complement(a);
    const auto sum = coproduct(a.shape(), {a, ca});
    const Morphism assemble = copair(sum, {t.unit(a), Morphism::inclusion(ca, ta)}, ta);
    if (!cert.expect(assemble.is_iso(), "S A = A + S-bar A", a.str(), "[eta, incl] = " + assemble.str())) {
      throw Error(ErrorKind::NotSeparated, t.name() + ": unit and complement do not cover " + ta.str());
    }
  }
  for (const auto& a : samples) {
    for (const auto& b : samples) {
      for (const auto& m : all_morphisms(a, b, 4096)) {
        if (!m.is_mono()) continue;
        rep.complement_map(m);
        cert.pass();
      }
    }
  }
  return SeparatedRep(t, std::move(cert));
}

// ---------------------------------------------------------------- factorization

namespace {

class ImageImpl : public MonadImpl {
 public:
  explicit ImageImpl(MonadMorphism f) : f_(std::move(f)) {}
  std::string name() const override { return "Im(" + f_.name + ")"; }
  ShapePtr shape() const override { return f_.target.shape(); }
  Object apply(const Object& a) const override {
    return cache_.get(a, [&] { return factorize(f_.at(a)).epi.cod(); });
  }
  Atom fmap(const Morphism& g, std::size_t s, const Atom& t) const override { return f_.target.fmap(g, s, t); }
  Atom unit(const Object& a, std::size_t s, const Atom& x) const override { return f_.target.unit(a, s, x); }
  Atom join(const Object& a, std::size_t s, const Atom& rr) const override {
    const Object ra = apply(a);
    const Morphism incl = inclusions_.get(a, [&] { return Morphism::inclusion(ra, f_.target.apply(a)); });
    const Atom out = f_.target.join(a, s, f_.target.fmap(incl, s, rr));
    if (!ra.contains(s, out)) {
      throw Error(ErrorKind::FillInFailure, "multiplication leaves the image at " + rr.str());
    }
    return out;
  }
  std::optional<std::vector<SortedAtom>> support(std::size_t s, const Atom& t) const override {
    return f_.target.support(s, t);
  }
  std::vector<Atom> generators(const Object& x, std::size_t sort) const override {
    const Object rx = apply(x);
    std::vector<Atom> out;
    for (auto& t : f_.target.generators(x, sort)) {
      if (rx.contains(sort, t)) out.push_back(std::move(t));
    }
    return out;
  }
  std::optional<std::size_t> truncation() const override { return f_.target.truncation(); }

 private:
  MonadMorphism f_;
  ObjectCache<Object> cache_;
  ObjectCache<Morphism> inclusions_;
};

}  // namespace

MonadFactorization factorize_monad_morphism(const MonadMorphism& f, const std::vector<Object>& samples) {
  Monad image(std::make_shared<ImageImpl>(f));
  const Monad& S = f.source;
  auto fc = f.component;
  MonadMorphism epi{"e(" + f.name + ")", S, image, fc};
  MonadMorphism mono{"m(" + f.name + ")", image, f.target, [](const Object&, std::size_t, const Atom& x) { return x; }};
  LawReport report;
  report.subject = "factorization of " + f.name;
  for (const auto& a : samples) {
    const std::string where = a.str();
    const Morphism fa = f.at(a);
    const Factorization fact = factorize(fa);
    report.expect(fact.epi.is_epi(), "e surjective", where);
    report.expect(fact.mono.mor.is_mono(), "m injective", where);
    report.expect(compose(fact.mono.mor, fact.epi) == fa, "f = m . e", where);
    // Diagonal fill-in: mu^R . (e*e) = e . mu^S, with e*e epic.
    const Object sa = S.apply(a);
    const Object ra = image.apply(a);
    const Object rra = image.apply(ra);
    const Morphism ea = Morphism::make(sa, ra, fact.epi.table());
    const Object ssa = S.apply(sa);
    for (std::size_t s = 0; s < sa.sort_count(); ++s) {
      std::unordered_map<Atom, Atom, AtomHash> fill;
      const bool full = ssa.size(s) <= kAtomCeiling / 4;
      const std::vector<Atom> domain =
          full ? std::vector<Atom>(ssa.carrier(s).begin(), ssa.carrier(s).end()) : S.generators(sa, s);
      for (const auto& ss : domain) {
        const Atom lhs = fa(s, S.join(a, s, ss));
        const Atom rr = f.component(ra, s, S.fmap(ea, s, ss));
        if (!rra.contains(s, rr)) throw Error(ErrorKind::FillInFailure, "e*e leaves R R A at " + ss.str());
        auto [it, fresh] = fill.emplace(rr, lhs);
        if (!fresh && !(it->second == lhs)) {
          throw Error(ErrorKind::FillInFailure, "fill-in is not well defined at " + rr.str());
        }
        report.expect(image.join(a, s, rr) == lhs, "fill-in square", where + " at " + ss.str());
      }
      if (full) report.expect(fill.size() == rra.size(s), "e*e epic", where);
    }
  }
  report.merge(monad_law_check(image, samples));
  report.merge(morphism_law_check(epi, samples));
  report.merge(morphism_law_check(mono, samples));
  return {std::move(epi), std::move(mono), std::move(image), std::move(report)};
}

}  // namespace moncol
