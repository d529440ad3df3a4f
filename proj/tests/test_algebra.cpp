#include <functional>

#include "doctest.h"
#include "moncol/algebra.hpp"

using namespace moncol;

namespace {

Monad exc(std::initializer_list<const char*> e) { return exception_monad(Object::set(names(e))); }

std::size_t power(std::size_t b, std::size_t e) {
  std::size_t r = 1;
  while (e--) r *= b;
  return r;
}

// Brute force over all self-maps of an n-element set.
std::size_t count_involutions(std::size_t n) {
  std::size_t count = 0;
  std::vector<std::size_t> f(n, 0);
  for (std::size_t code = 0; code < power(n, n); ++code) {
    std::size_t c = code;
    for (auto& x : f) {
      x = c % n;
      c /= n;
    }
    bool ok = true;
    for (std::size_t i = 0; i < n; ++i) ok = ok && f[f[i]] == i;
    count += ok;
  }
  return count;
}

// Idempotent, commutative, associative binary operations on an n-element set.
std::size_t count_semilattices(std::size_t n) {
  std::size_t count = 0;
  std::vector<std::size_t> op(n * n);
  for (std::size_t code = 0; code < power(n, n * n); ++code) {
    std::size_t c = code;
    for (auto& x : op) {
      x = c % n;
      c /= n;
    }
    auto m = [&](std::size_t a, std::size_t b) { return op[a * n + b]; };
    bool ok = true;
    for (std::size_t a = 0; a < n && ok; ++a) {
      ok = m(a, a) == a;
      for (std::size_t b = 0; b < n && ok; ++b) {
        ok = m(a, b) == m(b, a);
        for (std::size_t d = 0; d < n && ok; ++d) ok = m(m(a, b), d) == m(a, m(b, d));
      }
    }
    count += ok;
  }
  return count;
}

MultiAlgebra free_algebra(const Monad& t, const Object& a) { return {t.apply(a), {t.mult(a)}}; }

}  // namespace

TEST_CASE("solver counts graph morphisms") {
  for (const auto& g : sample_graphs(2)) {
    for (const auto& h : sample_graphs(1)) {
      MapSolver solver(g, h);
      CHECK(solver.solve().size() == all_morphisms(g, h).size());
    }
  }
  MapSolver fixed(sample_set(2), sample_set(3));
  fixed.fix(fixed.var(0, 0), 2);
  fixed.add(fixed.var(0, 1), {fixed.var(0, 0)}, [](const std::vector<std::size_t>& v) {
    return MapSolver::Target::value(2 - v[0]);
  });
  const auto sols = fixed.solve();
  REQUIRE(sols.size() == 1);
  CHECK(sols.front().at(0, 0) == 2);
  CHECK(sols.front().at(0, 1) == 0);
}

TEST_CASE("algebras of the exception monad are maps out of the exceptions") {
  for (std::size_t e = 0; e <= 3; ++e) {
    const Monad t = exception_monad(sample_set(e));
    for (std::size_t b = 0; b <= 3; ++b) {
      const auto algebras = em_algebras(t, sample_set(b));
      CHECK(algebras.size() == power(b, e));
      for (const auto& a : algebras) CHECK(em_law_check(t, a).clean());
    }
  }
}

TEST_CASE("algebras of identity, terminal and writer monads") {
  for (std::size_t b = 0; b <= 3; ++b) {
    CHECK(em_algebras(identity_monad(Shape::set()), sample_set(b)).size() == 1);
    CHECK(em_algebras(terminal_monad(Shape::set()), sample_set(b)).size() == (b == 1 ? 1u : 0u));
    CHECK(em_algebras(terminal_zero_monad(Shape::set()), sample_set(b)).size() == (b <= 1 ? 1u : 0u));
    const auto z2 = em_algebras(writer_monad(Shape::set(), Monoid::cyclic(2)), sample_set(b));
    CHECK(z2.size() == (b == 0 ? 1 : count_involutions(b)));
  }
}

TEST_CASE("algebras of the nonempty powerset monad are semilattices") {
  const Monad p = nonempty_powerset_monad(Shape::set());
  for (std::size_t b = 1; b <= 3; ++b) CHECK(em_algebras(p, sample_set(b)).size() == count_semilattices(b));
}

TEST_CASE("a wrong structure fails the algebra laws") {
  const Monad t = writer_monad(Shape::set(), Monoid::cyclic(2));
  const Object b = sample_set(2);
  const Object tb = t.apply(b);
  // constant structure breaks the unit law
  const auto constant = Morphism::from_fn(tb, b, [&](std::size_t, const Atom&) { return b.carrier(0)[0]; });
  CHECK_FALSE(em_law_check(t, constant).clean());
}

TEST_CASE("free algebras are free") {
  const std::vector<Monad> monads{exc({"e"}), writer_monad(Shape::set(), Monoid::cyclic(2)),
                                  nonempty_powerset_monad(Shape::set()), identity_monad(Shape::set())};
  for (const auto& t : monads) {
    for (std::size_t n = 0; n <= 2; ++n) {
      const Object a = sample_set(n);
      const auto report = check_free_multi_algebra({t}, {}, free_algebra(t, a), t.unit(a), 2);
      CHECK_MESSAGE(report.clean(), report.str());
    }
  }
}

TEST_CASE("a non-free algebra fails the universal property") {
  const Monad t = exc({"e"});
  const Object a = sample_set(1);
  // A + {e} with e folded into a
  const Object ta = t.apply(a);
  const auto collapse = Morphism::from_fn(t.apply(ta), ta, [&](std::size_t s, const Atom& x) {
    return t.join(a, s, x).index() == 1 ? t.unit(a, 0, a.carrier(0)[0]) : t.join(a, s, x);
  });
  const auto report = check_free_multi_algebra({t}, {}, {ta, {collapse}}, t.unit(a), 2);
  CHECK_FALSE(report.clean());

  // an atom outside the unit image is unconstrained
  const auto junk = check_free_multi_algebra({}, {}, {sample_set(2), {}}, Morphism::make(a, sample_set(2), {{0}}), 2);
  CHECK_FALSE(junk.clean());
  bool uniqueness = false;
  for (const auto& v : junk.violations) uniqueness = uniqueness || v.law == "mediating map unique";
  CHECK(uniqueness);
}

TEST_CASE("multi-algebras respect connecting morphisms") {
  const Monad s = exc({"e1", "e2"});
  const Monad t = exc({"e"});
  const auto collapse = exception_morphism(s, t, [](const Atom&) { return Atom::name("e"); });
  for (std::size_t b = 0; b <= 2; ++b) {
    const auto ms = multi_algebras({s, t}, {{0, 1, collapse}}, sample_set(b));
    // e1 and e2 must land where e lands
    CHECK(ms.size() == b);
    for (const auto& m : ms) CHECK(multi_algebra_check({s, t}, {{0, 1, collapse}}, m).clean());
  }
  CHECK(multi_algebras({}, {}, sample_set(2)).size() == 1);
  const auto vacuous = check_free_multi_algebra({}, {}, {sample_set(1), {}}, Morphism::identity(sample_set(1)), 1);
  CHECK(vacuous.clean());
}

TEST_CASE("algebras on graphs") {
  BuiltinParams params;
  params.names = {"e"};
  const Monad t = builtin_monad(BuiltinKind::Exception, params, Shape::graph());
  for (const auto& g : sample_graphs(1)) {
    if (g.size() > 3) continue;
    // the exception vertex goes to any vertex
    CHECK(em_algebras(t, g).size() == g.size(0));
  }
}
