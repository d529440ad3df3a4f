#include <algorithm>
#include <functional>
#include <random>
#include <set>

#include "doctest.h"
#include "moncol/presentation.hpp"

using namespace moncol;

namespace {

Presentation free_on(const std::vector<std::pair<std::string, std::size_t>>& ops) {
  return {Signature::single_sorted(ops), {}};
}

Presentation with_rules(const std::vector<std::pair<std::string, std::size_t>>& ops,
                        const std::vector<std::string>& rules) {
  Presentation p = free_on(ops);
  for (const auto& r : rules) p.rules.push_back(parse_rule(r, p.signature));
  return p;
}

std::set<Atom> carrier_set(const Object& x) { return {x.carrier(0).begin(), x.carrier(0).end()}; }

// All terms of depth <= d over the leaves, built by brute force.
std::set<Atom> all_terms(const std::vector<std::pair<std::string, std::size_t>>& ops, const std::vector<Atom>& leaves,
                         std::size_t d) {
  std::set<Atom> level;
  for (const auto& a : leaves) level.insert(Atom::var(a));
  for (std::size_t k = 1; k <= d; ++k) {
    std::set<Atom> next = level;
    const std::vector<Atom> prev(level.begin(), level.end());
    for (const auto& [name, arity] : ops) {
      std::function<void(std::vector<Atom>&)> rec = [&](std::vector<Atom>& args) {
        if (args.size() == arity) {
          next.insert(Atom::op(name, args));
          return;
        }
        for (const auto& t : prev) {
          args.push_back(t);
          rec(args);
          args.pop_back();
        }
      };
      std::vector<Atom> args;
      rec(args);
    }
    level = std::move(next);
  }
  return level;
}

bool has_square(const Atom& t) {
  if (t.kind() != Atom::Kind::Op) return false;
  if (t.text() == "m" && t.child(0) == t.child(1)) return true;
  for (const auto& c : t.children()) {
    if (has_square(c)) return true;
  }
  return false;
}

ErrorKind kind_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no error raised");
  return ErrorKind::InvalidArgument;
}

}  // namespace

TEST_CASE("terms parse against a signature") {
  const Signature sig = Signature::single_sorted({{"m", 2}, {"s", 1}, {"c", 0}});
  const Atom t = parse_term("m(x1, s(c))", sig);
  CHECK(t.str() == "m(x1,s(c()))");
  CHECK(t == Atom::op("m", {Atom::var(Atom::name("x1")), Atom::op("s", {Atom::op("c", {})})}));
  CHECK(parse_term("c()", sig) == parse_term("c", sig));
  CHECK(kind_of([&] { parse_term("m(x1)", sig); }) == ErrorKind::ParseError);
  CHECK(kind_of([&] { parse_term("q(x1)", sig); }) == ErrorKind::ParseError);
  CHECK(kind_of([&] { parse_term("s(x1", sig); }) == ErrorKind::ParseError);
  CHECK(kind_of([&] { parse_rule("s(x1) s(x1)", sig); }) == ErrorKind::ParseError);
}

TEST_CASE("rewrite systems are checked for termination and confluence") {
  CHECK(kind_of([] { RewriteSystem(with_rules({{"m", 2}}, {"m(x1,x2) -> m(x2,x1)"})); }) ==
        ErrorKind::NonTerminatingRules);
  CHECK(kind_of([] { RewriteSystem(with_rules({{"m", 2}, {"s", 1}}, {"s(x1) -> m(x1,x1)"})); }) ==
        ErrorKind::NonTerminatingRules);
  CHECK(kind_of([] { RewriteSystem(with_rules({{"s", 1}}, {"s(x1) -> x2"})); }) == ErrorKind::InvalidArgument);

  const RewriteSystem idem(with_rules({{"s", 1}}, {"s(s(x1)) -> s(x1)"}));
  CHECK(idem.critical_pairs().clean());
  CHECK(idem.critical_pairs().checked > 0);
  const Signature& sig = idem.presentation().signature;
  CHECK(idem.normalize(parse_term("s(s(s(s(x1))))", sig)) == parse_term("s(x1)", sig));

  const RewriteSystem split(with_rules({{"f", 1}, {"g", 1}, {"h", 1}}, {"f(g(x1)) -> x1", "g(h(x1)) -> x1"}));
  CHECK_FALSE(split.critical_pairs().clean());
  CHECK(kind_of([&] { presented_monad(split.presentation(), 2); }) == ErrorKind::InvalidArgument);
}

TEST_CASE("free monad on one unary symbol") {
  const Monad t = presented_monad(free_on({{"s", 1}}), 3);
  const Object ta = t.apply(Object::set(names({"a"})));
  std::set<Atom> expected{Atom::var(Atom::name("a"))};
  for (Atom x = Atom::var(Atom::name("a")); expected.size() < 4; expected.insert(x)) x = Atom::op("s", {x});
  CHECK(carrier_set(ta) == expected);
  CHECK(ta.size() == 4);
  CHECK(ta.truncation() == std::optional<std::size_t>(3));
  CHECK(ta.index_of(0, Atom::op("s", {Atom::op("s", {Atom::op("s", {Atom::var(Atom::name("a"))})})})).has_value());
  CHECK(carrier_set(ta) == all_terms({{"s", 1}}, names({"a"}), 3));
}

TEST_CASE("a constant gives an exact A + {c}") {
  for (std::size_t d = 1; d <= 3; ++d) {
    const Monad t = presented_monad(free_on({{"c", 0}}), d);
    for (std::size_t n = 0; n <= 3; ++n) {
      const Object ta = t.apply(sample_set(n));
      CHECK(ta.size() == n + 1);
      CHECK_FALSE(ta.truncation().has_value());
      CHECK(ta.index_of(0, Atom::op("c", {})).has_value());
    }
  }
  CHECK(presented_monad(free_on({{"c", 0}}), 0).apply(sample_set(1)).truncation().has_value());
}

TEST_CASE("normal forms modulo an idempotence rule") {
  const auto p = with_rules({{"m", 2}}, {"m(x1,x1) -> x1"});
  for (std::size_t n = 1; n <= 2; ++n) {
    const Object a = sample_set(n);
    const Object ta = presented_monad(p, 2).apply(a);
    std::set<Atom> oracle;
    for (const auto& term : all_terms({{"m", 2}}, {a.carrier(0).begin(), a.carrier(0).end()}, 2)) {
      if (!has_square(term)) oracle.insert(term);
    }
    CHECK(carrier_set(ta) == oracle);
    CHECK_FALSE(ta.index_of(0, Atom::op("m", {Atom::var(a.carrier(0)[0]), Atom::var(a.carrier(0)[0])})));
  }
  CHECK(presented_monad(p, 2).apply(sample_set(1)).size() == 1);
  CHECK_FALSE(presented_monad(p, 2).apply(sample_set(1)).truncation().has_value());
}

TEST_CASE("presented monads satisfy the monad laws") {
  const std::vector<Presentation> ps{free_on({{"s", 1}}), free_on({{"c", 0}, {"s", 1}}),
                                     with_rules({{"s", 1}}, {"s(s(x1)) -> s(x1)"}),
                                     with_rules({{"m", 2}}, {"m(x1,x1) -> x1"})};
  for (const auto& p : ps) {
    for (std::size_t d = 0; d <= 2; ++d) {
      const Monad t = presented_monad(p, d);
      const auto report = monad_law_check(t, law_samples(t.shape(), 2));
      CHECK_MESSAGE(report.clean(), report.str());
    }
  }
}

TEST_CASE("substitution is associative on random triples") {
  const Monad t = presented_monad(free_on({{"m", 2}, {"s", 1}}), 3);
  const PresentedMonadImpl& impl = *as_presented(t);
  std::mt19937 rng(11);
  for (std::size_t n = 1; n <= 2; ++n) {
    const Object a = sample_set(n);
    const Object ta = t.apply(a);
    const Object tta = t.apply(ta);
    auto gens = impl.generators(tta, 0);
    std::shuffle(gens.begin(), gens.end(), rng);
    gens.resize(std::min<std::size_t>(gens.size(), 300));
    const Morphism mu = t.mult(a);
    for (const auto& ttt : gens) {
      const Atom inner = t.join(a, 0, t.fmap(mu, 0, ttt));
      const Atom outer = t.join(a, 0, t.join(ta, 0, ttt));
      CHECK(inner == outer);
    }
  }
}

TEST_CASE("free monad decomposition") {
  const std::vector<Presentation> ps{free_on({{"c", 0}}), free_on({{"s", 1}}), free_on({{"m", 2}}),
                                     free_on({{"s", 1}, {"c", 0}})};
  std::vector<Object> samples;
  for (std::size_t n = 0; n <= 2; ++n) samples.push_back(sample_set(n));
  for (const auto& p : ps) {
    const auto report = free_monad_decomposition_check(p, samples, 3);
    CHECK_MESSAGE(report.clean(), report.str());
  }
  const Monad s3 = presented_monad(free_on({{"s", 1}}), 3);
  CHECK(s3.apply(sample_set(1)).size() - 1 == 3);
  CHECK(kind_of([] { free_monad_decomposition_check(with_rules({{"s", 1}}, {"s(s(x1)) -> s(x1)"}), {}, 1); }) ==
        ErrorKind::InvalidArgument);
}

TEST_CASE("signature functor counts argument tuples") {
  const Signature sig = Signature::single_sorted({{"m", 2}, {"s", 1}, {"c", 0}});
  for (std::size_t n = 0; n <= 3; ++n) CHECK(signature_functor(sig, sample_set(n)).size() == n * n + n + 1);
}

TEST_CASE("morphisms into presented monads") {
  const Object e = Object::set(names({"c"}));
  const Monad exc = exception_monad(e);
  const Monad pres = presented_monad(free_on({{"c", 0}}), 1);
  const auto theta = exceptions_as_constants(exc, pres);
  const auto report = morphism_law_check(theta, law_samples(Shape::set(), 2));
  CHECK_MESSAGE(report.clean(), report.str());
  for (std::size_t n = 0; n <= 2; ++n) {
    const Object a = sample_set(n);
    CHECK(theta.at(a).is_iso());
  }

  const Monad s = presented_monad(free_on({{"s", 1}}), 2);
  const Monad st = presented_monad(free_on({{"s", 1}, {"t", 1}}), 2);
  const auto inc = translation_morphism(s, st);
  CHECK(morphism_law_check(inc, law_samples(Shape::set(), 2)).clean());
  CHECK(inc.at(sample_set(1)).is_mono());
  const auto swap = translation_morphism(s, st, {{"s", "t"}});
  CHECK(morphism_law_check(swap, law_samples(Shape::set(), 2)).clean());
}

TEST_CASE("multi-sorted signatures") {
  Presentation p;
  p.signature.sorts = {"u", "v"};
  p.signature.ops = {{"f", {0}, 1}, {"g", {1, 1}, 0}};
  const Monad t = presented_monad(p, 2);
  const Object a = Object::sorted(t.shape(), {names({"a"}), names({"b"})});
  const Object ta = t.apply(a);
  CHECK(ta.size(1) == 3);
  CHECK(ta.size(0) == 1 + 4);
  const auto report = monad_law_check(t, {a, Object::initial(t.shape())});
  CHECK_MESSAGE(report.clean(), report.str());
}
