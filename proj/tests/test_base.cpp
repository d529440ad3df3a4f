#include <map>
#include <random>

#include "doctest.h"
#include "moncol/base.hpp"

using namespace moncol;

namespace {

Object one_loop(const std::string& v = "v", const std::string& e = "l") {
  return Object::graph({Atom::name(v)}, {{Atom::name(e), Atom::name(v), Atom::name(v)}});
}

// Merge classes by repeatedly relabelling to the smaller label until nothing changes.
std::vector<std::size_t> naive_classes(std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& pairs) {
  std::vector<std::size_t> label(n);
  for (std::size_t i = 0; i < n; ++i) label[i] = i;
  bool changed = true;
  while (changed) {
    changed = false;
    for (auto [a, b] : pairs) {
      const std::size_t lo = std::min(label[a], label[b]);
      const std::size_t hi = std::max(label[a], label[b]);
      if (lo == hi) continue;
      for (auto& l : label) {
        if (l == hi) l = lo;
      }
      changed = true;
    }
  }
  return label;
}

}  // namespace

TEST_CASE("atoms compare structurally and track depth") {
  const Atom a = Atom::name("a");
  CHECK(Atom::tag(1, a) == Atom::tag(1, Atom::name("a")));
  CHECK(Atom::tag(0, Atom::name("z")) < Atom::tag(1, a));
  CHECK(Atom::op("s", {Atom::var(a)}).depth() == 1);
  CHECK(Atom::op("s", {Atom::var(Atom::op("t", {Atom::var(a)}))}).depth() == 2);
  CHECK(Atom::tag(3, Atom::op("c", {})).depth() == 1);
  CHECK(Atom::set({a, Atom::name("b"), a}).children().size() == 2);
  CHECK(Atom::op("m", {Atom::var(a), Atom::var(Atom::name("b"))}).str() == "m(a,b)");
}

TEST_CASE("coproduct of sets") {
  const auto c = coproduct({Object::set(names({"a"})), Object::set(names({"b", "c"}))});
  CHECK(c.object.size() == 3);
  REQUIRE(c.injections.size() == 2);
  for (const auto& inj : c.injections) CHECK(inj.mor.is_mono());
  const auto copair_id = copair(c, {c.injections[0].mor, c.injections[1].mor}, c.object);
  CHECK(copair_id.is_identity_on_atoms());

  const auto empty = coproduct({});
  CHECK(empty.object.size() == 0);
  CHECK(empty.injections.empty());
}

TEST_CASE("coproduct injections are jointly surjective and disjoint") {
  for (std::size_t n = 0; n <= 3; ++n) {
    for (std::size_t m = 0; m <= 3; ++m) {
      const auto c = coproduct({sample_set(n), sample_set(m)});
      std::vector<int> hits(c.object.size(), 0);
      for (const auto& inj : c.injections) {
        for (auto j : inj.mor.table()[0]) ++hits[j];
      }
      for (auto h : hits) CHECK(h == 1);
    }
  }
}

TEST_CASE("coproduct of graphs and mixed variants") {
  const auto c = coproduct({one_loop(), one_loop()});
  CHECK(c.object.size(0) == 2);
  CHECK(c.object.size(1) == 2);
  for (std::size_t e = 0; e < 2; ++e) CHECK(c.object.arrow_index(0, e) == c.object.arrow_index(1, e));
  CHECK_THROWS_AS(coproduct({one_loop(), sample_set(1)}), Error);
  try {
    coproduct({one_loop(), sample_set(1)});
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::MixedVariants);
  }
}

TEST_CASE("graph morphisms must respect source and target") {
  const Object edge = Object::graph(names({"x", "y"}), {{Atom::name("e"), Atom::name("x"), Atom::name("y")}});
  const Object loop = one_loop();
  CHECK(all_morphisms(edge, loop).size() == 1);
  CHECK(all_morphisms(loop, edge).empty());
  CHECK_THROWS_AS(Morphism::make(loop, edge, {{0}, {0}}), Error);
}

TEST_CASE("coequalizer of a parallel pair of functions") {
  const Object e = Object::set(names({"e"}));
  const Object f = Object::set(names({"f1", "f2"}));
  const auto p = Morphism::make(e, f, {{0}});
  const auto q = Morphism::make(e, f, {{1}});
  const auto merged = coequalize_morphisms(p, q);
  CHECK(merged.object.size() == 1);
  CHECK(merged.projection.is_epi());
  const auto same = coequalize_morphisms(p, p);
  CHECK(same.object == f);
  CHECK(same.projection.is_identity_on_atoms());
}

TEST_CASE("coequalizer merges exactly the generated equivalence") {
  std::mt19937 rng(7);
  for (std::size_t n = 1; n <= 6; ++n) {
    const Object cod = sample_set(n);
    for (std::size_t k = 0; k <= 3; ++k) {
      const Object dom = sample_set(k);
      for (int trial = 0; trial < 40; ++trial) {
        Morphism::Table tf(1), tg(1);
        std::vector<std::pair<std::size_t, std::size_t>> pairs;
        for (std::size_t i = 0; i < k; ++i) {
          tf[0].push_back(rng() % n);
          tg[0].push_back(rng() % n);
          pairs.emplace_back(tf[0].back(), tg[0].back());
        }
        const auto q = coequalize_morphisms(Morphism::make(dom, cod, tf), Morphism::make(dom, cod, tg));
        CHECK(q.projection.is_epi());
        const auto labels = naive_classes(n, pairs);
        for (std::size_t i = 0; i < n; ++i) {
          for (std::size_t j = 0; j < n; ++j) {
            CHECK((labels[i] == labels[j]) == (q.projection.at(0, i) == q.projection.at(0, j)));
          }
        }
      }
    }
  }
}

TEST_CASE("graph coequalizer re-targets edges consistently") {
  // x -e-> y and a loop at z; merging y with z.
  const Object g = Object::graph(names({"x", "y", "z"}), {{Atom::name("e"), Atom::name("x"), Atom::name("y")},
                                                          {Atom::name("l"), Atom::name("z"), Atom::name("z")}});
  const Object pt = Object::graph(names({"p"}), {});
  const auto f = Morphism::from_fn(pt, g, [](std::size_t, const Atom&) { return Atom::name("y"); });
  const auto h = Morphism::from_fn(pt, g, [](std::size_t, const Atom&) { return Atom::name("z"); });
  const auto q = coequalize_morphisms(f, h);
  CHECK(q.object.size(0) == 2);
  CHECK(q.object.size(1) == 2);
  const auto e = *q.object.index_of(1, Atom::name("e"));
  const auto l = *q.object.index_of(1, Atom::name("l"));
  CHECK(q.object.arrow_index(1, e) == q.object.arrow_index(0, l));
  CHECK(q.object.arrow_index(1, l) == q.object.arrow_index(0, l));
}

TEST_CASE("edge merges force endpoint merges") {
  const Object g = Object::graph(names({"a", "b", "c", "d"}), {{Atom::name("e1"), Atom::name("a"), Atom::name("b")},
                                                               {Atom::name("e2"), Atom::name("c"), Atom::name("d")}});
  Partition p(g);
  p.merge(1, 0, 1);
  const auto q = quotient(g, p);
  CHECK(q.object.size(1) == 1);
  CHECK(q.object.size(0) == 2);
}

TEST_CASE("factorization") {
  const Object three = sample_set(3);
  const Object two = sample_set(2);
  const auto inj = Morphism::make(two, three, {{0, 2}});
  const auto fi = factorize(inj);
  CHECK(fi.epi.is_iso());
  CHECK(compose(fi.mono.mor, fi.epi) == inj);

  const auto constant = Morphism::make(three, three, {{1, 1, 1}});
  const auto fc = factorize(constant);
  CHECK(fc.epi.cod().size() == 1);
  CHECK(fc.mono.mono_checked);
  CHECK(compose(fc.mono.mor, fc.epi) == constant);
  CHECK(fc.section_is_morphism);

  // two loops onto one loop
  const Object two_loops = coproduct({one_loop("u", "l1"), one_loop("w", "l2")}).object;
  const auto collapse = Morphism::from_fn(two_loops, one_loop(), [](std::size_t s, const Atom&) {
    return Atom::name(s == 0 ? "v" : "l");
  });
  const auto fg = factorize(collapse);
  CHECK(fg.epi.cod().size(0) == 1);
  CHECK(fg.epi.cod().size(1) == 1);
  CHECK(fg.mono.mor.is_iso());
}

TEST_CASE("factorizations of every map between small sets") {
  for (std::size_t n = 0; n <= 3; ++n) {
    for (std::size_t m = 0; m <= 3; ++m) {
      for (const auto& f : all_morphisms(sample_set(n), sample_set(m))) {
        const auto fa = factorize(f);
        CHECK(fa.epi.is_epi());
        CHECK(fa.mono.mor.is_mono());
        CHECK(compose(fa.mono.mor, fa.epi) == f);
        for (std::size_t j = 0; j < fa.epi.cod().size(); ++j) CHECK(fa.epi.at(0, fa.section[0][j]) == j);
      }
    }
  }
}

TEST_CASE("chain colimits") {
  const Object x = sample_set(2);
  const auto id = InjectionWitness::of(Morphism::identity(x));
  const auto c0 = chain_colimit({id, id, id}, 3);
  CHECK(c0.status.converged());
  CHECK(c0.status.level == 0);

  const Object a = sample_set(1), b = sample_set(2), c = sample_set(3);
  const auto ab = InjectionWitness::of(Morphism::make(a, b, {{0}}));
  const auto bc = InjectionWitness::of(Morphism::make(b, c, {{0, 1}}));
  const auto cc = InjectionWitness::of(Morphism::identity(c));
  const auto c2 = chain_colimit({ab, bc, cc}, 5);
  CHECK(c2.status.converged());
  CHECK(c2.status.level == 2);
  CHECK(c2.object == c);

  const auto ex = chain_colimit({ab, bc}, 2);
  CHECK_FALSE(ex.status.converged());
  REQUIRE(ex.object.truncation().has_value());
  CHECK(ex.object == c);

  const auto bad = InjectionWitness::of(Morphism::make(b, a, {{0, 0}}));
  CHECK_THROWS_AS(chain_colimit({bad}, 1), Error);

  const auto empty = chain_colimit({}, 4);
  CHECK(empty.object.size() == 0);
  CHECK(empty.status.converged());
}

TEST_CASE("sample graphs stay within the loop bound") {
  for (const auto& g : sample_graphs(1)) {
    std::size_t loops = 0;
    for (std::size_t e = 0; e < g.size(1); ++e) loops += g.arrow_index(0, e) == g.arrow_index(1, e);
    CHECK(loops <= 1);
  }
  CHECK(sample_graphs(2).size() > sample_graphs(1).size());
}

TEST_CASE("families are presheaves on a disjoint union of shapes") {
  const Object fam = Object::family({sample_set(1), sample_set(2)});
  CHECK(fam.sort_count() == 2);
  CHECK(fam.component(1) == sample_set(2));
  const Object gfam = Object::family({one_loop(), Object::initial(Shape::graph())});
  CHECK(gfam.component(0) == one_loop());
  CHECK(gfam.shape()->arrows.size() == 4);
}
