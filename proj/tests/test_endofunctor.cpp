#include "doctest.h"
#include "moncol/endofunctor.hpp"

using namespace moncol;

TEST_CASE("free-algebra chain of a constant functor stabilizes after one step") {
  const Object e = Object::set(names({"e1", "e2"}));
  const auto chain = free_algebra_chain(constant_functor(e), sample_set(2), 8);
  REQUIRE(chain.status.converged());
  CHECK(chain.status.level == 1);
  CHECK(chain.stages[1].size() == 4);
  REQUIRE(chain.algebra.has_value());
  CHECK(chain.algebra->carrier == chain.stages[1]);
  // W_1 = X + H W_1 through the universal arrow and the structure
  const auto sum = coproduct({sample_set(2), e});
  const auto decomposition = copair(sum, {*chain.universal, chain.algebra->structure}, chain.algebra->carrier);
  CHECK(decomposition.is_iso());
}

TEST_CASE("initial algebras") {
  const Object e = Object::set(names({"e"}));
  const auto mu = initial_algebra(constant_functor(e), 4);
  CHECK(mu.carrier == e);
  CHECK(compose(mu.structure, mu.structure_inverse).is_identity_on_atoms());

  const auto id0 = initial_algebra(identity_functor(Shape::set()), 4);
  CHECK(id0.carrier.size() == 0);

  // P+(0) = 0, so the chain from 0 is constant.
  CHECK(initial_algebra(nonempty_powerset_functor(), 6).carrier.size() == 0);
}

TEST_CASE("powerset chain over a nonempty seed grows until the ceiling") {
  const auto p = nonempty_powerset_functor();
  const auto run = iterate_chain(p, sample_set(1), Morphism::make(sample_set(1), p(sample_set(1)),
                                                                   {{0}}), 6);
  CHECK(run.status.converged());  // P+{a} = {{a}} is a one-element set again
  const auto chain = free_algebra_chain(p, sample_set(1), 6);
  CHECK_FALSE(chain.status.converged());
  for (std::size_t i = 1; i < chain.status.growth.size(); ++i) {
    CHECK(chain.status.growth[i] > chain.status.growth[i - 1]);
  }
}

TEST_CASE("pre-fixpoints") {
  const Object e = Object::set(names({"e"}));
  CHECK(is_prefixpoint(constant_functor(e), sample_set(1)).holds);
  CHECK(is_prefixpoint(identity_functor(Shape::set()), sample_set(3)).holds);
  for (std::size_t n = 2; n <= 5; ++n) CHECK_FALSE(is_prefixpoint(nonempty_powerset_functor(), sample_set(n)).holds);
  const auto one = is_prefixpoint(nonempty_powerset_functor(), sample_set(1));
  CHECK(one.holds);
  REQUIRE(one.witness.has_value());
  CHECK(one.witness->is_mono());
}

TEST_CASE("functor law checks") {
  const Object e = Object::set(names({"e"}));
  CHECK(functor_law_check(constant_functor(e), sample_sets(3)).clean());
  CHECK(functor_law_check(nonempty_powerset_functor(), sample_sets(3)).clean());
  CHECK(functor_law_check(coproduct_with(e), sample_sets(3)).clean());

  auto broken = identity_functor(Shape::set());
  broken.name = "broken";
  broken.on_mor = [](const Morphism& f) {
    // drops the image of the first element
    auto table = f.table();
    if (!table[0].empty() && f.cod().size() > 1) table[0][0] = (table[0][0] + 1) % f.cod().size();
    return Morphism::make(f.dom(), f.cod(), table);
  };
  const auto report = functor_law_check(broken, sample_sets(2));
  CHECK_FALSE(report.clean());
}

TEST_CASE("chains reject links that are not injective") {
  const Object z = Object::set(names({"z"}));
  Endofunctor squash = coproduct_with(z);
  squash.name = "squash";
  squash.on_mor = [z](const Morphism& f) {
    const Object d = coproduct({f.dom(), z}).object;
    const Object c = coproduct({f.cod(), z}).object;
    return Morphism::make(d, c, {std::vector<std::size_t>(d.size(), c.size() - 1)});
  };
  try {
    free_algebra_chain(squash, sample_set(2), 4);
    FAIL("expected a mono violation");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::MonoViolation);
  }
}
