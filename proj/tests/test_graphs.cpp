#include "doctest.h"
#include "moncol/graphs.hpp"

using namespace moncol;

namespace {

Object two_loops_one_edge() {
  const Atom u = Atom::name("u"), v = Atom::name("v");
  return Object::graph({u, v}, {{Atom::name("l1"), u, u}, {Atom::name("l2"), v, v}, {Atom::name("e"), u, v}});
}

}  // namespace

TEST_CASE("loop sets are equalizers") {
  const auto ls = LoopSet::of(two_loops_one_edge());
  CHECK(ls.loops == names({"l1", "l2"}));
  for (const auto& g : sample_graphs(2)) {
    std::size_t loops = 0;
    for (std::size_t i = 0; i < g.size(1); ++i) loops += g.arrow_apply(0, i) == g.arrow_apply(1, i);
    CHECK(LoopSet::of(g).loops.size() == loops);
  }
}

TEST_CASE("H, K and L on one loop") {
  const Object x = one_loop_graph();
  const Object hx = functor_H()(x);
  CHECK(hx.size(0) == 2);
  CHECK(hx.size(1) == 0);
  const Object kx = functor_K()(x);
  CHECK(kx.size(0) == 4);
  CHECK(kx.size(1) == 2);
  CHECK(LoopSet::of(kx).loops.empty());
  const Object lx = functor_L()(x);
  CHECK(lx.size(0) == 2);
  CHECK(LoopSet::of(lx).loops.size() == 2);
  CHECK(functor_L()(two_loops_one_edge()).size(0) == 4);
  for (const auto& h : {functor_H(), functor_K(), functor_L()}) {
    const auto report = functor_law_check(h, sample_graphs(2));
    CHECK_MESSAGE(report.clean(), report.str());
  }
}

TEST_CASE("sigma and tau") {
  const auto [sigma, tau] = transformations_sigma_tau();
  const Object x = one_loop_graph();
  CHECK(sigma.component(x).is_mono());
  CHECK(tau.component(x).is_mono());
  CHECK(sigma.component(x).cod().size(0) == 4);
  CHECK(naturality_check(sigma, sample_graphs(2)).clean());
  CHECK(naturality_check(tau, sample_graphs(2)).clean());
  const Quotient q = coequalize_morphisms(sigma.component(x), tau.component(x));
  CHECK(q.object.size(0) == 2);
  CHECK(LoopSet::of(q.object).loops.size() == 2);
}

TEST_CASE("no coequalizer: chains") {
  const auto report = demo_no_coequalizer(3);
  CHECK_MESSAGE(report.checks.clean(), report.checks.str());
  const auto& l = report.chains.back();
  CHECK(l.functor == "L");
  CHECK(l.vertices == std::vector<std::size_t>{1, 3, 9, 513});
  CHECK_FALSE(l.status.converged());
  CHECK(report.verdict == kDivergenceVerdict);
  for (const auto& c : report.chains) {
    if (c.functor == "L") continue;
    CHECK(c.status.converged());
    CHECK(c.status.level == 1);
  }
  const auto longer = demo_no_coequalizer(5);
  CHECK(longer.chains.back().vertices == std::vector<std::size_t>{1, 3, 9, 513});
  const auto short_run = demo_no_coequalizer(1);
  CHECK(short_run.chains.back().vertices == std::vector<std::size_t>{1, 3});
}

TEST_CASE("no cointersection: split epis") {
  const auto report = demo_no_cointersection(3);
  CHECK_MESSAGE(report.checks.clean(), report.checks.str());
  CHECK(report.chains.back().vertices == std::vector<std::size_t>{1, 3, 9, 513});
  const auto [s0, t0] = split_epis();
  const Object hx = functor_Hhat()(one_loop_graph());
  CHECK(hx.size(0) == 3 * 2 + 4);
  CHECK(s0.component(one_loop_graph()).is_epi());
}
