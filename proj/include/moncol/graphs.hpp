#pragma once

#include <functional>
#include <string>
#include <vector>

#include "moncol/endofunctor.hpp"

namespace moncol {

/// A finite graph and its loops, the equalizer of source and target.
struct LoopSet {
  Object graph;
  std::vector<Atom> loops;

  static LoopSet of(const Object& graph);
};

/// Vertices P(loops), no edges.
Endofunctor functor_H();
/// Vertices P(loops) + P(loops), one edge M from 0:M to 1:M.
Endofunctor functor_K();
/// Vertices = edges = P(loops), every edge a loop.
Endofunctor functor_L();

/// Componentwise transformation between endofunctors of graphs.
struct NatTrans {
  std::string name;
  Endofunctor source;
  Endofunctor target;
  std::function<Morphism(const Object&)> component;
};

/// sigma_X(M) = 0:M and tau_X(M) = 1:M, the source and target of the edge M.
std::pair<NatTrans, NatTrans> transformations_sigma_tau();
/// t_Y . F f = G f . t_X for every f between the samples.
LawReport naturality_check(const NatTrans& t, const std::vector<Object>& samples, std::size_t hom_limit = 256);

/// H + H + H + K, objectwise.
Endofunctor functor_Hhat();
/// [sigma, sigma, tau, id] and [tau, sigma, tau, id]: Hhat -> K.
std::pair<NatTrans, NatTrans> split_epis();

/// One vertex with one loop.
Object one_loop_graph();

struct ChainSummary {
  std::string functor;
  std::string seed;
  std::vector<std::size_t> vertices;
  std::vector<std::size_t> edges;
  std::vector<std::size_t> loops;
  ChainStatus status;
};

struct CounterexampleReport {
  std::vector<ChainSummary> chains;
  LawReport checks;
  std::string verdict;
};

/// Free-algebra chains of H and K (expected to converge at once) and of L on
/// the one-loop graph (expected to grow).
CounterexampleReport demo_no_coequalizer(std::size_t budget);
/// The split epis of Hhat onto K, their componentwise pushout against L,
/// and the divergence of the chain of L.
CounterexampleReport demo_no_cointersection(std::size_t budget);

extern const char* const kDivergenceVerdict;

}  // namespace moncol
