#pragma once

// Spec files: a versioned, line-based description of a base category, a
// list of monads and the monad morphisms between them.
//
//   moncol 1
//   base set                      # set | graph | sorted u v ...
//   monad E = exception e1 e2     # identity, exception, exception-zero,
//                                 # terminal, terminal-zero, reader i j,
//                                 # writer N [project], powerset
//   monad F = free [depth N]      # a presentation, closed by `end`
//     sorts u v                   # optional, one sort `*` otherwise
//     op s 1                      # single-sorted: name and arity
//     op f : u v -> u             # many-sorted
//     rule f(x1,x1) -> x1
//   end
//   morphism p : E -> T = exception e1=f1
//   morphism t : F -> G = translation s=t
//   morphism u : I -> W = unit
//   morphism i : T -> T = identity
//   terminal T                    # weakly terminal node for colimits
//   functors sigma tau            # graphs only: the loop functors H => K

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "moncol/algebra.hpp"
#include "moncol/presentation.hpp"

namespace moncol {

struct MonadDecl {
  std::string name;
  std::string kind;
  std::vector<std::string> args;
  std::optional<Presentation> presentation;
  std::optional<std::size_t> depth;
  std::size_t line = 0;
};

struct MorphismDecl {
  std::string name;
  std::string source;
  std::string target;
  std::string kind;
  std::vector<std::pair<std::string, std::string>> mapping;
  std::size_t line = 0;
};

struct SpecFile {
  int version = 1;
  ShapePtr base;
  std::vector<MonadDecl> monads;
  std::vector<MorphismDecl> morphisms;
  std::optional<std::string> terminal;
  bool functor_pair = false;

  std::size_t monad_index(const std::string& name) const;
};

/// Throws ParseError with the offending line.
SpecFile parse_spec(std::string_view text);
SpecFile load_spec(const std::filesystem::path& path);

/// Presented monads use their own depth when given, `depth` otherwise.
Monad build_monad(const SpecFile& spec, const MonadDecl& decl, std::size_t depth, std::uint64_t seed = 0x5eed);
std::vector<Monad> build_monads(const SpecFile& spec, std::size_t depth, std::uint64_t seed = 0x5eed);
MonadMorphism build_morphism(const SpecFile& spec, const MorphismDecl& decl, const std::vector<Monad>& monads);
/// Nodes are the monads in order, arrows the morphisms.
std::vector<DiagramArrow> build_arrows(const SpecFile& spec, const std::vector<Monad>& monads);

}  // namespace moncol
