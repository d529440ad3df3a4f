#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace moncol {

/// Immutable, structurally compared element of a finite object.
///
/// Every element the engine manipulates is an Atom: plain names, coproduct
/// tags, operation terms, variable leaves, tuples and finite sets. Atoms are
/// globally meaningful, so an injection that only re-tags atoms is recognised
/// syntactically and no isomorphism search is ever needed.
class Atom {
 public:
  enum class Kind : std::uint8_t { Name, Tag, Op, Var, Tuple, Set };

  Atom();  // the name ""

  static Atom name(std::string text);
  static Atom tag(std::size_t index, Atom inner);
  static Atom op(std::string symbol, std::vector<Atom> args);
  static Atom var(Atom inner);
  static Atom tuple(std::vector<Atom> parts);
  /// Sorts and deduplicates the members.
  static Atom set(std::vector<Atom> members);

  Kind kind() const { return rep_->kind; }
  const std::string& text() const { return rep_->text; }
  std::size_t index() const { return rep_->index; }
  std::span<const Atom> children() const { return rep_->children; }
  const Atom& child(std::size_t i) const { return rep_->children[i]; }
  const Atom& inner() const { return rep_->children.front(); }

  /// Operation nesting height. Names count 0, tags and variable leaves are
  /// transparent, an operation adds one to the deepest argument.
  std::size_t depth() const { return rep_->depth; }
  std::size_t hash() const { return rep_->hash; }
  std::size_t node_count() const;

  std::string str() const;

  friend bool operator==(const Atom& a, const Atom& b);
  friend std::strong_ordering operator<=>(const Atom& a, const Atom& b);

 private:
  struct Rep {
    Kind kind;
    std::size_t index;
    std::string text;
    std::vector<Atom> children;
    std::size_t hash;
    std::size_t depth;
  };
  explicit Atom(std::shared_ptr<const Rep> rep) : rep_(std::move(rep)) {}
  static Atom make(Kind kind, std::size_t index, std::string text, std::vector<Atom> children);

  std::shared_ptr<const Rep> rep_;
};

struct AtomHash {
  std::size_t operator()(const Atom& a) const { return a.hash(); }
};

std::vector<Atom> names(std::initializer_list<const char*> texts);

}  // namespace moncol
