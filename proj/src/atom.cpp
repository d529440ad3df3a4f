#include "moncol/atom.hpp"

#include <algorithm>
#include <functional>

namespace moncol {

namespace {

std::size_t mix(std::size_t seed, std::size_t v) {
  return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

}  // namespace

Atom::Atom() : Atom(make(Kind::Name, 0, "", {})) {}

Atom Atom::make(Kind kind, std::size_t index, std::string text, std::vector<Atom> children) {
  std::size_t h = mix(static_cast<std::size_t>(kind), index);
  h = mix(h, std::hash<std::string>{}(text));
  std::size_t depth = 0;
  for (const auto& c : children) {
    h = mix(h, c.hash());
    depth = std::max(depth, c.depth());
  }
  if (kind == Kind::Op) ++depth;
  return Atom(std::make_shared<const Rep>(
      Rep{kind, index, std::move(text), std::move(children), h, depth}));
}

Atom Atom::name(std::string text) { return make(Kind::Name, 0, std::move(text), {}); }

Atom Atom::tag(std::size_t index, Atom inner) {
  return make(Kind::Tag, index, "", {std::move(inner)});
}

Atom Atom::op(std::string symbol, std::vector<Atom> args) {
  return make(Kind::Op, 0, std::move(symbol), std::move(args));
}

Atom Atom::var(Atom inner) { return make(Kind::Var, 0, "", {std::move(inner)}); }

Atom Atom::tuple(std::vector<Atom> parts) { return make(Kind::Tuple, 0, "", std::move(parts)); }

Atom Atom::set(std::vector<Atom> members) {
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
  return make(Kind::Set, 0, "", std::move(members));
}

std::size_t Atom::node_count() const {
  std::size_t n = 1;
  for (const auto& c : children()) n += c.node_count();
  return n;
}

std::string Atom::str() const {
  switch (kind()) {
    case Kind::Name:
      return text();
    case Kind::Tag:
      return std::to_string(index()) + ":" + inner().str();
    case Kind::Var:
      return inner().kind() == Kind::Tag ? "[" + inner().str() + "]" : inner().str();
    case Kind::Op: {
      std::string out = text() + "(";
      for (std::size_t i = 0; i < children().size(); ++i) {
        if (i) out += ",";
        out += child(i).str();
      }
      return out + ")";
    }
    case Kind::Tuple:
    case Kind::Set: {
      const bool is_set = kind() == Kind::Set;
      std::string out = is_set ? "{" : "<";
      for (std::size_t i = 0; i < children().size(); ++i) {
        if (i) out += ",";
        out += child(i).str();
      }
      return out + (is_set ? "}" : ">");
    }
  }
  return {};
}

bool operator==(const Atom& a, const Atom& b) {
  if (a.rep_ == b.rep_) return true;
  if (a.hash() != b.hash()) return false;
  return (a <=> b) == std::strong_ordering::equal;
}

std::strong_ordering operator<=>(const Atom& a, const Atom& b) {
  if (a.rep_ == b.rep_) return std::strong_ordering::equal;
  if (auto c = a.kind() <=> b.kind(); c != 0) return c;
  if (auto c = a.index() <=> b.index(); c != 0) return c;
  if (auto c = a.text().compare(b.text()); c != 0) {
    return c < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
  }
  const auto ac = a.children();
  const auto bc = b.children();
  const std::size_t n = std::min(ac.size(), bc.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (auto c = ac[i] <=> bc[i]; c != 0) return c;
  }
  return ac.size() <=> bc.size();
}

std::vector<Atom> names(std::initializer_list<const char*> texts) {
  std::vector<Atom> out;
  out.reserve(texts.size());
  for (const char* t : texts) out.push_back(Atom::name(t));
  return out;
}

}  // namespace moncol
