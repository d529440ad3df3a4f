#include "moncol/presentation.hpp"

#include <algorithm>
#include <cctype>
#include <random>
#include <set>
#include <unordered_set>

namespace moncol {

// ---------------------------------------------------------------- signatures

Signature Signature::single_sorted(const std::vector<std::pair<std::string, std::size_t>>& ops) {
  Signature sig;
  for (const auto& [name, arity] : ops) sig.ops.push_back({name, std::vector<std::size_t>(arity, 0), 0});
  return sig;
}

ShapePtr Signature::shape() const {
  if (sorts.size() == 1 && sorts.front() == "*") return Shape::set();
  return Shape::sorted(sorts);
}

const OpSymbol* Signature::find(const std::string& name) const {
  for (const auto& op : ops) {
    if (op.name == name) return &op;
  }
  return nullptr;
}

std::size_t Signature::sort_index(const std::string& name) const {
  auto it = std::find(sorts.begin(), sorts.end(), name);
  if (it == sorts.end()) throw Error(ErrorKind::InvalidArgument, "unknown sort " + name);
  return static_cast<std::size_t>(it - sorts.begin());
}

void Signature::validate() const {
  if (sorts.empty()) throw Error(ErrorKind::InvalidArgument, "signature without sorts");
  std::set<std::string> seen;
  for (const auto& op : ops) {
    if (op.name.empty()) throw Error(ErrorKind::InvalidArgument, "empty operation symbol");
    if (!seen.insert(op.name).second) throw Error(ErrorKind::InvalidArgument, "duplicate operation symbol " + op.name);
    if (op.result >= sorts.size()) throw Error(ErrorKind::InvalidArgument, "bad result sort of " + op.name);
    for (auto s : op.args) {
      if (s >= sorts.size()) throw Error(ErrorKind::InvalidArgument, "bad argument sort of " + op.name);
    }
  }
}

// ---------------------------------------------------------------- terms

namespace {

bool is_variable_name(const std::string& s) {
  return s.size() >= 2 && s[0] == 'x' &&
         std::all_of(s.begin() + 1, s.end(), [](unsigned char c) { return std::isdigit(c); });
}

bool is_pattern_var(const Atom& t) { return t.kind() == Atom::Kind::Var; }

const std::string& var_name(const Atom& t) { return t.inner().text(); }

class TermParser {
 public:
  TermParser(std::string_view text, const Signature& sig) : text_(text), sig_(sig) {}

  Atom parse() {
    Atom t = term();
    skip();
    if (pos_ != text_.size()) fail("trailing input");
    return t;
  }

 private:
  Atom term() {
    const std::string id = ident();
    skip();
    std::vector<Atom> args;
    bool parens = false;
    if (pos_ < text_.size() && text_[pos_] == '(') {
      parens = true;
      ++pos_;
      skip();
      if (pos_ < text_.size() && text_[pos_] == ')') {
        ++pos_;
      } else {
        for (;;) {
          args.push_back(term());
          skip();
          if (pos_ < text_.size() && text_[pos_] == ',') {
            ++pos_;
            continue;
          }
          if (pos_ < text_.size() && text_[pos_] == ')') {
            ++pos_;
            break;
          }
          fail("expected ',' or ')'");
        }
      }
    }
    const OpSymbol* op = sig_.find(id);
    if (!op) {
      if (is_variable_name(id) && !parens) return Atom::var(Atom::name(id));
      fail("unknown operation symbol " + id);
    }
    if (op->arity() != args.size()) {
      fail(id + " expects " + std::to_string(op->arity()) + " arguments, got " + std::to_string(args.size()));
    }
    return Atom::op(id, std::move(args));
  }

  std::string ident() {
    skip();
    const std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_' || text_[pos_] == '\'')) {
      ++pos_;
    }
    if (start == pos_) fail("expected a name");
    return std::string(text_.substr(start, pos_ - start));
  }

  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  [[noreturn]] void fail(const std::string& what) const {
    throw Error(ErrorKind::ParseError, what + " at column " + std::to_string(pos_ + 1) + " of '" +
                                           std::string(text_) + "'");
  }

  std::string_view text_;
  const Signature& sig_;
  std::size_t pos_ = 0;
};

/// Sort of every variable, checking operation argument sorts.
void infer_sorts(const Atom& t, std::size_t expected, const Signature& sig, std::map<std::string, std::size_t>& vars) {
  if (is_pattern_var(t)) {
    auto [it, fresh] = vars.emplace(var_name(t), expected);
    if (!fresh && it->second != expected) {
      throw Error(ErrorKind::InvalidArgument, "variable " + var_name(t) + " used at two sorts");
    }
    return;
  }
  const OpSymbol* op = sig.find(t.text());
  if (!op) throw Error(ErrorKind::InvalidArgument, "unknown operation symbol " + t.text());
  if (op->result != expected) {
    throw Error(ErrorKind::InvalidArgument, t.str() + " has sort " + sig.sorts[op->result] + ", expected " +
                                                sig.sorts[expected]);
  }
  for (std::size_t i = 0; i < op->arity(); ++i) infer_sorts(t.child(i), op->args[i], sig, vars);
}

std::size_t result_sort(const Atom& t, const Signature& sig) {
  if (!is_pattern_var(t)) {
    if (const OpSymbol* op = sig.find(t.text())) return op->result;
  }
  return sig.ops.empty() ? 0 : sig.ops.front().result;
}

/// Operations plus variable leaves; every subterm weighs at least one.
std::size_t weight(const Atom& t) {
  if (t.kind() != Atom::Kind::Op) return 1;
  std::size_t w = 1;
  for (const auto& c : t.children()) w += weight(c);
  return w;
}

void occurrences(const Atom& t, std::size_t height, std::map<std::string, std::pair<std::size_t, std::size_t>>& occ) {
  if (is_pattern_var(t)) {
    auto& [count, deepest] = occ[var_name(t)];
    ++count;
    deepest = std::max(deepest, height);
    return;
  }
  for (const auto& c : t.children()) occurrences(c, height + 1, occ);
}

using Binding = std::map<std::string, Atom>;

bool match(const Atom& pattern, const Atom& t, Binding& b) {
  if (is_pattern_var(pattern)) {
    auto [it, fresh] = b.emplace(var_name(pattern), t);
    return fresh || it->second == t;
  }
  if (t.kind() != Atom::Kind::Op || t.text() != pattern.text() || t.children().size() != pattern.children().size()) {
    return false;
  }
  for (std::size_t i = 0; i < t.children().size(); ++i) {
    if (!match(pattern.child(i), t.child(i), b)) return false;
  }
  return true;
}

Atom instantiate(const Atom& pattern, const Binding& b) {
  if (is_pattern_var(pattern)) {
    auto it = b.find(var_name(pattern));
    return it == b.end() ? pattern : it->second;
  }
  std::vector<Atom> args;
  for (const auto& c : pattern.children()) args.push_back(instantiate(c, b));
  return Atom::op(pattern.text(), std::move(args));
}

Atom resolve(Atom t, const Binding& s) {
  while (is_pattern_var(t)) {
    auto it = s.find(var_name(t));
    if (it == s.end()) break;
    t = it->second;
  }
  return t;
}

bool occurs(const std::string& v, const Atom& t, const Binding& s) {
  const Atom r = resolve(t, s);
  if (is_pattern_var(r)) return var_name(r) == v;
  for (const auto& c : r.children()) {
    if (occurs(v, c, s)) return true;
  }
  return false;
}

bool unify(const Atom& a, const Atom& b, Binding& s) {
  const Atom x = resolve(a, s);
  const Atom y = resolve(b, s);
  if (is_pattern_var(x) && is_pattern_var(y) && var_name(x) == var_name(y)) return true;
  if (is_pattern_var(x)) {
    if (occurs(var_name(x), y, s)) return false;
    s.emplace(var_name(x), y);
    return true;
  }
  if (is_pattern_var(y)) return unify(y, x, s);
  if (x.text() != y.text() || x.children().size() != y.children().size()) return false;
  for (std::size_t i = 0; i < x.children().size(); ++i) {
    if (!unify(x.child(i), y.child(i), s)) return false;
  }
  return true;
}

Atom substitute(const Atom& t, const Binding& s) {
  const Atom r = resolve(t, s);
  if (is_pattern_var(r)) return r;
  std::vector<Atom> args;
  for (const auto& c : r.children()) args.push_back(substitute(c, s));
  return Atom::op(r.text(), std::move(args));
}

Atom rename(const Atom& t, const std::string& suffix) {
  if (is_pattern_var(t)) return Atom::var(Atom::name(var_name(t) + suffix));
  std::vector<Atom> args;
  for (const auto& c : t.children()) args.push_back(rename(c, suffix));
  return Atom::op(t.text(), std::move(args));
}

void op_positions(const Atom& t, std::vector<std::size_t>& path, std::vector<std::vector<std::size_t>>& out) {
  if (is_pattern_var(t)) return;
  out.push_back(path);
  for (std::size_t i = 0; i < t.children().size(); ++i) {
    path.push_back(i);
    op_positions(t.child(i), path, out);
    path.pop_back();
  }
}

const Atom& subterm(const Atom& t, const std::vector<std::size_t>& path, std::size_t from = 0) {
  return from == path.size() ? t : subterm(t.child(path[from]), path, from + 1);
}

Atom replace(const Atom& t, const std::vector<std::size_t>& path, const Atom& r, std::size_t from = 0) {
  if (from == path.size()) return r;
  std::vector<Atom> args(t.children().begin(), t.children().end());
  args[path[from]] = replace(args[path[from]], path, r, from + 1);
  return Atom::op(t.text(), std::move(args));
}

}  // namespace

Atom parse_term(std::string_view text, const Signature& sig) { return TermParser(text, sig).parse(); }

Rule parse_rule(std::string_view text, const Signature& sig) {
  std::size_t arrow = text.find("->");
  if (arrow == std::string_view::npos) throw Error(ErrorKind::ParseError, "rule without '->': " + std::string(text));
  return {parse_term(text.substr(0, arrow), sig), parse_term(text.substr(arrow + 2), sig)};
}

// ---------------------------------------------------------------- rewriting

RewriteSystem::RewriteSystem(Presentation p) : p_(std::move(p)) {
  const Signature& sig = p_.signature;
  sig.validate();
  for (const auto& r : p_.rules) {
    const std::string where = r.lhs.str() + " -> " + r.rhs.str();
    if (is_pattern_var(r.lhs)) throw Error(ErrorKind::InvalidArgument, "rule with a variable left side: " + where);
    std::map<std::string, std::size_t> sorts;
    const std::size_t s = result_sort(r.lhs, sig);
    infer_sorts(r.lhs, s, sig, sorts);
    infer_sorts(r.rhs, s, sig, sorts);
    std::map<std::string, std::pair<std::size_t, std::size_t>> occ_l, occ_r;
    occurrences(r.lhs, 0, occ_l);
    occurrences(r.rhs, 0, occ_r);
    for (const auto& [v, info] : occ_r) {
      auto it = occ_l.find(v);
      if (it == occ_l.end()) throw Error(ErrorKind::InvalidArgument, "right side introduces " + v + ": " + where);
      if (info.first > it->second.first) {
        throw Error(ErrorKind::NonTerminatingRules, "right side duplicates " + v + ": " + where);
      }
      if (info.second > it->second.second) {
        throw Error(ErrorKind::InvalidArgument, "right side moves " + v + " deeper: " + where);
      }
    }
    if (weight(r.rhs) >= weight(r.lhs)) {
      throw Error(ErrorKind::NonTerminatingRules, "rule does not decrease term size: " + where);
    }
    if (r.rhs.depth() > r.lhs.depth()) throw Error(ErrorKind::InvalidArgument, "rule increases depth: " + where);
  }
}

Atom RewriteSystem::normalize(const Atom& t) const {
  std::size_t steps = 0;
  return normalize(t, steps);
}

Atom RewriteSystem::normalize(const Atom& t, std::size_t& steps) const {
  if (t.kind() != Atom::Kind::Op || p_.rules.empty()) return t;
  std::vector<Atom> args;
  args.reserve(t.children().size());
  for (const auto& c : t.children()) args.push_back(normalize(c, steps));
  Atom u = Atom::op(t.text(), std::move(args));
  for (const auto& r : p_.rules) {
    Binding b;
    if (!match(r.lhs, u, b)) continue;
    Atom next = instantiate(r.rhs, b);
    if (weight(next) >= weight(u)) {
      throw Error(ErrorKind::NonTerminatingRules, "step " + u.str() + " -> " + next.str() + " does not shrink");
    }
    if (++steps > kAtomCeiling) throw Error(ErrorKind::NonTerminatingRules, "step cap reached at " + u.str());
    return normalize(next, steps);
  }
  return u;
}

bool RewriteSystem::reducible_at_root(const Atom& t) const {
  for (const auto& r : p_.rules) {
    Binding b;
    if (match(r.lhs, t, b)) return true;
  }
  return false;
}

LawReport RewriteSystem::critical_pairs() const {
  LawReport report;
  report.subject = "critical pairs";
  for (std::size_t i = 0; i < p_.rules.size(); ++i) {
    const Rule& r1 = p_.rules[i];
    std::vector<std::vector<std::size_t>> positions;
    std::vector<std::size_t> path;
    op_positions(r1.lhs, path, positions);
    for (std::size_t j = 0; j < p_.rules.size(); ++j) {
      const Atom l2 = rename(p_.rules[j].lhs, "'");
      const Atom r2 = rename(p_.rules[j].rhs, "'");
      for (const auto& pos : positions) {
        if (i == j && pos.empty()) continue;
        Binding s;
        if (!unify(subterm(r1.lhs, pos), l2, s)) continue;
        const Atom left = normalize(substitute(r1.rhs, s));
        const Atom right = normalize(replace(substitute(r1.lhs, s), pos, substitute(r2, s)));
        report.expect(left == right, "local confluence", substitute(r1.lhs, s).str(),
                      left.str() + " and " + right.str() + " are distinct normal forms");
      }
    }
  }
  return report;
}

// ---------------------------------------------------------------- presented monads

namespace {

std::string default_name(const Presentation& p, std::size_t depth) {
  std::string out = p.rules.empty() ? "Free{" : "Pres{";
  for (std::size_t i = 0; i < p.signature.ops.size(); ++i) {
    out += (i ? "," : "") + p.signature.ops[i].name + "/" + std::to_string(p.signature.ops[i].arity());
  }
  out += "}";
  if (!p.rules.empty()) out += "+" + std::to_string(p.rules.size()) + "rules";
  return out + "@" + std::to_string(depth);
}

/// Calls fn on every argument tuple drawn from the pools; stops when fn returns true.
template <class F>
bool for_each_tuple(const std::vector<const std::vector<Atom>*>& pools, F&& fn) {
  for (const auto* p : pools) {
    if (p->empty()) return false;
  }
  std::vector<std::size_t> idx(pools.size(), 0);
  std::vector<Atom> args(pools.size());
  for (;;) {
    for (std::size_t i = 0; i < pools.size(); ++i) args[i] = (*pools[i])[idx[i]];
    if (fn(args)) return true;
    std::size_t k = pools.size();
    while (k > 0) {
      --k;
      if (++idx[k] < pools[k]->size()) break;
      idx[k] = 0;
      if (k == 0) return false;
    }
    if (pools.empty()) return false;
  }
}

}  // namespace

PresentedMonadImpl::PresentedMonadImpl(Presentation p, std::size_t depth, std::string name, std::uint64_t seed)
    : rs_(std::move(p)), depth_(depth), seed_(seed) {
  name_ = name.empty() ? default_name(rs_.presentation(), depth) : std::move(name);
  shape_ = signature().shape();
  const auto cp = rs_.critical_pairs();
  if (!cp.clean()) {
    throw Error(ErrorKind::InvalidArgument, "rules are not locally confluent: " + cp.violations.front().where + " (" +
                                                cp.violations.front().detail + ")");
  }
}

std::vector<std::vector<Atom>> PresentedMonadImpl::enumerate(const Object& a, std::size_t d) const {
  const Signature& sig = signature();
  const std::size_t sorts = sig.sorts.size();
  auto vars_up_to = [&](std::size_t k) {
    std::vector<std::vector<Atom>> out(sorts);
    for (std::size_t s = 0; s < sorts; ++s) {
      for (const auto& x : a.carrier(s)) {
        if (x.depth() <= k) out[s].push_back(Atom::var(x));
      }
    }
    return out;
  };
  auto level = vars_up_to(0);
  for (std::size_t k = 1; k <= d; ++k) {
    auto next = vars_up_to(k);
    std::size_t total = 0;
    for (const auto& op : sig.ops) {
      std::vector<const std::vector<Atom>*> pools;
      for (auto s : op.args) pools.push_back(&level[s]);
      auto& out = next[op.result];
      for_each_tuple(pools, [&](const std::vector<Atom>& args) {
        Atom t = Atom::op(op.name, args);
        if (!rs_.reducible_at_root(t)) out.push_back(std::move(t));
        if (out.size() > kAtomCeiling) {
          throw Error(ErrorKind::CeilingExceeded, name_ + " over " + std::to_string(a.size()) + " atoms");
        }
        return false;
      });
    }
    for (const auto& n : next) total += n.size();
    if (total > kAtomCeiling) throw Error(ErrorKind::CeilingExceeded, name_ + " exceeds the atom ceiling");
    level = std::move(next);
  }
  return level;
}

bool PresentedMonadImpl::deeper_terms_exist(const Object& a) const {
  const auto level = enumerate(a, depth_);
  std::size_t budget = kAtomCeiling;
  for (const auto& op : signature().ops) {
    if (op.args.empty()) {
      if (depth_ == 0 && !rs_.reducible_at_root(Atom::op(op.name, {}))) return true;
      continue;
    }
    std::vector<const std::vector<Atom>*> pools;
    for (auto s : op.args) pools.push_back(&level[s]);
    const bool found = for_each_tuple(pools, [&](const std::vector<Atom>& args) {
      if (budget-- == 0) return true;
      bool deep = false;
      for (const auto& x : args) deep = deep || x.depth() == depth_;
      return deep && !rs_.reducible_at_root(Atom::op(op.name, args));
    });
    if (found) return true;
  }
  return false;
}

Object PresentedMonadImpl::apply(const Object& a) const {
  if (!same_shape(*a.shape(), *shape_)) {
    throw Error(ErrorKind::MixedVariants, name_ + " applied to an object of another shape");
  }
  return cache_.get(a, [&] {
    auto terms = enumerate(a, depth_);
    for (std::size_t s = 0; s < terms.size(); ++s) {
      std::erase_if(terms[s], [](const Atom& t) { return t.kind() == Atom::Kind::Var; });
      for (const auto& x : a.carrier(s)) terms[s].push_back(Atom::var(x));
    }
    std::optional<std::size_t> marker;
    if (deeper_terms_exist(a)) marker = depth_;
    return Object::make(shape_, std::move(terms), {}, merge_truncation(marker, a.truncation()));
  });
}

Atom PresentedMonadImpl::normal_form(const Atom& t) const {
  Atom n = rs_.normalize(t);
  if (n.kind() == Atom::Kind::Op && n.depth() > depth_) {
    throw Error(ErrorKind::DepthExceeded, n.str() + " is deeper than " + std::to_string(depth_));
  }
  return n;
}

namespace {

Atom rename_leaves(const Atom& t, std::size_t sort, const Signature& sig, const Morphism& f) {
  if (t.kind() == Atom::Kind::Var) return Atom::var(f(sort, t.inner()));
  const OpSymbol* op = sig.find(t.text());
  std::vector<Atom> args;
  for (std::size_t i = 0; i < t.children().size(); ++i) args.push_back(rename_leaves(t.child(i), op->args[i], sig, f));
  return Atom::op(t.text(), std::move(args));
}

Atom flatten(const Atom& t) {
  if (t.kind() == Atom::Kind::Var) return t.inner();
  std::vector<Atom> args;
  for (const auto& c : t.children()) args.push_back(flatten(c));
  return Atom::op(t.text(), std::move(args));
}

void leaves(const Atom& t, std::size_t sort, const Signature& sig, std::vector<SortedAtom>& out) {
  if (t.kind() == Atom::Kind::Var) {
    out.emplace_back(sort, t.inner());
    return;
  }
  const OpSymbol* op = sig.find(t.text());
  for (std::size_t i = 0; i < t.children().size(); ++i) leaves(t.child(i), op->args[i], sig, out);
}

}  // namespace

Atom PresentedMonadImpl::fmap(const Morphism& f, std::size_t sort, const Atom& t) const {
  return normal_form(rename_leaves(t, sort, signature(), f));
}

Atom PresentedMonadImpl::unit(const Object&, std::size_t, const Atom& x) const { return Atom::var(x); }

Atom PresentedMonadImpl::join(const Object&, std::size_t, const Atom& tt) const { return normal_form(flatten(tt)); }

std::optional<std::vector<SortedAtom>> PresentedMonadImpl::support(std::size_t sort, const Atom& t) const {
  std::vector<SortedAtom> out;
  leaves(t, sort, signature(), out);
  return out;
}

std::vector<Atom> PresentedMonadImpl::generators(const Object& x, std::size_t sort) const {
  try {
    const Object tx = apply(x);
    return {tx.carrier(sort).begin(), tx.carrier(sort).end()};
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::CeilingExceeded) throw;
  }
  // Too many terms: a seeded random sample of normal forms.
  std::mt19937_64 rng(seed_ ^ x.size());
  const Signature& sig = signature();
  std::function<std::optional<Atom>(std::size_t, std::size_t)> gen = [&](std::size_t s, std::size_t budget) {
    std::vector<const OpSymbol*> ops;
    for (const auto& op : sig.ops) {
      if (op.result == s) ops.push_back(&op);
    }
    const bool leaf = x.size(s) > 0 && (budget == 0 || ops.empty() || rng() % 3 == 0);
    if (leaf) {
      const Atom& a = x.carrier(s)[rng() % x.size(s)];
      return std::optional<Atom>(Atom::var(a));
    }
    if (ops.empty() || budget == 0) return std::optional<Atom>();
    const OpSymbol* op = ops[rng() % ops.size()];
    std::vector<Atom> args;
    for (auto as : op->args) {
      auto c = gen(as, budget - 1);
      if (!c) return std::optional<Atom>();
      args.push_back(*c);
    }
    return std::optional<Atom>(Atom::op(op->name, std::move(args)));
  };
  std::set<Atom> out;
  for (int i = 0; i < 4000 && out.size() < 2000; ++i) {
    auto t = gen(sort, depth_);
    if (!t) continue;
    Atom n = rs_.normalize(*t);
    if (n.kind() == Atom::Kind::Var || n.depth() <= depth_) out.insert(n);
  }
  return {out.begin(), out.end()};
}

Monad presented_monad(const Presentation& p, std::size_t depth, const std::string& name) {
  return Monad(std::make_shared<PresentedMonadImpl>(p, depth, name));
}

const PresentedMonadImpl* as_presented(const Monad& m) {
  return m ? dynamic_cast<const PresentedMonadImpl*>(&m.impl()) : nullptr;
}

Object signature_functor(const Signature& sig, const Object& x) {
  std::vector<std::vector<Atom>> carriers(sig.sorts.size());
  for (const auto& op : sig.ops) {
    std::vector<const std::vector<Atom>*> pools;
    std::vector<std::vector<Atom>> storage;
    storage.reserve(op.args.size());
    for (auto s : op.args) storage.emplace_back(x.carrier(s).begin(), x.carrier(s).end());
    for (const auto& st : storage) pools.push_back(&st);
    if (pools.empty()) {
      carriers[op.result].push_back(Atom::op(op.name, {}));
      continue;
    }
    for_each_tuple(pools, [&](const std::vector<Atom>& args) {
      carriers[op.result].push_back(Atom::op(op.name, args));
      if (carriers[op.result].size() > kAtomCeiling) throw Error(ErrorKind::CeilingExceeded, "signature functor");
      return false;
    });
  }
  return Object::make(sig.shape(), std::move(carriers));
}

LawReport free_monad_decomposition_check(const Presentation& p, const std::vector<Object>& samples,
                                         std::size_t depth) {
  if (!p.rules.empty()) throw Error(ErrorKind::InvalidArgument, "decomposition check needs a presentation without rules");
  LawReport report;
  report.subject = "free monad decomposition of " + default_name(p, depth);
  std::optional<Monad> previous;
  for (std::size_t d = 0; d <= depth; ++d) {
    const Monad f = presented_monad(p, d);
    const std::string at = " at depth " + std::to_string(d);
    for (const auto& a : samples) {
      const std::string where = a.str() + at;
      const Object fa = f.apply(a);
      const Morphism eta = f.unit(a);
      report.expect(eta.is_mono(), "eta injective", where);
      std::vector<std::vector<Atom>> layered(fa.sort_count());
      for (std::size_t s = 0; s < fa.sort_count(); ++s) {
        for (const auto& t : fa.carrier(s)) {
          if (t.kind() == Atom::Kind::Op) layered[s].push_back(t);
        }
      }
      const Object complement = Object::make(fa.shape(), layered);
      const auto sum = coproduct(fa.shape(), {a, complement});
      const Morphism assemble = copair(sum, {eta, Morphism::inclusion(complement, fa)}, fa);
      report.expect(assemble.is_iso(), "F A = A + layered terms, eta left injection", where, assemble.str());
      if (d == 0) {
        report.expect(complement.empty(), "no operations at depth 0", where, complement.str());
      } else {
        const Object h = signature_functor(p.signature, previous->apply(a));
        report.expect(h == complement, "layered terms = H_Sigma(F_{d-1} A)", where,
                      std::to_string(h.size()) + " vs " + std::to_string(complement.size()));
      }
    }
    for (const auto& a : samples) {
      for (const auto& b : samples) {
        for (const auto& m : all_morphisms(a, b, 4096)) {
          if (!m.is_mono()) continue;
          report.expect(f.map(m).is_mono(), "F(m) injective", m.str() + at);
        }
      }
    }
    previous = f;
  }
  return report;
}

namespace {

Atom rename_symbols(const Atom& t, const std::map<std::string, std::string>& symbols) {
  if (t.kind() == Atom::Kind::Var) return t;
  std::vector<Atom> args;
  for (const auto& c : t.children()) args.push_back(rename_symbols(c, symbols));
  auto it = symbols.find(t.text());
  return Atom::op(it == symbols.end() ? t.text() : it->second, std::move(args));
}

}  // namespace

MonadMorphism translation_morphism(const Monad& source, const Monad& target,
                                   const std::map<std::string, std::string>& symbols) {
  const PresentedMonadImpl* tgt = as_presented(target);
  if (!as_presented(source) || !tgt) throw Error(ErrorKind::InvalidArgument, "translation needs presented monads");
  auto keep = target.impl_ptr();
  return {"translate", source, target, [keep, tgt, symbols](const Object&, std::size_t, const Atom& t) {
            return tgt->normal_form(rename_symbols(t, symbols));
          }};
}

MonadMorphism exceptions_as_constants(const Monad& exception, const Monad& presented) {
  const PresentedMonadImpl* tgt = as_presented(presented);
  if (!tgt) throw Error(ErrorKind::InvalidArgument, "target is not a presented monad");
  auto keep = presented.impl_ptr();
  return {"constants", exception, presented, [keep, tgt](const Object&, std::size_t, const Atom& t) {
            if (t.index() == 0) return Atom::var(t.inner());
            return tgt->normal_form(Atom::op(t.inner().text(), {}));
          }};
}

}  // namespace moncol
