#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "errors.hpp"
#include "util.hpp"

namespace htnlearn {

inline bool is_variable(const std::string& s) { return !s.empty() && s[0] == '?'; }

// Type lattice for HDDL :types. Every declared type ultimately derives from
// "object"; conformance walks the parent chain.
class TypeHierarchy {
public:
  void declare(const std::string& type, const std::string& parent = "object") {
    if (type == "object") return;
    parent_.emplace(type, parent);
  }
  bool known(const std::string& type) const {
    return type == "object" || parent_.count(type) > 0;
  }
  bool conforms(const std::string& type, const std::string& required) const {
    if (required == "object") return known(type);
    std::string t = type;
    while (true) {
      if (t == required) return true;
      auto it = parent_.find(t);
      if (it == parent_.end()) return false;
      t = it->second;
    }
  }
  const std::map<std::string, std::string>& parents() const { return parent_; }
  bool operator==(const TypeHierarchy&) const = default;

private:
  std::map<std::string, std::string> parent_;  // type -> parent
};

struct PredicateSchema {
  std::string name;
  std::vector<std::string> param_types;

  std::size_t arity() const { return param_types.size(); }
  auto operator<=>(const PredicateSchema&) const = default;
};

struct ObjectDecl {
  std::string name;
  std::string type;
  auto operator<=>(const ObjectDecl&) const = default;
};

// Atom over constants and/or variables; GroundAtom is the fully-constant case.
struct Atom {
  std::string pred;
  std::vector<std::string> args;

  bool is_ground() const {
    return std::none_of(args.begin(), args.end(), [](const std::string& a) { return is_variable(a); });
  }
  auto operator<=>(const Atom&) const = default;

  std::string to_string() const {
    std::string s = "(" + pred;
    for (const auto& a : args) s += " " + a;
    return s + ")";
  }
};
using GroundAtom = Atom;

// Closed-world state: set semantics, absence means false.
using State = std::set<GroundAtom>;

enum class TaskKind { Primitive, Compound };

// A task instance over constants: a DFA label, a walk step, a planner node.
// Identity deliberately ignores the kind; names are unique across operators
// and compound tasks in a validated domain.
struct GroundTask {
  std::string name;
  std::vector<std::string> args;
  TaskKind kind = TaskKind::Primitive;

  bool operator==(const GroundTask& o) const { return name == o.name && args == o.args; }
  bool operator<(const GroundTask& o) const {
    if (name != o.name) return name < o.name;
    return args < o.args;
  }
  std::string to_string() const { return name + "(" + join(args, ",") + ")"; }

  // Inverse of to_string; used by the sample text format.
  static GroundTask parse(const std::string& text, TaskKind kind = TaskKind::Primitive) {
    auto open = text.find('(');
    if (open == std::string::npos || text.back() != ')')
      throw Error("malformed task literal: " + text);
    GroundTask t;
    t.kind = kind;
    t.name = text.substr(0, open);
    std::string body = text.substr(open + 1, text.size() - open - 2);
    std::size_t pos = 0;
    while (pos < body.size()) {
      auto comma = body.find(',', pos);
      if (comma == std::string::npos) comma = body.size();
      t.args.push_back(body.substr(pos, comma - pos));
      pos = comma + 1;
    }
    return t;
  }
};

using Substitution = std::map<std::string, std::string>;

inline Atom apply_substitution(const Atom& schema, const Substitution& s) {
  Atom out;
  out.pred = schema.pred;
  out.args.reserve(schema.args.size());
  for (const auto& a : schema.args) {
    if (!is_variable(a)) {
      out.args.push_back(a);
      continue;
    }
    auto it = s.find(a);
    if (it == s.end()) throw UnboundVariableError("unbound variable " + a + " in " + schema.to_string());
    out.args.push_back(it->second);
  }
  return out;
}

// Result of lifting a family of ground items (action instances, method
// instances) that share one head name.
struct Generalization {
  std::vector<std::string> vars;           // ?v0, ?v1, ... one per position
  std::vector<Substitution> bindings;      // per item: var -> constant
  std::vector<bool> representable;         // per item: binding is injective
};

// Object Identity lifting of the shared head: each argument position gets its
// own variable. An item that repeats a constant across positions cannot be
// regenerated by an injective substitution; it is flagged, not rejected.
inline Generalization oi_generalize(const std::vector<std::pair<std::string, std::vector<std::string>>>& items) {
  if (items.empty()) throw Error("oi_generalize: no items");
  const auto& head = items.front();
  for (const auto& it : items) {
    if (it.first != head.first || it.second.size() != head.second.size())
      throw ValidationError("oi_generalize: arity or name mismatch for " + it.first);
  }
  Generalization g;
  for (std::size_t i = 0; i < head.second.size(); ++i) g.vars.push_back("?v" + std::to_string(i));
  for (const auto& it : items) {
    Substitution b;
    std::set<std::string> used;
    bool inj = true;
    for (std::size_t i = 0; i < it.second.size(); ++i) {
      b[g.vars[i]] = it.second[i];
      inj = inj && used.insert(it.second[i]).second;
    }
    g.bindings.push_back(std::move(b));
    g.representable.push_back(inj);
  }
  return g;
}

// Enumerates assignments of objects to a list of typed slots.
template <class Fn>
void for_each_binding(const std::vector<std::vector<std::string>>& pools, Fn&& fn) {
  for (const auto& p : pools)
    if (p.empty()) return;
  std::vector<std::size_t> idx(pools.size(), 0);
  std::vector<std::string> args(pools.size());
  while (true) {
    for (std::size_t k = 0; k < pools.size(); ++k) args[k] = pools[k][idx[k]];
    fn(args);
    std::size_t k = pools.size();
    while (k > 0) {
      if (++idx[k - 1] < pools[k - 1].size()) break;
      idx[k - 1] = 0;
      --k;
    }
    if (k == 0) break;
  }
}

// The grounded atom universe for a (predicates, types, objects) triple:
// every type-conformant ground atom, interned to a dense id.
class AtomIndex {
public:
  AtomIndex() = default;
  AtomIndex(const std::vector<PredicateSchema>& preds, TypeHierarchy types,
            const std::vector<ObjectDecl>& objects)
      : types_(std::move(types)), objects_(objects) {
    for (const auto& o : objects_) object_type_[o.name] = o.type;
    for (const auto& p : preds) {
      std::vector<std::vector<std::string>> pools;
      for (const auto& t : p.param_types) pools.push_back(objects_of_type(t));
      for_each_binding(pools, [&](const std::vector<std::string>& args) {
        intern(Atom{p.name, args});
      });
    }
  }

  std::size_t size() const { return atoms_.size(); }
  const Atom& atom(std::uint32_t id) const { return atoms_[id]; }
  std::optional<std::uint32_t> find(const Atom& a) const {
    auto it = ids_.find(a);
    if (it == ids_.end()) return std::nullopt;
    return it->second;
  }
  std::uint32_t id(const Atom& a) const {
    auto f = find(a);
    if (!f) throw ValidationError("atom outside universe: " + a.to_string());
    return *f;
  }

  Bitset bits(const State& s) const {
    Bitset b(size());
    for (const auto& a : s) b.set(id(a));
    return b;
  }
  State to_state(const Bitset& b) const {
    State s;
    b.for_each([&](std::size_t i) { s.insert(atoms_[i]); });
    return s;
  }

  const TypeHierarchy& types() const { return types_; }
  const std::vector<ObjectDecl>& objects() const { return objects_; }
  const std::string& object_type(const std::string& name) const {
    auto it = object_type_.find(name);
    if (it == object_type_.end()) throw ValidationError("undeclared object: " + name);
    return it->second;
  }
  bool has_object(const std::string& name) const { return object_type_.count(name) > 0; }

  std::vector<std::string> objects_of_type(const std::string& t) const {
    std::vector<std::string> out;
    for (const auto& o : objects_)
      if (types_.conforms(o.type, t)) out.push_back(o.name);
    return out;
  }

  bool operator==(const AtomIndex& o) const { return atoms_ == o.atoms_ && objects_ == o.objects_; }

private:
  void intern(const Atom& a) {
    if (ids_.count(a)) return;
    ids_[a] = static_cast<std::uint32_t>(atoms_.size());
    atoms_.push_back(a);
  }

  TypeHierarchy types_;
  std::vector<Atom> atoms_;
  std::map<Atom, std::uint32_t> ids_;
  std::vector<ObjectDecl> objects_;
  std::map<std::string, std::string> object_type_;
};

// Three-valued observation of a state: present / absent / unobserved.
struct Observation {
  Bitset present;
  Bitset absent;

  Observation() = default;
  Observation(Bitset p, Bitset a) : present(std::move(p)), absent(std::move(a)) {}

  // Full observation of a state over the whole universe.
  static Observation full(const Bitset& state, std::size_t universe) {
    Bitset abs(universe);
    for (std::size_t i = 0; i < universe; ++i)
      if (!state.test(i)) abs.set(i);
    return Observation(state, abs);
  }

  bool observes_present(std::size_t i) const { return present.test(i); }
  bool observes_absent(std::size_t i) const { return absent.test(i); }
  bool unobserved(std::size_t i) const { return !present.test(i) && !absent.test(i); }
  bool operator==(const Observation&) const = default;
};

}  // namespace htnlearn
