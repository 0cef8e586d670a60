#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "logic.hpp"

namespace htnlearn {

struct Parameter {
  std::string name;  // ?x
  std::string type;
  auto operator<=>(const Parameter&) const = default;
};

// A task occurrence inside a method body or an initial task network.
struct TaskInstance {
  std::string name;
  std::vector<std::string> args;  // constants and/or variables
  auto operator<=>(const TaskInstance&) const = default;
};

struct TaskSchema {
  std::string name;
  std::vector<Parameter> params;
  auto operator<=>(const TaskSchema&) const = default;
};

struct OperatorDef {
  std::string name;
  std::vector<Parameter> params;
  std::set<Atom> prec;
  std::set<Atom> add;
  std::set<Atom> del;
  auto operator<=>(const OperatorDef&) const = default;
};

struct MethodDef {
  std::string name;
  std::vector<Parameter> params;
  std::string task;                    // compound task it decomposes
  std::vector<std::string> task_args;  // arguments of that task
  std::set<Atom> prec;
  std::vector<TaskInstance> subtasks;  // totally ordered
  auto operator<=>(const MethodDef&) const = default;
};

struct DomainFile {
  std::string name;
  TypeHierarchy types;
  std::vector<ObjectDecl> constants;
  std::vector<PredicateSchema> predicates;
  std::vector<TaskSchema> tasks;      // compound tasks
  std::vector<MethodDef> methods;
  std::vector<OperatorDef> operators;

  bool operator==(const DomainFile&) const = default;

  const PredicateSchema* predicate(const std::string& n) const {
    for (const auto& p : predicates)
      if (p.name == n) return &p;
    return nullptr;
  }
  const OperatorDef* op(const std::string& n) const {
    for (const auto& o : operators)
      if (o.name == n) return &o;
    return nullptr;
  }
  const TaskSchema* task(const std::string& n) const {
    for (const auto& t : tasks)
      if (t.name == n) return &t;
    return nullptr;
  }
  bool is_primitive(const std::string& n) const { return op(n) != nullptr; }
  bool is_compound(const std::string& n) const { return task(n) != nullptr; }

  std::vector<const MethodDef*> methods_for(const std::string& task_name) const {
    std::vector<const MethodDef*> out;
    for (const auto& m : methods)
      if (m.task == task_name) out.push_back(&m);
    return out;
  }
};

struct ProblemFile {
  std::string name;
  std::string domain_name;
  std::vector<ObjectDecl> objects;
  State init;
  std::set<GroundAtom> goal;               // may be empty
  std::vector<TaskInstance> init_network;  // totally ordered, ground

  bool operator==(const ProblemFile&) const = default;

  // Problem objects plus domain constants, the pool everything grounds over.
  std::vector<ObjectDecl> all_objects(const DomainFile& d) const {
    std::vector<ObjectDecl> out = objects;
    for (const auto& c : d.constants)
      if (std::none_of(out.begin(), out.end(), [&](const ObjectDecl& o) { return o.name == c.name; }))
        out.push_back(c);
    return out;
  }
};

namespace detail {

inline std::map<std::string, std::string> param_types(const std::vector<Parameter>& params) {
  std::map<std::string, std::string> m;
  for (const auto& p : params) m[p.name] = p.type;
  return m;
}

inline void check_atom(const DomainFile& d, const Atom& a,
                       const std::map<std::string, std::string>& var_types,
                       const std::map<std::string, std::string>& const_types,
                       const std::string& where) {
  const PredicateSchema* p = d.predicate(a.pred);
  if (!p) throw ValidationError("undeclared predicate '" + a.pred + "' in " + where);
  if (a.args.size() != p->arity())
    throw ValidationError("arity mismatch for '" + a.pred + "' in " + where);
  for (std::size_t i = 0; i < a.args.size(); ++i) {
    const std::string& arg = a.args[i];
    std::string t;
    if (is_variable(arg)) {
      auto it = var_types.find(arg);
      if (it == var_types.end())
        throw ValidationError("undeclared variable '" + arg + "' in " + where);
      t = it->second;
    } else {
      auto it = const_types.find(arg);
      if (it == const_types.end())
        throw ValidationError("undeclared constant '" + arg + "' in " + where);
      t = it->second;
    }
    if (!d.types.conforms(t, p->param_types[i]))
      throw ValidationError("type mismatch for argument " + std::to_string(i + 1) + " of '" +
                            a.pred + "' in " + where);
  }
}

}  // namespace detail

// Structural validation; throws ValidationError naming the offending item.
inline void validate(const DomainFile& d) {
  std::map<std::string, std::string> const_types;
  for (const auto& c : d.constants) {
    if (!d.types.known(c.type)) throw ValidationError("undeclared type '" + c.type + "' for constant " + c.name);
    const_types[c.name] = c.type;
  }
  std::set<std::string> names;
  for (const auto& p : d.predicates) {
    if (!names.insert(p.name).second) throw ValidationError("duplicate predicate '" + p.name + "'");
    for (const auto& t : p.param_types)
      if (!d.types.known(t)) throw ValidationError("undeclared type '" + t + "' in predicate " + p.name);
  }
  std::set<std::string> task_names;
  for (const auto& t : d.tasks) {
    if (!task_names.insert(t.name).second) throw ValidationError("duplicate task '" + t.name + "'");
    for (const auto& p : t.params)
      if (!d.types.known(p.type)) throw ValidationError("undeclared type '" + p.type + "' in task " + t.name);
  }
  for (const auto& o : d.operators) {
    if (task_names.count(o.name)) throw ValidationError("name '" + o.name + "' is both task and action");
    auto vt = detail::param_types(o.params);
    for (const auto& p : o.params)
      if (!d.types.known(p.type)) throw ValidationError("undeclared type '" + p.type + "' in action " + o.name);
    for (const auto& a : o.prec) detail::check_atom(d, a, vt, const_types, "action " + o.name);
    for (const auto& a : o.add) detail::check_atom(d, a, vt, const_types, "action " + o.name);
    for (const auto& a : o.del) detail::check_atom(d, a, vt, const_types, "action " + o.name);
  }
  for (const auto& m : d.methods) {
    const TaskSchema* head = d.task(m.task);
    if (!head) throw ValidationError("method '" + m.name + "' decomposes undeclared task '" + m.task + "'");
    if (m.task_args.size() != head->params.size())
      throw ValidationError("method '" + m.name + "' head arity mismatch");
    auto vt = detail::param_types(m.params);
    for (const auto& arg : m.task_args)
      if (is_variable(arg) && !vt.count(arg))
        throw ValidationError("method '" + m.name + "' uses undeclared variable " + arg);
    for (const auto& a : m.prec) detail::check_atom(d, a, vt, const_types, "method " + m.name);
    for (const auto& st : m.subtasks) {
      const TaskSchema* ct = d.task(st.name);
      const OperatorDef* op = d.op(st.name);
      if (!ct && !op)
        throw ValidationError("method '" + m.name + "' uses undeclared task '" + st.name + "'");
      std::size_t want = ct ? ct->params.size() : op->params.size();
      if (st.args.size() != want)
        throw ValidationError("method '" + m.name + "' subtask '" + st.name + "' arity mismatch");
      for (const auto& arg : st.args) {
        if (is_variable(arg)) {
          if (!vt.count(arg)) throw ValidationError("method '" + m.name + "' uses undeclared variable " + arg);
        } else if (!const_types.count(arg)) {
          throw ValidationError("method '" + m.name + "' uses undeclared constant " + arg);
        }
      }
    }
  }
}

inline void validate(const ProblemFile& p, const DomainFile& d) {
  std::map<std::string, std::string> const_types;
  for (const auto& o : p.all_objects(d)) {
    if (!d.types.known(o.type))
      throw ValidationError("undeclared type '" + o.type + "' for object " + o.name);
    const_types[o.name] = o.type;
  }
  for (const auto& a : p.init) detail::check_atom(d, a, {}, const_types, "init of " + p.name);
  for (const auto& a : p.goal) detail::check_atom(d, a, {}, const_types, "goal of " + p.name);
  for (const auto& t : p.init_network) {
    const TaskSchema* ct = d.task(t.name);
    const OperatorDef* op = d.op(t.name);
    if (!ct && !op) throw ValidationError("initial task network uses undeclared task '" + t.name + "'");
    std::size_t want = ct ? ct->params.size() : op->params.size();
    if (t.args.size() != want)
      throw ValidationError("initial task '" + t.name + "' arity mismatch");
    for (const auto& arg : t.args)
      if (!const_types.count(arg))
        throw ValidationError("initial task network uses undeclared object " + arg);
  }
}

// Canonical in-memory form: sections sorted by name. The printer emits in
// storage order, so canonicalize + print is deterministic and parse∘print is
// the identity.
inline void canonicalize(DomainFile& d) {
  std::sort(d.predicates.begin(), d.predicates.end());
  std::sort(d.tasks.begin(), d.tasks.end());
  std::sort(d.constants.begin(), d.constants.end());
  std::sort(d.methods.begin(), d.methods.end(),
            [](const MethodDef& a, const MethodDef& b) { return a.name < b.name; });
  std::sort(d.operators.begin(), d.operators.end(),
            [](const OperatorDef& a, const OperatorDef& b) { return a.name < b.name; });
}

}  // namespace htnlearn
