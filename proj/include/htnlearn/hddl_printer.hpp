#pragma once

#include <sstream>
#include <string>

#include "hddl.hpp"

namespace htnlearn {

namespace detail {

inline std::string atom_text(const Atom& a) {
  std::string s = "(" + a.pred;
  for (const auto& arg : a.args) s += " " + arg;
  return s + ")";
}

inline std::string task_text(const TaskInstance& t) {
  std::string s = "(" + t.name;
  for (const auto& arg : t.args) s += " " + arg;
  return s + ")";
}

inline std::string params_text(const std::vector<Parameter>& params) {
  std::string s = "(";
  for (std::size_t i = 0; i < params.size(); ++i) {
    if (i) s += " ";
    s += params[i].name + " - " + params[i].type;
  }
  return s + ")";
}

// `()` when empty, the bare atom when singleton, `(and ...)` otherwise.
inline std::string conjunction_text(const std::set<Atom>& atoms) {
  if (atoms.empty()) return "()";
  if (atoms.size() == 1) return atom_text(*atoms.begin());
  std::string s = "(and";
  for (const auto& a : atoms) s += " " + atom_text(a);
  return s + ")";
}

inline std::string task_list_text(const std::vector<TaskInstance>& tasks) {
  if (tasks.empty()) return "()";
  if (tasks.size() == 1) return task_text(tasks[0]);
  std::string s = "(and";
  for (const auto& t : tasks) s += " " + task_text(t);
  return s + ")";
}

inline std::string effect_text(const std::set<Atom>& add, const std::set<Atom>& del) {
  std::size_t n = add.size() + del.size();
  if (n == 0) return "()";
  std::string body;
  for (const auto& a : add) body += " " + atom_text(a);
  for (const auto& a : del) body += " (not " + atom_text(a) + ")";
  if (n == 1) return body.substr(1);
  return "(and" + body + ")";
}

inline std::string typed_names_text(const std::vector<ObjectDecl>& decls) {
  std::string s;
  for (const auto& o : decls) s += "    " + o.name + " - " + o.type + "\n";
  return s;
}

}  // namespace detail

// Canonical printer: fixed section order, storage (name-sorted) order within
// sections, two-space indent. Output is the byte-exact golden-test contract.
inline std::string print_domain(const DomainFile& d) {
  std::ostringstream out;
  out << "(define (domain " << d.name << ")\n";
  out << "  (:requirements :typing :hierarchy)\n";
  if (!d.types.parents().empty()) {
    out << "  (:types";
    for (const auto& [t, parent] : d.types.parents()) out << " " << t << " - " << parent;
    out << ")\n";
  }
  if (!d.constants.empty()) {
    out << "  (:constants";
    for (const auto& c : d.constants) out << " " << c.name << " - " << c.type;
    out << ")\n";
  }
  out << "  (:predicates\n";
  for (const auto& p : d.predicates) {
    out << "    (" << p.name;
    for (std::size_t i = 0; i < p.param_types.size(); ++i)
      out << " ?v" << i << " - " << p.param_types[i];
    out << ")\n";
  }
  out << "  )\n";
  for (const auto& t : d.tasks) {
    out << "  (:task " << t.name << "\n";
    out << "    :parameters " << detail::params_text(t.params) << "\n";
    out << "  )\n";
  }
  for (const auto& m : d.methods) {
    out << "  (:method " << m.name << "\n";
    out << "    :parameters " << detail::params_text(m.params) << "\n";
    out << "    :task " << detail::task_text(TaskInstance{m.task, m.task_args}) << "\n";
    out << "    :precondition " << detail::conjunction_text(m.prec) << "\n";
    out << "    :ordered-subtasks " << detail::task_list_text(m.subtasks) << "\n";
    out << "  )\n";
  }
  for (const auto& o : d.operators) {
    out << "  (:action " << o.name << "\n";
    out << "    :parameters " << detail::params_text(o.params) << "\n";
    out << "    :precondition " << detail::conjunction_text(o.prec) << "\n";
    out << "    :effect " << detail::effect_text(o.add, o.del) << "\n";
    out << "  )\n";
  }
  out << ")\n";
  return out.str();
}

inline std::string print_problem(const ProblemFile& p) {
  std::ostringstream out;
  out << "(define (problem " << p.name << ")\n";
  out << "  (:domain " << p.domain_name << ")\n";
  out << "  (:objects\n" << detail::typed_names_text(p.objects) << "  )\n";
  out << "  (:htn\n";
  out << "    :parameters ()\n";
  out << "    :ordered-subtasks " << detail::task_list_text(p.init_network) << "\n";
  out << "  )\n";
  out << "  (:init\n";
  for (const auto& a : p.init) out << "    " << detail::atom_text(a) << "\n";
  out << "  )\n";
  if (!p.goal.empty()) out << "  (:goal " << detail::conjunction_text(p.goal) << ")\n";
  out << ")\n";
  return out.str();
}

}  // namespace htnlearn
