#pragma once

#include <algorithm>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <vector>

#include "hddl.hpp"

namespace htnlearn {

struct GroundAction {
  GroundTask task;
  Bitset prec, add, del;  // del is canonicalized to del \ add
};

struct GroundMethod {
  GroundTask head;
  Bitset prec;
  std::vector<GroundTask> subtasks;
  const MethodDef* schema = nullptr;
};

// One full recursive decomposition: the primitive rendering plus the chosen
// (head, subtask sequence) at every level, with primitive span indices.
struct Expansion {
  std::vector<GroundTask> primitives;
  struct Record {
    GroundTask head;
    std::vector<GroundTask> subtasks;  // the chosen method body, ground
    std::size_t begin = 0, end = 0;    // span within `primitives`, [begin, end)
  };
  std::vector<Record> records;
};

// Ground-truth blackbox over a hand-encoded HDDL domain/problem. Immutable
// after construction; decompose takes the rng explicitly so independent walks
// can run concurrently.
class Oracle {
public:
  Oracle(DomainFile domain, ProblemFile problem)
      : domain_(std::move(domain)), problem_(std::move(problem)) {
    validate(domain_);
    validate(problem_, domain_);
    index_ = AtomIndex(domain_.predicates, domain_.types, problem_.all_objects(domain_));
    init_ = index_.bits(problem_.init);
    enumerate_tasks();
  }

  const DomainFile& domain() const { return domain_; }
  const ProblemFile& problem() const { return problem_; }
  const AtomIndex& atoms() const { return index_; }
  const Bitset& initial_state() const { return init_; }

  // All ground tasks instantiable from the declared objects, primitive and
  // compound, in deterministic order. This is the random-walk draw pool.
  const std::vector<GroundTask>& all_tasks() const { return all_tasks_; }

  bool is_primitive(const GroundTask& t) const { return domain_.is_primitive(t.name); }

  const GroundAction& ground_action(const GroundTask& t) const {
    auto it = action_cache_.find(t);
    if (it != action_cache_.end()) return it->second;
    const OperatorDef* op = domain_.op(t.name);
    if (!op) throw ValidationError("not a primitive task: " + t.name);
    if (op->params.size() != t.args.size())
      throw ValidationError("arity mismatch grounding " + t.to_string());
    Substitution s;
    for (std::size_t i = 0; i < op->params.size(); ++i) s[op->params[i].name] = t.args[i];
    GroundAction a;
    a.task = t;
    a.task.kind = TaskKind::Primitive;
    a.prec = ground_set(op->prec, s);
    a.add = ground_set(op->add, s);
    a.del = ground_set(op->del, s);
    a.del.subtract(a.add);  // (s \ del) ∪ add: an atom both added and deleted stays
    return action_cache_.emplace(t, std::move(a)).first->second;
  }

  bool applicable(const GroundTask& t, const Bitset& s) const {
    if (!args_declared(t)) return false;
    return ground_action(t).prec.subset_of(s);
  }

  Bitset step(const Bitset& s, const GroundTask& t) const {
    const GroundAction& a = ground_action(t);
    if (!a.prec.subset_of(s))
      throw InapplicableActionError(t.to_string() + " is not applicable");
    Bitset out = s;
    out.subtract(a.del);
    out |= a.add;
    return out;
  }

  // Ground methods relevant to head `t` whose preconditions hold in s,
  // enumerated in deterministic order.
  std::vector<GroundMethod> applicable_methods(const GroundTask& t, const Bitset& s) const {
    std::vector<GroundMethod> out;
    for (const MethodDef* m : domain_.methods_for(t.name)) {
      Substitution bound;
      bool ok = true;
      for (std::size_t i = 0; i < m->task_args.size() && ok; ++i) {
        const std::string& a = m->task_args[i];
        if (is_variable(a)) {
          auto it = bound.find(a);
          if (it == bound.end())
            bound[a] = t.args[i];
          else
            ok = it->second == t.args[i];
        } else {
          ok = a == t.args[i];
        }
      }
      if (!ok) continue;
      // check head-bound args conform to parameter types
      for (const auto& p : m->params) {
        auto it = bound.find(p.name);
        if (it != bound.end() &&
            !domain_.types.conforms(index_.object_type(it->second), p.type))
          ok = false;
      }
      if (!ok) continue;
      std::vector<const Parameter*> free;
      for (const auto& p : m->params)
        if (!bound.count(p.name)) free.push_back(&p);
      std::vector<std::vector<std::string>> pools;
      for (const auto* p : free) pools.push_back(index_.objects_of_type(p->type));
      if (free.empty()) {
        try_method(*m, bound, s, out);
      } else {
        for_each_binding(pools, [&](const std::vector<std::string>& args) {
          Substitution full = bound;
          for (std::size_t i = 0; i < free.size(); ++i) full[free[i]->name] = args[i];
          try_method(*m, full, s, out);
        });
      }
    }
    return out;
  }

  bool decomposable(const GroundTask& t, const Bitset& s) const {
    Expansion e;
    Bitset cur = s;
    return expand(t, cur, 0, nullptr, e);
  }

  // Recursive decomposition to a primitive, executable-from-s sequence.
  // Among ground methods whose recursive decomposition succeeds, the choice
  // is uniform (shuffle, first success). Reproducible for a fixed rng.
  std::optional<Expansion> try_decompose(const GroundTask& t, const Bitset& s,
                                         std::mt19937_64& rng) const {
    Expansion e;
    Bitset cur = s;
    if (!expand(t, cur, 0, &rng, e)) return std::nullopt;
    return e;
  }

  Expansion decompose(const GroundTask& t, const Bitset& s, std::mt19937_64& rng) const {
    auto e = try_decompose(t, s, rng);
    if (!e) throw NotDecomposableError(t.to_string() + " is not decomposable");
    return *e;
  }

  // Executes a primitive sequence; nullopt if some step is inapplicable.
  std::optional<Bitset> run(const Bitset& s, const std::vector<GroundTask>& seq) const {
    Bitset cur = s;
    for (const auto& t : seq) {
      if (!is_primitive(t) || !applicable(t, cur)) return std::nullopt;
      cur = step(cur, t);
    }
    return cur;
  }

  static constexpr int kMaxDepth = 64;

private:
  bool args_declared(const GroundTask& t) const {
    for (const auto& a : t.args)
      if (!index_.has_object(a)) return false;
    return true;
  }

  Bitset ground_set(const std::set<Atom>& atoms, const Substitution& s) const {
    Bitset b(index_.size());
    for (const auto& a : atoms) b.set(index_.id(apply_substitution(a, s)));
    return b;
  }

  void try_method(const MethodDef& m, const Substitution& binding, const Bitset& s,
                  std::vector<GroundMethod>& out) const {
    Bitset prec(index_.size());
    for (const auto& a : m.prec) {
      Atom g = apply_substitution(a, binding);
      auto id = index_.find(g);
      if (!id) return;  // binding produced a type-inconsistent atom
      prec.set(*id);
    }
    if (!prec.subset_of(s)) return;
    GroundMethod gm;
    gm.schema = &m;
    gm.prec = std::move(prec);
    gm.head.name = m.task;
    gm.head.kind = TaskKind::Compound;
    for (const auto& a : m.task_args)
      gm.head.args.push_back(is_variable(a) ? binding.at(a) : a);
    for (const auto& st : m.subtasks) {
      GroundTask sub;
      sub.name = st.name;
      sub.kind = domain_.is_compound(st.name) ? TaskKind::Compound : TaskKind::Primitive;
      for (const auto& a : st.args) sub.args.push_back(is_variable(a) ? binding.at(a) : a);
      gm.subtasks.push_back(std::move(sub));
    }
    out.push_back(std::move(gm));
  }

  // Depth-first expansion with backtracking. Appends to e.primitives and
  // advances `state`; on failure both are rolled back by the caller's
  // checkpoints. rng == nullptr means deterministic declaration order
  // (used by decomposable).
  bool expand(const GroundTask& t, Bitset& state, int depth, std::mt19937_64* rng,
              Expansion& e) const {
    if (depth > kMaxDepth) return false;
    if (!args_declared(t)) return false;
    if (domain_.is_primitive(t.name)) {
      if (!applicable(t, state)) return false;
      GroundTask p = t;
      p.kind = TaskKind::Primitive;
      state = step(state, p);
      e.primitives.push_back(std::move(p));
      return true;
    }
    if (!domain_.is_compound(t.name)) return false;
    std::vector<GroundMethod> choices = applicable_methods(t, state);
    if (rng) std::shuffle(choices.begin(), choices.end(), *rng);
    for (const auto& m : choices) {
      Bitset saved_state = state;
      std::size_t saved_prims = e.primitives.size();
      std::size_t saved_recs = e.records.size();
      std::size_t rec_idx = e.records.size();
      e.records.push_back(Expansion::Record{m.head, m.subtasks, saved_prims, saved_prims});
      bool ok = true;
      for (const auto& st : m.subtasks) {
        if (!expand(st, state, depth + 1, rng, e)) {
          ok = false;
          break;
        }
      }
      if (ok) {
        e.records[rec_idx].end = e.primitives.size();
        return true;
      }
      state = saved_state;
      e.primitives.resize(saved_prims);
      e.records.resize(saved_recs);
    }
    return false;
  }

  DomainFile domain_;
  ProblemFile problem_;
  AtomIndex index_;
  Bitset init_;
  std::vector<GroundTask> all_tasks_;
  mutable std::map<GroundTask, GroundAction> action_cache_;

  void enumerate_tasks() {
    for (const auto& op : domain_.operators) {
      std::vector<std::vector<std::string>> pools;
      for (const auto& p : op.params) pools.push_back(index_.objects_of_type(p.type));
      for_each_binding(pools, [&](const std::vector<std::string>& args) {
        all_tasks_.push_back(GroundTask{op.name, args, TaskKind::Primitive});
      });
    }
    for (const auto& ts : domain_.tasks) {
      std::vector<std::vector<std::string>> pools;
      for (const auto& p : ts.params) pools.push_back(index_.objects_of_type(p.type));
      for_each_binding(pools, [&](const std::vector<std::string>& args) {
        all_tasks_.push_back(GroundTask{ts.name, args, TaskKind::Compound});
      });
    }
    std::sort(all_tasks_.begin(), all_tasks_.end());
  }
};

}  // namespace htnlearn
