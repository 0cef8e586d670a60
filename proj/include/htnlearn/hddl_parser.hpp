#pragma once

#include <cctype>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "hddl.hpp"

namespace htnlearn {

namespace sexpr {

struct Node {
  // Either a symbol or a list, never both.
  std::string symbol;
  std::vector<Node> items;
  bool is_list = false;
  int line = 0, col = 0;

  bool is_symbol() const { return !is_list; }
  const Node& at(std::size_t i) const {
    if (i >= items.size()) throw ParseError("missing element in list", line, col);
    return items[i];
  }
  std::string head() const {
    if (!is_list || items.empty() || !items[0].is_symbol()) return "";
    return items[0].symbol;
  }
};

class Reader {
public:
  explicit Reader(const std::string& text) : text_(text) {}

  Node read() {
    skip_ws();
    Node n = read_node();
    skip_ws();
    if (pos_ < text_.size()) throw ParseError("trailing content after expression", line_, col_);
    return n;
  }

private:
  Node read_node() {
    skip_ws();
    if (pos_ >= text_.size()) throw ParseError("unexpected end of input", line_, col_);
    Node n;
    n.line = line_;
    n.col = col_;
    if (text_[pos_] == '(') {
      advance();
      n.is_list = true;
      while (true) {
        skip_ws();
        if (pos_ >= text_.size()) throw ParseError("unbalanced '('", n.line, n.col);
        if (text_[pos_] == ')') {
          advance();
          break;
        }
        n.items.push_back(read_node());
      }
    } else if (text_[pos_] == ')') {
      throw ParseError("unexpected ')'", line_, col_);
    } else {
      while (pos_ < text_.size() && !std::isspace(static_cast<unsigned char>(text_[pos_])) &&
             text_[pos_] != '(' && text_[pos_] != ')' && text_[pos_] != ';') {
        n.symbol += static_cast<char>(std::tolower(static_cast<unsigned char>(text_[pos_])));
        advance();
      }
      if (n.symbol.empty()) throw ParseError("empty token", line_, col_);
    }
    return n;
  }

  void skip_ws() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == ';') {
        while (pos_ < text_.size() && text_[pos_] != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        break;
      }
    }
  }

  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  const std::string& text_;
  std::size_t pos_ = 0;
  int line_ = 1, col_ = 1;
};

}  // namespace sexpr

namespace detail {

// Parses a typed item list: `a b - t c - u` or untyped `a b c` (type object).
inline std::vector<std::pair<std::string, std::string>> typed_list(const sexpr::Node& list,
                                                                   std::size_t from = 0) {
  std::vector<std::pair<std::string, std::string>> out;
  std::vector<std::string> pending;
  for (std::size_t i = from; i < list.items.size(); ++i) {
    const auto& it = list.at(i);
    if (!it.is_symbol()) throw ParseError("expected name in typed list", it.line, it.col);
    if (it.symbol == "-") {
      const auto& ty = list.at(++i);
      if (!ty.is_symbol()) throw ParseError("expected type name", ty.line, ty.col);
      for (auto& p : pending) out.emplace_back(p, ty.symbol);
      pending.clear();
    } else {
      pending.push_back(it.symbol);
    }
  }
  for (auto& p : pending) out.emplace_back(p, "object");
  return out;
}

inline std::vector<Parameter> parameters(const sexpr::Node& list) {
  std::vector<Parameter> out;
  for (auto& [name, type] : typed_list(list)) {
    if (!is_variable(name)) throw ParseError("parameter must be a ?variable", list.line, list.col);
    out.push_back(Parameter{name, type});
  }
  return out;
}

inline Atom atom(const sexpr::Node& n) {
  if (!n.is_list || n.items.empty() || !n.at(0).is_symbol())
    throw ParseError("expected atom", n.line, n.col);
  Atom a;
  a.pred = n.at(0).symbol;
  for (std::size_t i = 1; i < n.items.size(); ++i) {
    if (!n.at(i).is_symbol()) throw ParseError("atom arguments must be symbols", n.line, n.col);
    a.args.push_back(n.at(i).symbol);
  }
  return a;
}

// Conjunctive positive formula: (), (and ...), or a bare atom.
inline std::set<Atom> conjunction(const sexpr::Node& n) {
  std::set<Atom> out;
  if (!n.is_list) throw ParseError("expected formula", n.line, n.col);
  if (n.items.empty()) return out;
  if (n.head() == "and") {
    for (std::size_t i = 1; i < n.items.size(); ++i) out.insert(atom(n.at(i)));
  } else {
    out.insert(atom(n));
  }
  return out;
}

// STRIPS effect: positive atoms and (not ...) literals under an optional (and ...).
inline void effect(const sexpr::Node& n, std::set<Atom>& add, std::set<Atom>& del) {
  if (!n.is_list) throw ParseError("expected effect", n.line, n.col);
  if (n.items.empty()) return;
  auto one = [&](const sexpr::Node& lit) {
    if (lit.head() == "not") {
      del.insert(atom(lit.at(1)));
    } else {
      add.insert(atom(lit));
    }
  };
  if (n.head() == "and") {
    for (std::size_t i = 1; i < n.items.size(); ++i) one(n.at(i));
  } else {
    one(n);
  }
}

inline TaskInstance task_instance(const sexpr::Node& n) {
  if (!n.is_list || n.items.empty()) throw ParseError("expected task", n.line, n.col);
  TaskInstance t;
  t.name = n.at(0).symbol;
  for (std::size_t i = 1; i < n.items.size(); ++i) t.args.push_back(n.at(i).symbol);
  return t;
}

inline std::vector<TaskInstance> task_list(const sexpr::Node& n) {
  std::vector<TaskInstance> out;
  if (!n.is_list) throw ParseError("expected task list", n.line, n.col);
  if (n.items.empty()) return out;
  if (n.head() == "and") {
    for (std::size_t i = 1; i < n.items.size(); ++i) out.push_back(task_instance(n.at(i)));
  } else {
    out.push_back(task_instance(n));
  }
  return out;
}

}  // namespace detail

inline DomainFile parse_domain(const std::string& text) {
  sexpr::Node root = sexpr::Reader(text).read();
  if (root.head() != "define") throw ParseError("expected (define ...)", root.line, root.col);
  DomainFile d;
  const auto& hd = root.at(1);
  if (hd.head() != "domain") throw ParseError("expected (domain NAME)", hd.line, hd.col);
  d.name = hd.at(1).symbol;

  for (std::size_t i = 2; i < root.items.size(); ++i) {
    const auto& sec = root.at(i);
    const std::string h = sec.head();
    if (h == ":requirements") {
      continue;  // accepted, not checked
    } else if (h == ":types") {
      for (auto& [t, parent] : detail::typed_list(sec, 1)) d.types.declare(t, parent);
    } else if (h == ":constants") {
      for (auto& [n, t] : detail::typed_list(sec, 1)) d.constants.push_back(ObjectDecl{n, t});
    } else if (h == ":predicates") {
      for (std::size_t k = 1; k < sec.items.size(); ++k) {
        const auto& p = sec.at(k);
        PredicateSchema ps;
        ps.name = p.at(0).symbol;
        for (auto& [v, t] : detail::typed_list(p, 1)) {
          (void)v;
          ps.param_types.push_back(t);
        }
        d.predicates.push_back(std::move(ps));
      }
    } else if (h == ":task") {
      TaskSchema t;
      t.name = sec.at(1).symbol;
      for (std::size_t k = 2; k < sec.items.size(); ++k) {
        if (sec.at(k).symbol == ":parameters") t.params = detail::parameters(sec.at(++k));
      }
      d.tasks.push_back(std::move(t));
    } else if (h == ":method") {
      MethodDef m;
      m.name = sec.at(1).symbol;
      for (std::size_t k = 2; k < sec.items.size(); ++k) {
        const std::string key = sec.at(k).symbol;
        if (key == ":parameters") {
          m.params = detail::parameters(sec.at(++k));
        } else if (key == ":task") {
          TaskInstance t = detail::task_instance(sec.at(++k));
          m.task = t.name;
          m.task_args = t.args;
        } else if (key == ":precondition") {
          m.prec = detail::conjunction(sec.at(++k));
        } else if (key == ":ordered-subtasks" || key == ":subtasks" || key == ":tasks") {
          m.subtasks = detail::task_list(sec.at(++k));
        } else {
          throw ParseError("unsupported method slot " + key, sec.at(k).line, sec.at(k).col);
        }
      }
      d.methods.push_back(std::move(m));
    } else if (h == ":action") {
      OperatorDef o;
      o.name = sec.at(1).symbol;
      for (std::size_t k = 2; k < sec.items.size(); ++k) {
        const std::string key = sec.at(k).symbol;
        if (key == ":parameters") {
          o.params = detail::parameters(sec.at(++k));
        } else if (key == ":precondition") {
          o.prec = detail::conjunction(sec.at(++k));
        } else if (key == ":effect") {
          detail::effect(sec.at(++k), o.add, o.del);
        } else {
          throw ParseError("unsupported action slot " + key, sec.at(k).line, sec.at(k).col);
        }
      }
      d.operators.push_back(std::move(o));
    } else {
      throw ParseError("unsupported domain section " + h, sec.line, sec.col);
    }
  }
  canonicalize(d);
  validate(d);
  return d;
}

inline ProblemFile parse_problem(const std::string& text, const DomainFile& d) {
  sexpr::Node root = sexpr::Reader(text).read();
  if (root.head() != "define") throw ParseError("expected (define ...)", root.line, root.col);
  ProblemFile p;
  const auto& hd = root.at(1);
  if (hd.head() != "problem") throw ParseError("expected (problem NAME)", hd.line, hd.col);
  p.name = hd.at(1).symbol;

  for (std::size_t i = 2; i < root.items.size(); ++i) {
    const auto& sec = root.at(i);
    const std::string h = sec.head();
    if (h == ":domain") {
      p.domain_name = sec.at(1).symbol;
    } else if (h == ":objects") {
      for (auto& [n, t] : detail::typed_list(sec, 1)) p.objects.push_back(ObjectDecl{n, t});
    } else if (h == ":htn") {
      for (std::size_t k = 1; k < sec.items.size(); ++k) {
        const std::string key = sec.at(k).symbol;
        if (key == ":parameters") {
          ++k;  // always empty in this subset
        } else if (key == ":ordered-subtasks" || key == ":subtasks" || key == ":tasks") {
          p.init_network = detail::task_list(sec.at(++k));
        } else if (key == ":ordering" || key == ":constraints") {
          ++k;  // accepted empty
        } else {
          throw ParseError("unsupported :htn slot " + key, sec.at(k).line, sec.at(k).col);
        }
      }
    } else if (h == ":init") {
      for (std::size_t k = 1; k < sec.items.size(); ++k) p.init.insert(detail::atom(sec.at(k)));
    } else if (h == ":goal") {
      p.goal = detail::conjunction(sec.at(1));
    } else {
      throw ParseError("unsupported problem section " + h, sec.line, sec.col);
    }
  }
  if (p.domain_name != d.name)
    throw ValidationError("problem '" + p.name + "' references domain '" + p.domain_name + "'");
  std::sort(p.objects.begin(), p.objects.end());
  validate(p, d);
  return p;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline DomainFile parse_domain_file(const std::string& path) { return parse_domain(read_file(path)); }
inline ProblemFile parse_problem_file(const std::string& path, const DomainFile& d) {
  return parse_problem(read_file(path), d);
}

}  // namespace htnlearn
