#include "gr1rs/bool_expr.hpp"

#include <stdexcept>

namespace gr1rs
{
  namespace
  {
    int precedence(bool_expr::op k)
    {
      switch (k)
        {
        case bool_expr::op::equivalence: return 0;
        case bool_expr::op::implication: return 1;
        case bool_expr::op::disjunction: return 2;
        case bool_expr::op::conjunction: return 3;
        case bool_expr::op::negation: return 4;
        default: return 5;
        }
    }
  }

  bool_expr::bool_expr()
    : node_(std::make_shared<const node>())
  {
  }

  bool_expr bool_expr::constant(bool value)
  {
    auto n = std::make_shared<node>();
    n->kind = op::constant;
    n->value = value;
    return bool_expr(std::move(n));
  }

  bool_expr bool_expr::var(int signal)
  {
    if (signal < 0 || signal >= 64)
      throw std::out_of_range("bool_expr::var: signal index out of range");
    auto n = std::make_shared<node>();
    n->kind = op::var;
    n->signal = signal;
    n->cur_support = letter{1} << signal;
    return bool_expr(std::move(n));
  }

  bool_expr bool_expr::next_var(int signal)
  {
    if (signal < 0 || signal >= 64)
      throw std::out_of_range("bool_expr::next_var: signal index out of range");
    auto n = std::make_shared<node>();
    n->kind = op::next_var;
    n->signal = signal;
    n->has_next = true;
    n->next_support = letter{1} << signal;
    return bool_expr(std::move(n));
  }

  bool_expr operator!(const bool_expr& e)
  {
    if (e.is_constant())
      return bool_expr::constant(!e.value());
    auto n = std::make_shared<bool_expr::node>();
    n->kind = bool_expr::op::negation;
    n->has_next = e.has_next();
    n->cur_support = e.current_support();
    n->next_support = e.next_support();
    n->lhs = std::make_shared<const bool_expr>(e);
    return bool_expr(std::move(n));
  }

  bool_expr bool_expr::binary(op kind, const bool_expr& l, const bool_expr& r)
  {
    auto n = std::make_shared<node>();
    n->kind = kind;
    n->has_next = l.has_next() || r.has_next();
    n->cur_support = l.current_support() | r.current_support();
    n->next_support = l.next_support() | r.next_support();
    n->lhs = std::make_shared<const bool_expr>(l);
    n->rhs = std::make_shared<const bool_expr>(r);
    return bool_expr(std::move(n));
  }

  bool_expr operator&(const bool_expr& l, const bool_expr& r)
  {
    if (l.is_constant())
      return l.value() ? r : l;
    if (r.is_constant())
      return r.value() ? l : r;
    return bool_expr::binary(bool_expr::op::conjunction, l, r);
  }

  bool_expr operator|(const bool_expr& l, const bool_expr& r)
  {
    if (l.is_constant())
      return l.value() ? l : r;
    if (r.is_constant())
      return r.value() ? r : l;
    return bool_expr::binary(bool_expr::op::disjunction, l, r);
  }

  bool_expr implies(const bool_expr& l, const bool_expr& r)
  {
    if (l.is_constant())
      return l.value() ? r : bool_expr::constant(true);
    if (r.is_constant())
      return r.value() ? r : !l;
    return bool_expr::binary(bool_expr::op::implication, l, r);
  }

  bool_expr iff(const bool_expr& l, const bool_expr& r)
  {
    if (l.is_constant())
      return l.value() ? r : !r;
    if (r.is_constant())
      return r.value() ? l : !l;
    return bool_expr::binary(bool_expr::op::equivalence, l, r);
  }

  bool bool_expr::eval(letter cur, letter next) const
  {
    switch (kind())
      {
      case op::constant: return value();
      case op::var: return (cur >> signal()) & 1;
      case op::next_var: return (next >> signal()) & 1;
      case op::negation: return !lhs().eval(cur, next);
      case op::conjunction: return lhs().eval(cur, next) && rhs().eval(cur, next);
      case op::disjunction: return lhs().eval(cur, next) || rhs().eval(cur, next);
      case op::implication: return !lhs().eval(cur, next) || rhs().eval(cur, next);
      case op::equivalence: return lhs().eval(cur, next) == rhs().eval(cur, next);
      }
    return false;
  }

  bool_expr bool_expr::shift_bound(letter cur) const
  {
    switch (kind())
      {
      case op::constant: return *this;
      case op::var: return constant((cur >> signal()) & 1);
      case op::next_var: return var(signal());
      case op::negation: return !lhs().shift_bound(cur);
      case op::conjunction: return lhs().shift_bound(cur) & rhs().shift_bound(cur);
      case op::disjunction: return lhs().shift_bound(cur) | rhs().shift_bound(cur);
      case op::implication:
        return implies(lhs().shift_bound(cur), rhs().shift_bound(cur));
      case op::equivalence:
        return iff(lhs().shift_bound(cur), rhs().shift_bound(cur));
      }
    return *this;
  }

  bool bool_expr::same_as(const bool_expr& other) const
  {
    if (node_ == other.node_)
      return true;
    if (kind() != other.kind())
      return false;
    switch (kind())
      {
      case op::constant: return value() == other.value();
      case op::var:
      case op::next_var: return signal() == other.signal();
      case op::negation: return lhs().same_as(other.lhs());
      default:
        return lhs().same_as(other.lhs()) && rhs().same_as(other.rhs());
      }
  }

  std::string bool_expr::to_string(const std::vector<std::string>& names) const
  {
    auto wrap = [&](const bool_expr& child, bool parens) {
      std::string s = child.to_string(names);
      return parens ? "(" + s + ")" : s;
    };
    int p = precedence(kind());
    switch (kind())
      {
      case op::constant: return value() ? "true" : "false";
      case op::var: return names.at(signal());
      case op::next_var: return "X(" + names.at(signal()) + ")";
      case op::negation: return "!" + wrap(lhs(), precedence(lhs().kind()) < p);
      case op::conjunction:
        return wrap(lhs(), precedence(lhs().kind()) < p) + " & "
          + wrap(rhs(), precedence(rhs().kind()) < p);
      case op::disjunction:
        return wrap(lhs(), precedence(lhs().kind()) < p) + " | "
          + wrap(rhs(), precedence(rhs().kind()) < p);
      case op::implication:
        // right associative
        return wrap(lhs(), precedence(lhs().kind()) <= p) + " -> "
          + wrap(rhs(), precedence(rhs().kind()) < p);
      case op::equivalence:
        return wrap(lhs(), precedence(lhs().kind()) < p) + " <-> "
          + wrap(rhs(), precedence(rhs().kind()) <= p);
      }
    return {};
  }

  bool_expr cube(letter mask, letter bits)
  {
    bool_expr result = bool_expr::constant(true);
    for (int k = 0; k < 64; ++k)
      if ((mask >> k) & 1)
        {
          bool_expr lit = bool_expr::var(k);
          result = result & (((bits >> k) & 1) ? lit : !lit);
        }
    return result;
  }
}
