#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace gr1rs
{
  /// A letter assigns a Boolean value to every declared signal; bit k
  /// holds signal k (inputs first, then outputs, in declaration order).
  using letter = std::uint64_t;

  /// \brief Immutable Boolean expression over signal references.
  ///
  /// A reference is either to the current step or, inside invariant
  /// formulas only, to the next step (written `X(sig)`).
  class bool_expr
  {
  public:
    enum class op : std::uint8_t
    {
      constant, var, next_var, negation, conjunction, disjunction,
      implication, equivalence
    };

    /// The constant false.
    bool_expr();

    static bool_expr constant(bool value);
    static bool_expr var(int signal);
    static bool_expr next_var(int signal);

    friend bool_expr operator!(const bool_expr& e);
    friend bool_expr operator&(const bool_expr& l, const bool_expr& r);
    friend bool_expr operator|(const bool_expr& l, const bool_expr& r);
    friend bool_expr implies(const bool_expr& l, const bool_expr& r);
    friend bool_expr iff(const bool_expr& l, const bool_expr& r);

    op kind() const { return node_->kind; }
    bool value() const { return node_->value; }
    int signal() const { return node_->signal; }
    const bool_expr& lhs() const { return *node_->lhs; }
    const bool_expr& rhs() const { return *node_->rhs; }

    bool is_constant() const { return kind() == op::constant; }
    bool has_next() const { return node_->has_next; }

    /// Signals referenced at the current step, as a bit mask.
    letter current_support() const { return node_->cur_support; }
    /// Signals referenced at the next step, as a bit mask.
    letter next_support() const { return node_->next_support; }

    /// Evaluates with current-step references read from \a cur and
    /// next-step references read from \a next.  No domain checks.
    bool eval(letter cur, letter next = 0) const;

    /// Replaces every current-step reference by its value in \a cur and
    /// turns next-step references into current-step ones.  Constants are
    /// folded.
    bool_expr shift_bound(letter cur) const;

    /// Structural equality.
    bool same_as(const bool_expr& other) const;

    /// Renders with the spec-file operator syntax, fully parenthesizing
    /// binary operators below the top level.
    std::string to_string(const std::vector<std::string>& names) const;

  private:
    struct node
    {
      op kind = op::constant;
      bool value = false;
      bool has_next = false;
      int signal = -1;
      letter cur_support = 0;
      letter next_support = 0;
      std::shared_ptr<const bool_expr> lhs;
      std::shared_ptr<const bool_expr> rhs;
    };

    explicit bool_expr(std::shared_ptr<const node> n) : node_(std::move(n)) {}
    static bool_expr binary(op kind, const bool_expr& l, const bool_expr& r);

    std::shared_ptr<const node> node_;
  };

  /// Conjunction of literals fixing the signals in \a mask to the bits of
  /// \a bits.  An empty mask gives `true`.
  bool_expr cube(letter mask, letter bits);
}
