#pragma once

#include "gr1rs/bool_expr.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace gr1rs
{
  enum class signal_kind { input, output };

  struct signal
  {
    std::string name;
    signal_kind kind;
  };

  /// Error raised for malformed or ill-formed specifications.  Line and
  /// column are 1-based; zero means "no source position".
  class spec_error : public std::runtime_error
  {
  public:
    spec_error(const std::string& what, int line = 0, int column = 0);

    int line() const { return line_; }
    int column() const { return column_; }

  private:
    int line_;
    int column_;
  };

  /// \brief Total assignment over a subset (the domain) of the signals.
  class valuation
  {
  public:
    valuation() = default;
    valuation(letter domain, letter bits) : domain_(domain), bits_(bits & domain) {}

    letter domain() const { return domain_; }
    letter bits() const { return bits_; }
    bool covers(letter mask) const { return (mask & ~domain_) == 0; }

    bool operator==(const valuation&) const = default;

  private:
    letter domain_ = 0;
    letter bits_ = 0;
  };

  /// Evaluates an expression without next-step references.  Throws
  /// spec_error when the expression reads a signal outside the
  /// valuation's domain or contains a next-step reference.
  bool eval_expr(const bool_expr& e, const valuation& v);

  struct automaton_transition
  {
    int source;
    bool_expr guard;
    int target;
  };

  /// Two transitions of one state enabled by the same letter.
  struct nondeterminism_witness
  {
    int state;
    letter valuation;
    int first;
    int second;
  };

  /// \brief Deterministic, possibly incomplete safety automaton over
  /// letters of the full signal set.
  class safety_automaton
  {
  public:
    safety_automaton(std::string name, std::vector<std::string> states,
                     int initial, std::vector<automaton_transition> transitions);

    const std::string& name() const { return name_; }
    const std::vector<std::string>& states() const { return states_; }
    int num_states() const { return static_cast<int>(states_.size()); }
    int initial() const { return initial_; }
    const std::vector<automaton_transition>& transitions() const { return transitions_; }
    /// Indices into transitions() leaving \a state, in declaration order.
    const std::vector<int>& outgoing(int state) const { return outgoing_.at(state); }

    /// Target of the transition enabled by \a l, if any.
    std::optional<int> successor(int state, letter l) const;

    /// Searches for a state and letter enabling two transitions.  Only
    /// the signals read by each pair of guards are enumerated.
    std::optional<nondeterminism_witness> find_nondeterminism() const;

    /// Union of the current-step supports of all guards.
    letter support() const;

  private:
    std::string name_;
    std::vector<std::string> states_;
    int initial_;
    std::vector<automaton_transition> transitions_;
    std::vector<std::vector<int>> outgoing_;
  };

  /// \brief A GR(1) specification: safety automata plus ordered
  /// fairness lists for both players.
  ///
  /// Signals are stored inputs first, then outputs.  Several safety
  /// automata per side are composed by product when the game is built.
  struct gr1_spec
  {
    std::vector<signal> signals;
    std::vector<safety_automaton> env_safety;
    std::vector<safety_automaton> sys_safety;
    std::vector<bool_expr> env_fair;
    std::vector<bool_expr> sys_fair;

    int num_inputs() const;
    int num_outputs() const;
    std::vector<std::string> names() const;
    std::vector<std::string> input_names() const;
    std::vector<std::string> output_names() const;
    letter input_mask() const { return (letter{1} << num_inputs()) - 1; }
    letter all_mask() const { return (letter{1} << signals.size()) - 1; }
    std::optional<int> find_signal(std::string_view name) const;

    /// Checks the well-formedness invariants; throws spec_error.
    void validate() const;
  };

  /// Compiles the invariant G(phi) into a safety automaton.
  ///
  /// Without next-step references this is a single state with a
  /// self-loop guarded by phi.  Otherwise the non-initial states are the
  /// valuations of the signals phi reads at the current step; a letter is
  /// accepted from state(u) iff phi holds for (u, letter) and the letter
  /// still admits some continuation.  The first letter is only subject to
  /// the continuation check.
  safety_automaton invariant_to_automaton(const bool_expr& phi,
                                          const std::vector<signal>& signals,
                                          std::string name = "inv");

  gr1_spec parse_spec(std::string_view text);
  gr1_spec parse_spec_file(const std::string& path);

  /// Prints \a spec in the text format; automata are written as explicit
  /// automaton blocks.
  std::string print_spec(const gr1_spec& spec);

  /// Parses one expression against \a signals.  \a allow_next permits
  /// `X(...)`.
  bool_expr parse_expr(std::string_view text, const std::vector<signal>& signals,
                       bool allow_next);
}
