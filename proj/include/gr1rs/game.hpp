#pragma once

#include "gr1rs/spec.hpp"
#include "gr1rs/state_set.hpp"

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace gr1rs
{
  enum class game_mode { plain, robust, generic };

  enum class state_kind : std::uint8_t { normal, win_sink, lose_sink };

  /// Product state of the game: automaton states, fairness counters and
  /// the two error flags.  Sinks carry qe = qs = -1.
  struct game_state
  {
    int qe = 0;
    int qs = 0;
    int x = 0;
    int y = 0;
    bool ok_e = true;
    bool ok_s = true;
    state_kind kind = state_kind::normal;

    bool operator==(const game_state&) const = default;
  };

  /// One system move for a fixed state and input.  The recover fields
  /// are set (>= 0) exactly when the corresponding automaton has no
  /// transition on the joint letter and the game is robust.
  struct sys_choice
  {
    std::uint32_t output = 0;
    std::int32_t env_recover = -1;
    std::int32_t sys_recover = -1;
    state_index successor = 0;
    bool env_violated = false;
    bool sys_violated = false;
  };

  /// Play satisfies the pair iff visiting a infinitely often implies
  /// visiting b infinitely often.
  struct streett_pair
  {
    state_set a;
    state_set b;
  };

  class capacity_error : public std::runtime_error
  {
  public:
    using std::runtime_error::runtime_error;
  };

  /// Orders output valuations lexicographically by their bits in
  /// declaration order (first declared signal most significant).
  std::uint32_t lex_rank(std::uint32_t valuation, int bits);

  /// \brief Explicit turn-structured game.
  ///
  /// In every state the environment picks an input valuation, then the
  /// system picks one of the listed choices; each choice names exactly
  /// one successor.  Choices of a (state, input) slot are sorted by
  /// (lex_rank(output), env_recover, sys_recover).
  class game
  {
  public:
    game_mode mode() const { return mode_; }
    const std::vector<std::string>& input_names() const { return inputs_; }
    const std::vector<std::string>& output_names() const { return outputs_; }
    int num_input_bits() const { return static_cast<int>(inputs_.size()); }
    int num_output_bits() const { return static_cast<int>(outputs_.size()); }
    std::uint32_t num_inputs() const { return std::uint32_t{1} << inputs_.size(); }
    std::uint32_t num_outputs() const { return std::uint32_t{1} << outputs_.size(); }

    std::size_t size() const { return states_.size(); }
    state_index initial() const { return initial_; }
    const game_state& state(state_index s) const { return states_.at(s); }
    const std::vector<game_state>& states() const { return states_; }

    std::span<const sys_choice> choices(state_index s, std::uint32_t input) const;
    /// Distinct successors of a (state, input) slot, ascending.
    std::span<const state_index> successors(state_index s, std::uint32_t input) const;

    const std::vector<streett_pair>& pairs() const { return pairs_; }
    /// Same arena with a different pair list.
    game with_pairs(std::vector<streett_pair> pairs) const;

    state_set all() const { return state_set::full(size()); }
    state_set none() const { return state_set(size()); }

    /// Names of the composed env/sys automaton states (empty for
    /// generic games).
    const std::vector<std::string>& env_automaton_states() const { return env_states_; }
    const std::vector<std::string>& sys_automaton_states() const { return sys_states_; }
    int env_fairness_count() const { return m_; }
    int sys_fairness_count() const { return n_; }

    std::size_t num_choices() const { return choices_.size(); }

  private:
    friend class game_assembler;

    game_mode mode_ = game_mode::generic;
    std::vector<std::string> inputs_;
    std::vector<std::string> outputs_;
    std::vector<game_state> states_;
    state_index initial_ = 0;
    std::vector<std::uint64_t> choice_begin_;
    std::vector<sys_choice> choices_;
    std::vector<std::uint64_t> succ_begin_;
    std::vector<state_index> succs_;
    std::vector<streett_pair> pairs_;
    std::vector<std::string> env_states_;
    std::vector<std::string> sys_states_;
    int m_ = 0;
    int n_ = 0;
  };

  /// Incremental construction of a game.  finish() sorts the choices,
  /// derives successor lists and checks totality and determinism.
  class game_assembler
  {
  public:
    game_assembler(std::vector<std::string> inputs, std::vector<std::string> outputs,
                   game_mode mode = game_mode::generic);

    state_index add_state(const game_state& s = {});
    std::size_t size() const { return states_.size(); }
    void set_initial(state_index s) { initial_ = s; }
    void add_choice(state_index s, std::uint32_t input, const sys_choice& c);
    void add_pair(streett_pair p) { pairs_.push_back(std::move(p)); }
    void set_automaton_states(std::vector<std::string> env, std::vector<std::string> sys);
    void set_fairness_counts(int m, int n) { m_ = m; n_ = n; }

    game finish() &&;

  private:
    game_mode mode_;
    std::vector<std::string> inputs_;
    std::vector<std::string> outputs_;
    std::vector<game_state> states_;
    state_index initial_ = 0;
    std::vector<std::vector<sys_choice>> slots_;
    std::vector<streett_pair> pairs_;
    std::vector<std::string> env_states_;
    std::vector<std::string> sys_states_;
    int m_ = 0;
    int n_ = 0;
  };

  /// Counter update of the counting construction: 0 always advances,
  /// any other value advances (modulo bound + 1) when its formula holds.
  int step_counter(int c, int bound, bool satisfied);

  /// Bits needed for counters over {0..m} and {0..n}.
  int counter_bits(int m, int n);

  /// \brief Explicit product of safety automata over the full letter set.
  ///
  /// delta[q * num_letters + l] is the successor or -1.
  struct product_automaton
  {
    std::vector<std::string> state_names;
    int initial = 0;
    std::uint64_t num_letters = 0;
    std::vector<std::int32_t> delta;

    int num_states() const { return static_cast<int>(state_names.size()); }
    std::int32_t step(int q, letter l) const { return delta[q * num_letters + l]; }
  };

  /// Reachable product from the tuple of initial states.  An empty list
  /// gives a single state accepting every letter.
  product_automaton compose_product(const std::vector<safety_automaton>& automata,
                                    int num_signals);

  struct build_options
  {
    std::size_t state_cap = std::size_t{1} << 22;
  };

  /// Builds the Streett game of \a spec.  Plain mode has one pair and
  /// sinks for safety violations; robust mode adds the error flags and
  /// the pair <{!ok_s}, {!ok_e}>.
  game build_game(const gr1_spec& spec, game_mode mode, const build_options& opts = {});

  /// Controllable predecessor: states where every input admits a choice
  /// whose successor lies in \a x.
  state_set pr(const game& g, const state_set& x);

  /// Forward reachability from the initial state under all moves.
  state_set reachable(const game& g);
}
