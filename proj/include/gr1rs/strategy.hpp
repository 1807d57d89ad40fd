#pragma once

#include "gr1rs/streett.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace gr1rs
{
  /// No applicable row for a state inside the winning region.  This
  /// means the solver and the extractor disagree and is always a bug.
  class extraction_error : public std::logic_error
  {
  public:
    using std::logic_error::logic_error;
  };

  /// The initial state lies outside the winning region.
  class unrealizable_error : public std::runtime_error
  {
  public:
    unrealizable_error(state_set winning, std::optional<std::uint32_t> witness_input);

    const state_set& winning() const { return winning_; }
    /// An input for which no system choice from the initial state stays
    /// in the winning region, when one exists.
    const std::optional<std::uint32_t>& witness_input() const { return witness_; }

  private:
    state_set winning_;
    std::optional<std::uint32_t> witness_;
  };

  struct strategy_move
  {
    /// Index into game::choices(s, input); -1 when undefined.
    std::int32_t choice = -1;
    std::uint8_t next_memory = 0;
    /// Table row that fired (1..10).
    std::uint8_t row = 0;
  };

  /// \brief Finite-memory strategy: a move for every winning state, memory
  /// value and input.
  class strategy
  {
  public:
    strategy(const game& g, state_set winning, int memory_values);

    int memory_values() const { return memory_values_; }
    const state_set& winning() const { return winning_; }
    std::uint32_t num_inputs() const { return num_inputs_; }

    const strategy_move& move(state_index s, int memory, std::uint32_t input) const
    {
      return table_[(static_cast<std::size_t>(s) * memory_values_ + memory) * num_inputs_
                    + input];
    }
    strategy_move& move(state_index s, int memory, std::uint32_t input)
    {
      return table_[(static_cast<std::size_t>(s) * memory_values_ + memory) * num_inputs_
                    + input];
    }

  private:
    state_set winning_;
    int memory_values_;
    std::uint32_t num_inputs_;
    std::vector<strategy_move> table_;
  };

  /// Two-pair extraction with one memory bit (memory m pursues the b-set
  /// of the pair processed m-th).
  strategy extract_strategy_2pairs(const game& g, const iterate_record& rec);
  /// One-pair extraction; memory is constantly 0.
  strategy extract_strategy_1pair(const game& g, const iterate_record& rec);
  /// Zero pairs: any move that stays in the winning region.
  strategy extract_strategy_0pair(const game& g, const iterate_record& rec);
  /// Dispatches on the number of pairs.
  strategy extract_strategy(const game& g, const iterate_record& rec);

  struct mealy_state
  {
    std::string name;
    /// Game state and memory this machine state stands for.  Hand
    /// written machines may leave them unset.
    std::optional<state_index> game_index;
    int memory = 0;
    game_state annotation;
  };

  struct mealy_transition
  {
    std::uint32_t output = 0;
    std::uint32_t target = 0;
    /// Strategy row that produced the move; 0 when unknown.
    int row = 0;
  };

  /// \brief Input-complete deterministic Mealy machine.  State 0 is
  /// initial; transitions are indexed by state * num_inputs() + input.
  struct mealy_machine
  {
    std::vector<std::string> inputs;
    std::vector<std::string> outputs;
    std::vector<mealy_state> states;
    std::vector<mealy_transition> transitions;

    std::uint32_t num_inputs() const { return std::uint32_t{1} << inputs.size(); }
    std::size_t size() const { return states.size(); }
    const mealy_transition& step(std::uint32_t s, std::uint32_t input) const
    {
      return transitions.at(static_cast<std::size_t>(s) * num_inputs() + input);
    }

    /// Checks indices and input-completeness; throws std::invalid_argument.
    void validate() const;
  };

  /// Breadth-first closure of the strategy from (start, memory 0).  The
  /// start defaults to the game's initial state.  Inputs of each state are
  /// explored in ascending order.
  mealy_machine strategy_to_mealy(const game& g, const strategy& st,
                                  std::optional<state_index> start = std::nullopt);

  /// solve, extract and close in one call; throws unrealizable_error.
  mealy_machine synthesize(const game& g, iterate_record* rec_out = nullptr);
}
