#pragma once

#include "gr1rs/io.hpp"

#include <optional>
#include <stdexcept>
#include <vector>

namespace gr1rs
{
  struct oracle_options
  {
    std::size_t max_states = 15;
    std::uint32_t max_inputs = 4;
  };

  /// \brief Winning region of the system computed from first principles.
  ///
  /// A state is lost iff some memoryless environment strategy (one input
  /// per state) leaves the system no reachable strongly connected set
  /// satisfying every pair.  Memoryless strategies suffice because the
  /// environment's objective is a Rabin condition.  Strategies are
  /// enumerated depth first over the states reachable from each start;
  /// a branch is cut as soon as the fixed part already contains a good
  /// cycle, and inputs whose successor set is a superset of another
  /// input's are skipped (more successors never help the environment).
  state_set brute_force_region(const game& g, const oracle_options& opts = {});

  /// Streett emptiness on an explicit graph given by successor bitmasks:
  /// true iff some strongly connected set inside \a scope with at least
  /// one internal edge satisfies every pair.
  bool has_good_cycle(std::uint32_t scope, const std::vector<std::uint32_t>& succ,
                      const std::vector<std::pair<std::uint32_t, std::uint32_t>>& pairs);

  /// Machine move that has no counterpart in the game.
  class product_mismatch : public std::runtime_error
  {
  public:
    using std::runtime_error::runtime_error;
  };

  struct lasso_step
  {
    std::uint32_t machine_state = 0;
    state_index game_state = 0;
    std::uint32_t input = 0;
    std::uint32_t output = 0;
  };

  struct soundness_verdict
  {
    bool sound = true;
    int violated_pair = -1;
    std::size_t product_states = 0;
    /// Path from the initial product state to the cycle, then the cycle.
    /// Each step names the product state it leaves and the letter taken.
    std::vector<lasso_step> stem;
    std::vector<lasso_step> cycle;
  };

  /// \brief Model checks the closed loop of \a m against every pair of
  /// \a g (or only the listed ones).
  ///
  /// The product starts at (machine state 0, its annotated game state or
  /// the game's initial state).  Annotated machine states fix the game
  /// successor; for unannotated ones every game move with the machine's
  /// output is explored.  For each pair the b-states are removed and a
  /// reachable cycle through an a-state is searched.
  soundness_verdict check_strategy_sound(const game& g, const mealy_machine& m,
                                         const std::optional<std::vector<int>>& pair_filter
                                         = std::nullopt);

  json verdict_to_json(const soundness_verdict& v, const mealy_machine& m, const game& g);
}
