#pragma once

#include "gr1rs/game.hpp"

#include <vector>

namespace gr1rs
{
  /// \brief Iterates of one Str call, taken in a pass with Z fixed at
  /// its converged value.
  ///
  /// For every pair handled by the call (in processing order) the record
  /// keeps the least-fixpoint iterates Y_0 = {} ⊂ Y_1 ⊂ ... ⊂ Y_C = z and,
  /// for j >= 1, the record of the nested call that produced Y_j.  When
  /// the nested call is mStr there is no nested record: the mStr region is
  /// Y_j itself.
  struct str_record
  {
    struct pair_record
    {
      /// Index into game::pairs().
      int pair = -1;
      /// sng & b & pr(z): the states where this pair's b is reached.
      state_set base;
      std::vector<state_set> iterates;
      /// subs[j - 1] produced iterates[j]; empty at the innermost level.
      std::vector<str_record> subs;
    };

    state_set z;
    std::vector<pair_record> pairs;
  };

  /// Winning region plus the iterates of the top-level call.
  struct iterate_record
  {
    state_set winning;
    std::vector<int> pair_order;
    str_record top;
  };

  /// Greatest fixpoint of X = rt | (sng & pr(X)).
  state_set m_str(const game& g, const state_set& sng, const state_set& rt);

  /// Str over the pairs listed in \a pairs (indices into g.pairs(), in
  /// processing order).  When \a rec is given, the iterates of a pass
  /// with Z fixed at the result are stored there.
  state_set str_solve(const game& g, const std::vector<int>& pairs, const state_set& sng,
                      const state_set& rt, str_record* rec = nullptr);

  /// Solves the game with sng = all states and rt = {}, processing the
  /// pairs in game order, and records the iterates.
  iterate_record main_streett(const game& g);

  /// Checks the monotonicity and nesting invariants of a record;
  /// throws std::logic_error on violation.
  void validate_record(const game& g, const iterate_record& rec);
}
