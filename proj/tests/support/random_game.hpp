#pragma once

#include "gr1rs/game.hpp"

#include <cstdint>
#include <random>

namespace gr1rs::testing
{
  struct random_game_params
  {
    int min_states = 1;
    int max_states = 12;
    int max_input_bits = 2;
    int max_output_bits = 2;
    int pairs = 2;
  };

  /// Generic game with random moves and random pairs.  Every (state,
  /// input) slot gets a nonempty random subset of outputs, each with a
  /// uniformly drawn successor.
  inline game random_game(std::uint64_t seed, const random_game_params& p = {})
  {
    std::mt19937_64 rng(seed);
    auto pick = [&](int lo, int hi) { return lo + static_cast<int>(rng() % (hi - lo + 1)); };
    const int n = pick(p.min_states, p.max_states);
    const int ib = pick(0, p.max_input_bits);
    const int ob = pick(0, p.max_output_bits);
    std::vector<std::string> ins, outs;
    for (int k = 0; k < ib; ++k)
      ins.push_back("i" + std::to_string(k));
    for (int k = 0; k < ob; ++k)
      outs.push_back("o" + std::to_string(k));
    game_assembler a(ins, outs);
    for (int s = 0; s < n; ++s)
      a.add_state();
    a.set_initial(0);
    const std::uint32_t ni = 1u << ib, no = 1u << ob;
    for (int s = 0; s < n; ++s)
      for (std::uint32_t i = 0; i < ni; ++i)
        {
          std::uint32_t used = 0;
          while (used == 0)
            used = static_cast<std::uint32_t>(rng() % (1u << no));
          for (std::uint32_t o = 0; o < no; ++o)
            if (used >> o & 1)
              {
                sys_choice c;
                c.output = o;
                c.successor = static_cast<state_index>(rng() % n);
                a.add_choice(static_cast<state_index>(s), i, c);
              }
        }
    for (int k = 0; k < p.pairs; ++k)
      {
        // Sparse-to-dense sets so that both easy and hard pairs occur.
        int da = pick(1, 4), db = pick(0, 3);
        streett_pair sp{state_set(n), state_set(n)};
        for (int s = 0; s < n; ++s)
          {
            if (static_cast<int>(rng() % 5) < da)
              sp.a.insert(static_cast<state_index>(s));
            if (static_cast<int>(rng() % 5) < db)
              sp.b.insert(static_cast<state_index>(s));
          }
        a.add_pair(std::move(sp));
      }
    return std::move(a).finish();
  }
}
