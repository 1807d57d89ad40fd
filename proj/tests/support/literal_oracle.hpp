#pragma once

#include "gr1rs/game.hpp"

#include <stdexcept>
#include <vector>

namespace gr1rs::testing
{
  /// Word-for-word enumeration: every memoryless environment strategy,
  /// every state subset U.  Only usable for a handful of states.
  inline state_set literal_region(const game& g)
  {
    const std::size_t n = g.size();
    if (n > 8)
      throw std::invalid_argument("literal_region: at most 8 states");
    const std::uint32_t ni = g.num_inputs();
    std::vector<std::vector<std::uint32_t>> succ(n, std::vector<std::uint32_t>(ni, 0));
    for (std::size_t s = 0; s < n; ++s)
      for (std::uint32_t i = 0; i < ni; ++i)
        for (state_index t : g.successors(static_cast<state_index>(s), i))
          succ[s][i] |= 1u << t;
    auto mask_of = [](const state_set& x) {
      std::uint32_t m = 0;
      x.for_each([&](state_index i) { m |= 1u << i; });
      return m;
    };

    std::vector<std::uint32_t> sigma(n, 0), edges(n, 0);
    std::uint32_t env_win = 0;
    for (;;)
      {
        for (std::size_t s = 0; s < n; ++s)
          edges[s] = succ[s][sigma[s]];
        auto closure = [&](std::uint32_t from, std::uint32_t scope) {
          std::uint32_t seen = from;
          for (bool grew = true; grew;)
            {
              grew = false;
              for (std::size_t s = 0; s < n; ++s)
                if ((seen >> s & 1) && (edges[s] & scope & ~seen))
                  {
                    seen |= edges[s] & scope;
                    grew = true;
                  }
            }
          return seen;
        };
        // Achievable, pair-satisfying infinity sets.
        std::vector<std::uint32_t> good;
        for (std::uint32_t u = 1; u < (1u << n); ++u)
          {
            bool ok = true;
            for (std::size_t s = 0; s < n && ok; ++s)
              if (u >> s & 1)
                ok = (edges[s] & u) != 0 && closure(1u << s, u) == u;
            if (!ok)
              continue;
            for (const auto& p : g.pairs())
              if ((u & mask_of(p.a)) && !(u & mask_of(p.b)))
                ok = false;
            if (ok)
              good.push_back(u);
          }
        for (std::size_t s = 0; s < n; ++s)
          {
            std::uint32_t reach = closure(1u << s, (1u << n) - 1);
            bool sys_ok = false;
            for (auto u : good)
              sys_ok = sys_ok || (u & reach) == u;
            if (!sys_ok)
              env_win |= 1u << s;
          }
        std::size_t k = 0;
        while (k < n && ++sigma[k] == ni)
          sigma[k++] = 0;
        if (k == n)
          break;
      }
    state_set r(n);
    for (std::size_t s = 0; s < n; ++s)
      if (!(env_win >> s & 1))
        r.insert(static_cast<state_index>(s));
    return r;
  }
}
