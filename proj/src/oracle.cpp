#include "gr1rs/oracle.hpp"

#include <algorithm>
#include <bit>
#include <deque>
#include <functional>
#include <unordered_map>

namespace gr1rs
{
  namespace
  {
    using mask = std::uint32_t;

    mask forward(mask from, mask scope, const std::vector<mask>& succ)
    {
      mask seen = from, todo = from;
      while (todo)
        {
          int v = std::countr_zero(todo);
          todo &= todo - 1;
          mask nxt = succ[v] & scope & ~seen;
          seen |= nxt;
          todo |= nxt;
        }
      return seen;
    }

    mask backward(mask to, mask scope, const std::vector<mask>& succ)
    {
      mask seen = to;
      for (bool grew = true; grew;)
        {
          grew = false;
          for (mask rest = scope & ~seen; rest; rest &= rest - 1)
            {
              int u = std::countr_zero(rest);
              if (succ[u] & seen)
                {
                  seen |= mask{1} << u;
                  grew = true;
                }
            }
        }
      return seen;
    }
  }

  bool has_good_cycle(mask scope, const std::vector<mask>& succ,
                      const std::vector<std::pair<mask, mask>>& pairs)
  {
    mask left = scope;
    while (left)
      {
        int v = std::countr_zero(left);
        mask bit = mask{1} << v;
        mask comp = forward(bit, scope, succ) & backward(bit, scope, succ);
        left &= ~comp;
        bool nontrivial = std::popcount(comp) > 1 || (succ[v] & bit);
        if (!nontrivial)
          continue;
        mask bad = 0;
        for (const auto& [a, b] : pairs)
          if ((comp & a) && !(comp & b))
            bad |= comp & a;
        if (!bad)
          return true;
        if (has_good_cycle(comp & ~bad, succ, pairs))
          return true;
      }
    return false;
  }

  state_set brute_force_region(const game& g, const oracle_options& opts)
  {
    const std::size_t n = g.size();
    if (n > opts.max_states || n > 31)
      throw capacity_error("brute_force_region: game has " + std::to_string(n)
                           + " states, cap is " + std::to_string(opts.max_states));
    if (g.num_inputs() > opts.max_inputs)
      throw capacity_error("brute_force_region: too many input valuations");

    std::vector<std::pair<mask, mask>> pairs;
    auto to_mask = [](const state_set& s) {
      mask m = 0;
      s.for_each([&](state_index i) { m |= mask{1} << i; });
      return m;
    };
    for (const auto& p : g.pairs())
      pairs.emplace_back(to_mask(p.a), to_mask(p.b));

    // Inputs with inclusion-minimal successor sets, deduplicated.
    std::vector<std::vector<mask>> options(n);
    for (std::size_t s = 0; s < n; ++s)
      {
        std::vector<mask> all;
        for (std::uint32_t i = 0; i < g.num_inputs(); ++i)
          {
            mask m = 0;
            for (state_index t : g.successors(static_cast<state_index>(s), i))
              m |= mask{1} << t;
            all.push_back(m);
          }
        for (std::size_t k = 0; k < all.size(); ++k)
          {
            bool dominated = false;
            for (std::size_t l = 0; l < all.size() && !dominated; ++l)
              {
                bool subset = (all[l] & ~all[k]) == 0;
                dominated = subset && (all[l] != all[k] || l < k);
              }
            if (!dominated)
              options[s].push_back(all[k]);
          }
      }

    mask env_win = 0, sys_win = 0;
    std::vector<mask> succ(n, 0);
    for (std::size_t s = 0; s < n; ++s)
      {
        const mask sbit = mask{1} << s;
        if ((env_win | sys_win) & sbit)
          continue;
        std::fill(succ.begin(), succ.end(), 0);
        mask won = 0;
        std::function<bool(mask, mask)> dfs = [&](mask reach, mask assigned) {
          if (reach & sys_win)
            return false;
          if (has_good_cycle(reach & assigned, succ, pairs))
            return false;
          mask frontier = reach & ~assigned;
          if (!frontier)
            {
              won = reach;
              return true;
            }
          int t = std::countr_zero(frontier);
          for (mask m : options[t])
            {
              succ[t] = m;
              if (dfs(reach | m, assigned | (mask{1} << t)))
                return true;
            }
          succ[t] = 0;
          return false;
        };
        if (dfs(sbit, 0))
          env_win |= won;
        else
          sys_win |= sbit;
      }

    state_set region(n);
    for (std::size_t s = 0; s < n; ++s)
      if (!(env_win & (mask{1} << s)))
        region.insert(static_cast<state_index>(s));
    return region;
  }

  namespace
  {
    struct product
    {
      struct edge
      {
        std::uint32_t to;
        std::uint32_t input;
        std::uint32_t output;
      };
      std::vector<std::pair<std::uint32_t, state_index>> nodes;
      std::vector<std::vector<edge>> edges;
    };

    product build_product(const game& g, const mealy_machine& m)
    {
      m.validate();
      if (m.inputs != g.input_names() || m.outputs != g.output_names())
        throw product_mismatch("machine and game signals differ");
      for (const auto& s : m.states)
        if (s.game_index && *s.game_index >= g.size())
          throw product_mismatch("machine state '" + s.name
                                 + "' refers to a state absent from the game");
      product p;
      std::unordered_map<std::uint64_t, std::uint32_t> index;
      std::deque<std::uint32_t> queue;
      auto intern = [&](std::uint32_t ms, state_index gs) {
        std::uint64_t key = static_cast<std::uint64_t>(ms) << 32 | gs;
        auto [it, fresh] = index.emplace(key, static_cast<std::uint32_t>(p.nodes.size()));
        if (fresh)
          {
            p.nodes.emplace_back(ms, gs);
            p.edges.emplace_back();
            queue.push_back(it->second);
          }
        return it->second;
      };
      intern(0, m.states[0].game_index.value_or(g.initial()));
      while (!queue.empty())
        {
          std::uint32_t u = queue.front();
          queue.pop_front();
          auto [ms, gs] = p.nodes[u];
          for (std::uint32_t i = 0; i < m.num_inputs(); ++i)
            {
              const auto& t = m.step(ms, i);
              const auto& target = m.states[t.target];
              bool any = false;
              for (const auto& c : g.choices(gs, i))
                {
                  if (c.output != t.output)
                    continue;
                  if (target.game_index && *target.game_index != c.successor)
                    continue;
                  any = true;
                  std::uint32_t v = intern(t.target, c.successor);
                  auto& out = p.edges[u];
                  if (std::none_of(out.begin(), out.end(), [&](const product::edge& e) {
                        return e.to == v && e.input == i;
                      }))
                    out.push_back({v, i, t.output});
                  if (target.game_index)
                    break;
                }
              if (!any)
                throw product_mismatch("machine state '" + m.states[ms].name + "' on input "
                                       + std::to_string(i) + " has no matching move from game state "
                                       + std::to_string(gs));
            }
        }
      return p;
    }

    // Tarjan over the nodes allowed by keep; returns component ids.
    std::vector<int> components(const product& p, const std::vector<bool>& keep)
    {
      const std::size_t n = p.nodes.size();
      std::vector<int> index(n, -1), low(n, 0), comp(n, -1);
      std::vector<bool> on_stack(n, false);
      std::vector<std::uint32_t> stack;
      std::vector<std::pair<std::uint32_t, std::size_t>> call;
      int counter = 0, ncomp = 0;
      for (std::uint32_t root = 0; root < n; ++root)
        {
          if (!keep[root] || index[root] >= 0)
            continue;
          call.emplace_back(root, 0);
          index[root] = low[root] = counter++;
          stack.push_back(root);
          on_stack[root] = true;
          while (!call.empty())
            {
              auto& [v, k] = call.back();
              if (k < p.edges[v].size())
                {
                  std::uint32_t w = p.edges[v][k++].to;
                  if (!keep[w])
                    continue;
                  if (index[w] < 0)
                    {
                      index[w] = low[w] = counter++;
                      stack.push_back(w);
                      on_stack[w] = true;
                      call.emplace_back(w, 0);
                    }
                  else if (on_stack[w])
                    low[v] = std::min(low[v], index[w]);
                  continue;
                }
              std::uint32_t done = v;
              call.pop_back();
              if (!call.empty())
                low[call.back().first] = std::min(low[call.back().first], low[done]);
              if (low[done] == index[done])
                {
                  std::uint32_t w;
                  do
                    {
                      w = stack.back();
                      stack.pop_back();
                      on_stack[w] = false;
                      comp[w] = ncomp;
                    }
                  while (w != done);
                  ++ncomp;
                }
            }
        }
      return comp;
    }

    // Shortest path by BFS from src to dst using edges whose endpoints
    // satisfy allowed; dst may equal src (then a nonempty cycle is found).
    std::vector<lasso_step> path(const product& p, std::uint32_t src, std::uint32_t dst,
                                 const std::function<bool(std::uint32_t)>& allowed)
    {
      const std::size_t n = p.nodes.size();
      std::vector<std::int64_t> parent(n, -1);
      std::vector<std::uint32_t> via(n, 0);
      std::deque<std::uint32_t> queue{src};
      std::vector<bool> seen(n, false);
      seen[src] = src != dst;
      bool found = false;
      while (!queue.empty() && !found)
        {
          std::uint32_t u = queue.front();
          queue.pop_front();
          for (std::uint32_t k = 0; k < p.edges[u].size(); ++k)
            {
              std::uint32_t v = p.edges[u][k].to;
              if (!allowed(v) || seen[v])
                continue;
              seen[v] = true;
              parent[v] = u;
              via[v] = k;
              if (v == dst)
                {
                  found = true;
                  break;
                }
              queue.push_back(v);
            }
        }
      std::vector<lasso_step> steps;
      if (!found)
        return steps;
      std::uint32_t v = dst;
      do
        {
          auto u = static_cast<std::uint32_t>(parent[v]);
          const auto& e = p.edges[u][via[v]];
          steps.push_back({p.nodes[u].first, p.nodes[u].second, e.input, e.output});
          v = u;
        }
      while (v != src);
      std::reverse(steps.begin(), steps.end());
      return steps;
    }
  }

  soundness_verdict check_strategy_sound(const game& g, const mealy_machine& m,
                                         const std::optional<std::vector<int>>& pair_filter)
  {
    product p = build_product(g, m);
    soundness_verdict verdict;
    verdict.product_states = p.nodes.size();
    std::vector<int> which;
    if (pair_filter)
      which = *pair_filter;
    else
      for (std::size_t k = 0; k < g.pairs().size(); ++k)
        which.push_back(static_cast<int>(k));

    const std::size_t n = p.nodes.size();
    for (int k : which)
      {
        const auto& pair = g.pairs().at(k);
        std::vector<bool> keep(n);
        for (std::size_t u = 0; u < n; ++u)
          keep[u] = !pair.b.contains(p.nodes[u].second);
        std::vector<int> comp = components(p, keep);
        std::vector<int> size(n, 0);
        for (std::size_t u = 0; u < n; ++u)
          if (comp[u] >= 0)
            ++size[comp[u]];
        for (std::uint32_t u = 0; u < n; ++u)
          {
            if (comp[u] < 0 || !pair.a.contains(p.nodes[u].second))
              continue;
            bool self = std::any_of(p.edges[u].begin(), p.edges[u].end(),
                                    [&](const product::edge& e) { return e.to == u; });
            if (size[comp[u]] < 2 && !self)
              continue;
            verdict.sound = false;
            verdict.violated_pair = k;
            if (u != 0)
              verdict.stem = path(p, 0, u, [](std::uint32_t) { return true; });
            int c = comp[u];
            verdict.cycle = path(p, u, u, [&](std::uint32_t v) { return comp[v] == c; });
            return verdict;
          }
      }
    return verdict;
  }

  json verdict_to_json(const soundness_verdict& v, const mealy_machine& m, const game& g)
  {
    auto steps = [&](const std::vector<lasso_step>& s) {
      json a = json::array();
      for (const auto& st : s)
        {
          const auto& gs = g.state(st.game_state);
          json o;
          o["machine_state"] = m.states[st.machine_state].name;
          o["game_state"] = st.game_state;
          o["ok_e"] = gs.ok_e;
          o["ok_s"] = gs.ok_s;
          o["input"] = st.input;
          o["output"] = st.output;
          a.push_back(std::move(o));
        }
      return a;
    };
    json j;
    j["sound"] = v.sound;
    j["product_states"] = v.product_states;
    if (!v.sound)
      {
        j["violated_pair"] = v.violated_pair;
        j["stem"] = steps(v.stem);
        j["cycle"] = steps(v.cycle);
      }
    return j;
  }
}
