#include "gr1rs/game.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <unordered_map>

namespace gr1rs
{
  product_automaton compose_product(const std::vector<safety_automaton>& automata,
                                    int num_signals)
  {
    if (num_signals > 20)
      throw capacity_error("compose_product: more than 20 signals");
    product_automaton p;
    p.num_letters = std::uint64_t{1} << num_signals;
    const std::uint64_t nl = p.num_letters;

    if (automata.empty())
      {
        p.state_names = {"q0"};
        p.delta.assign(nl, 0);
        return p;
      }

    // Per-component successor tables.
    std::vector<std::vector<std::int32_t>> tables;
    for (const auto& a : automata)
      {
        std::vector<std::int32_t> t(a.num_states() * nl, -1);
        for (const auto& tr : a.transitions())
          for (std::uint64_t l = 0; l < nl; ++l)
            if (tr.guard.eval(l))
              t[tr.source * nl + l] = tr.target;
        tables.push_back(std::move(t));
      }

    std::map<std::vector<int>, int> index;
    std::vector<std::vector<int>> tuples;
    std::deque<int> queue;
    auto intern = [&](const std::vector<int>& tup) {
      auto [it, fresh] = index.emplace(tup, static_cast<int>(tuples.size()));
      if (fresh)
        {
          tuples.push_back(tup);
          queue.push_back(it->second);
          if (tuples.size() * nl > (std::uint64_t{1} << 28))
            throw capacity_error("compose_product: product automaton too large");
        }
      return it->second;
    };
    std::vector<int> init;
    for (const auto& a : automata)
      init.push_back(a.initial());
    p.initial = intern(init);

    std::vector<int> next(automata.size());
    while (!queue.empty())
      {
        int q = queue.front();
        queue.pop_front();
        if (p.delta.size() < tuples.size() * nl)
          p.delta.resize(tuples.size() * nl, -1);
        for (std::uint64_t l = 0; l < nl; ++l)
          {
            bool alive = true;
            for (std::size_t c = 0; c < automata.size() && alive; ++c)
              {
                next[c] = tables[c][tuples[q][c] * nl + l];
                alive = next[c] >= 0;
              }
            std::int32_t target = alive ? intern(next) : -1;
            if (p.delta.size() < tuples.size() * nl)
              p.delta.resize(tuples.size() * nl, -1);
            p.delta[q * nl + l] = target;
          }
      }
    p.delta.resize(tuples.size() * nl, -1);

    for (const auto& tup : tuples)
      {
        if (automata.size() == 1)
          {
            p.state_names.push_back(automata[0].states()[tup[0]]);
            continue;
          }
        std::string name = "(";
        for (std::size_t c = 0; c < tup.size(); ++c)
          name += (c ? "," : "") + automata[c].states()[tup[c]];
        p.state_names.push_back(name + ")");
      }
    return p;
  }

  namespace
  {
    std::uint64_t pack(const game_state& s)
    {
      return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(s.qe)) & 0xFFFFF)
        | (static_cast<std::uint64_t>(static_cast<std::uint32_t>(s.qs)) & 0xFFFFF) << 20
        | static_cast<std::uint64_t>(s.x & 0xFF) << 40
        | static_cast<std::uint64_t>(s.y & 0xFF) << 48
        | static_cast<std::uint64_t>(s.ok_e) << 56
        | static_cast<std::uint64_t>(s.ok_s) << 57
        | static_cast<std::uint64_t>(s.kind) << 58;
    }
  }

  game build_game(const gr1_spec& spec, game_mode mode, const build_options& opts)
  {
    if (mode == game_mode::generic)
      throw std::invalid_argument("build_game: mode must be plain or robust");
    spec.validate();
    const int nin = spec.num_inputs();
    const int nout = spec.num_outputs();
    const int nsig = nin + nout;
    if (nsig > 16)
      throw capacity_error("build_game: more than 16 signals");
    const int m = static_cast<int>(spec.env_fair.size());
    const int n = static_cast<int>(spec.sys_fair.size());
    if (m > 255 || n > 255)
      throw capacity_error("build_game: too many fairness formulas");

    product_automaton env = compose_product(spec.env_safety, nsig);
    product_automaton sys = compose_product(spec.sys_safety, nsig);
    if (env.num_states() >= (1 << 20) || sys.num_states() >= (1 << 20))
      throw capacity_error("build_game: safety automaton product too large");

    const std::uint64_t nl = std::uint64_t{1} << nsig;
    std::vector<std::uint64_t> env_sat(nl, 0), sys_sat(nl, 0);
    for (std::uint64_t l = 0; l < nl; ++l)
      {
        for (int k = 0; k < m; ++k)
          if (spec.env_fair[k].eval(l))
            env_sat[l] |= std::uint64_t{1} << (k % 64);
        for (int k = 0; k < n; ++k)
          if (spec.sys_fair[k].eval(l))
            sys_sat[l] |= std::uint64_t{1} << (k % 64);
      }
    auto holds = [&](const std::vector<std::uint64_t>& sat, const std::vector<bool_expr>& f,
                     int c, letter l) {
      if (c == 0)
        return true;
      if (c <= 64)
        return ((sat[l] >> (c - 1)) & 1) != 0;
      return f[c - 1].eval(l);
    };

    game_assembler asmb(spec.input_names(), spec.output_names(), mode);
    asmb.set_automaton_states(env.state_names, sys.state_names);
    asmb.set_fairness_counts(m, n);

    std::unordered_map<std::uint64_t, state_index> index;
    std::vector<game_state> tuples;
    std::deque<state_index> queue;
    auto intern = [&](const game_state& gs) {
      auto key = pack(gs);
      auto it = index.find(key);
      if (it != index.end())
        return it->second;
      if (asmb.size() >= opts.state_cap)
        throw capacity_error("build_game: state space exceeds the cap of "
                             + std::to_string(opts.state_cap) + " states");
      state_index id = asmb.add_state(gs);
      index.emplace(key, id);
      tuples.push_back(gs);
      queue.push_back(id);
      return id;
    };

    game_state init;
    init.qe = env.initial;
    init.qs = sys.initial;
    init.x = std::min(1, m);
    init.y = std::min(1, n);
    asmb.set_initial(intern(init));

    const std::uint32_t ni = std::uint32_t{1} << nin;
    const std::uint32_t no = std::uint32_t{1} << nout;
    const bool robust = mode == game_mode::robust;
    while (!queue.empty())
      {
        state_index s = queue.front();
        queue.pop_front();
        const game_state cur = tuples[s];

        if (cur.kind != state_kind::normal)
          {
            for (std::uint32_t i = 0; i < ni; ++i)
              for (std::uint32_t o = 0; o < no; ++o)
                asmb.add_choice(s, i, {o, -1, -1, s, false, false});
            continue;
          }

        for (std::uint32_t i = 0; i < ni; ++i)
          for (std::uint32_t r = 0; r < no; ++r)
            {
              std::uint32_t o = lex_rank(r, nout);
              letter l = i | (static_cast<letter>(o) << nin);
              std::int32_t te = env.step(cur.qe, l);
              std::int32_t ts = sys.step(cur.qs, l);
              game_state nxt;
              nxt.x = step_counter(cur.x, m, holds(env_sat, spec.env_fair, cur.x, l));
              nxt.y = step_counter(cur.y, n, holds(sys_sat, spec.sys_fair, cur.y, l));

              if (!robust)
                {
                  if (te < 0)
                    {
                      game_state sink;
                      sink.qe = sink.qs = -1;
                      sink.kind = state_kind::win_sink;
                      asmb.add_choice(s, i, {o, -1, -1, intern(sink), true, ts < 0});
                    }
                  else if (ts < 0)
                    {
                      game_state sink;
                      sink.qe = sink.qs = -1;
                      sink.kind = state_kind::lose_sink;
                      asmb.add_choice(s, i, {o, -1, -1, intern(sink), false, true});
                    }
                  else
                    {
                      nxt.qe = te;
                      nxt.qs = ts;
                      asmb.add_choice(s, i, {o, -1, -1, intern(nxt), false, false});
                    }
                  continue;
                }

              int e_lo = te >= 0 ? te : 0, e_hi = te >= 0 ? te : env.num_states() - 1;
              int s_lo = ts >= 0 ? ts : 0, s_hi = ts >= 0 ? ts : sys.num_states() - 1;
              nxt.ok_e = te >= 0;
              nxt.ok_s = ts >= 0;
              for (int qe = e_lo; qe <= e_hi; ++qe)
                for (int qs = s_lo; qs <= s_hi; ++qs)
                  {
                    nxt.qe = qe;
                    nxt.qs = qs;
                    sys_choice c;
                    c.output = o;
                    c.env_recover = te >= 0 ? -1 : qe;
                    c.sys_recover = ts >= 0 ? -1 : qs;
                    c.successor = intern(nxt);
                    c.env_violated = te < 0;
                    c.sys_violated = ts < 0;
                    asmb.add_choice(s, i, c);
                  }
            }
      }

    // Pairs.  Plain-mode sinks: WIN_SINK in every b-set and no a-set,
    // LOSE_SINK in every a-set and no b-set.
    const std::size_t size = tuples.size();
    streett_pair fairness{state_set(size), state_set(size)};
    for (state_index s = 0; s < size; ++s)
      {
        const auto& t = tuples[s];
        switch (t.kind)
          {
          case state_kind::win_sink: fairness.b.insert(s); break;
          case state_kind::lose_sink: fairness.a.insert(s); break;
          case state_kind::normal:
            if (t.x == 0)
              fairness.a.insert(s);
            if (t.y == 0)
              fairness.b.insert(s);
            break;
          }
      }
    asmb.add_pair(std::move(fairness));
    if (robust)
      {
        streett_pair robustness{state_set(size), state_set(size)};
        for (state_index s = 0; s < size; ++s)
          {
            if (!tuples[s].ok_s)
              robustness.a.insert(s);
            if (!tuples[s].ok_e)
              robustness.b.insert(s);
          }
        asmb.add_pair(std::move(robustness));
      }
    return std::move(asmb).finish();
  }
}
