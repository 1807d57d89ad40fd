#include "gr1rs/strategy.hpp"

#include <deque>
#include <map>
#include <sstream>

namespace gr1rs
{
  unrealizable_error::unrealizable_error(state_set winning,
                                         std::optional<std::uint32_t> witness_input)
    : std::runtime_error("specification is unrealizable: initial state is not winning"),
      winning_(std::move(winning)), witness_(witness_input)
  {
  }

  strategy::strategy(const game& g, state_set winning, int memory_values)
    : winning_(std::move(winning)), memory_values_(memory_values), num_inputs_(g.num_inputs()),
      table_(g.size() * memory_values * g.num_inputs())
  {
  }

  namespace
  {
    // First-entry index of every state in an increasing iterate list;
    // -1 for states outside the last iterate.
    std::vector<int> first_entry(const std::vector<state_set>& iterates, std::size_t n)
    {
      std::vector<int> rank(n, -1);
      for (std::size_t j = iterates.size(); j-- > 1;)
        iterates[j].for_each([&](state_index s) { rank[s] = static_cast<int>(j); });
      return rank;
    }

    struct candidate
    {
      int row;
      const state_set* target;
      int next_memory;
    };

    // Picks the first choice into the target, preferring choices that keep
    // the system automaton alive.
    std::int32_t pick(const game& g, state_index s, std::uint32_t i, const state_set& target)
    {
      auto cs = g.choices(s, i);
      std::int32_t fallback = -1;
      for (std::size_t k = 0; k < cs.size(); ++k)
        if (target.contains(cs[k].successor))
          {
            if (!cs[k].sys_violated)
              return static_cast<std::int32_t>(k);
            if (fallback < 0)
              fallback = static_cast<std::int32_t>(k);
          }
      return fallback;
    }

    [[noreturn]] void fail(const game& g, state_index s, int memory, std::uint32_t i,
                           const std::vector<candidate>& tried)
    {
      std::ostringstream os;
      const auto& st = g.state(s);
      os << "strategy extraction: no applicable row for state " << s << " (qe=" << st.qe
         << " qs=" << st.qs << " x=" << st.x << " y=" << st.y << " ok_e=" << st.ok_e
         << " ok_s=" << st.ok_s << "), memory " << memory << ", input " << i
         << "; rows tried:";
      for (const auto& c : tried)
        os << ' ' << c.row << "(|target|=" << c.target->count() << ')';
      throw extraction_error(os.str());
    }

    void fill(const game& g, strategy& st, state_index s, int memory,
              const std::vector<candidate>& rows)
    {
      for (std::uint32_t i = 0; i < g.num_inputs(); ++i)
        {
          bool done = false;
          for (const auto& c : rows)
            {
              std::int32_t k = pick(g, s, i, *c.target);
              if (k >= 0)
                {
                  st.move(s, memory, i) = {k, static_cast<std::uint8_t>(c.next_memory),
                                           static_cast<std::uint8_t>(c.row)};
                  done = true;
                  break;
                }
            }
          if (!done)
            fail(g, s, memory, i, rows);
        }
    }
  }

  strategy extract_strategy_2pairs(const game& g, const iterate_record& rec)
  {
    if (g.pairs().size() != 2 || rec.top.pairs.size() != 2)
      throw std::invalid_argument("extract_strategy_2pairs: game must have two pairs");
    const state_set& w = rec.winning;
    strategy st(g, w, 2);
    const std::size_t n = g.size();

    for (int m = 0; m < 2; ++m)
      {
        const auto& top = rec.top.pairs[m];
        if (top.subs.size() + 1 != top.iterates.size())
          throw extraction_error("extract_strategy_2pairs: nested records missing");
        std::vector<int> outer = first_entry(top.iterates, n);
        std::vector<std::vector<int>> inner;
        for (const auto& sub : top.subs)
          inner.push_back(first_entry(sub.pairs.at(0).iterates, n));

        w.for_each([&](state_index s) {
          int j = outer[s];
          const auto& q = top.subs[j - 1].pairs.at(0);
          int l = inner[j - 1][s];
          std::vector<candidate> rows;
          if (j >= 2)
            rows.push_back({1 + m, &top.iterates[j - 1], m});
          if (top.base.contains(s))
            rows.push_back({3 + m, &w, 1 - m});
          if (l >= 2)
            rows.push_back({5 + m, &q.iterates[l - 1], m});
          if (q.base.contains(s))
            rows.push_back({7 + m, &top.iterates[j], m});
          rows.push_back({9 + m, &q.iterates[l], m});
          fill(g, st, s, m, rows);
        });
      }
    return st;
  }

  strategy extract_strategy_1pair(const game& g, const iterate_record& rec)
  {
    if (g.pairs().size() != 1 || rec.top.pairs.size() != 1)
      throw std::invalid_argument("extract_strategy_1pair: game must have one pair");
    const state_set& w = rec.winning;
    strategy st(g, w, 1);
    const auto& top = rec.top.pairs[0];
    std::vector<int> outer = first_entry(top.iterates, g.size());
    w.for_each([&](state_index s) {
      int j = outer[s];
      std::vector<candidate> rows;
      if (j >= 2)
        rows.push_back({1, &top.iterates[j - 1], 0});
      if (top.base.contains(s))
        rows.push_back({3, &w, 0});
      rows.push_back({9, &top.iterates[j], 0});
      fill(g, st, s, 0, rows);
    });
    return st;
  }

  strategy extract_strategy_0pair(const game& g, const iterate_record& rec)
  {
    if (!g.pairs().empty())
      throw std::invalid_argument("extract_strategy_0pair: game has pairs");
    const state_set& w = rec.winning;
    strategy st(g, w, 1);
    w.for_each([&](state_index s) { fill(g, st, s, 0, {{9, &w, 0}}); });
    return st;
  }

  strategy extract_strategy(const game& g, const iterate_record& rec)
  {
    switch (g.pairs().size())
      {
      case 0: return extract_strategy_0pair(g, rec);
      case 1: return extract_strategy_1pair(g, rec);
      case 2: return extract_strategy_2pairs(g, rec);
      default:
        throw std::invalid_argument("strategy extraction supports at most two pairs");
      }
  }

  void mealy_machine::validate() const
  {
    if (states.empty())
      throw std::invalid_argument("mealy machine has no states");
    if (inputs.size() > 16 || outputs.size() > 16)
      throw std::invalid_argument("mealy machine: at most 16 input and 16 output bits");
    if (transitions.size() != states.size() * num_inputs())
      throw std::invalid_argument("mealy machine is not input-complete");
    const std::uint32_t no = std::uint32_t{1} << outputs.size();
    for (const auto& t : transitions)
      if (t.target >= states.size() || t.output >= no)
        throw std::invalid_argument("mealy machine: transition out of range");
  }

  mealy_machine strategy_to_mealy(const game& g, const strategy& st,
                                  std::optional<state_index> start)
  {
    const state_index s0 = start.value_or(g.initial());
    const std::uint32_t ni = g.num_inputs();
    if (!st.winning().contains(s0))
      {
        std::optional<std::uint32_t> witness;
        for (std::uint32_t i = 0; i < ni && !witness; ++i)
          {
            bool stays = false;
            for (const auto& c : g.choices(s0, i))
              stays = stays || st.winning().contains(c.successor);
            if (!stays)
              witness = i;
          }
        throw unrealizable_error(st.winning(), witness);
      }

    mealy_machine mach;
    mach.inputs = g.input_names();
    mach.outputs = g.output_names();
    std::map<std::pair<state_index, int>, std::uint32_t> index;
    std::deque<std::pair<state_index, int>> queue;
    auto intern = [&](state_index s, int mem) {
      auto [it, fresh] = index.emplace(std::make_pair(s, mem),
                                       static_cast<std::uint32_t>(mach.states.size()));
      if (fresh)
        {
          mealy_state ms;
          ms.name = "S" + std::to_string(mach.states.size());
          ms.game_index = s;
          ms.memory = mem;
          ms.annotation = g.state(s);
          mach.states.push_back(ms);
          queue.emplace_back(s, mem);
        }
      return it->second;
    };
    intern(s0, 0);
    while (!queue.empty())
      {
        auto [s, mem] = queue.front();
        queue.pop_front();
        for (std::uint32_t i = 0; i < ni; ++i)
          {
            const strategy_move& mv = st.move(s, mem, i);
            if (mv.choice < 0)
              throw extraction_error("strategy_to_mealy: undefined move at state "
                                     + std::to_string(s) + ", input " + std::to_string(i));
            const sys_choice& c = g.choices(s, i)[mv.choice];
            mealy_transition t;
            t.output = c.output;
            t.row = mv.row;
            t.target = intern(c.successor, mv.next_memory);
            mach.transitions.push_back(t);
          }
      }
    return mach;
  }

  mealy_machine synthesize(const game& g, iterate_record* rec_out)
  {
    iterate_record rec = main_streett(g);
    strategy st = extract_strategy(g, rec);
    mealy_machine mach = strategy_to_mealy(g, st);
    if (rec_out)
      *rec_out = std::move(rec);
    return mach;
  }
}
