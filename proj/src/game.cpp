#include "gr1rs/game.hpp"

#include <algorithm>
#include <tuple>

namespace gr1rs
{
  std::uint32_t lex_rank(std::uint32_t valuation, int bits)
  {
    std::uint32_t r = 0;
    for (int k = 0; k < bits; ++k)
      if ((valuation >> k) & 1)
        r |= std::uint32_t{1} << (bits - 1 - k);
    return r;
  }

  std::span<const sys_choice> game::choices(state_index s, std::uint32_t input) const
  {
    std::size_t slot = static_cast<std::size_t>(s) * num_inputs() + input;
    return {choices_.data() + choice_begin_[slot],
            choices_.data() + choice_begin_[slot + 1]};
  }

  std::span<const state_index> game::successors(state_index s, std::uint32_t input) const
  {
    std::size_t slot = static_cast<std::size_t>(s) * num_inputs() + input;
    return {succs_.data() + succ_begin_[slot], succs_.data() + succ_begin_[slot + 1]};
  }

  game game::with_pairs(std::vector<streett_pair> pairs) const
  {
    for (const auto& p : pairs)
      if (p.a.universe() != size() || p.b.universe() != size())
        throw std::invalid_argument("game::with_pairs: pair universe mismatch");
    game g = *this;
    g.pairs_ = std::move(pairs);
    return g;
  }

  game_assembler::game_assembler(std::vector<std::string> inputs,
                                 std::vector<std::string> outputs, game_mode mode)
    : mode_(mode), inputs_(std::move(inputs)), outputs_(std::move(outputs))
  {
    if (inputs_.size() > 16 || outputs_.size() > 16)
      throw capacity_error("game_assembler: at most 16 input and 16 output bits");
  }

  state_index game_assembler::add_state(const game_state& s)
  {
    states_.push_back(s);
    slots_.resize(states_.size() * (std::size_t{1} << inputs_.size()));
    return static_cast<state_index>(states_.size() - 1);
  }

  void game_assembler::add_choice(state_index s, std::uint32_t input, const sys_choice& c)
  {
    std::size_t ni = std::size_t{1} << inputs_.size();
    if (s >= states_.size() || input >= ni)
      throw std::out_of_range("game_assembler::add_choice: slot out of range");
    if (c.output >= (std::uint32_t{1} << outputs_.size()))
      throw std::out_of_range("game_assembler::add_choice: output out of range");
    slots_[s * ni + input].push_back(c);
  }

  void game_assembler::set_automaton_states(std::vector<std::string> env,
                                            std::vector<std::string> sys)
  {
    env_states_ = std::move(env);
    sys_states_ = std::move(sys);
  }

  game game_assembler::finish() &&
  {
    if (states_.empty())
      throw std::invalid_argument("game_assembler: game has no states");
    if (initial_ >= states_.size())
      throw std::invalid_argument("game_assembler: initial state out of range");
    std::size_t n = states_.size();
    for (const auto& p : pairs_)
      if (p.a.universe() != n || p.b.universe() != n)
        throw std::invalid_argument("game_assembler: pair universe mismatch");

    game g;
    g.mode_ = mode_;
    g.inputs_ = std::move(inputs_);
    g.outputs_ = std::move(outputs_);
    int ob = static_cast<int>(g.outputs_.size());
    std::size_t total = 0;
    for (const auto& s : slots_)
      total += s.size();
    g.choices_.reserve(total);
    g.choice_begin_.reserve(slots_.size() + 1);
    g.succ_begin_.reserve(slots_.size() + 1);
    std::vector<state_index> tmp;
    for (std::size_t slot = 0; slot < slots_.size(); ++slot)
      {
        auto& v = slots_[slot];
        if (v.empty())
          throw std::invalid_argument("game_assembler: state " + std::to_string(slot >> g.inputs_.size())
                                      + " has no choice for input "
                                      + std::to_string(slot & ((1u << g.inputs_.size()) - 1)));
        auto key = [ob](const sys_choice& c) {
          return std::make_tuple(lex_rank(c.output, ob), c.env_recover, c.sys_recover);
        };
        std::stable_sort(v.begin(), v.end(),
                         [&](const sys_choice& l, const sys_choice& r) { return key(l) < key(r); });
        tmp.clear();
        for (std::size_t k = 0; k < v.size(); ++k)
          {
            if (v[k].successor >= n)
              throw std::invalid_argument("game_assembler: successor out of range");
            if (k > 0 && key(v[k]) == key(v[k - 1]))
              throw std::invalid_argument("game_assembler: duplicate system choice");
            tmp.push_back(v[k].successor);
          }
        std::sort(tmp.begin(), tmp.end());
        tmp.erase(std::unique(tmp.begin(), tmp.end()), tmp.end());
        g.choice_begin_.push_back(g.choices_.size());
        g.choices_.insert(g.choices_.end(), v.begin(), v.end());
        g.succ_begin_.push_back(g.succs_.size());
        g.succs_.insert(g.succs_.end(), tmp.begin(), tmp.end());
        std::vector<sys_choice>().swap(v);
      }
    g.choice_begin_.push_back(g.choices_.size());
    g.succ_begin_.push_back(g.succs_.size());
    g.states_ = std::move(states_);
    g.initial_ = initial_;
    g.pairs_ = std::move(pairs_);
    g.env_states_ = std::move(env_states_);
    g.sys_states_ = std::move(sys_states_);
    g.m_ = m_;
    g.n_ = n_;
    return g;
  }

  int step_counter(int c, int bound, bool satisfied)
  {
    if (c == 0)
      return 1 % (bound + 1);
    return satisfied ? (c + 1) % (bound + 1) : c;
  }

  int counter_bits(int m, int n)
  {
    auto ceil_log2 = [](int v) {
      int b = 0;
      while ((1 << b) < v)
        ++b;
      return b;
    };
    return ceil_log2(m + 1) + ceil_log2(n + 1);
  }

  state_set pr(const game& g, const state_set& x)
  {
    state_set result(g.size());
    std::uint32_t ni = g.num_inputs();
    for (state_index s = 0; s < g.size(); ++s)
      {
        bool forced = true;
        for (std::uint32_t i = 0; i < ni && forced; ++i)
          {
            bool hit = false;
            for (state_index t : g.successors(s, i))
              if (x.contains(t))
                {
                  hit = true;
                  break;
                }
            forced = hit;
          }
        if (forced)
          result.insert(s);
      }
    return result;
  }

  state_set reachable(const game& g)
  {
    state_set seen(g.size());
    std::vector<state_index> stack{g.initial()};
    seen.insert(g.initial());
    while (!stack.empty())
      {
        state_index s = stack.back();
        stack.pop_back();
        for (std::uint32_t i = 0; i < g.num_inputs(); ++i)
          for (state_index t : g.successors(s, i))
            if (!seen.contains(t))
              {
                seen.insert(t);
                stack.push_back(t);
              }
      }
    return seen;
  }
}
