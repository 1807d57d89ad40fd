#include <doctest.h>

#include "gr1rs/io.hpp"
#include "gr1rs/oracle.hpp"
#include "gr1rs/streett.hpp"

#include "../support/literal_oracle.hpp"
#include "../support/random_game.hpp"

#include <algorithm>

using namespace gr1rs;

namespace
{
  game spec_game(const char* file, game_mode mode)
  {
    return build_game(parse_spec_file(std::string(GR1RS_SPEC_DIR) + "/" + file), mode);
  }

  /// No inputs, one output bit; state k lists its successors in order.
  game chain_game(const std::vector<std::vector<state_index>>& succ,
                  std::vector<streett_pair> pairs = {})
  {
    game_assembler a({}, {"o"});
    for (std::size_t s = 0; s < succ.size(); ++s)
      a.add_state();
    for (std::size_t s = 0; s < succ.size(); ++s)
      for (std::size_t k = 0; k < succ[s].size(); ++k)
        a.add_choice(static_cast<state_index>(s), 0,
                     {static_cast<std::uint32_t>(k), -1, -1, succ[s][k], false, false});
    for (auto& p : pairs)
      a.add_pair(std::move(p));
    return std::move(a).finish();
  }

  /// Safety by backward induction: the complement of the environment's
  /// attractor to the states outside \a safe.
  state_set safety_by_attractor(const game& g, const state_set& safe)
  {
    state_set attr = ~safe;
    for (bool grew = true; grew;)
      {
        grew = false;
        for (state_index s = 0; s < g.size(); ++s)
          {
            if (attr.contains(s))
              continue;
            for (std::uint32_t i = 0; i < g.num_inputs(); ++i)
              {
                auto cs = g.choices(s, i);
                bool forced = std::all_of(cs.begin(), cs.end(), [&](const sys_choice& c) {
                  return attr.contains(c.successor);
                });
                if (forced)
                  {
                    attr.insert(s);
                    grew = true;
                    break;
                  }
              }
          }
      }
    return ~attr;
  }
}

TEST_CASE("m_str trivial cases")
{
  game g = spec_game("handshake.spec", game_mode::robust);
  CHECK(m_str(g, g.all(), g.none()) == g.all());
  state_set r(g.size(), {0, 3, 7});
  CHECK(m_str(g, g.none(), r) == r);
}

TEST_CASE("m_str on a small chain")
{
  // 0 -> {0, 1}, 1 -> {2}, 2 -> {2}
  game g = chain_game({{0, 1}, {2}, {2}});
  CHECK(m_str(g, state_set(3, {0, 1}), g.none()) == state_set(3, {0}));
  CHECK(m_str(g, state_set(3, {0, 1}), state_set(3, {2})) == g.all());
  CHECK(m_str(g, state_set(3, {1}), state_set(3, {2})) == state_set(3, {1, 2}));
}

TEST_CASE("m_str safety matches the attractor solver")
{
  for (const char* file : {"handshake.spec", "arbiter2.spec"})
    {
      game g = spec_game(file, game_mode::robust);
      state_set ok_s(g.size());
      for (state_index s = 0; s < g.size(); ++s)
        if (g.state(s).ok_s)
          ok_s.insert(s);
      state_set safe = m_str(g, ok_s, g.none());
      CHECK(safe == safety_by_attractor(g, ok_s));
      // Simultaneous requests force a guarantee violation in the arbiter.
      CHECK(safe.contains(g.initial()) == (std::string(file) == "handshake.spec"));
    }
  for (int k = 0; k < 200; ++k)
    {
      game g = testing::random_game(7000 + k);
      state_set safe = g.pairs().empty() ? g.all() : ~g.pairs()[0].a;
      CHECK(m_str(g, safe, g.none()) == safety_by_attractor(g, safe));
    }
}

TEST_CASE("single self loop and the Streett condition")
{
  auto one = [](bool a, bool b) {
    return chain_game({{0}}, {{a ? state_set(1, {0}) : state_set(1), b ? state_set(1, {0})
                                                                       : state_set(1)}});
  };
  CHECK(main_streett(one(true, false)).winning.is_empty());
  CHECK(main_streett(one(true, true)).winning == state_set(1, {0}));
  CHECK(main_streett(one(false, false)).winning == state_set(1, {0}));
}

TEST_CASE("str_solve examples")
{
  game g = spec_game("handshake.spec", game_mode::robust);
  game gb = g.with_pairs({{g.all(), g.all()}});
  CHECK(str_solve(gb, {0}, gb.all(), gb.none()) == gb.all());
  game ga = g.with_pairs({{g.all(), g.none()}});
  CHECK(str_solve(ga, {0}, ga.all(), ga.none()).is_empty());
  CHECK(main_streett(g).winning.contains(g.initial()));
}

TEST_CASE("zero pairs keeps every state of a total game")
{
  game g = chain_game({{1}, {0, 2}, {2}});
  iterate_record rec = main_streett(g);
  CHECK(rec.winning == g.all());
  CHECK(rec.pair_order.empty());
}

TEST_CASE("arbiter initial state is winning in both modes")
{
  for (auto mode : {game_mode::robust, game_mode::plain})
    {
      game g = spec_game("arbiter2.spec", mode);
      iterate_record rec = main_streett(g);
      CHECK(rec.winning.contains(g.initial()));
      CHECK(rec.winning == brute_force_region(g));
    }
}

TEST_CASE("plain lose sink is never winning")
{
  game g = spec_game("arbiter2.spec", game_mode::plain);
  state_set w = main_streett(g).winning;
  for (state_index s = 0; s < g.size(); ++s)
    {
      if (g.state(s).kind == state_kind::lose_sink)
        CHECK_FALSE(w.contains(s));
      if (g.state(s).kind == state_kind::win_sink)
        CHECK(w.contains(s));
    }
  // A state whose only move enters the lose sink.
  gr1_spec spec = parse_spec("inputs: a\noutputs: b\nsys_safety_inv: !b\n"
                             "sys_safety_inv: a -> X(b)\n");
  game h = build_game(spec, game_mode::plain);
  state_set wh = main_streett(h).winning;
  CHECK_FALSE(wh.contains(h.initial()));
}

TEST_CASE("matches the literal oracle on tiny games")
{
  testing::random_game_params p;
  p.max_states = 6;
  p.max_input_bits = 1;
  for (int k = 0; k < 300; ++k)
    {
      game g = testing::random_game(20000 + k, p);
      INFO("seed " << 20000 + k);
      CHECK(main_streett(g).winning == testing::literal_region(g));
    }
}

TEST_CASE("pair order does not change the region")
{
  for (int k = 0; k < 300; ++k)
    {
      game g = testing::random_game(40000 + k);
      if (g.pairs().size() != 2)
        continue;
      state_set fwd = str_solve(g, {0, 1}, g.all(), g.none());
      state_set rev = str_solve(g, {1, 0}, g.all(), g.none());
      INFO("seed " << 40000 + k);
      CHECK(fwd == rev);
    }
}

TEST_CASE("records are monotone and deterministic")
{
  for (int k = 0; k < 100; ++k)
    {
      game g = testing::random_game(50000 + k);
      iterate_record a = main_streett(g);
      CHECK_NOTHROW(validate_record(g, a));
      for (const auto& pr : a.top.pairs)
        {
          REQUIRE(!pr.iterates.empty());
          CHECK(pr.iterates.front().is_empty());
          CHECK(pr.iterates.back() == a.winning);
          for (std::size_t j = 1; j < pr.iterates.size(); ++j)
            {
              CHECK(pr.iterates[j - 1].is_subset_of(pr.iterates[j]));
              for (const auto& inner : pr.subs[j - 1].pairs)
                for (const auto& y : inner.iterates)
                  CHECK(y.is_subset_of(pr.iterates[j]));
            }
        }
      iterate_record b = main_streett(g);
      CHECK(to_text(record_to_json(a)) == to_text(record_to_json(b)));
    }
}

TEST_CASE("last pair is idempotent at the fixpoint")
{
  for (int k = 0; k < 100; ++k)
    {
      game g = testing::random_game(60000 + k);
      if (g.pairs().empty())
        continue;
      iterate_record rec = main_streett(g);
      std::vector<int> order(g.pairs().size());
      for (std::size_t i = 0; i < order.size(); ++i)
        order[i] = static_cast<int>(i);
      str_record r;
      CHECK(str_solve(g, order, rec.winning, g.none(), &r) == rec.winning);
    }
}

TEST_CASE("tampered record is rejected")
{
  game g = spec_game("arbiter2.spec", game_mode::robust);
  iterate_record rec = main_streett(g);
  REQUIRE(rec.top.pairs.size() == 2);
  iterate_record bad = rec;
  bad.top.pairs[0].iterates.back() = g.none();
  CHECK_THROWS_AS(validate_record(g, bad), std::logic_error);
  bad = rec;
  bad.top.pairs[1].iterates.front() = g.all();
  CHECK_THROWS_AS(validate_record(g, bad), std::logic_error);
}
