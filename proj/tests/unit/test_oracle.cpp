#include <doctest.h>

#include "gr1rs/oracle.hpp"
#include "gr1rs/streett.hpp"

#include "../support/literal_oracle.hpp"
#include "../support/random_game.hpp"

#include <random>

using namespace gr1rs;

namespace
{
  game one_state(std::vector<streett_pair> pairs)
  {
    game_assembler a({}, {});
    a.add_state();
    a.add_choice(0, 0, {0, -1, -1, 0, false, false});
    for (auto& p : pairs)
      a.add_pair(std::move(p));
    return std::move(a).finish();
  }

  /// Copy of \a g with one extra move (output = a fresh bit value) per
  /// listed slot.
  game augment(const game& g, std::mt19937_64& rng)
  {
    std::vector<std::string> outs = g.output_names();
    outs.push_back("extra");
    game_assembler a(g.input_names(), outs);
    for (const auto& s : g.states())
      a.add_state(s);
    a.set_initial(g.initial());
    const std::uint32_t fresh = g.num_outputs();
    for (state_index s = 0; s < g.size(); ++s)
      for (std::uint32_t i = 0; i < g.num_inputs(); ++i)
        {
          for (const auto& c : g.choices(s, i))
            a.add_choice(s, i, c);
          if (rng() % 3 == 0)
            a.add_choice(s, i, {fresh, -1, -1, static_cast<state_index>(rng() % g.size()),
                                false, false});
        }
    for (const auto& p : g.pairs())
      a.add_pair(p);
    return std::move(a).finish();
  }

  /// Closed-loop violation by subset enumeration: some set U of product
  /// nodes, strongly connected with an edge inside, reachable from node 0,
  /// meets a and misses b.
  bool violated_by_subsets(const mealy_machine& m, const game& g, const streett_pair& p)
  {
    const std::size_t n = m.size();
    std::vector<std::uint32_t> succ(n, 0);
    for (std::uint32_t s = 0; s < n; ++s)
      for (std::uint32_t i = 0; i < m.num_inputs(); ++i)
        succ[s] |= 1u << m.step(s, i).target;
    auto closure = [&](std::uint32_t from, std::uint32_t scope) {
      std::uint32_t seen = from;
      for (bool grew = true; grew;)
        {
          grew = false;
          for (std::size_t s = 0; s < n; ++s)
            if ((seen >> s & 1) && (succ[s] & scope & ~seen))
              {
                seen |= succ[s] & scope;
                grew = true;
              }
        }
      return seen;
    };
    std::uint32_t reach = closure(1u, (1u << n) - 1);
    for (std::uint32_t u = 1; u < (1u << n); ++u)
      {
        if ((u & reach) != u)
          continue;
        bool scc = true, hits_a = false, hits_b = false;
        for (std::size_t s = 0; s < n && scc; ++s)
          if (u >> s & 1)
            {
              scc = (succ[s] & u) && closure(1u << s, u) == u;
              state_index gs = *m.states[s].game_index;
              hits_a = hits_a || p.a.contains(gs);
              hits_b = hits_b || p.b.contains(gs);
            }
        if (scc && hits_a && !hits_b)
          return true;
      }
    return false;
  }
}

TEST_CASE("one state examples")
{
  state_set all(1, {0}), none(1);
  CHECK(brute_force_region(one_state({{all, all}, {none, none}})) == all);
  CHECK(brute_force_region(one_state({{all, none}})) == none);
  CHECK(brute_force_region(one_state({})) == all);
}

TEST_CASE("good cycle detection")
{
  // 0 <-> 1, 2 -> 2
  std::vector<std::uint32_t> succ = {0b010, 0b001, 0b100};
  CHECK(has_good_cycle(0b111, succ, {}));
  CHECK(has_good_cycle(0b011, succ, {{0b001, 0b010}}));
  CHECK_FALSE(has_good_cycle(0b011, succ, {{0b001, 0b100}}));
  CHECK(has_good_cycle(0b111, succ, {{0b001, 0b100}}));
  CHECK_FALSE(has_good_cycle(0b001, succ, {}));
  // Pair ⟨{0}, {}⟩ fails on the 2-cycle but the self loop at 2 avoids a.
  CHECK(has_good_cycle(0b111, succ, {{0b001, 0}}));
  CHECK_FALSE(has_good_cycle(0b011, succ, {{0b001, 0}}));
}

TEST_CASE("size caps")
{
  testing::random_game_params p;
  p.min_states = 16;
  p.max_states = 16;
  CHECK_THROWS(brute_force_region(testing::random_game(1, p)));
  oracle_options big;
  big.max_states = 16;
  CHECK_NOTHROW(brute_force_region(testing::random_game(1, p), big));
}

TEST_CASE("depth first oracle agrees with literal enumeration")
{
  testing::random_game_params p;
  p.max_states = 7;
  for (int k = 0; k < 400; ++k)
    {
      game g = testing::random_game(90000 + k, p);
      INFO("seed " << 90000 + k);
      CHECK(brute_force_region(g) == testing::literal_region(g));
    }
}

TEST_CASE("more system choices never shrink the region")
{
  std::mt19937_64 rng(77);
  for (int k = 0; k < 200; ++k)
    {
      game g = testing::random_game(95000 + k);
      game h = augment(g, rng);
      CHECK(brute_force_region(g).is_subset_of(brute_force_region(h)));
    }
}

TEST_CASE("trap machine is rejected on the robustness pair")
{
  game g = build_game(parse_spec_file(std::string(GR1RS_SPEC_DIR) + "/arbiter2.spec"),
                      game_mode::robust);
  mealy_machine trap
    = machine_from_json(read_json_file(std::string(GR1RS_GOLDEN_DIR) + "/trap_machine.json"));
  soundness_verdict v = check_strategy_sound(g, trap);
  REQUIRE_FALSE(v.sound);
  CHECK(v.violated_pair == 1);
  REQUIRE(!v.cycle.empty());
  bool sys_error = false;
  for (const auto& st : v.cycle)
    {
      CHECK(st.machine_state == 3);
      CHECK(g.state(st.game_state).ok_e);
      sys_error = sys_error || !g.state(st.game_state).ok_s;
    }
  CHECK(sys_error);
  CHECK(check_strategy_sound(g, trap, std::vector<int>{0}).sound);
  CHECK(check_strategy_sound(g, synthesize(g), std::vector<int>{1}).sound);
}

TEST_CASE("empty pair list is vacuously sound")
{
  game g = build_game(parse_spec_file(std::string(GR1RS_SPEC_DIR) + "/handshake.spec"),
                      game_mode::plain);
  game z = g.with_pairs({});
  CHECK(check_strategy_sound(z, synthesize(z)).sound);
}

TEST_CASE("machine that leaves the game is a mismatch")
{
  game g = build_game(parse_spec_file(std::string(GR1RS_SPEC_DIR) + "/arbiter2.spec"),
                      game_mode::robust);
  mealy_machine m = synthesize(g);
  m.states[0].game_index = static_cast<state_index>(g.size() + 3);
  CHECK_THROWS_AS(check_strategy_sound(g, m), product_mismatch);
}

TEST_CASE("verdicts agree with subset enumeration")
{
  std::mt19937_64 rng(3);
  int checked = 0, violations = 0;
  for (int k = 0; k < 600 && checked < 150; ++k)
    {
      game g = testing::random_game(97000 + k);
      iterate_record rec = main_streett(g);
      if (!rec.winning.contains(g.initial()))
        continue;
      mealy_machine m = strategy_to_mealy(g, extract_strategy(g, rec));
      if (m.size() > 12)
        continue;
      // Fresh random pairs turn some sound machines into violating ones.
      std::vector<streett_pair> pairs;
      for (int p = 0; p < 2; ++p)
        {
          state_set a(g.size()), b(g.size());
          for (state_index s = 0; s < g.size(); ++s)
            {
              if (rng() % 3 == 0)
                a.insert(s);
              if (rng() % 4 == 0)
                b.insert(s);
            }
          pairs.push_back({a, b});
        }
      game h = g.with_pairs(pairs);
      soundness_verdict v = check_strategy_sound(h, m);
      CHECK(v.product_states == m.size());
      bool expected = true;
      for (const auto& p : pairs)
        expected = expected && !violated_by_subsets(m, h, p);
      CHECK(v.sound == expected);
      if (!v.sound)
        {
          ++violations;
          const auto& p = pairs.at(v.violated_pair);
          bool hits_a = false;
          for (const auto& st : v.cycle)
            {
              CHECK_FALSE(p.b.contains(st.game_state));
              hits_a = hits_a || p.a.contains(st.game_state);
            }
          CHECK(hits_a);
        }
      ++checked;
    }
  CHECK(checked >= 50);
  CHECK(violations > 0);
}
