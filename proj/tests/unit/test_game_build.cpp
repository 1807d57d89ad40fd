#include <doctest.h>

#include "gr1rs/game.hpp"

#include "../support/random_game.hpp"

#include <random>
#include <set>

using namespace gr1rs;

namespace
{
  game spec_game(const char* file, game_mode mode)
  {
    return build_game(parse_spec_file(std::string(GR1RS_SPEC_DIR) + "/" + file), mode);
  }

  letter joint(const game& g, std::uint32_t i, std::uint32_t o)
  {
    return letter{i} | letter{o} << g.num_input_bits();
  }
}

TEST_CASE("step_counter examples")
{
  CHECK(step_counter(0, 2, false) == 1);
  CHECK(step_counter(0, 2, true) == 1);
  CHECK(step_counter(2, 2, true) == 0);
  CHECK(step_counter(1, 2, false) == 1);
  CHECK(step_counter(1, 2, true) == 2);
  CHECK(step_counter(0, 0, false) == 0);
  CHECK(step_counter(0, 0, true) == 0);
}

TEST_CASE("counter storage bits")
{
  CHECK(counter_bits(0, 0) == 0);
  CHECK(counter_bits(1, 1) == 2);
  CHECK(counter_bits(2, 3) == 4);
  CHECK(counter_bits(3, 7) == 5);
  CHECK(counter_bits(4, 0) == 3);
}

TEST_CASE("counter soundness on bounded traces")
{
  // Every assumption holding at every step: x returns to 0 within m(m+1) steps.
  for (int m = 1; m <= 4; ++m)
    {
      int c = std::min(1, m);
      int since = 0, worst = 0;
      for (int t = 0; t < 200; ++t)
        {
          c = step_counter(c, m, true);
          since = c == 0 ? 0 : since + 1;
          worst = std::max(worst, since);
        }
      CHECK(worst < m * (m + 1));
    }
  // A_k never holds after some time: x gets stuck at k.
  for (int m = 2; m <= 4; ++m)
    for (int k = 1; k <= m; ++k)
      {
        int c = 0;
        for (int t = 0; t < 50; ++t)
          c = step_counter(c, m, c != k);
        CHECK(c == k);
      }
}

TEST_CASE("robust games are total and deterministic")
{
  for (const char* file : {"arbiter2.spec", "handshake.spec"})
    {
      game g = spec_game(file, game_mode::robust);
      CHECK(g.pairs().size() == 2);
      for (state_index s = 0; s < g.size(); ++s)
        for (std::uint32_t i = 0; i < g.num_inputs(); ++i)
          {
            auto cs = g.choices(s, i);
            REQUIRE(!cs.empty());
            for (std::size_t k = 1; k < cs.size(); ++k)
              {
                bool distinct = cs[k].output != cs[k - 1].output
                  || cs[k].env_recover != cs[k - 1].env_recover
                  || cs[k].sys_recover != cs[k - 1].sys_recover;
                CHECK(distinct);
              }
          }
    }
}

TEST_CASE("ok flags and recover fields follow the automata")
{
  gr1_spec spec = parse_spec_file(std::string(GR1RS_SPEC_DIR) + "/handshake.spec");
  game g = build_game(spec, game_mode::robust);
  const int nsig = static_cast<int>(spec.signals.size());
  product_automaton env = compose_product(spec.env_safety, nsig);
  product_automaton sys = compose_product(spec.sys_safety, nsig);
  for (state_index s = 0; s < g.size(); ++s)
    for (std::uint32_t i = 0; i < g.num_inputs(); ++i)
      for (const auto& c : g.choices(s, i))
        {
          const auto& from = g.state(s);
          const auto& to = g.state(c.successor);
          letter l = joint(g, i, c.output);
          auto te = env.step(from.qe, l);
          auto ts = sys.step(from.qs, l);
          CHECK(to.ok_e == (te >= 0));
          CHECK(to.ok_s == (ts >= 0));
          CHECK((c.env_recover >= 0) == (te < 0));
          CHECK((c.sys_recover >= 0) == (ts < 0));
          CHECK(c.env_violated == (te < 0));
          CHECK(c.sys_violated == (ts < 0));
          if (te >= 0)
            CHECK(to.qe == te);
          else
            CHECK(to.qe == c.env_recover);
          if (ts >= 0)
            CHECK(to.qs == ts);
          else
            CHECK(to.qs == c.sys_recover);
        }
}

TEST_CASE("environment violation lets the system pick the recovery state")
{
  // From a state where (r, g) = (1, 0) was just read, lowering r violates
  // the assumption; every env automaton state is offered as recovery.
  gr1_spec spec = parse_spec_file(std::string(GR1RS_SPEC_DIR) + "/handshake.spec");
  game g = build_game(spec, game_mode::robust);
  product_automaton env
    = compose_product(spec.env_safety, static_cast<int>(spec.signals.size()));
  auto q10 = env.step(env.initial, 0b01);
  REQUIRE(q10 >= 0);
  bool found = false;
  for (state_index s = 0; s < g.size() && !found; ++s)
    {
      if (g.state(s).qe != q10)
        continue;
      found = true;
      std::set<int> recover;
      for (const auto& c : g.choices(s, 0))
        {
          CHECK(c.env_violated);
          CHECK_FALSE(g.state(c.successor).ok_e);
          recover.insert(c.env_recover);
        }
      CHECK(recover.size() == static_cast<std::size_t>(env.num_states()));
    }
  CHECK(found);
}

TEST_CASE("pairs of the plain and robust constructions")
{
  game plain = spec_game("arbiter2.spec", game_mode::plain);
  REQUIRE(plain.pairs().size() == 1);
  // m = n = 0: both sets are everything except the sink that opposes them.
  for (state_index s = 0; s < plain.size(); ++s)
    {
      const auto& st = plain.state(s);
      CHECK(st.x == 0);
      CHECK(st.y == 0);
      CHECK(plain.pairs()[0].a.contains(s) == (st.kind != state_kind::win_sink));
      CHECK(plain.pairs()[0].b.contains(s) == (st.kind != state_kind::lose_sink));
      if (st.kind == state_kind::normal)
        {
          CHECK(st.ok_e);
          CHECK(st.ok_s);
        }
    }
  game robust = spec_game("arbiter2.spec", game_mode::robust);
  REQUIRE(robust.pairs().size() == 2);
  CHECK(robust.pairs()[0].a == robust.all());
  CHECK(robust.pairs()[0].b == robust.all());
  for (state_index s = 0; s < robust.size(); ++s)
    {
      CHECK(robust.pairs()[1].a.contains(s) == !robust.state(s).ok_s);
      CHECK(robust.pairs()[1].b.contains(s) == !robust.state(s).ok_e);
    }
}

TEST_CASE("plain mode sinks")
{
  game g = spec_game("arbiter2.spec", game_mode::plain);
  state_set r = reachable(g);
  int win = 0, lose = 0;
  for (state_index s = 0; s < g.size(); ++s)
    {
      CHECK(r.contains(s));
      win += g.state(s).kind == state_kind::win_sink;
      lose += g.state(s).kind == state_kind::lose_sink;
    }
  CHECK(win == 1);
  CHECK(lose == 1);
}

TEST_CASE("initial counters and counter ranges")
{
  game g = build_game(parse_spec("inputs: a b\noutputs: c\nenv_fair: a\nenv_fair: b\n"
                                 "sys_fair: c\nsys_fair: !c\nsys_fair: a\n"),
                      game_mode::robust);
  CHECK(g.state(g.initial()).x == 1);
  CHECK(g.state(g.initial()).y == 1);
  for (const auto& s : g.states())
    {
      CHECK(s.x >= 0);
      CHECK(s.x <= 2);
      CHECK(s.y >= 0);
      CHECK(s.y <= 3);
    }
  game h = spec_game("arbiter2.spec", game_mode::robust);
  CHECK(h.state(h.initial()).x == 0);
  CHECK(h.state(h.initial()).y == 0);
}

TEST_CASE("handshake robust game size is stable")
{
  game a = spec_game("handshake.spec", game_mode::robust);
  game b = spec_game("handshake.spec", game_mode::robust);
  CHECK(a.size() == 211);
  CHECK(b.size() == a.size());
  CHECK(reachable(a).count() == a.size());
  CHECK(spec_game("arbiter2.spec", game_mode::robust).size() == 15);
  CHECK(spec_game("arbiter2.spec", game_mode::plain).size() == 6);
}

TEST_CASE("pr basics and one-step enumeration")
{
  game g = spec_game("handshake.spec", game_mode::robust);
  CHECK(pr(g, g.all()) == g.all());
  CHECK(pr(g, g.none()) == g.none());
  state_set bad_e(g.size());
  for (state_index s = 0; s < g.size(); ++s)
    if (!g.state(s).ok_e)
      bad_e.insert(s);
  state_set expected(g.size());
  for (state_index s = 0; s < g.size(); ++s)
    {
      bool all_inputs = true;
      for (std::uint32_t i = 0; i < g.num_inputs(); ++i)
        {
          bool some = false;
          for (const auto& c : g.choices(s, i))
            some = some || bad_e.contains(c.successor);
          all_inputs = all_inputs && some;
        }
      if (all_inputs)
        expected.insert(s);
    }
  CHECK(pr(g, bad_e) == expected);
}

TEST_CASE("pr is monotone")
{
  std::mt19937_64 rng(5);
  for (int k = 0; k < 50; ++k)
    {
      game g = testing::random_game(300 + k);
      state_set x(g.size()), y(g.size());
      for (state_index s = 0; s < g.size(); ++s)
        {
          bool in_x = rng() % 2;
          if (in_x)
            x.insert(s);
          if (in_x || rng() % 2)
            y.insert(s);
        }
      CHECK(pr(g, x).is_subset_of(pr(g, y)));
    }
}

TEST_CASE("absorbing initial state reaches only itself")
{
  game_assembler a({"i"}, {"o"});
  a.add_state();
  a.add_state();
  for (std::uint32_t i = 0; i < 2; ++i)
    {
      a.add_choice(0, i, {0, -1, -1, 0, false, false});
      a.add_choice(1, i, {0, -1, -1, 0, false, false});
    }
  game g = std::move(a).finish();
  CHECK(reachable(g) == state_set(2, {0}));
}

TEST_CASE("assembler rejects partial and duplicate moves")
{
  {
    game_assembler a({"i"}, {"o"});
    a.add_state();
    a.add_choice(0, 0, {0, -1, -1, 0, false, false});
    CHECK_THROWS_AS(std::move(a).finish(), std::invalid_argument);
  }
  {
    game_assembler a({}, {"o"});
    a.add_state();
    a.add_choice(0, 0, {1, -1, -1, 0, false, false});
    a.add_choice(0, 0, {1, -1, -1, 0, false, false});
    CHECK_THROWS_AS(std::move(a).finish(), std::invalid_argument);
  }
}

TEST_CASE("state cap is enforced")
{
  gr1_spec spec = parse_spec_file(std::string(GR1RS_SPEC_DIR) + "/handshake.spec");
  build_options opts;
  opts.state_cap = 50;
  CHECK_THROWS_AS(build_game(spec, game_mode::robust, opts), capacity_error);
}
