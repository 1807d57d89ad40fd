#include <doctest.h>

#include "gr1rs/sim.hpp"

#include <random>

using namespace gr1rs;

namespace
{
  struct fixture
  {
    game g;
    mealy_machine m;
  };

  fixture load(const char* file, game_mode mode)
  {
    game g = build_game(parse_spec_file(std::string(GR1RS_SPEC_DIR) + "/" + file), mode);
    mealy_machine m = synthesize(g);
    return {std::move(g), std::move(m)};
  }

  trace flags(const std::vector<std::pair<bool, bool>>& ok)
  {
    trace t;
    for (auto [e, s] : ok)
      {
        trace_step st;
        st.ok_e = e;
        st.ok_s = s;
        t.steps.push_back(st);
      }
    return t;
  }
}

TEST_CASE("script parsing")
{
  env_script s = parse_env_script("# warm up\nlegal 3\nin r1=1 r2=0\nviolate\n\nin r2=1 r1=1 2\n",
                                  {"r1", "r2"});
  REQUIRE(s.steps.size() == 7);
  CHECK(s.at(0).what == env_directive::kind::legal);
  CHECK(s.at(3).what == env_directive::kind::input);
  CHECK(s.at(3).input == 0b01);
  CHECK(s.at(4).what == env_directive::kind::violate);
  CHECK(s.at(5).input == 0b11);
  CHECK(s.at(6).input == 0b11);
  CHECK(s.at(100).what == env_directive::kind::legal);
  CHECK_THROWS_AS(parse_env_script("in r1=1\n", {"r1", "r2"}), simulation_error);
  CHECK_THROWS_AS(parse_env_script("in r3=1 r1=0 r2=0\n", {"r1", "r2"}), simulation_error);
  CHECK_THROWS_AS(parse_env_script("jump\n", {"r1"}), simulation_error);
  CHECK_THROWS_AS(parse_env_script("in r1=2\n", {"r1"}), simulation_error);
}

TEST_CASE("zero steps is an error")
{
  fixture f = load("arbiter2.spec", game_mode::robust);
  CHECK_THROWS_AS(simulate(f.g, f.m, {}, 0, 1), simulation_error);
}

TEST_CASE("violation that cannot happen is reported")
{
  // No environment assumption: every input is legal.
  game g = build_game(parse_spec("inputs: a\noutputs: b\nsys_safety_inv: b <-> a\n"),
                      game_mode::robust);
  mealy_machine m = synthesize(g);
  env_script s = parse_env_script("legal 2\nviolate\n", {"a"});
  try
    {
      simulate(g, m, s, 10, 1);
      FAIL("expected simulation_error");
    }
  catch (const simulation_error& e)
    {
      CHECK(std::string(e.what()).find("step 2") != std::string::npos);
    }
}

TEST_CASE("recovery metric examples")
{
  recovery_report none = recovery_metric(flags(std::vector<std::pair<bool, bool>>(10, {true, true})));
  CHECK(none.env_errors == 0);
  CHECK(none.sys_errors == 0);
  CHECK(none.worst_recovery == 0);
  CHECK(none.ratio == 0.0);

  std::vector<std::pair<bool, bool>> ok(10, {true, true});
  ok[5].first = false;
  ok[6].second = false;
  recovery_report r = recovery_metric(flags(ok));
  CHECK(r.env_errors == 1);
  CHECK(r.sys_errors == 1);
  CHECK(r.worst_recovery == 1);
  CHECK(r.ratio == 1.0);
  REQUIRE(r.per_injection.size() == 1);
  CHECK(r.per_injection[0].step == 5);

  ok.assign(12, {true, true});
  ok[1].second = false;
  ok[3].first = false;
  ok[4].second = false;
  ok[5].second = false;
  ok[8].first = false;
  ok[9].second = false;
  r = recovery_metric(flags(ok));
  CHECK(r.env_errors == 2);
  CHECK(r.sys_errors == 4);
  CHECK(r.unprovoked_sys_errors == 1);
  CHECK(r.worst_recovery == 2);
  CHECK(r.ratio == 2.0);
}

TEST_CASE("legal arbiter run never errs")
{
  fixture f = load("arbiter2.spec", game_mode::robust);
  trace t = simulate(f.g, f.m, {}, 1000, 9);
  REQUIRE(t.steps.size() == 1000);
  for (const auto& s : t.steps)
    {
      CHECK(s.ok_e);
      CHECK(s.ok_s);
    }
}

TEST_CASE("single injection on the robust arbiter")
{
  fixture f = load("arbiter2.spec", game_mode::robust);
  env_script s = parse_env_script("legal 50\nin r1=1 r2=1\n", f.m.inputs);
  trace t = simulate(f.g, f.m, s, 200, 1);
  recovery_report r = recovery_metric(t);
  CHECK(r.env_errors == 1);
  CHECK(r.sys_errors <= 1);
  CHECK_FALSE(t.steps[50].ok_e);
}

TEST_CASE("random injections keep the ratio at most one")
{
  fixture f = load("arbiter2.spec", game_mode::robust);
  for (std::uint64_t seed = 1; seed <= 100; ++seed)
    {
      std::mt19937_64 rng(seed);
      std::size_t at = 10 + rng() % 80;
      env_script s;
      s.steps.assign(at, env_directive{});
      s.steps.push_back({env_directive::kind::violate, 0});
      trace t = simulate(f.g, f.m, s, 150, seed);
      recovery_report r = recovery_metric(t);
      CHECK(r.env_errors == 1);
      CHECK(r.ratio <= 1.0);
      // Finitely many errors after the last injection, bounded by the machine.
      CHECK(r.sys_errors <= f.m.size());
    }
}

TEST_CASE("same seed gives the same trace")
{
  fixture f = load("handshake.spec", game_mode::robust);
  env_script s = parse_env_script("legal 20\nviolate\nlegal 20\nviolate\n", f.m.inputs);
  trace a = simulate(f.g, f.m, s, 300, 42);
  trace b = simulate(f.g, f.m, s, 300, 42);
  CHECK(to_text(trace_to_json(a, f.m)) == to_text(trace_to_json(b, f.m)));
  recovery_report r = recovery_metric(a);
  CHECK(r.env_errors == 2);
  CHECK(report_to_json(r)["env_errors"] == 2);
  CHECK(report_table(r).find("env errors       2") != std::string::npos);
}

TEST_CASE("trace follows the machine")
{
  fixture f = load("handshake.spec", game_mode::plain);
  trace t = simulate(f.g, f.m, {}, 500, 5);
  std::uint32_t s = 0;
  for (const auto& st : t.steps)
    {
      const auto& tr = f.m.step(s, st.input);
      CHECK(st.output == tr.output);
      CHECK(st.machine_state == tr.target);
      s = tr.target;
    }
}
