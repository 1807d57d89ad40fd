#include "gr1rs/io.hpp"

#include <fstream>
#include <sstream>

namespace gr1rs
{
  namespace
  {
    const char* mode_name(game_mode m)
    {
      switch (m)
        {
        case game_mode::plain: return "plain";
        case game_mode::robust: return "robust";
        case game_mode::generic: break;
        }
      return "generic";
    }

    game_mode mode_from(const std::string& s)
    {
      if (s == "plain")
        return game_mode::plain;
      if (s == "robust")
        return game_mode::robust;
      if (s == "generic")
        return game_mode::generic;
      throw format_error("game dump: unknown mode '" + s + "'");
    }

    const char* kind_name(state_kind k)
    {
      switch (k)
        {
        case state_kind::win_sink: return "win_sink";
        case state_kind::lose_sink: return "lose_sink";
        case state_kind::normal: break;
        }
      return "normal";
    }

    state_kind kind_from(const std::string& s)
    {
      if (s == "normal")
        return state_kind::normal;
      if (s == "win_sink")
        return state_kind::win_sink;
      if (s == "lose_sink")
        return state_kind::lose_sink;
      throw format_error("game dump: unknown state kind '" + s + "'");
    }

    void expect_format(const json& j, const char* name)
    {
      if (!j.is_object() || j.value("format", "") != name)
        throw format_error(std::string("expected a '") + name + "' document");
    }
  }

  json state_set_to_json(const state_set& s)
  {
    json a = json::array();
    s.for_each([&](state_index i) { a.push_back(i); });
    return a;
  }

  state_set state_set_from_json(const json& j, std::size_t universe)
  {
    state_set s(universe);
    for (const auto& v : j)
      {
        auto i = v.get<std::size_t>();
        if (i >= universe)
          throw format_error("state index " + std::to_string(i) + " out of range");
        s.insert(static_cast<state_index>(i));
      }
    return s;
  }

  json game_to_json(const game& g)
  {
    json j;
    j["format"] = "gr1rs-game";
    j["version"] = 1;
    j["mode"] = mode_name(g.mode());
    j["inputs"] = g.input_names();
    j["outputs"] = g.output_names();
    j["initial"] = g.initial();
    j["env_fairness"] = g.env_fairness_count();
    j["sys_fairness"] = g.sys_fairness_count();
    j["env_automaton_states"] = g.env_automaton_states();
    j["sys_automaton_states"] = g.sys_automaton_states();
    json states = json::array();
    for (std::size_t s = 0; s < g.size(); ++s)
      {
        const auto& st = g.state(static_cast<state_index>(s));
        json o;
        o["id"] = s;
        o["kind"] = kind_name(st.kind);
        o["qe"] = st.qe;
        o["qs"] = st.qs;
        o["x"] = st.x;
        o["y"] = st.y;
        o["ok_e"] = st.ok_e;
        o["ok_s"] = st.ok_s;
        states.push_back(std::move(o));
      }
    j["states"] = std::move(states);
    json moves = json::array();
    for (std::size_t s = 0; s < g.size(); ++s)
      {
        json per_state = json::array();
        for (std::uint32_t i = 0; i < g.num_inputs(); ++i)
          {
            json per_input = json::array();
            for (const auto& c : g.choices(static_cast<state_index>(s), i))
              per_input.push_back({c.output, c.env_recover, c.sys_recover, c.successor,
                                   int(c.env_violated) | int(c.sys_violated) << 1});
            per_state.push_back(std::move(per_input));
          }
        moves.push_back(std::move(per_state));
      }
    j["moves"] = std::move(moves);
    json pairs = json::array();
    for (const auto& p : g.pairs())
      {
        json o;
        o["a"] = state_set_to_json(p.a);
        o["b"] = state_set_to_json(p.b);
        pairs.push_back(std::move(o));
      }
    j["pairs"] = std::move(pairs);
    return j;
  }

  game game_from_json(const json& j)
  {
    expect_format(j, "gr1rs-game");
    try
      {
        game_assembler asmb(j.at("inputs").get<std::vector<std::string>>(),
                            j.at("outputs").get<std::vector<std::string>>(),
                            mode_from(j.at("mode").get<std::string>()));
        const auto& states = j.at("states");
        for (const auto& o : states)
          {
            game_state st;
            st.kind = kind_from(o.at("kind").get<std::string>());
            st.qe = o.at("qe").get<int>();
            st.qs = o.at("qs").get<int>();
            st.x = o.at("x").get<int>();
            st.y = o.at("y").get<int>();
            st.ok_e = o.at("ok_e").get<bool>();
            st.ok_s = o.at("ok_s").get<bool>();
            asmb.add_state(st);
          }
        const std::size_t n = asmb.size();
        asmb.set_initial(j.at("initial").get<state_index>());
        asmb.set_fairness_counts(j.value("env_fairness", 0), j.value("sys_fairness", 0));
        asmb.set_automaton_states(
          j.value("env_automaton_states", std::vector<std::string>{}),
          j.value("sys_automaton_states", std::vector<std::string>{}));
        const auto& moves = j.at("moves");
        if (moves.size() != n)
          throw format_error("game dump: moves do not match the state count");
        for (std::size_t s = 0; s < n; ++s)
          for (std::size_t i = 0; i < moves[s].size(); ++i)
            for (const auto& m : moves[s][i])
              {
                sys_choice c;
                c.output = m.at(0).get<std::uint32_t>();
                c.env_recover = m.at(1).get<std::int32_t>();
                c.sys_recover = m.at(2).get<std::int32_t>();
                c.successor = m.at(3).get<state_index>();
                int flags = m.at(4).get<int>();
                c.env_violated = flags & 1;
                c.sys_violated = flags & 2;
                asmb.add_choice(static_cast<state_index>(s), static_cast<std::uint32_t>(i), c);
              }
        for (const auto& p : j.at("pairs"))
          asmb.add_pair({state_set_from_json(p.at("a"), n), state_set_from_json(p.at("b"), n)});
        return std::move(asmb).finish();
      }
    catch (const nlohmann::json::exception& e)
      {
        throw format_error(std::string("game dump: ") + e.what());
      }
    catch (const std::invalid_argument& e)
      {
        throw format_error(std::string("game dump: ") + e.what());
      }
    catch (const std::out_of_range& e)
      {
        throw format_error(std::string("game dump: ") + e.what());
      }
  }

  namespace
  {
    json str_record_to_json(const str_record& r)
    {
      json j;
      j["z"] = state_set_to_json(r.z);
      json pairs = json::array();
      for (const auto& p : r.pairs)
        {
          json o;
          o["pair"] = p.pair;
          o["base"] = state_set_to_json(p.base);
          json its = json::array();
          for (const auto& y : p.iterates)
            its.push_back(state_set_to_json(y));
          o["iterates"] = std::move(its);
          json subs = json::array();
          for (const auto& sub : p.subs)
            subs.push_back(str_record_to_json(sub));
          o["subs"] = std::move(subs);
          pairs.push_back(std::move(o));
        }
      j["pairs"] = std::move(pairs);
      return j;
    }
  }

  json record_to_json(const iterate_record& rec)
  {
    json j;
    j["format"] = "gr1rs-iterates";
    j["version"] = 1;
    j["winning"] = state_set_to_json(rec.winning);
    j["pair_order"] = rec.pair_order;
    j["top"] = str_record_to_json(rec.top);
    return j;
  }

  std::string to_text(const json& j)
  {
    return j.dump(2) + "\n";
  }

  json read_json_file(const std::string& path)
  {
    std::ifstream in(path);
    if (!in)
      throw std::runtime_error("cannot open '" + path + "'");
    try
      {
        return json::parse(in);
      }
    catch (const nlohmann::json::parse_error& e)
      {
        throw format_error(path + ": " + e.what());
      }
  }

  void write_text_file(const std::string& path, const std::string& text)
  {
    std::ofstream out(path, std::ios::binary);
    if (!out)
      throw std::runtime_error("cannot write '" + path + "'");
    out << text;
    if (!out)
      throw std::runtime_error("error writing '" + path + "'");
  }
}
