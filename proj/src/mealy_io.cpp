#include "gr1rs/io.hpp"

namespace gr1rs
{
  json machine_to_json(const mealy_machine& m)
  {
    json j;
    j["format"] = "gr1rs-machine";
    j["version"] = 1;
    j["inputs"] = m.inputs;
    j["outputs"] = m.outputs;
    j["initial"] = 0;
    json states = json::array();
    for (std::size_t k = 0; k < m.states.size(); ++k)
      {
        const auto& s = m.states[k];
        json o;
        o["id"] = k;
        o["name"] = s.name;
        if (s.game_index)
          {
            o["game_state"] = *s.game_index;
            o["memory"] = s.memory;
            o["qe"] = s.annotation.qe;
            o["qs"] = s.annotation.qs;
            o["x"] = s.annotation.x;
            o["y"] = s.annotation.y;
            o["ok_e"] = s.annotation.ok_e;
            o["ok_s"] = s.annotation.ok_s;
          }
        states.push_back(std::move(o));
      }
    j["states"] = std::move(states);
    json trans = json::array();
    const std::uint32_t ni = m.num_inputs();
    for (std::size_t k = 0; k < m.transitions.size(); ++k)
      {
        const auto& t = m.transitions[k];
        json o;
        o["from"] = k / ni;
        o["input"] = k % ni;
        o["output"] = t.output;
        o["to"] = t.target;
        o["row"] = t.row;
        trans.push_back(std::move(o));
      }
    j["transitions"] = std::move(trans);
    return j;
  }

  mealy_machine machine_from_json(const json& j)
  {
    if (!j.is_object() || j.value("format", "") != "gr1rs-machine")
      throw format_error("expected a 'gr1rs-machine' document");
    try
      {
        mealy_machine m;
        m.inputs = j.at("inputs").get<std::vector<std::string>>();
        m.outputs = j.at("outputs").get<std::vector<std::string>>();
        if (j.value("initial", 0) != 0)
          throw format_error("machine dump: initial state must be state 0");
        const auto& states = j.at("states");
        for (std::size_t k = 0; k < states.size(); ++k)
          {
            const auto& o = states[k];
            if (o.at("id").get<std::size_t>() != k)
              throw format_error("machine dump: state ids must be 0, 1, 2, ... in order");
            mealy_state s;
            s.name = o.value("name", "S" + std::to_string(k));
            if (o.contains("game_state"))
              {
                s.game_index = o.at("game_state").get<state_index>();
                s.memory = o.value("memory", 0);
                s.annotation.qe = o.value("qe", 0);
                s.annotation.qs = o.value("qs", 0);
                s.annotation.x = o.value("x", 0);
                s.annotation.y = o.value("y", 0);
                s.annotation.ok_e = o.value("ok_e", true);
                s.annotation.ok_s = o.value("ok_s", true);
              }
            m.states.push_back(std::move(s));
          }
        const std::uint32_t ni = m.num_inputs();
        std::vector<bool> seen(m.states.size() * ni, false);
        m.transitions.resize(m.states.size() * ni);
        for (const auto& o : j.at("transitions"))
          {
            auto from = o.at("from").get<std::size_t>();
            auto in = o.at("input").get<std::uint32_t>();
            if (from >= m.states.size() || in >= ni)
              throw format_error("machine dump: transition out of range");
            std::size_t slot = from * ni + in;
            if (seen[slot])
              throw format_error("machine dump: duplicate transition from state "
                                 + std::to_string(from) + " on input " + std::to_string(in));
            seen[slot] = true;
            auto& t = m.transitions[slot];
            t.output = o.at("output").get<std::uint32_t>();
            t.target = o.at("to").get<std::uint32_t>();
            t.row = o.value("row", 0);
          }
        for (std::size_t slot = 0; slot < seen.size(); ++slot)
          if (!seen[slot])
            throw format_error("machine dump: state " + std::to_string(slot / ni)
                               + " has no transition for input " + std::to_string(slot % ni));
        m.validate();
        return m;
      }
    catch (const nlohmann::json::exception& e)
      {
        throw format_error(std::string("machine dump: ") + e.what());
      }
    catch (const std::invalid_argument& e)
      {
        throw format_error(std::string("machine dump: ") + e.what());
      }
  }
}
