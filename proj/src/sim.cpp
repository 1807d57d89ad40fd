#include "gr1rs/sim.hpp"

#include <algorithm>
#include <charconv>
#include <iomanip>
#include <random>
#include <sstream>

namespace gr1rs
{
  const env_directive& env_script::at(std::size_t t) const
  {
    static const env_directive legal{};
    return t < steps.size() ? steps[t] : legal;
  }

  namespace
  {
    std::vector<std::string> split(std::string_view line)
    {
      std::vector<std::string> out;
      std::istringstream is{std::string(line)};
      std::string w;
      while (is >> w)
        out.push_back(w);
      return out;
    }

    std::optional<std::size_t> parse_count(const std::string& w)
    {
      std::size_t v = 0;
      auto [p, ec] = std::from_chars(w.data(), w.data() + w.size(), v);
      if (ec != std::errc() || p != w.data() + w.size())
        return std::nullopt;
      return v;
    }
  }

  env_script parse_env_script(std::string_view text, const std::vector<std::string>& inputs)
  {
    env_script script;
    std::size_t lineno = 0;
    std::size_t pos = 0;
    while (pos <= text.size())
      {
        std::size_t nl = text.find('\n', pos);
        std::string_view line = text.substr(pos, nl == std::string_view::npos ? text.npos : nl - pos);
        pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string_view::npos)
          line = line.substr(0, hash);
        auto words = split(line);
        if (words.empty())
          continue;
        auto fail = [&](const std::string& msg) {
          throw simulation_error("script line " + std::to_string(lineno) + ": " + msg);
        };

        std::size_t repeat = 1;
        if (words.size() > 1)
          if (auto c = parse_count(words.back()))
            {
              if (*c == 0)
                fail("repeat count must be positive");
              repeat = *c;
              words.pop_back();
            }

        env_directive d;
        if (words[0] == "legal" || words[0] == "violate")
          {
            if (words.size() != 1)
              fail("unexpected tokens after '" + words[0] + "'");
            d.what = words[0] == "legal" ? env_directive::kind::legal
                                         : env_directive::kind::violate;
          }
        else if (words[0] == "in")
          {
            d.what = env_directive::kind::input;
            std::vector<bool> set(inputs.size(), false);
            for (std::size_t k = 1; k < words.size(); ++k)
              {
                auto eq = words[k].find('=');
                if (eq == std::string::npos)
                  fail("expected name=value, got '" + words[k] + "'");
                std::string name = words[k].substr(0, eq);
                std::string val = words[k].substr(eq + 1);
                auto it = std::find(inputs.begin(), inputs.end(), name);
                if (it == inputs.end())
                  fail("unknown input '" + name + "'");
                if (val != "0" && val != "1")
                  fail("value of '" + name + "' must be 0 or 1");
                auto idx = static_cast<std::size_t>(it - inputs.begin());
                if (set[idx])
                  fail("input '" + name + "' assigned twice");
                set[idx] = true;
                if (val == "1")
                  d.input |= std::uint32_t{1} << idx;
              }
            for (std::size_t k = 0; k < inputs.size(); ++k)
              if (!set[k])
                fail("input '" + inputs[k] + "' not assigned");
          }
        else
          fail("unknown directive '" + words[0] + "'");
        script.steps.insert(script.steps.end(), repeat, d);
      }
    return script;
  }

  trace simulate(const game& g, const mealy_machine& m, const env_script& script,
                 std::size_t steps, std::uint64_t seed)
  {
    if (steps == 0)
      throw simulation_error("simulate: number of steps must be at least 1");
    m.validate();
    if (m.inputs != g.input_names() || m.outputs != g.output_names())
      throw simulation_error("simulate: machine and game signals differ");

    std::mt19937_64 rng(seed);
    const std::uint32_t ni = g.num_inputs();
    std::uint32_t ms = 0;
    state_index gs = m.states[0].game_index.value_or(g.initial());
    if (gs >= g.size())
      throw simulation_error("simulate: machine refers to a state absent from the game");

    // First game choice matching the machine's move.
    auto resolve = [&](std::uint32_t cur_ms, state_index cur_gs,
                       std::uint32_t i) -> const sys_choice* {
      const auto& t = m.step(cur_ms, i);
      const auto& target = m.states[t.target];
      for (const auto& c : g.choices(cur_gs, i))
        if (c.output == t.output && (!target.game_index || *target.game_index == c.successor))
          return &c;
      return nullptr;
    };

    trace tr;
    tr.steps.reserve(steps);
    std::vector<std::uint32_t> pool;
    for (std::size_t t = 0; t < steps; ++t)
      {
        const env_directive& d = script.at(t);
        std::uint32_t input = d.input;
        if (d.what != env_directive::kind::input)
          {
            bool want_violation = d.what == env_directive::kind::violate;
            pool.clear();
            for (std::uint32_t i = 0; i < ni; ++i)
              {
                const sys_choice* c = resolve(ms, gs, i);
                if (c && c->env_violated == want_violation)
                  pool.push_back(i);
              }
            if (pool.empty())
              throw simulation_error(
                want_violation
                  ? "simulate: step " + std::to_string(t)
                      + ": scripted violation impossible, every input is legal here"
                  : "simulate: step " + std::to_string(t) + ": no legal input exists");
            input = pool[rng() % pool.size()];
          }
        else if (input >= ni)
          throw simulation_error("simulate: input out of range");

        const sys_choice* c = resolve(ms, gs, input);
        if (!c)
          throw simulation_error("simulate: step " + std::to_string(t)
                                 + ": machine move is not a move of the game");
        trace_step st;
        st.input = input;
        st.output = c->output;
        st.ok_e = !c->env_violated;
        st.ok_s = !c->sys_violated;
        ms = m.step(ms, input).target;
        gs = c->successor;
        st.machine_state = ms;
        st.game_state = gs;
        st.x = g.state(gs).x;
        st.y = g.state(gs).y;
        tr.steps.push_back(st);
      }
    return tr;
  }

  recovery_report recovery_metric(const trace& t)
  {
    recovery_report r;
    r.steps = t.steps.size();
    for (std::size_t k = 0; k < t.steps.size(); ++k)
      {
        const auto& s = t.steps[k];
        if (!s.ok_e)
          {
            ++r.env_errors;
            r.per_injection.push_back({k, 0});
          }
        if (!s.ok_s)
          {
            ++r.sys_errors;
            if (r.per_injection.empty())
              ++r.unprovoked_sys_errors;
            else
              ++r.per_injection.back().sys_errors;
          }
      }
    for (const auto& p : r.per_injection)
      r.worst_recovery = std::max(r.worst_recovery, p.sys_errors);
    r.ratio = static_cast<double>(r.sys_errors)
      / static_cast<double>(std::max<std::size_t>(1, r.env_errors));
    return r;
  }

  json trace_to_json(const trace& t, const mealy_machine& m)
  {
    json steps = json::array();
    for (std::size_t k = 0; k < t.steps.size(); ++k)
      {
        const auto& s = t.steps[k];
        json o;
        o["step"] = k;
        json in, out;
        for (std::size_t b = 0; b < m.inputs.size(); ++b)
          in[m.inputs[b]] = (s.input >> b) & 1;
        for (std::size_t b = 0; b < m.outputs.size(); ++b)
          out[m.outputs[b]] = (s.output >> b) & 1;
        o["inputs"] = std::move(in);
        o["outputs"] = std::move(out);
        o["machine_state"] = s.machine_state;
        o["game_state"] = s.game_state;
        o["ok_e"] = s.ok_e;
        o["ok_s"] = s.ok_s;
        o["x"] = s.x;
        o["y"] = s.y;
        steps.push_back(std::move(o));
      }
    return steps;
  }

  json report_to_json(const recovery_report& r)
  {
    json j;
    j["steps"] = r.steps;
    j["env_errors"] = r.env_errors;
    j["sys_errors"] = r.sys_errors;
    j["worst_recovery"] = r.worst_recovery;
    j["ratio"] = r.ratio;
    j["unprovoked_sys_errors"] = r.unprovoked_sys_errors;
    json per = json::array();
    for (const auto& p : r.per_injection)
      per.push_back({{"step", p.step}, {"sys_errors", p.sys_errors}});
    j["per_injection"] = std::move(per);
    return j;
  }

  std::string report_table(const recovery_report& r)
  {
    std::ostringstream os;
    os << "steps            " << r.steps << "\n";
    os << "env errors       " << r.env_errors << "\n";
    os << "sys errors       " << r.sys_errors << "\n";
    os << "worst recovery   " << r.worst_recovery << "\n";
    os << "ratio            " << std::fixed << std::setprecision(3) << r.ratio << "\n";
    if (!r.per_injection.empty())
      {
        os << "\ninjection step   sys errors\n";
        for (const auto& p : r.per_injection)
          os << std::left << std::setw(17) << p.step << p.sys_errors << "\n";
      }
    return os.str();
  }
}
