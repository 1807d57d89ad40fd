#include "gr1rs/spec.hpp"

#include <bit>
#include <map>
#include <set>

namespace gr1rs
{
  namespace
  {
    std::string position_prefix(int line, int column)
    {
      if (line <= 0)
        return {};
      std::string p = "line " + std::to_string(line);
      if (column > 0)
        p += ", column " + std::to_string(column);
      return p + ": ";
    }

    // Enumerates every assignment to the bits of mask, in increasing order
    // of the packed value.
    template <typename F>
    bool for_each_assignment(letter mask, F&& f)
    {
      letter sub = 0;
      for (;;)
        {
          if (f(sub))
            return true;
          if (sub == mask)
            return false;
          sub = (sub - mask) & mask;
        }
    }
  }

  spec_error::spec_error(const std::string& what, int line, int column)
    : std::runtime_error(position_prefix(line, column) + what),
      line_(line), column_(column)
  {
  }

  bool eval_expr(const bool_expr& e, const valuation& v)
  {
    if (e.has_next())
      throw spec_error("eval_expr: expression contains a next-step reference");
    if (!v.covers(e.current_support()))
      {
        letter missing = e.current_support() & ~v.domain();
        throw spec_error("eval_expr: unbound signal #"
                         + std::to_string(std::countr_zero(missing)));
      }
    return e.eval(v.bits());
  }

  safety_automaton::safety_automaton(std::string name, std::vector<std::string> states,
                                     int initial,
                                     std::vector<automaton_transition> transitions)
    : name_(std::move(name)), states_(std::move(states)), initial_(initial),
      transitions_(std::move(transitions)), outgoing_(states_.size())
  {
    if (states_.empty())
      throw spec_error("automaton '" + name_ + "' has no states");
    if (initial_ < 0 || initial_ >= num_states())
      throw spec_error("automaton '" + name_ + "': initial state out of range");
    std::set<std::string> seen;
    for (const auto& s : states_)
      if (!seen.insert(s).second)
        throw spec_error("automaton '" + name_ + "': duplicate state name '" + s + "'");
    for (std::size_t t = 0; t < transitions_.size(); ++t)
      {
        const auto& tr = transitions_[t];
        if (tr.source < 0 || tr.source >= num_states()
            || tr.target < 0 || tr.target >= num_states())
          throw spec_error("automaton '" + name_ + "': transition references unknown state");
        if (tr.guard.has_next())
          throw spec_error("automaton '" + name_ + "': guard contains a next-step reference");
        outgoing_[tr.source].push_back(static_cast<int>(t));
      }
  }

  std::optional<int> safety_automaton::successor(int state, letter l) const
  {
    for (int t : outgoing_.at(state))
      if (transitions_[t].guard.eval(l))
        return transitions_[t].target;
    return std::nullopt;
  }

  std::optional<nondeterminism_witness> safety_automaton::find_nondeterminism() const
  {
    for (int s = 0; s < num_states(); ++s)
      {
        const auto& out = outgoing_[s];
        for (std::size_t i = 0; i < out.size(); ++i)
          for (std::size_t j = i + 1; j < out.size(); ++j)
            {
              const auto& g1 = transitions_[out[i]].guard;
              const auto& g2 = transitions_[out[j]].guard;
              letter mask = g1.current_support() | g2.current_support();
              std::optional<letter> hit;
              for_each_assignment(mask, [&](letter l) {
                if (g1.eval(l) && g2.eval(l))
                  {
                    hit = l;
                    return true;
                  }
                return false;
              });
              if (hit)
                return nondeterminism_witness{s, *hit, out[i], out[j]};
            }
      }
    return std::nullopt;
  }

  letter safety_automaton::support() const
  {
    letter m = 0;
    for (const auto& t : transitions_)
      m |= t.guard.current_support();
    return m;
  }

  int gr1_spec::num_inputs() const
  {
    int n = 0;
    for (const auto& s : signals)
      n += s.kind == signal_kind::input;
    return n;
  }

  int gr1_spec::num_outputs() const
  {
    return static_cast<int>(signals.size()) - num_inputs();
  }

  std::vector<std::string> gr1_spec::names() const
  {
    std::vector<std::string> r;
    for (const auto& s : signals)
      r.push_back(s.name);
    return r;
  }

  std::vector<std::string> gr1_spec::input_names() const
  {
    std::vector<std::string> r;
    for (const auto& s : signals)
      if (s.kind == signal_kind::input)
        r.push_back(s.name);
    return r;
  }

  std::vector<std::string> gr1_spec::output_names() const
  {
    std::vector<std::string> r;
    for (const auto& s : signals)
      if (s.kind == signal_kind::output)
        r.push_back(s.name);
    return r;
  }

  std::optional<int> gr1_spec::find_signal(std::string_view name) const
  {
    for (std::size_t k = 0; k < signals.size(); ++k)
      if (signals[k].name == name)
        return static_cast<int>(k);
    return std::nullopt;
  }

  void gr1_spec::validate() const
  {
    if (num_inputs() == 0)
      throw spec_error("specification declares no input signal");
    if (num_outputs() == 0)
      throw spec_error("specification declares no output signal");
    if (signals.size() > 32)
      throw spec_error("at most 32 signals are supported");
    std::set<std::string> seen;
    bool outputs_started = false;
    for (const auto& s : signals)
      {
        if (!seen.insert(s.name).second)
          throw spec_error("duplicate signal name '" + s.name + "'");
        if (s.kind == signal_kind::output)
          outputs_started = true;
        else if (outputs_started)
          throw spec_error("inputs must precede outputs in the signal list");
      }
    letter all = all_mask();
    auto check_automata = [&](const std::vector<safety_automaton>& list) {
      for (const auto& a : list)
        {
          if ((a.support() & ~all) != 0)
            throw spec_error("automaton '" + a.name() + "' reads an undeclared signal");
          if (auto w = a.find_nondeterminism())
            throw spec_error("automaton '" + a.name() + "' is nondeterministic: state '"
                             + a.states()[w->state] + "' enables transitions "
                             + std::to_string(w->first) + " and "
                             + std::to_string(w->second) + " under valuation "
                             + std::to_string(w->valuation));
        }
    };
    check_automata(env_safety);
    check_automata(sys_safety);
    auto check_fair = [&](const std::vector<bool_expr>& list) {
      for (const auto& f : list)
        {
          if (f.has_next())
            throw spec_error("fairness formula contains a next-step reference");
          if ((f.current_support() & ~all) != 0)
            throw spec_error("fairness formula reads an undeclared signal");
        }
    };
    check_fair(env_fair);
    check_fair(sys_fair);
  }

  safety_automaton invariant_to_automaton(const bool_expr& phi,
                                          const std::vector<signal>& signals,
                                          std::string name)
  {
    std::vector<std::string> names;
    for (const auto& s : signals)
      names.push_back(s.name);
    letter all = signals.size() >= 64 ? ~letter{0} : (letter{1} << signals.size()) - 1;
    if (((phi.current_support() | phi.next_support()) & ~all) != 0)
      throw spec_error("invariant reads an undeclared signal");

    if (!phi.has_next())
      return safety_automaton(std::move(name), {"q0"}, 0, {{0, phi, 0}});

    letter cur = phi.current_support();
    letter nxt = phi.next_support();

    // Valuations of the current-step support, in packed order.
    std::vector<letter> vals;
    for_each_assignment(cur, [&](letter v) {
      vals.push_back(v);
      return false;
    });

    auto admits_continuation = [&](letter v) {
      return for_each_assignment(nxt, [&](letter w) { return phi.eval(v, w); });
    };

    std::vector<std::string> states{"init"};
    for (letter v : vals)
      {
        std::string s = "v";
        for (std::size_t k = 0; k < signals.size(); ++k)
          if ((cur >> k) & 1)
            s += "_" + names[k] + (((v >> k) & 1) ? "1" : "0");
        states.push_back(s);
      }

    std::vector<automaton_transition> trans;
    for (std::size_t j = 0; j < vals.size(); ++j)
      if (admits_continuation(vals[j]))
        trans.push_back({0, cube(cur, vals[j]), static_cast<int>(j + 1)});
    for (std::size_t i = 0; i < vals.size(); ++i)
      {
        bool_expr step = phi.shift_bound(vals[i]);
        for (std::size_t j = 0; j < vals.size(); ++j)
          {
            if (!admits_continuation(vals[j]))
              continue;
            // step reads signals of the new letter; fix the ones that
            // also select the target state.
            bool_expr g = cube(cur, vals[j]) & step;
            bool possible = for_each_assignment(g.current_support(),
                                                [&](letter l) { return g.eval(l); });
            if (possible)
              trans.push_back({static_cast<int>(i + 1), g, static_cast<int>(j + 1)});
          }
      }
    return safety_automaton(std::move(name), std::move(states), 0, std::move(trans));
  }
}
