#pragma once

#include "gr1rs/io.hpp"

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace gr1rs
{
  class simulation_error : public std::runtime_error
  {
  public:
    using std::runtime_error::runtime_error;
  };

  struct env_directive
  {
    enum class kind { input, legal, violate };
    kind what = kind::legal;
    /// Input valuation for kind::input.
    std::uint32_t input = 0;
  };

  /// Per-step directives; steps past the end of the list are `legal`.
  struct env_script
  {
    std::vector<env_directive> steps;

    const env_directive& at(std::size_t t) const;
  };

  /// One directive per line: `in a=1 b=0`, `legal` or `violate`, each
  /// optionally followed by a repeat count.  `#` starts a comment.  An
  /// `in` line must assign every input.
  env_script parse_env_script(std::string_view text, const std::vector<std::string>& inputs);

  struct trace_step
  {
    std::uint32_t input = 0;
    std::uint32_t output = 0;
    /// Machine and game state after the step.
    std::uint32_t machine_state = 0;
    state_index game_state = 0;
    bool ok_e = true;
    bool ok_s = true;
    int x = 0;
    int y = 0;
  };

  struct trace
  {
    std::vector<trace_step> steps;
  };

  /// Runs the closed loop for \a steps steps.  The game tracks the
  /// automata: ok_e / ok_s of a step are false exactly when the joint
  /// letter of that step violates the env / sys automaton.
  trace simulate(const game& g, const mealy_machine& m, const env_script& script,
                 std::size_t steps, std::uint64_t seed);

  struct injection_report
  {
    std::size_t step = 0;
    /// Steps with ok_s = false from the injection up to the next one.
    std::size_t sys_errors = 0;
  };

  struct recovery_report
  {
    std::size_t steps = 0;
    std::size_t env_errors = 0;
    std::size_t sys_errors = 0;
    std::size_t worst_recovery = 0;
    /// sys_errors / max(1, env_errors).
    double ratio = 0.0;
    /// ok_s = false steps before the first injection.
    std::size_t unprovoked_sys_errors = 0;
    std::vector<injection_report> per_injection;
  };

  recovery_report recovery_metric(const trace& t);

  json trace_to_json(const trace& t, const mealy_machine& m);
  json report_to_json(const recovery_report& r);
  std::string report_table(const recovery_report& r);
}
