#pragma once

#include "gr1rs/strategy.hpp"

#include <json.hpp>

#include <stdexcept>
#include <string>

namespace gr1rs
{
  using json = nlohmann::ordered_json;

  /// Malformed or inconsistent dump document.
  class format_error : public std::runtime_error
  {
  public:
    using std::runtime_error::runtime_error;
  };

  /// Game dump.  Moves are listed per state and input as
  /// [output, env_recover, sys_recover, successor, flags] where flags
  /// bit 0 = env violated, bit 1 = sys violated.
  json game_to_json(const game& g);
  game game_from_json(const json& j);

  json machine_to_json(const mealy_machine& m);
  mealy_machine machine_from_json(const json& j);

  json record_to_json(const iterate_record& rec);

  json state_set_to_json(const state_set& s);
  state_set state_set_from_json(const json& j, std::size_t universe);

  /// Two-space indented text with a trailing newline.
  std::string to_text(const json& j);
  json read_json_file(const std::string& path);
  void write_text_file(const std::string& path, const std::string& text);
}
