#include "gr1rs/state_set.hpp"

namespace gr1rs
{
  state_set::state_set(std::size_t universe, std::initializer_list<state_index> members)
    : bits_(universe)
  {
    for (auto s : members)
      bits_.set(s);
  }

  state_set state_set::full(std::size_t universe)
  {
    state_set s(universe);
    s.bits_.set();
    return s;
  }

  state_set state_set::from_indices(std::size_t universe, const std::vector<state_index>& v)
  {
    state_set s(universe);
    for (auto i : v)
      s.bits_.set(i);
    return s;
  }

  std::size_t state_set::first() const
  {
    auto f = bits_.find_first();
    return f == bits_.npos ? universe() : f;
  }

  std::size_t state_set::next(std::size_t after) const
  {
    auto f = bits_.find_next(after);
    return f == bits_.npos ? universe() : f;
  }

  std::vector<state_index> state_set::to_vector() const
  {
    std::vector<state_index> v;
    v.reserve(count());
    for_each([&](state_index s) { v.push_back(s); });
    return v;
  }
}
