#pragma once

#include <boost/dynamic_bitset.hpp>

#include <cstdint>
#include <initializer_list>
#include <vector>

namespace gr1rs
{
  using state_index = std::uint32_t;

  /// \brief Dense set of game states over a fixed universe size.
  ///
  /// Binary operators require both operands to share the universe size.
  class state_set
  {
  public:
    state_set() = default;
    explicit state_set(std::size_t universe) : bits_(universe) {}
    state_set(std::size_t universe, std::initializer_list<state_index> members);

    static state_set empty(std::size_t universe) { return state_set(universe); }
    static state_set full(std::size_t universe);
    static state_set from_indices(std::size_t universe, const std::vector<state_index>& v);

    std::size_t universe() const { return bits_.size(); }
    std::size_t count() const { return bits_.count(); }
    bool is_empty() const { return bits_.none(); }
    bool contains(state_index s) const { return bits_.test(s); }
    void insert(state_index s) { bits_.set(s); }
    void erase(state_index s) { bits_.reset(s); }

    bool is_subset_of(const state_set& o) const { return bits_.is_subset_of(o.bits_); }
    bool intersects(const state_set& o) const { return bits_.intersects(o.bits_); }

    state_set& operator&=(const state_set& o) { bits_ &= o.bits_; return *this; }
    state_set& operator|=(const state_set& o) { bits_ |= o.bits_; return *this; }
    state_set& operator-=(const state_set& o) { bits_ -= o.bits_; return *this; }

    friend state_set operator&(state_set l, const state_set& r) { return l &= r; }
    friend state_set operator|(state_set l, const state_set& r) { return l |= r; }
    friend state_set operator-(state_set l, const state_set& r) { return l -= r; }
    /// Complement relative to the universe.
    friend state_set operator~(state_set s) { s.bits_.flip(); return s; }

    bool operator==(const state_set& o) const { return bits_ == o.bits_; }

    /// Smallest member, or universe() when empty.
    std::size_t first() const;
    std::size_t next(std::size_t after) const;

    std::vector<state_index> to_vector() const;

    template <typename F>
    void for_each(F&& f) const
    {
      for (auto s = bits_.find_first(); s != bits_.npos; s = bits_.find_next(s))
        f(static_cast<state_index>(s));
    }

  private:
    boost::dynamic_bitset<std::uint64_t> bits_;
  };
}
