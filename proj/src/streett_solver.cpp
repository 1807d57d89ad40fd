#include "gr1rs/streett.hpp"

#include <numeric>
#include <stdexcept>

namespace gr1rs
{
  state_set m_str(const game& g, const state_set& sng, const state_set& rt)
  {
    state_set x = g.all();
    for (;;)
      {
        state_set next = rt | (sng & pr(g, x));
        if (next == x)
          return x;
        x = std::move(next);
      }
  }

  namespace
  {
    std::vector<int> without(const std::vector<int>& pairs, int k)
    {
      std::vector<int> r;
      for (int p : pairs)
        if (p != k)
          r.push_back(p);
      return r;
    }

    // One least fixpoint in Y for pair k with Z fixed.  When rec is set
    // the iterates and nested records are stored there.
    state_set pair_fixpoint(const game& g, const std::vector<int>& pairs, int k,
                            const state_set& sng, const state_set& rt, const state_set& z,
                            str_record::pair_record* rec)
    {
      const streett_pair& pair = g.pairs().at(k);
      const std::vector<int> rest = without(pairs, k);
      const state_set base = sng & pair.b & pr(g, z);
      const state_set p1 = rt | base;
      const state_set inner_sng = sng - pair.a;
      if (rec)
        {
          rec->pair = k;
          rec->base = base;
          rec->iterates.assign(1, g.none());
          rec->subs.clear();
        }
      state_set y = g.none();
      for (;;)
        {
          state_set p2 = p1 | (sng & pr(g, y));
          str_record sub;
          state_set next = rest.empty()
            ? m_str(g, inner_sng, p2)
            : str_solve(g, rest, inner_sng, p2, rec ? &sub : nullptr);
          if (next == y)
            return y;
          y = std::move(next);
          if (rec)
            {
              rec->iterates.push_back(y);
              if (!rest.empty())
                rec->subs.push_back(std::move(sub));
            }
        }
    }
  }

  state_set str_solve(const game& g, const std::vector<int>& pairs, const state_set& sng,
                      const state_set& rt, str_record* rec)
  {
    if (pairs.empty())
      throw std::invalid_argument("str_solve: empty pair list");

    if (rec)
      {
        state_set z = str_solve(g, pairs, sng, rt, nullptr);
        rec->z = z;
        rec->pairs.assign(pairs.size(), {});
        for (std::size_t idx = 0; idx < pairs.size(); ++idx)
          {
            state_set y = pair_fixpoint(g, pairs, pairs[idx], sng, rt, z, &rec->pairs[idx]);
            if (!(y == z))
              throw std::logic_error("str_solve: recording pass left the fixpoint");
          }
        return z;
      }

    state_set z = g.all();
    for (;;)
      {
        state_set start = z;
        for (int k : pairs)
          z = pair_fixpoint(g, pairs, k, sng, rt, z, nullptr);
        if (z == start)
          return z;
      }
  }

  iterate_record main_streett(const game& g)
  {
    iterate_record rec;
    if (g.pairs().empty())
      {
        rec.winning = m_str(g, g.all(), g.none());
        rec.top.z = rec.winning;
        return rec;
      }
    rec.pair_order.resize(g.pairs().size());
    std::iota(rec.pair_order.begin(), rec.pair_order.end(), 0);
    rec.winning = str_solve(g, rec.pair_order, g.all(), g.none(), &rec.top);
    validate_record(g, rec);
    return rec;
  }

  namespace
  {
    void validate_str(const str_record& r, const state_set& enclosing)
    {
      if (!r.z.is_subset_of(enclosing))
        throw std::logic_error("iterate record: Z escapes its enclosing iterate");
      for (const auto& p : r.pairs)
        {
          if (p.iterates.empty() || !p.iterates.front().is_empty())
            throw std::logic_error("iterate record: first iterate must be empty");
          for (std::size_t j = 1; j < p.iterates.size(); ++j)
            if (!p.iterates[j - 1].is_subset_of(p.iterates[j]))
              throw std::logic_error("iterate record: iterates are not increasing");
          if (!(p.iterates.back() == r.z))
            throw std::logic_error("iterate record: last iterate differs from Z");
          if (!p.base.is_subset_of(r.z))
            throw std::logic_error("iterate record: base escapes Z");
          if (!p.subs.empty())
            {
              if (p.subs.size() + 1 != p.iterates.size())
                throw std::logic_error("iterate record: nested record count mismatch");
              for (std::size_t j = 1; j < p.iterates.size(); ++j)
                {
                  if (!(p.subs[j - 1].z == p.iterates[j]))
                    throw std::logic_error("iterate record: nested Z differs from iterate");
                  validate_str(p.subs[j - 1], p.iterates[j]);
                }
            }
        }
    }
  }

  void validate_record(const game& g, const iterate_record& rec)
  {
    if (rec.winning.universe() != g.size())
      throw std::logic_error("iterate record: universe mismatch");
    if (!(rec.top.z == rec.winning))
      throw std::logic_error("iterate record: top-level Z differs from W");
    validate_str(rec.top, rec.winning);
  }
}
