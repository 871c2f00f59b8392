#pragma once

#include <algorithm>
#include <array>
#include <functional>
#include <map>
#include <tuple>
#include <vector>

#include "groupforge/group_stage.hpp"

namespace groupforge::testing {

// Reference ordering written directly from the tie-breaking rules: classes of
// equal head-to-head record are ordered recursively until no split occurs.
class OracleRanking
{
  public:
    OracleRanking(groupforge::GroupScores const& s, std::array<double, 4> const& elo) : s_(s), elo_(elo) {}

    std::vector<int> order()
    {
        std::map<int, std::vector<int>, std::greater<>> by_points;
        for (int t = 0; t < 4; ++t)
            by_points[this->totals(t, {0, 1, 2, 3})[0]].push_back(t);
        std::vector<int> out;
        for (auto& [points, members] : by_points)
        {
            this->order_tied(members);
            out.insert(out.end(), members.begin(), members.end());
        }
        return out;
    }

  private:
    // points, goal difference, goals scored against the members of `among`
    std::array<int, 3> totals(int t, std::vector<int> const& among) const
    {
        std::array<int, 3> r{};
        for (int o : among)
        {
            if (o == t || !s_.played[t][o])
                continue;
            int const f = s_.goals[t][o];
            int const a = s_.goals[o][t];
            r[0] += f > a ? 3 : f == a ? 1 : 0;
            r[1] += f - a;
            r[2] += f;
        }
        return r;
    }

    void order_tied(std::vector<int>& members)
    {
        if (members.size() < 2)
            return;
        std::map<std::array<int, 3>, std::vector<int>, std::greater<>> classes;
        for (int t : members)
            classes[this->totals(t, members)].push_back(t);
        if (classes.size() == 1)
        {
            std::sort(members.begin(), members.end(), [&](int a, int b) {
                auto const ta = this->totals(a, {0, 1, 2, 3});
                auto const tb = this->totals(b, {0, 1, 2, 3});
                return std::make_tuple(tb[1], tb[2], elo_[b], a) < std::make_tuple(ta[1], ta[2], elo_[a], b);
            });
            return;
        }
        members.clear();
        for (auto& [key, cls] : classes)
        {
            this->order_tied(cls);
            members.insert(members.end(), cls.begin(), cls.end());
        }
    }

    groupforge::GroupScores const& s_;
    std::array<double, 4> const& elo_;
};

}  // namespace groupforge::testing
