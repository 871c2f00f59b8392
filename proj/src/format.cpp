#include "groupforge/format.hpp"

#include <string>

#include "groupforge/errors.hpp"

namespace groupforge {

FormatSpec FormatSpec::official()
{
    FormatSpec spec;
    spec.kind = FormatKind::official;
    spec.group_count = 12;
    spec.pot_sizes = {12, 12, 12, 12};
    spec.tiers = {TierLayout{0, {1, 2, 3, 4}, 12}};
    spec.knockout_matches = 16 + 8 + 4 + 2 + 1;
    spec.match_budget = 72 + spec.knockout_matches;
    return spec;
}

FormatSpec FormatSpec::imbalanced()
{
    FormatSpec spec;
    spec.kind = FormatKind::imbalanced;
    spec.group_count = 12;
    spec.pot_sizes = {8, 8, 4, 4, 8, 4, 8, 4};
    spec.tiers = {TierLayout{1, {1, 2, 5, 7}, 8}, TierLayout{2, {3, 4, 6, 8}, 4}};
    spec.knockout_matches = 8 + 8 + 4 + 2 + 1;
    spec.match_budget = 72 + spec.knockout_matches;
    return spec;
}

FormatSpec FormatSpec::of(FormatKind kind)
{
    return kind == FormatKind::official ? official() : imbalanced();
}

int FormatSpec::tier_of_pot(int pot) const
{
    for (auto const& layout : tiers)
    {
        for (int p : layout.pots)
        {
            if (p == pot)
                return layout.tier;
        }
    }
    throw ValidationError("pot " + std::to_string(pot) + " does not exist in format "
                          + std::string(to_string(kind)));
}

std::string_view to_string(FormatKind kind)
{
    return kind == FormatKind::official ? "official" : "imbalanced";
}

FormatKind parse_format(std::string_view text)
{
    if (text == "official")
        return FormatKind::official;
    if (text == "imbalanced")
        return FormatKind::imbalanced;
    throw ValidationError("unknown format '" + std::string(text)
                          + "' (expected official or imbalanced)");
}

}  // namespace groupforge
