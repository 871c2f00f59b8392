#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace groupforge {

enum class FormatKind
{
    official,
    imbalanced,
};

//! A set of groups drawn from the same pots (imbalanced: Tier 1 and Tier 2).
struct TierLayout
{
    int tier = 0;              //!< 0 for the untiered official format, else 1 or 2
    std::vector<int> pots;     //!< 1-based pot numbers feeding positions 1..4
    int group_count = 0;
};

/*!
 * Structure of one of the two tournament designs.
 *
 * Groups are numbered 0..11 in tier order: official groups A-L; imbalanced
 * Tier 1 groups first (0..7), then Tier 2 (8..11).
 */
struct FormatSpec
{
    FormatKind kind = FormatKind::official;
    int group_count = 12;
    std::vector<int> pot_sizes;    //!< index 0 is Pot 1
    std::vector<TierLayout> tiers;
    int knockout_matches = 0;
    int match_budget = 0;

    static FormatSpec official();
    static FormatSpec imbalanced();
    static FormatSpec of(FormatKind kind);

    int pot_count() const { return static_cast<int>(pot_sizes.size()); }
    int last_pot() const { return this->pot_count(); }
    //! Tier (0, 1 or 2) whose groups draw from the given pot.
    int tier_of_pot(int pot) const;
};

std::string_view to_string(FormatKind kind);
//! Throws ValidationError on anything but "official"/"imbalanced".
FormatKind parse_format(std::string_view text);

}  // namespace groupforge
