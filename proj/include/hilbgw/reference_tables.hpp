#pragma once

// Published enumerative tables for Hilb^2(P^2), copied cell by cell.
// Columns are d = 2..7, rows g = 0..5; "*" marks cells left blank in print.

#include <array>
#include <string_view>

namespace hilbgw {

struct PublishedTable {
  std::string_view title;
  int pairs;        // l, the number of conjugate point pairs
  bool counts;      // true: E^l(d,g); false: I_(d-g-1,d)(T8^l T4^{3(d-l)+1})
  std::array<std::array<std::string_view, 6>, 6> cells;  // [g][d-2]

  std::string_view cell(int d, int g) const {
    return cells[static_cast<std::size_t>(g)][static_cast<std::size_t>(d - 2)];
  }
};

inline constexpr std::array<PublishedTable, 6> kPublishedTables{{
    {"I(T4^{3d+1})", 0, false,
     {{{"0", "0", "405", "560385", "1096808499", "3292618732704"},
       {"*", "0", "162", "224910", "460743174", "1470159619803"},
       {"*", "*", "27", "37935", "89898984", "338090337018"},
       {"*", "*", "*", "135", "3933549", "29267016849"},
       {"*", "*", "*", "*", "405", "539160678"},
       {"*", "*", "*", "*", "*", "945"}}}},
    {"E(d,g)", 0, true,
     {{{"0", "0", "0", "0", "0", "0"},
       {"*", "0", "0", "0", "0", "0"},
       {"*", "*", "27", "36855", "58444767", "122824720116"},
       {"*", "*", "*", "135", "3929499", "23875461099"},
       {"*", "*", "*", "*", "405", "539149338"},
       {"*", "*", "*", "*", "*", "945"}}}},
    {"I(T4^{3d-2}*T8)", 1, false,
     {{{"0", "4", "975", "500070", "510209009", "936943088028"},
       {"*", "1", "255", "147780", "172751014", "358483479813"},
       {"*", "*", "5", "10138", "21081609", "61683241918"},
       {"*", "*", "*", "12", "558749", "3685184208"},
       {"*", "*", "*", "*", "22", "32184102"},
       {"*", "*", "*", "*", "*", "35"}}}},
    {"E^1(d,g)", 1, true,
     {{{"0", "0", "0", "0", "0", "0"},
       {"*", "1", "225", "87192", "57435240", "60478511040"},
       {"*", "*", "5", "10042", "16612387", "33328207904"},
       {"*", "*", "*", "12", "558529", "3363345078"},
       {"*", "*", "*", "*", "22", "32183682"},
       {"*", "*", "*", "*", "*", "35"}}}},
    {"I(T4^{3d-5}*T8^2)", 2, false,
     {{{"1", "16", "1279", "317408", "187613888", "222541278466"},
       {"*", "1", "167", "63228", "49635964", "72095337199"},
       {"*", "*", "1", "2536", "4254399", "9650092804"},
       {"*", "*", "*", "1", "65417", "402592233"},
       {"*", "*", "*", "*", "1", "1900762"},
       {"*", "*", "*", "*", "*", "1"}}}},
    {"E^2(d,g)", 2, true,
     {{{"1", "12", "620", "87304", "26312976", "14616808192"},
       {"*", "1", "161", "48032", "25417860", "22151587040"},
       {"*", "*", "1", "2528", "3731098", "6495881498"},
       {"*", "*", "*", "1", "65407", "383584667"},
       {"*", "*", "*", "*", "1", "1900750"},
       {"*", "*", "*", "*", "*", "1"}}}},
}};

}  // namespace hilbgw
