#pragma once

#include <cstddef>
#include <set>

namespace chartdist {

using Letter = char;
using VarIndex = unsigned;  // v1, v2, ...; 0 is never a valid variable
using StateId = std::size_t;
using Alphabet = std::set<Letter>;

}  // namespace chartdist
