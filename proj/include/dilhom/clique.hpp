#pragma once

#include <vector>

namespace dilhom {

/// Exact maximum clique by branch and bound with greedy colouring bounds.
/// Returns the lexicographically least maximum clique (ascending vertex
/// indices). Intended for the small graphs (<= 500 vertices) that arise
/// from equidistance relations.
std::vector<int> max_clique(const std::vector<std::vector<char>>& adj);

} // namespace dilhom
