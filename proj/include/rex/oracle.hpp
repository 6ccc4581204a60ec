#pragma once

#include <optional>
#include <vector>

#include "rex/ast.hpp"
#include "rex/engine.hpp"

namespace rex {

// Brute-force reference semantics of the derivation relation, by
// structural recursion over the node with explicit enumeration of
// split points, loop iterations and lookaround witnesses. Entirely
// independent of derivatives; exponential, so subjects are length
// guarded.
struct OracleConfig {
    std::size_t max_len = 5;  // clamped to 8
};

// Whether a match of r spans x..y. Both locations must be valid, on
// the same subject and view, with x <= y.
bool oracle_matches(Loc x, const Node* r, Loc y);

// Every span (i, j) matched by r in s.
std::vector<MatchSpan> oracle_all_matches(const Subject& s, const Node* r,
                                          OracleConfig cfg = {});

// Leftmost-longest span: minimal start, then maximal end for it.
std::optional<MatchSpan> oracle_posix(const Subject& s, const Node* r, OracleConfig cfg = {});

}  // namespace rex
