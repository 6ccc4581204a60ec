#pragma once

#include "rex/ast.hpp"
#include "rex/chars.hpp"
#include "rex/text.hpp"

namespace rex {

// How a state's single-step derivative behaves on characters outside
// its startset: it either reproduces the state itself (star-headed
// states), collapses to the failure regex (predicate-headed states),
// or cannot be classified.
enum class Stability : std::uint8_t { SelfStable, BotStable, Unstable };

struct StabilityInfo {
    Stability kind;
    CharPredicate startset;
};

StabilityInfo classify_stability(CharAlgebra& alg, const Node* n);

// Syntactic skippability: the state starts with an infinite-upper-bound
// loop, or is an alternation/intersection/complement/lookahead of such
// states. Lookback-headed states are never skippable.
bool is_skippable(const Node* n);

// Overestimate of the characters that can change the state. When the
// state is skippable, every character outside the startset leaves the
// derivative identical to the state.
CharPredicate startset(CharAlgebra& alg, const Node* n);

struct SkipInfo {
    bool skippable;
    CharPredicate startset;
};

SkipInfo skip_info(CharAlgebra& alg, const Node* n);

// Smallest q >= pos whose character satisfies p, or the subject length.
// Uses a bulk byte scan for small literal sets on ASCII subjects and
// per-character classification otherwise.
std::size_t skip_to(const Subject& s, std::size_t pos, CharPredicate p);

}  // namespace rex
