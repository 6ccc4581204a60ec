#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rex/ast.hpp"
#include "rex/engine.hpp"
#include "rex/parse.hpp"

namespace rex::testutil {

// Deterministic xorshift generator so failures reproduce.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : state_(seed ? seed : 0x9E3779B97F4A7C15ull) {}
    std::uint64_t next() {
        state_ ^= state_ << 13;
        state_ ^= state_ >> 7;
        state_ ^= state_ << 17;
        return state_;
    }
    std::uint32_t below(std::uint32_t n) { return static_cast<std::uint32_t>(next() % n); }
    bool chance(std::uint32_t num, std::uint32_t den) { return below(den) < num; }

  private:
    std::uint64_t state_;
};

inline Subject make_subject(std::u16string chars) { return Subject::from_chars(std::move(chars)); }

inline std::u16string random_string(Rng& rng, std::u16string_view alphabet, std::size_t max_len) {
    std::u16string s;
    std::size_t len = rng.below(static_cast<std::uint32_t>(max_len + 1));
    for (std::size_t i = 0; i < len; ++i) s.push_back(alphabet[rng.below(alphabet.size())]);
    return s;
}

inline std::vector<std::u16string> all_strings(std::u16string_view alphabet, std::size_t max_len) {
    std::vector<std::u16string> out{u""};
    std::size_t begin = 0;
    for (std::size_t len = 1; len <= max_len; ++len) {
        std::size_t end = out.size();
        for (std::size_t i = begin; i < end; ++i) {
            for (char16_t c : alphabet) {
                std::u16string next = out[i];
                next.push_back(c);
                out.push_back(std::move(next));
            }
        }
        begin = end;
    }
    return out;
}

// Random canonical regex over the predicate alphabet {a, b, \n, top},
// with every connective of the grammar represented.
inline const Node* random_node(Builder& b, Rng& rng, unsigned depth) {
    CharAlgebra& alg = b.algebra();
    if (depth == 0 || rng.chance(1, 4)) {
        switch (rng.below(6)) {
            case 0: return b.literal(u'a');
            case 1: return b.literal(u'b');
            case 2: return b.literal(u'\n');
            case 3: return b.top();
            case 4: return b.epsilon();
            default: return b.pred(alg.or_(alg.singleton(u'a'), alg.singleton(u'b')));
        }
    }
    switch (rng.below(8)) {
        case 0: return b.alternation({random_node(b, rng, depth - 1), random_node(b, rng, depth - 1)});
        case 1: return b.intersection({random_node(b, rng, depth - 1), random_node(b, rng, depth - 1)});
        case 2: return b.concat(random_node(b, rng, depth - 1), random_node(b, rng, depth - 1));
        case 3: {
            std::uint32_t lo = rng.below(3);
            std::uint32_t hi = rng.chance(1, 3) ? kInf : lo + rng.below(3);
            if (hi != kInf && (lo > hi || hi == 0)) hi = lo == 0 ? kInf : lo;
            return b.loop(random_node(b, rng, depth - 1), lo, hi);
        }
        case 4: return b.complement(random_node(b, rng, depth - 1));
        case 5:
            return b.look(LookDir::Ahead, rng.chance(1, 2) ? LookPol::Positive : LookPol::Negative,
                          random_node(b, rng, depth - 1));
        case 6:
            return b.look(LookDir::Behind, rng.chance(1, 2) ? LookPol::Positive : LookPol::Negative,
                          random_node(b, rng, depth - 1));
        default: return b.concat(random_node(b, rng, depth - 1), random_node(b, rng, depth - 1));
    }
}

// Engine-side span enumeration: every (start, end) with end reachable
// from start, to compare against the oracle's match set.
inline std::vector<MatchSpan> engine_spans(const Matcher& m, const Subject& s, const Node* r) {
    std::vector<MatchSpan> out;
    for (std::int32_t i = 0; i <= static_cast<std::int32_t>(s.size()); ++i) {
        for (std::int32_t e : m.all_match_ends(Loc(s, i), r)) {
            out.push_back({static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(e)});
        }
    }
    return out;
}

// The documented position semantics of each anchor, evaluated directly
// on the subject. Out-of-range neighbours count as non-word.
inline bool anchor_meaning(CharAlgebra& alg, Anchor a, const Subject& s, std::int32_t i) {
    const auto n = static_cast<std::int32_t>(s.size());
    CharPredicate w = alg.word();
    auto word_at = [&](std::int32_t k) {
        return k >= 0 && k < n && w.contains(s.chars[static_cast<std::size_t>(k)]);
    };
    switch (a) {
        case Anchor::InputStart: return i == 0;
        case Anchor::InputEnd: return i == n;
        case Anchor::LineStart: return i == 0 || s.chars[static_cast<std::size_t>(i - 1)] == u'\n';
        case Anchor::LineEnd: return i == n || s.chars[static_cast<std::size_t>(i)] == u'\n';
        case Anchor::InputEndLine:
            return i == n || (i == n - 1 && s.chars[static_cast<std::size_t>(i)] == u'\n');
        case Anchor::WordBorder: return word_at(i - 1) != word_at(i);
        case Anchor::NonWordBorder: return word_at(i - 1) == word_at(i);
    }
    return false;
}

}  // namespace rex::testutil
