#include "rex/oracle.hpp"

#include <cassert>
#include <stdexcept>
#include <unordered_map>

namespace rex {
namespace {

// One evaluation context per public entry point; the memo is keyed by
// (node, span) and is only valid for a single subject and view.
struct Eval {
    std::unordered_map<std::uint64_t, bool> memo;

    static std::uint64_t key(const Node* r, std::int32_t x, std::int32_t y, bool rev) {
        return (static_cast<std::uint64_t>(r->id) << 26) |
               (static_cast<std::uint64_t>(x + 1) << 13) |
               static_cast<std::uint64_t>(y + 1) | (rev ? 1ull << 62 : 0);
    }

    bool matches(Loc x, const Node* r, Loc y) {
        assert(x.valid() && y.valid() && x.pos() <= y.pos());
        std::uint64_t k = key(r, x.pos(), y.pos(), x.reversed());
        auto it = memo.find(k);
        if (it != memo.end()) return it->second;
        bool v = compute(x, r, y);
        memo.emplace(k, v);
        return v;
    }

    // x -->_{body{lo,hi}} y via finite unrolling. Mandatory iterations
    // may match empty; optional ones must consume at least one
    // character, which drops stuttering steps and bounds the recursion
    // by the remaining distance.
    bool loop_matches(Loc x, const Node* body, std::uint32_t lo, std::uint32_t hi, Loc y) {
        if (lo > 64) throw std::length_error("oracle loop bound exceeds the unrolling guard");
        if (lo == 0 && x.pos() == y.pos()) return true;
        if (lo > 0) {
            for (std::int32_t z = x.pos(); z <= y.pos(); ++z) {
                if (matches(x, body, Loc(x.subject(), z, x.reversed())) &&
                    loop_matches(Loc(x.subject(), z, x.reversed()), body, lo - 1,
                                 decrement_bound(hi), y)) {
                    return true;
                }
            }
            return false;
        }
        if (hi == 0) return false;  // x != y and no iterations left
        for (std::int32_t z = x.pos() + 1; z <= y.pos(); ++z) {
            if (matches(x, body, Loc(x.subject(), z, x.reversed())) &&
                loop_matches(Loc(x.subject(), z, x.reversed()), body, 0, decrement_bound(hi), y)) {
                return true;
            }
        }
        return false;
    }

    bool look_body_matches_somewhere(Loc x, const Node* body, LookDir dir) {
        const Subject& s = x.subject();
        if (dir == LookDir::Ahead) {
            for (std::int32_t e = x.pos(); e <= x.len(); ++e) {
                if (matches(x, body, Loc(s, e, x.reversed()))) return true;
            }
        } else {
            for (std::int32_t z = 0; z <= x.pos(); ++z) {
                if (matches(Loc(s, z, x.reversed()), body, x)) return true;
            }
        }
        return false;
    }

    bool compute(Loc x, const Node* r, Loc y) {
        switch (r->kind) {
            case Kind::Epsilon:
                return x.pos() == y.pos();
            case Kind::Pred:
                return y.pos() == x.pos() + 1 && r->pred.contains(x.at());
            case Kind::Alt:
                for (const Node* k : r->kids) {
                    if (matches(x, k, y)) return true;
                }
                return false;
            case Kind::And:
                for (const Node* k : r->kids) {
                    if (!matches(x, k, y)) return false;
                }
                return true;
            case Kind::Not:
                return !matches(x, r->head, y);
            case Kind::Concat:
                for (std::int32_t z = x.pos(); z <= y.pos(); ++z) {
                    Loc mid(x.subject(), z, x.reversed());
                    if (matches(x, r->head, mid) && matches(mid, r->tail, y)) return true;
                }
                return false;
            case Kind::Loop:
                return loop_matches(x, r->head, r->lo, r->hi, y);
            case Kind::Look: {
                if (x.pos() != y.pos()) return false;
                bool m = look_body_matches_somewhere(x, r->head, r->look_dir);
                return r->look_pol == LookPol::Positive ? m : !m;
            }
        }
        return false;
    }
};

std::size_t clamp_len(const OracleConfig& cfg) { return cfg.max_len > 8 ? 8 : cfg.max_len; }

}  // namespace

bool oracle_matches(Loc x, const Node* r, Loc y) {
    Eval eval;
    return eval.matches(x, r, y);
}

std::vector<MatchSpan> oracle_all_matches(const Subject& s, const Node* r, OracleConfig cfg) {
    if (s.size() > clamp_len(cfg)) {
        throw std::length_error("oracle subject exceeds the configured length guard");
    }
    Eval eval;
    std::vector<MatchSpan> out;
    const auto len = static_cast<std::int32_t>(s.size());
    for (std::int32_t i = 0; i <= len; ++i) {
        for (std::int32_t j = i; j <= len; ++j) {
            if (eval.matches(Loc(s, i), r, Loc(s, j))) {
                out.push_back({static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j)});
            }
        }
    }
    return out;
}

std::optional<MatchSpan> oracle_posix(const Subject& s, const Node* r, OracleConfig cfg) {
    auto all = oracle_all_matches(s, r, cfg);
    if (all.empty()) return std::nullopt;
    MatchSpan best = all.front();  // spans are ordered by start, then end
    for (const MatchSpan& m : all) {
        if (m.start == best.start && m.end > best.end) best = m;
    }
    return best;
}

}  // namespace rex
