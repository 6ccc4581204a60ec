#include "rex/engine.hpp"

#include <algorithm>
#include <cassert>

namespace rex {
namespace {

void collect_preds(const Node* n, std::vector<CharPredicate>& out,
                   std::vector<const Node*>& seen) {
    if (std::find(seen.begin(), seen.end(), n) != seen.end()) return;
    seen.push_back(n);
    switch (n->kind) {
        case Kind::Pred:
            out.push_back(n->pred);
            break;
        case Kind::Epsilon:
            break;
        case Kind::Concat:
            collect_preds(n->head, out, seen);
            collect_preds(n->tail, out, seen);
            break;
        case Kind::Alt:
        case Kind::And:
            for (const Node* k : n->kids) collect_preds(k, out, seen);
            break;
        case Kind::Loop:
        case Kind::Not:
        case Kind::Look:
            collect_preds(n->head, out, seen);
            break;
    }
}

}  // namespace

Matcher::Matcher(Builder& b, const Node* root) : b_(b), root_(root) {
    rev_root_ = b_.reverse(root_);
    end_search_ = b_.concat(b_.top_star(), rev_root_);
    std::vector<CharPredicate> preds;
    std::vector<const Node*> seen;
    collect_preds(root_, preds, seen);
    std::sort(preds.begin(), preds.end(),
              [](CharPredicate a, CharPredicate b) { return a.id() < b.id(); });
    preds.erase(std::unique(preds.begin(), preds.end()), preds.end());
    table_ = MintermTable::build(b_.algebra(), preds);
}

bool Matcher::nullable(Loc x, const Node* n) const {
    if (n->null_kind != NullKind::Contextual) return n->null_kind == NullKind::Always;
    switch (n->kind) {
        case Kind::Alt:
            for (const Node* k : n->kids) {
                if (nullable(x, k)) return true;
            }
            return false;
        case Kind::And:
            for (const Node* k : n->kids) {
                if (!nullable(x, k)) return false;
            }
            return true;
        case Kind::Concat:
            return nullable(x, n->head) && nullable(x, n->tail);
        case Kind::Loop:
            return n->lo == 0 || nullable(x, n->head);
        case Kind::Not:
            return !nullable(x, n->head);
        case Kind::Look: {
            bool m = n->look_dir == LookDir::Ahead
                         ? is_match(x, n->head)
                         : is_match(x.flipped(), b_.reverse(n->head));
            return n->look_pol == LookPol::Positive ? m : !m;
        }
        default:
            return false;  // Pred/Epsilon never reach here
    }
}

const Node* Matcher::derive(Loc x, const Node* n) const {
    assert(x.valid() && !x.final());
    if (!n->contains_look) {
        std::uint64_t key = (static_cast<std::uint64_t>(n->id) << 16) | table_.classify(x.at());
        {
            std::shared_lock lock(cache_mu_);
            auto it = cache_.find(key);
            if (it != cache_.end()) return it->second;
        }
        const Node* d = derive_uncached(x, n);
        {
            std::unique_lock lock(cache_mu_);
            cache_.emplace(key, d);
        }
        return d;
    }
    return derive_uncached(x, n);
}

const Node* Matcher::derive_uncached(Loc x, const Node* n) const {
    switch (n->kind) {
        case Kind::Epsilon:
        case Kind::Look:
            return b_.bot();
        case Kind::Pred:
            return n->pred.contains(x.at()) ? b_.epsilon() : b_.bot();
        case Kind::Alt: {
            std::vector<const Node*> kids;
            kids.reserve(n->kids.size());
            for (const Node* k : n->kids) kids.push_back(derive(x, k));
            return b_.alternation(std::move(kids));
        }
        case Kind::And: {
            std::vector<const Node*> kids;
            kids.reserve(n->kids.size());
            for (const Node* k : n->kids) kids.push_back(derive(x, k));
            return b_.intersection(std::move(kids));
        }
        case Kind::Not:
            return b_.complement(derive(x, n->head));
        case Kind::Concat: {
            const Node* h = n->head;
            // A lookaround head is a pure gate on the location.
            if (h->kind == Kind::Look) {
                return nullable(x, h) ? derive(x, n->tail) : b_.bot();
            }
            const Node* through = b_.concat(derive(x, h), n->tail);
            if (nullable(x, h)) {
                return b_.alternation({through, derive(x, n->tail)});
            }
            return through;
        }
        case Kind::Loop: {
            const Node* body = n->head;
            const Node* rest = b_.loop(body, decrement_bound(n->lo), decrement_bound(n->hi));
            if (n->lo == 0 || body->always_null() || !nullable(x, body)) {
                return b_.concat(derive(x, body), rest);
            }
            return derive(x, b_.concat(body, rest));
        }
    }
    return b_.bot();
}

bool Matcher::is_match(Loc x, const Node* n) const {
    const Node* cur = n;
    Loc p = x;
    while (true) {
        if (cur->is_bot()) return false;
        if (nullable(p, cur)) return true;
        if (p.final()) return false;
        cur = derive(p, cur);
        p = p.next();
    }
}

std::optional<std::int32_t> Matcher::match_end(Loc x, const Node* n) const {
    std::optional<std::int32_t> last;
    const Node* cur = n;
    Loc p = x;
    while (true) {
        if (cur->is_bot()) break;
        if (nullable(p, cur)) last = p.pos();
        if (p.final()) break;
        cur = derive(p, cur);
        p = p.next();
    }
    return last;
}

std::vector<std::int32_t> Matcher::all_match_ends(Loc x, const Node* n) const {
    std::vector<std::int32_t> ends;
    const Node* cur = n;
    Loc p = x;
    while (true) {
        if (cur->is_bot()) break;
        if (nullable(p, cur)) ends.push_back(p.pos());
        if (p.final()) break;
        cur = derive(p, cur);
        p = p.next();
    }
    return ends;
}

const StabilityInfo& Matcher::stability(const Node* n) const {
    {
        std::shared_lock lock(stab_mu_);
        auto it = stab_.find(n);
        if (it != stab_.end()) return it->second;
    }
    StabilityInfo info = classify_stability(b_.algebra(), n);
    std::unique_lock lock(stab_mu_);
    return stab_.emplace(n, info).first->second;
}

// Decides how far the scan may jump without stepping any branch.
// Requires every live branch to have a self-stable state with
// location-independent nullability, and covers the branches that would
// have been spawned inside the skipped region: they are dominated when
// the root state is already live, and stillborn when the root is
// predicate-headed and never nullable.
std::int32_t Matcher::try_skip(const Subject& s, std::int32_t p,
                               const std::vector<Branch>& branches) const {
    if (p >= static_cast<std::int32_t>(s.size())) return p;
    CharAlgebra& alg = b_.algebra();
    CharPredicate scan = alg.bot();
    bool root_live = false;
    for (const Branch& x : branches) {
        if (x.dead) continue;
        if (x.state == root_) root_live = true;
        const StabilityInfo& st = stability(x.state);
        if (st.kind != Stability::SelfStable || x.state->null_kind == NullKind::Contextual) {
            return p;
        }
        scan = alg.or_(scan, st.startset);
    }
    if (!root_live) {
        const StabilityInfo& st = stability(root_);
        if (st.kind != Stability::BotStable || root_->null_kind != NullKind::Never) return p;
        scan = alg.or_(scan, st.startset);
    }
    return static_cast<std::int32_t>(skip_to(s, static_cast<std::size_t>(p), scan));
}

std::optional<MatchSpan> Matcher::find_branching(const Subject& s, std::uint32_t from,
                                                 bool skip) const {
    const auto len = static_cast<std::int32_t>(s.size());
    std::vector<Branch> branches;
    std::int32_t p = static_cast<std::int32_t>(from);
    while (true) {
        bool dominated = false;
        for (const Branch& x : branches) {
            if (!x.dead && x.state == root_) {
                dominated = true;
                break;
            }
        }
        if (!dominated) branches.push_back({root_, static_cast<std::uint32_t>(p), -1, false});

        Loc here(s, p);
        for (Branch& x : branches) {
            if (!x.dead && nullable(here, x.state)) x.last_null = p;
        }
        if (p == len) {
            for (const Branch& x : branches) {
                if (x.last_null >= 0) {
                    return MatchSpan{x.start, static_cast<std::uint32_t>(x.last_null)};
                }
            }
            return std::nullopt;
        }
        for (Branch& x : branches) {
            if (x.dead) continue;
            x.state = derive(here, x.state);
            if (x.state->is_bot()) {
                x.dead = true;
                x.state = nullptr;
            }
        }
        // Identical live states share every future; keep the earliest
        // start and retain a later duplicate only as a frozen candidate
        // when it has already seen a nullable position.
        {
            std::unordered_map<const Node*, std::size_t> seen;
            for (std::size_t i = 0; i < branches.size();) {
                if (branches[i].dead) {
                    ++i;
                    continue;
                }
                if (seen.emplace(branches[i].state, i).second) {
                    ++i;
                    continue;
                }
                if (branches[i].last_null >= 0) {
                    branches[i].dead = true;
                    branches[i].state = nullptr;
                    ++i;
                } else {
                    branches.erase(branches.begin() + static_cast<std::ptrdiff_t>(i));
                }
            }
        }
        // The leftmost branch decides: once dead, its recorded end is
        // the final answer; with no recorded end it is discarded.
        while (!branches.empty() && branches.front().dead) {
            if (branches.front().last_null >= 0) {
                return MatchSpan{branches.front().start,
                                 static_cast<std::uint32_t>(branches.front().last_null)};
            }
            branches.erase(branches.begin());
        }
        ++p;
        if (skip) p = try_skip(s, p, branches);
    }
}

std::optional<MatchSpan> Matcher::find_two_pass(const Subject& s, std::uint32_t from) const {
    const auto len = static_cast<std::int32_t>(s.size());
    if (from == 0) {
        auto rev_end = match_end(Loc(s, 0, /*reversed=*/true), end_search_);
        if (!rev_end) return std::nullopt;
        auto start = static_cast<std::uint32_t>(len - *rev_end);
        auto end = match_end(Loc(s, static_cast<std::int32_t>(start)), root_);
        assert(end.has_value());
        return MatchSpan{start, static_cast<std::uint32_t>(*end)};
    }
    for (std::int32_t i = static_cast<std::int32_t>(from); i <= len; ++i) {
        if (auto end = match_end(Loc(s, i), root_)) {
            return MatchSpan{static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(*end)};
        }
    }
    return std::nullopt;
}

std::optional<MatchSpan> Matcher::find(const Subject& s, MatchOptions opts,
                                       std::uint32_t from) const {
    if (from > s.size()) return std::nullopt;
    return opts.strategy == FindStrategy::TwoPass ? find_two_pass(s, from)
                                                  : find_branching(s, from, opts.skip);
}

std::vector<MatchSpan> Matcher::find_all(const Subject& s, MatchOptions opts) const {
    std::vector<MatchSpan> out;
    std::uint32_t cursor = 0;
    const auto len = static_cast<std::uint32_t>(s.size());
    while (cursor <= len) {
        auto m = find(s, opts, cursor);
        if (!m) break;
        out.push_back(*m);
        cursor = std::max(m->end, m->start + 1);
    }
    return out;
}

CompiledRegex CompiledRegex::compile(std::string_view pattern, MatchOptions opts) {
    auto ctx = std::make_shared<Context>();
    ParseDiagnostics diag;
    const Node* root = parse(ctx->builder, pattern, &diag);
    if (!root) throw ParseError(std::move(diag));
    auto matcher = std::make_shared<Matcher>(ctx->builder, root);
    return CompiledRegex(std::move(ctx), std::move(matcher), opts);
}

namespace {
Subject decode_subject(std::string_view text) {
    DecodeError err;
    auto s = Subject::from_utf8(text, &err);
    if (!s) {
        throw std::invalid_argument("invalid subject at byte " + std::to_string(err.byte_offset) +
                                    ": " + err.message);
    }
    return std::move(*s);
}
}  // namespace

bool CompiledRegex::is_match(std::string_view text) const {
    Subject s = decode_subject(text);
    Builder& b = matcher_->builder();
    return matcher_->is_match(Loc(s, 0), b.concat(b.top_star(), matcher_->root()));
}

std::optional<MatchSpan> CompiledRegex::find(std::string_view text) const {
    Subject s = decode_subject(text);
    return matcher_->find(s, opts_);
}

std::vector<MatchSpan> CompiledRegex::find_all(std::string_view text) const {
    Subject s = decode_subject(text);
    return matcher_->find_all(s, opts_);
}

std::size_t CompiledRegex::count(std::string_view text) const {
    return find_all(text).size();
}

}  // namespace rex
