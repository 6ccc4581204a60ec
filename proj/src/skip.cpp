#include "rex/skip.hpp"

#include <cstring>

namespace rex {

StabilityInfo classify_stability(CharAlgebra& alg, const Node* n) {
    switch (n->kind) {
        case Kind::Epsilon:
            return {Stability::BotStable, alg.bot()};
        case Kind::Pred:
            return {Stability::BotStable, n->pred};
        case Kind::Look:
            // The derivative is constant but nullability is not.
            return {Stability::Unstable, alg.top()};
        case Kind::Not: {
            StabilityInfo body = classify_stability(alg, n->head);
            if (body.kind == Stability::SelfStable) return body;
            return {Stability::Unstable, alg.top()};
        }
        case Kind::Alt: {
            CharPredicate acc = alg.bot();
            bool all_self = true, all_bot = true;
            for (const Node* k : n->kids) {
                StabilityInfo ki = classify_stability(alg, k);
                if (ki.kind == Stability::Unstable) return {Stability::Unstable, alg.top()};
                all_self &= ki.kind == Stability::SelfStable;
                all_bot &= ki.kind == Stability::BotStable;
                acc = alg.or_(acc, ki.startset);
            }
            if (all_self) return {Stability::SelfStable, acc};
            if (all_bot) return {Stability::BotStable, acc};
            return {Stability::Unstable, alg.top()};
        }
        case Kind::And: {
            // One bot-stable conjunct collapses the whole intersection.
            CharPredicate self_acc = alg.bot();
            CharPredicate bot_acc = alg.bot();
            bool all_self = true, any_bot = false;
            for (const Node* k : n->kids) {
                StabilityInfo ki = classify_stability(alg, k);
                if (ki.kind == Stability::SelfStable) {
                    self_acc = alg.or_(self_acc, ki.startset);
                } else {
                    all_self = false;
                    if (ki.kind == Stability::BotStable) {
                        any_bot = true;
                        bot_acc = alg.or_(bot_acc, ki.startset);
                    }
                }
            }
            if (all_self) return {Stability::SelfStable, self_acc};
            if (any_bot) return {Stability::BotStable, bot_acc};
            return {Stability::Unstable, alg.top()};
        }
        case Kind::Loop:
            if (n->head->kind == Kind::Pred) {
                if (n->lo == 0 && n->hi == kInf) {
                    return {Stability::SelfStable, alg.not_(n->head->pred)};
                }
                return {Stability::BotStable, n->head->pred};
            }
            return {Stability::Unstable, alg.top()};
        case Kind::Concat: {
            const Node* h = n->head;
            if (h->null_kind == NullKind::Contextual) return {Stability::Unstable, alg.top()};
            StabilityInfo hi = classify_stability(alg, h);
            if (hi.kind == Stability::Unstable) return {Stability::Unstable, alg.top()};
            if (h->null_kind == NullKind::Never) return hi;
            // Nullable head: the tail's derivative joins in, so it must
            // collapse outside its own startset.
            StabilityInfo ti = classify_stability(alg, n->tail);
            if (ti.kind != Stability::BotStable) return {Stability::Unstable, alg.top()};
            return {hi.kind, alg.or_(hi.startset, ti.startset)};
        }
    }
    return {Stability::Unstable, alg.top()};
}

bool is_skippable(const Node* n) {
    switch (n->kind) {
        case Kind::Loop:
            return n->hi == kInf;
        case Kind::Concat:
            return is_skippable(n->head);
        case Kind::Alt:
        case Kind::And:
            for (const Node* k : n->kids) {
                if (!is_skippable(k)) return false;
            }
            return true;
        case Kind::Not:
            return is_skippable(n->head);
        case Kind::Look:
            return n->look_dir == LookDir::Ahead && is_skippable(n->head);
        default:
            return false;
    }
}

SkipInfo skip_info(CharAlgebra& alg, const Node* n) {
    bool sk = is_skippable(n);
    StabilityInfo st = classify_stability(alg, n);
    CharPredicate ss;
    if (st.kind == Stability::SelfStable) {
        ss = st.startset;
    } else if (sk || st.kind == Stability::Unstable) {
        ss = alg.top();
    } else {
        ss = st.startset;
    }
    return {sk, ss};
}

CharPredicate startset(CharAlgebra& alg, const Node* n) {
    if (n->is_eps()) return alg.top();
    return skip_info(alg, n).startset;
}

std::size_t skip_to(const Subject& s, std::size_t pos, CharPredicate p) {
    const std::size_t n = s.size();
    if (pos >= n) return n;
    if (p.full()) return pos;
    if (p.empty()) return n;
    if (p.count() <= 4) {
        char16_t lits[4];
        std::size_t k = 0;
        bool all_ascii = true;
        for (CharRange r : p.ranges()) {
            for (std::uint32_t c = r.lo; c <= r.hi; ++c) {
                lits[k++] = static_cast<char16_t>(c);
                all_ascii &= c < 0x80;
            }
        }
        if (all_ascii && s.ascii && !s.bytes.empty()) {
            const char* base = s.bytes.data();
            std::size_t best = n;
            for (std::size_t i = 0; i < k; ++i) {
                const void* hit = std::memchr(base + pos, static_cast<char>(lits[i]), best - pos);
                if (hit) best = static_cast<std::size_t>(static_cast<const char*>(hit) - base);
            }
            return best;
        }
        for (std::size_t q = pos; q < n; ++q) {
            char16_t c = s.chars[q];
            for (std::size_t i = 0; i < k; ++i) {
                if (c == lits[i]) return q;
            }
        }
        return n;
    }
    for (std::size_t q = pos; q < n; ++q) {
        if (p.contains(s.chars[q])) return q;
    }
    return n;
}

}  // namespace rex
