#include "rex/ast.hpp"

#include <algorithm>
#include <cassert>

namespace rex {
namespace {

void push_word(std::string& key, std::uint32_t w) {
    key.push_back(static_cast<char>(w & 0xFF));
    key.push_back(static_cast<char>((w >> 8) & 0xFF));
    key.push_back(static_cast<char>((w >> 16) & 0xFF));
    key.push_back(static_cast<char>((w >> 24) & 0xFF));
}

std::string intern_key(const Node& n) {
    std::string key;
    key.push_back(static_cast<char>(n.kind));
    switch (n.kind) {
        case Kind::Pred:
            push_word(key, n.pred.id());
            break;
        case Kind::Epsilon:
            break;
        case Kind::Concat:
            push_word(key, n.head->id);
            push_word(key, n.tail->id);
            break;
        case Kind::Alt:
        case Kind::And:
            for (const Node* k : n.kids) push_word(key, k->id);
            break;
        case Kind::Loop:
            push_word(key, n.head->id);
            push_word(key, n.lo);
            push_word(key, n.hi);
            break;
        case Kind::Not:
            push_word(key, n.head->id);
            break;
        case Kind::Look:
            key.push_back(static_cast<char>(n.look_dir));
            key.push_back(static_cast<char>(n.look_pol));
            push_word(key, n.head->id);
            break;
    }
    return key;
}

NullKind combine_and(NullKind a, NullKind b) {
    if (a == NullKind::Never || b == NullKind::Never) return NullKind::Never;
    if (a == NullKind::Always && b == NullKind::Always) return NullKind::Always;
    return NullKind::Contextual;
}

NullKind negate(NullKind k) {
    switch (k) {
        case NullKind::Never: return NullKind::Always;
        case NullKind::Always: return NullKind::Never;
        default: return NullKind::Contextual;
    }
}

}  // namespace

Builder::Builder(CharAlgebra& alg) : alg_(alg) {
    Node eps;
    eps.kind = Kind::Epsilon;
    eps.null_kind = NullKind::Always;
    epsilon_ = intern(std::move(eps));
    bot_ = pred(alg_.bot());
    top_ = pred(alg_.top());
}

const Node* Builder::intern(Node&& probe) {
    std::string key = intern_key(probe);
    std::lock_guard lock(mu_);
    auto it = table_.find(key);
    if (it != table_.end()) return it->second;
    probe.id = static_cast<std::uint32_t>(arena_.size());
    arena_.push_back(std::move(probe));
    const Node* n = &arena_.back();
    table_.emplace(std::move(key), n);
    return n;
}

const Node* Builder::pred(CharPredicate p) {
    Node n;
    n.kind = Kind::Pred;
    n.pred = p;
    n.null_kind = NullKind::Never;
    return intern(std::move(n));
}

const Node* Builder::top_star() {
    if (!top_star_) top_star_ = loop(top_, 0, kInf);
    return top_star_;
}

const Node* Builder::top_plus() {
    if (!top_plus_) top_plus_ = loop(top_, 1, kInf);
    return top_plus_;
}

const Node* Builder::concat(const Node* a, const Node* b) {
    if (a->is_bot() || b->is_bot()) return bot_;
    if (a->is_eps()) return b;
    if (b->is_eps()) return a;
    if (a->kind == Kind::Concat) return concat(a->head, concat(a->tail, b));
    Node n;
    n.kind = Kind::Concat;
    n.head = a;
    n.tail = b;
    n.null_kind = combine_and(a->null_kind, b->null_kind);
    n.contains_look = a->contains_look || b->contains_look;
    n.size = a->size + b->size;
    return intern(std::move(n));
}

const Node* Builder::concat(std::span<const Node* const> parts) {
    const Node* acc = epsilon_;
    for (std::size_t i = parts.size(); i-- > 0;) acc = concat(parts[i], acc);
    return acc;
}

const Node* Builder::loop(const Node* body, std::uint32_t lo, std::uint32_t hi) {
    if (lo > hi) throw std::invalid_argument("loop lower bound exceeds upper bound");
    if (lo == 0 && hi == 0) return epsilon_;
    if (body->is_eps()) return epsilon_;
    if (body->is_bot()) return lo == 0 ? epsilon_ : bot_;
    if (lo == 1 && hi == 1) return body;
    Node n;
    n.kind = Kind::Loop;
    n.head = body;
    n.lo = lo;
    n.hi = hi;
    n.null_kind = lo == 0 ? NullKind::Always : body->null_kind;
    n.contains_look = body->contains_look;
    n.size = body->size + 1;
    return intern(std::move(n));
}

const Node* Builder::complement(const Node* body) {
    if (body->kind == Kind::Not) return body->head;
    if (body->is_bot()) return top_star();
    if (body->is_top_star()) return bot_;
    if (body->is_eps()) return top_plus();
    if (body->is_top_plus()) return epsilon_;
    Node n;
    n.kind = Kind::Not;
    n.head = body;
    n.null_kind = negate(body->null_kind);
    n.contains_look = body->contains_look;
    n.size = body->size + 1;
    return intern(std::move(n));
}

const Node* Builder::look(LookDir dir, LookPol pol, const Node* body) {
    // A lookaround is nullable iff its body can match at all from the
    // current location; for ⊥, ⊤* and () that does not depend on the
    // location, so those bodies normalize away.
    if (body->is_bot()) return pol == LookPol::Positive ? bot_ : epsilon_;
    if (body->is_top_star() || body->is_eps()) {
        return pol == LookPol::Positive ? epsilon_ : bot_;
    }
    Node n;
    n.kind = Kind::Look;
    n.look_dir = dir;
    n.look_pol = pol;
    n.head = body;
    n.null_kind = NullKind::Contextual;
    n.contains_look = true;
    n.size = body->size + 1;
    return intern(std::move(n));
}

bool Builder::absorbable_into_star(const Node* n, CharPredicate star_pred) {
    switch (n->kind) {
        case Kind::Epsilon:
            return true;
        case Kind::Look:
            // Zero-width: contributes no characters to any match.
            return true;
        case Kind::Not:
            return false;
        case Kind::Pred:
            return alg_.and_(n->pred, star_pred) == n->pred;
        case Kind::Concat:
            return absorbable_into_star(n->head, star_pred) &&
                   absorbable_into_star(n->tail, star_pred);
        case Kind::Loop:
            return absorbable_into_star(n->head, star_pred);
        case Kind::Alt:
        case Kind::And:
            for (const Node* k : n->kids) {
                if (!absorbable_into_star(k, star_pred)) return false;
            }
            return true;
    }
    return false;
}

const Node* Builder::alternation(std::vector<const Node*> parts) {
    std::vector<const Node*> kids;
    for (const Node* p : parts) {
        if (p->is_bot()) continue;
        if (p->kind == Kind::Alt) {
            kids.insert(kids.end(), p->kids.begin(), p->kids.end());
        } else {
            kids.push_back(p);
        }
    }
    for (bool changed = true; changed;) {
        changed = false;
        std::sort(kids.begin(), kids.end(), [](const Node* a, const Node* b) { return a->id < b->id; });
        kids.erase(std::unique(kids.begin(), kids.end()), kids.end());
        for (const Node* k : kids) {
            if (k->is_top_star()) return top_star();
        }
        // R{l,m}|R{k,n} -> R{l,max(m,n)} when l<=k<=m; a bare body
        // counts as R{1,1}.
        auto bounds_of = [](const Node* n, const Node*& body) {
            if (n->kind == Kind::Loop) {
                body = n->head;
                return std::pair<std::uint32_t, std::uint32_t>{n->lo, n->hi};
            }
            body = n;
            return std::pair<std::uint32_t, std::uint32_t>{1, 1};
        };
        for (std::size_t i = 0; i < kids.size() && !changed; ++i) {
            for (std::size_t j = i + 1; j < kids.size() && !changed; ++j) {
                const Node *bi, *bj;
                auto [li, mi] = bounds_of(kids[i], bi);
                auto [lj, mj] = bounds_of(kids[j], bj);
                if (bi != bj) continue;
                const Node* merged = nullptr;
                if (li <= lj && lj <= mi) {
                    merged = loop(bi, li, std::max(mi, mj));
                } else if (lj <= li && li <= mj) {
                    merged = loop(bi, lj, std::max(mi, mj));
                }
                if (merged) {
                    kids[i] = merged;
                    kids.erase(kids.begin() + static_cast<std::ptrdiff_t>(j));
                    changed = true;
                }
            }
        }
        if (changed) continue;
        // psi*|R -> psi* when R only consumes characters from psi.
        for (std::size_t i = 0; i < kids.size() && !changed; ++i) {
            const Node* star = kids[i];
            if (star->kind != Kind::Loop || star->lo != 0 || star->hi != kInf ||
                star->head->kind != Kind::Pred) {
                continue;
            }
            CharPredicate psi = star->head->pred;
            for (std::size_t j = 0; j < kids.size(); ++j) {
                if (j == i) continue;
                if (absorbable_into_star(kids[j], psi)) {
                    kids.erase(kids.begin() + static_cast<std::ptrdiff_t>(j));
                    changed = true;
                    break;
                }
            }
        }
    }
    if (kids.empty()) return bot_;
    if (kids.size() == 1) return kids[0];
    Node n;
    n.kind = Kind::Alt;
    n.null_kind = NullKind::Never;
    bool all_never = true, any_always = false;
    for (const Node* k : kids) {
        n.contains_look |= k->contains_look;
        n.size += k->size;
        all_never &= k->null_kind == NullKind::Never;
        any_always |= k->null_kind == NullKind::Always;
    }
    n.null_kind = any_always  ? NullKind::Always
                  : all_never ? NullKind::Never
                              : NullKind::Contextual;
    n.kids = std::move(kids);
    return intern(std::move(n));
}

const Node* Builder::intersection(std::vector<const Node*> parts) {
    std::vector<const Node*> kids;
    for (const Node* p : parts) {
        if (p->is_bot()) return bot_;
        if (p->is_top_star()) continue;
        if (p->kind == Kind::And) {
            kids.insert(kids.end(), p->kids.begin(), p->kids.end());
        } else {
            kids.push_back(p);
        }
    }
    std::sort(kids.begin(), kids.end(), [](const Node* a, const Node* b) { return a->id < b->id; });
    kids.erase(std::unique(kids.begin(), kids.end()), kids.end());
    if (kids.empty()) return top_star();
    if (kids.size() == 1) return kids[0];
    Node n;
    n.kind = Kind::And;
    n.null_kind = NullKind::Always;
    bool all_always = true, any_never = false;
    for (const Node* k : kids) {
        n.contains_look |= k->contains_look;
        n.size += k->size;
        all_always &= k->null_kind == NullKind::Always;
        any_never |= k->null_kind == NullKind::Never;
    }
    n.null_kind = any_never    ? NullKind::Never
                  : all_always ? NullKind::Always
                               : NullKind::Contextual;
    n.kids = std::move(kids);
    return intern(std::move(n));
}

const Node* Builder::reverse(const Node* n) {
    if (const Node* cached = n->rev_cache_.load(std::memory_order_acquire)) return cached;
    const Node* r = nullptr;
    switch (n->kind) {
        case Kind::Pred:
        case Kind::Epsilon:
            r = n;
            break;
        case Kind::Concat:
            r = concat(reverse(n->tail), reverse(n->head));
            break;
        case Kind::Alt:
        case Kind::And: {
            std::vector<const Node*> kids;
            kids.reserve(n->kids.size());
            for (const Node* k : n->kids) kids.push_back(reverse(k));
            r = n->kind == Kind::Alt ? alternation(std::move(kids)) : intersection(std::move(kids));
            break;
        }
        case Kind::Loop:
            r = loop(reverse(n->head), n->lo, n->hi);
            break;
        case Kind::Not:
            r = complement(reverse(n->head));
            break;
        case Kind::Look:
            r = look(n->look_dir == LookDir::Ahead ? LookDir::Behind : LookDir::Ahead,
                     n->look_pol, reverse(n->head));
            break;
    }
    n->rev_cache_.store(r, std::memory_order_release);
    r->rev_cache_.store(n, std::memory_order_release);
    return r;
}

}  // namespace rex
