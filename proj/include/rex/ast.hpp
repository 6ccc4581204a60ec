#pragma once

#include <atomic>
#include <cstdint>
#include <deque>
#include <mutex>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "rex/chars.hpp"

namespace rex {

enum class Kind : std::uint8_t {
    Pred,     // character predicate (the empty predicate is the failure regex)
    Epsilon,  // empty word
    Concat,   // cons cell: head is never Epsilon/Concat, tail is the rest
    Alt,      // set-based union
    And,      // set-based intersection
    Loop,     // bounded or infinite repetition
    Not,      // complement
    Look,     // lookaround
};

enum class NullKind : std::uint8_t { Never, Always, Contextual };
enum class LookDir : std::uint8_t { Ahead, Behind };
enum class LookPol : std::uint8_t { Positive, Negative };

// Loop upper bound for unbounded repetition.
inline constexpr std::uint32_t kInf = 0xFFFFFFFFu;

inline std::uint32_t decrement_bound(std::uint32_t k) {
    return (k == kInf || k == 0) ? k : k - 1;
}

class Builder;

// Immutable hash-consed regex node. Structural equality is id equality.
class Node {
  public:
    Kind kind;
    NullKind null_kind;
    bool contains_look = false;
    LookDir look_dir = LookDir::Ahead;
    LookPol look_pol = LookPol::Positive;
    std::uint32_t lo = 0, hi = 0;     // Loop bounds
    CharPredicate pred;               // Pred
    const Node* head = nullptr;       // Concat head; Loop/Not/Look body
    const Node* tail = nullptr;       // Concat tail
    std::vector<const Node*> kids;    // Alt/And children, sorted by id
    std::uint32_t id = 0;
    std::uint32_t size = 1;

    bool is_eps() const { return kind == Kind::Epsilon; }
    bool is_bot() const { return kind == Kind::Pred && pred.empty(); }
    bool is_top_pred() const { return kind == Kind::Pred && pred.full(); }
    bool is_top_star() const {
        return kind == Kind::Loop && lo == 0 && hi == kInf && head->is_top_pred();
    }
    bool is_top_plus() const {
        return kind == Kind::Loop && lo == 1 && hi == kInf && head->is_top_pred();
    }
    bool always_null() const { return null_kind == NullKind::Always; }

    Node() = default;
    Node(Node&& o) noexcept
        : kind(o.kind), null_kind(o.null_kind), contains_look(o.contains_look),
          look_dir(o.look_dir), look_pol(o.look_pol), lo(o.lo), hi(o.hi), pred(o.pred),
          head(o.head), tail(o.tail), kids(std::move(o.kids)), id(o.id), size(o.size),
          rev_cache_(o.rev_cache_.load(std::memory_order_relaxed)) {}
    Node(const Node&) = delete;
    Node& operator=(const Node&) = delete;
    Node& operator=(Node&&) = delete;

  private:
    friend class Builder;
    mutable std::atomic<const Node*> rev_cache_{nullptr};
};

// Node factory. All construction goes through the smart constructors,
// which keep nodes canonical: mandatory rewrites are applied eagerly,
// union/intersection children are flattened, deduplicated and sorted
// by id, and loop bounds are validated.
//
// Insertion into the intern table is serialized; interned nodes are
// immutable and freely shareable between threads.
class Builder {
  public:
    explicit Builder(CharAlgebra& alg);
    Builder(const Builder&) = delete;
    Builder& operator=(const Builder&) = delete;

    CharAlgebra& algebra() { return alg_; }

    const Node* pred(CharPredicate p);
    const Node* literal(char16_t c) { return pred(alg_.singleton(c)); }
    const Node* epsilon() const { return epsilon_; }
    const Node* bot() const { return bot_; }
    const Node* top() const { return top_; }
    const Node* top_star();
    const Node* top_plus();

    const Node* concat(const Node* a, const Node* b);
    const Node* concat(std::span<const Node* const> parts);
    const Node* alternation(std::vector<const Node*> parts);
    const Node* intersection(std::vector<const Node*> parts);
    // Throws std::invalid_argument when lo > hi.
    const Node* loop(const Node* body, std::uint32_t lo, std::uint32_t hi);
    const Node* complement(const Node* body);
    const Node* look(LookDir dir, LookPol pol, const Node* body);

    const Node* reverse(const Node* n);

    std::size_t node_count() const { return arena_.size(); }

  private:
    const Node* intern(Node&& probe);
    bool absorbable_into_star(const Node* n, CharPredicate star_pred);

    CharAlgebra& alg_;
    std::mutex mu_;
    std::deque<Node> arena_;
    std::unordered_map<std::string, const Node*> table_;
    const Node* epsilon_;
    const Node* bot_;
    const Node* top_;
    const Node* top_star_ = nullptr;
    const Node* top_plus_ = nullptr;
};

// Renders a node in the concrete syntax accepted by parse(); parsing
// the result yields the same node id.
std::string to_pattern(const Node* n);

}  // namespace rex
