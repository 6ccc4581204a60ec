#pragma once

#include <memory>
#include <optional>
#include <shared_mutex>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "rex/ast.hpp"
#include "rex/chars.hpp"
#include "rex/parse.hpp"
#include "rex/skip.hpp"
#include "rex/text.hpp"

namespace rex {

// Border position in a subject, optionally viewing it reversed.
// Reversing never copies the subject: position i in the reversed view
// is position |s|-i in the forward view.
class Loc {
  public:
    Loc(const Subject& s, std::int32_t pos, bool reversed = false)
        : subject_(&s), pos_(pos), reversed_(reversed) {}

    const Subject& subject() const { return *subject_; }
    std::int32_t pos() const { return pos_; }
    bool reversed() const { return reversed_; }
    std::int32_t len() const { return static_cast<std::int32_t>(subject_->size()); }
    bool valid() const { return pos_ >= 0 && pos_ <= len(); }
    bool final() const { return pos_ == len(); }
    bool initial() const { return pos_ == 0; }

    // Character to the right of the border. Requires a nonfinal location.
    char16_t at() const {
        return reversed_ ? subject_->chars[static_cast<std::size_t>(len() - 1 - pos_)]
                         : subject_->chars[static_cast<std::size_t>(pos_)];
    }
    Loc next() const { return Loc(*subject_, pos_ + 1, reversed_); }
    // The same border seen from the reversed view.
    Loc flipped() const { return Loc(*subject_, len() - pos_, !reversed_); }

  private:
    const Subject* subject_;
    std::int32_t pos_;
    bool reversed_;
};

struct MatchSpan {
    std::uint32_t start = 0;
    std::uint32_t end = 0;
    friend bool operator==(const MatchSpan&, const MatchSpan&) = default;
};

enum class FindStrategy : std::uint8_t {
    Branching,  // production top-level branch loop
    TwoPass,    // reversed-prefix end search, then forward start search
};

struct MatchOptions {
    bool skip = true;
    FindStrategy strategy = FindStrategy::Branching;
};

// Matching context for one root pattern. Owns the minterm table and a
// transition cache for lookaround-free states; immutable and shareable
// across threads once constructed.
//
// The per-node operations accept any node from the same builder whose
// predicates are refined by this matcher's minterm table; every state
// reachable from the root qualifies. Nodes over unrelated predicates
// need a matcher whose root mentions them.
class Matcher {
  public:
    Matcher(Builder& b, const Node* root);
    Matcher(const Matcher&) = delete;
    Matcher& operator=(const Matcher&) = delete;

    Builder& builder() const { return b_; }
    const Node* root() const { return root_; }
    const Node* reversed_root() const { return rev_root_; }
    const MintermTable& minterms() const { return table_; }

    bool nullable(Loc x, const Node* n) const;
    // Requires a valid nonfinal location.
    const Node* derive(Loc x, const Node* n) const;
    bool is_match(Loc x, const Node* n) const;
    // Latest match end position from x, if any.
    std::optional<std::int32_t> match_end(Loc x, const Node* n) const;
    // Every match end position from x, in increasing order.
    std::vector<std::int32_t> all_match_ends(Loc x, const Node* n) const;

    // Leftmost-longest match with start >= from.
    std::optional<MatchSpan> find(const Subject& s, MatchOptions opts = {},
                                  std::uint32_t from = 0) const;
    // Non-overlapping leftmost-longest matches; an empty match advances
    // the cursor by one.
    std::vector<MatchSpan> find_all(const Subject& s, MatchOptions opts = {}) const;

  private:
    struct Branch {
        const Node* state;
        std::uint32_t start;
        std::int64_t last_null;  // -1 when the branch was never nullable
        bool dead;
    };

    const Node* derive_uncached(Loc x, const Node* n) const;
    std::optional<MatchSpan> find_branching(const Subject& s, std::uint32_t from,
                                            bool skip) const;
    std::optional<MatchSpan> find_two_pass(const Subject& s, std::uint32_t from) const;
    std::int32_t try_skip(const Subject& s, std::int32_t p,
                          const std::vector<Branch>& branches) const;
    const StabilityInfo& stability(const Node* n) const;

    Builder& b_;
    const Node* root_;
    const Node* rev_root_;
    const Node* end_search_;  // greedy universal prefix + reversed root
    MintermTable table_;

    mutable std::shared_mutex cache_mu_;
    mutable std::unordered_map<std::uint64_t, const Node*> cache_;
    mutable std::shared_mutex stab_mu_;
    mutable std::unordered_map<const Node*, StabilityInfo> stab_;
};

struct ParseError : std::runtime_error {
    explicit ParseError(ParseDiagnostics d) : std::runtime_error(d.render()), diagnostics(std::move(d)) {}
    ParseDiagnostics diagnostics;
};

// Compiled pattern facade over UTF-8 subjects.
class CompiledRegex {
  public:
    // Throws ParseError on invalid patterns.
    static CompiledRegex compile(std::string_view pattern, MatchOptions opts = {});

    bool is_match(std::string_view text) const;
    std::optional<MatchSpan> find(std::string_view text) const;
    std::vector<MatchSpan> find_all(std::string_view text) const;
    std::size_t count(std::string_view text) const;

    const Matcher& matcher() const { return *matcher_; }
    Builder& builder() const { return ctx_->builder; }
    const MatchOptions& options() const { return opts_; }

  private:
    struct Context {
        CharAlgebra algebra;
        Builder builder;
        Context() : builder(algebra) {}
    };
    CompiledRegex(std::shared_ptr<Context> ctx, std::shared_ptr<Matcher> m, MatchOptions opts)
        : ctx_(std::move(ctx)), matcher_(std::move(m)), opts_(opts) {}

    std::shared_ptr<Context> ctx_;
    std::shared_ptr<Matcher> matcher_;
    MatchOptions opts_;
};

}  // namespace rex
