#pragma once

#include <cstdint>
#include <mutex>
#include <deque>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace rex {

// Inclusive code-point range inside the 16-bit plane.
struct CharRange {
    std::uint16_t lo;
    std::uint16_t hi;
    friend bool operator==(const CharRange&, const CharRange&) = default;
};

class CharAlgebra;

// Canonical character-set predicate. Two predicates with the same
// denotation are the same interned object, so identity compares are
// set-equality compares.
class CharPredicate {
  public:
    CharPredicate() = default;

    std::uint32_t id() const { return id_; }
    std::span<const CharRange> ranges() const;
    bool contains(char16_t c) const;
    bool empty() const;               // denotes no character
    bool full() const;                // denotes the whole plane
    std::size_t count() const;        // number of code points denoted

    friend bool operator==(CharPredicate a, CharPredicate b) { return a.id_ == b.id_; }
    friend bool operator!=(CharPredicate a, CharPredicate b) { return a.id_ != b.id_; }

  private:
    friend class CharAlgebra;
    struct Data;
    CharPredicate(std::uint32_t id, const Data* data) : id_(id), data_(data) {}
    std::uint32_t id_ = 0;
    const Data* data_ = nullptr;
};

// Effective Boolean algebra of CharPredicates with canonical interning.
// Construction is serialized; lookups on interned predicates are
// read-only and safe to share across threads.
class CharAlgebra {
  public:
    CharAlgebra();
    CharAlgebra(const CharAlgebra&) = delete;
    CharAlgebra& operator=(const CharAlgebra&) = delete;

    CharPredicate bot();
    CharPredicate top();
    CharPredicate singleton(char16_t c);
    CharPredicate range(char16_t lo, char16_t hi);
    CharPredicate from_ranges(std::vector<CharRange> ranges);

    CharPredicate or_(CharPredicate a, CharPredicate b);
    CharPredicate and_(CharPredicate a, CharPredicate b);
    CharPredicate not_(CharPredicate a);

    static bool is_sat(CharPredicate p) { return !p.empty(); }
    static bool denotes(CharPredicate p, char16_t c) { return p.contains(c); }

    // Frozen named classes (see tools/gen_unicode_classes.py).
    CharPredicate digit();
    CharPredicate word();
    CharPredicate space();
    CharPredicate dot();  // every character except \n

  private:
    CharPredicate intern(std::vector<CharRange> ranges);

    std::mutex mu_;
    std::deque<CharPredicate::Data> arena_;
    std::unordered_map<std::string, std::uint32_t> table_;
    std::vector<const CharPredicate::Data*> by_id_;
    CharPredicate bot_, top_, digit_, word_, space_, dot_;
};

struct CharPredicate::Data {
    std::vector<CharRange> ranges;  // sorted, disjoint, non-adjacent
    std::size_t count;
};

inline std::span<const CharRange> CharPredicate::ranges() const { return data_->ranges; }
inline bool CharPredicate::empty() const { return data_->ranges.empty(); }
inline bool CharPredicate::full() const { return data_->count == 0x10000; }
inline std::size_t CharPredicate::count() const { return data_->count; }

// Minimal partition of the plane refining every input predicate.
// Every input predicate is a union of whole minterms, so one table
// lookup classifies a character for all of them at once.
class MintermTable {
  public:
    static MintermTable build(CharAlgebra& alg, std::span<const CharPredicate> preds);

    std::size_t size() const { return minterms_.size(); }
    CharPredicate minterm(std::size_t i) const { return minterms_[i]; }
    std::uint16_t classify(char16_t c) const { return classifier_[c]; }

  private:
    std::vector<CharPredicate> minterms_;
    std::vector<std::uint16_t> classifier_;  // one slot per code point
};

}  // namespace rex
