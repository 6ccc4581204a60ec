#include "rex/chars.hpp"

#include <algorithm>
#include <cassert>

#include "rex/unicode_classes.hpp"

namespace rex {
namespace {

constexpr std::uint32_t kPlaneSize = 0x10000;

// Normalizes to sorted, disjoint, non-adjacent ranges.
std::vector<CharRange> normalize(std::vector<CharRange> in) {
    std::sort(in.begin(), in.end(), [](CharRange a, CharRange b) { return a.lo < b.lo; });
    std::vector<CharRange> out;
    for (CharRange r : in) {
        assert(r.lo <= r.hi);
        if (!out.empty() && static_cast<std::uint32_t>(out.back().hi) + 1 >= r.lo) {
            out.back().hi = std::max(out.back().hi, r.hi);
        } else {
            out.push_back(r);
        }
    }
    return out;
}

std::vector<CharRange> union_ranges(std::span<const CharRange> a, std::span<const CharRange> b) {
    std::vector<CharRange> all(a.begin(), a.end());
    all.insert(all.end(), b.begin(), b.end());
    return normalize(std::move(all));
}

std::vector<CharRange> complement_ranges(std::span<const CharRange> a) {
    std::vector<CharRange> out;
    std::uint32_t next = 0;
    for (CharRange r : a) {
        if (r.lo > next) out.push_back({static_cast<std::uint16_t>(next), static_cast<std::uint16_t>(r.lo - 1)});
        next = static_cast<std::uint32_t>(r.hi) + 1;
    }
    if (next < kPlaneSize) out.push_back({static_cast<std::uint16_t>(next), 0xFFFF});
    return out;
}

std::vector<CharRange> intersect_ranges(std::span<const CharRange> a, std::span<const CharRange> b) {
    std::vector<CharRange> out;
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        std::uint16_t lo = std::max(a[i].lo, b[j].lo);
        std::uint16_t hi = std::min(a[i].hi, b[j].hi);
        if (lo <= hi) out.push_back({lo, hi});
        if (a[i].hi < b[j].hi) ++i; else ++j;
    }
    return out;
}

std::string range_key(std::span<const CharRange> ranges) {
    std::string key;
    key.reserve(ranges.size() * 4);
    for (CharRange r : ranges) {
        key.push_back(static_cast<char>(r.lo & 0xFF));
        key.push_back(static_cast<char>(r.lo >> 8));
        key.push_back(static_cast<char>(r.hi & 0xFF));
        key.push_back(static_cast<char>(r.hi >> 8));
    }
    return key;
}

std::vector<CharRange> table_ranges(std::span<const tables::CodePointRange> t) {
    std::vector<CharRange> out;
    out.reserve(t.size());
    for (auto [lo, hi] : t) out.push_back({lo, hi});
    return out;
}

}  // namespace

bool CharPredicate::contains(char16_t c) const {
    const auto& rs = data_->ranges;
    auto it = std::upper_bound(rs.begin(), rs.end(), c,
                               [](char16_t v, CharRange r) { return v < r.lo; });
    return it != rs.begin() && c <= std::prev(it)->hi;
}

CharAlgebra::CharAlgebra() {
    bot_ = intern({});
    top_ = intern({{0, 0xFFFF}});
    digit_ = intern(table_ranges(tables::k_digit));
    word_ = intern(table_ranges(tables::k_word));
    space_ = intern(table_ranges(tables::k_space));
    dot_ = not_(singleton(u'\n'));
}

CharPredicate CharAlgebra::intern(std::vector<CharRange> ranges) {
    ranges = normalize(std::move(ranges));
    std::string key = range_key(ranges);
    std::lock_guard lock(mu_);
    auto it = table_.find(key);
    if (it != table_.end()) {
        return CharPredicate(it->second, by_id_[it->second]);
    }
    std::size_t count = 0;
    for (CharRange r : ranges) count += static_cast<std::size_t>(r.hi) - r.lo + 1;
    arena_.push_back(CharPredicate::Data{std::move(ranges), count});
    auto id = static_cast<std::uint32_t>(by_id_.size());
    by_id_.push_back(&arena_.back());
    table_.emplace(std::move(key), id);
    return CharPredicate(id, by_id_[id]);
}

CharPredicate CharAlgebra::bot() { return bot_; }
CharPredicate CharAlgebra::top() { return top_; }
CharPredicate CharAlgebra::digit() { return digit_; }
CharPredicate CharAlgebra::word() { return word_; }
CharPredicate CharAlgebra::space() { return space_; }
CharPredicate CharAlgebra::dot() { return dot_; }

CharPredicate CharAlgebra::singleton(char16_t c) { return intern({{c, c}}); }

CharPredicate CharAlgebra::range(char16_t lo, char16_t hi) {
    assert(lo <= hi);
    return intern({{lo, hi}});
}

CharPredicate CharAlgebra::from_ranges(std::vector<CharRange> ranges) {
    return intern(std::move(ranges));
}

CharPredicate CharAlgebra::or_(CharPredicate a, CharPredicate b) {
    if (a == b) return a;
    if (a.empty()) return b;
    if (b.empty()) return a;
    if (a.full() || b.full()) return top_;
    return intern(union_ranges(a.ranges(), b.ranges()));
}

CharPredicate CharAlgebra::and_(CharPredicate a, CharPredicate b) {
    if (a == b) return a;
    if (a.empty() || b.empty()) return bot_;
    if (a.full()) return b;
    if (b.full()) return a;
    return intern(intersect_ranges(a.ranges(), b.ranges()));
}

CharPredicate CharAlgebra::not_(CharPredicate a) {
    return intern(complement_ranges(a.ranges()));
}

MintermTable MintermTable::build(CharAlgebra& alg, std::span<const CharPredicate> preds) {
    MintermTable table;
    table.minterms_.push_back(alg.top());
    for (CharPredicate p : preds) {
        std::vector<CharPredicate> next;
        next.reserve(table.minterms_.size() + 1);
        for (CharPredicate block : table.minterms_) {
            CharPredicate in = alg.and_(block, p);
            CharPredicate out = alg.and_(block, alg.not_(p));
            if (!in.empty()) next.push_back(in);
            if (!out.empty()) next.push_back(out);
        }
        table.minterms_ = std::move(next);
    }
    assert(table.minterms_.size() <= 0xFFFF);
    table.classifier_.assign(kPlaneSize, 0);
    for (std::size_t i = 0; i < table.minterms_.size(); ++i) {
        for (CharRange r : table.minterms_[i].ranges()) {
            for (std::uint32_t c = r.lo; c <= r.hi; ++c) {
                table.classifier_[c] = static_cast<std::uint16_t>(i);
            }
        }
    }
    return table;
}

}  // namespace rex
