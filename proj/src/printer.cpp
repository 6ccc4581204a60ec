#include <algorithm>
#include <string>

#include "rex/ast.hpp"
#include "rex/text.hpp"
#include "rex/unicode_classes.hpp"

namespace rex {
namespace {

std::vector<CharRange> table_to_ranges(std::span<const tables::CodePointRange> t) {
    std::vector<CharRange> out;
    out.reserve(t.size());
    for (auto [lo, hi] : t) out.push_back({lo, hi});
    return out;
}

std::vector<CharRange> complement_of(std::span<const CharRange> rs) {
    std::vector<CharRange> out;
    std::uint32_t next = 0;
    for (CharRange r : rs) {
        if (r.lo > next) out.push_back({static_cast<std::uint16_t>(next), static_cast<std::uint16_t>(r.lo - 1)});
        next = static_cast<std::uint32_t>(r.hi) + 1;
    }
    if (next <= 0xFFFF) out.push_back({static_cast<std::uint16_t>(next), 0xFFFF});
    return out;
}

bool same_ranges(std::span<const CharRange> a, std::span<const CharRange> b) {
    return a.size() == b.size() && std::equal(a.begin(), a.end(), b.begin());
}

void append_char(std::u16string& out, char16_t c, bool in_class) {
    switch (c) {
        case u'\n': out += u"\\n"; return;
        case u'\r': out += u"\\r"; return;
        case u'\t': out += u"\\t"; return;
        case u'\f': out += u"\\f"; return;
        case u'\0': out += u"\\0"; return;
        default: break;
    }
    static constexpr char16_t kOutside[] = u"\\.*+?()[]{}|&~^$";
    static constexpr char16_t kInside[] = u"\\]^-[";
    const char16_t* specials = in_class ? kInside : kOutside;
    for (const char16_t* s = specials; *s; ++s) {
        if (c == *s) {
            out += u'\\';
            break;
        }
    }
    out += c;
}

void append_class_body(std::u16string& out, std::span<const CharRange> rs) {
    for (CharRange r : rs) {
        append_char(out, r.lo, true);
        if (r.hi > r.lo) {
            if (r.hi > r.lo + 1) out += u'-';
            append_char(out, r.hi, true);
        }
    }
}

void append_pred(std::u16string& out, CharPredicate p) {
    if (p.full()) {
        out += u"[\\s\\S]";
        return;
    }
    if (p.empty()) {
        out += u"[^\\s\\S]";
        return;
    }
    static const std::vector<CharRange> digit = table_to_ranges(tables::k_digit);
    static const std::vector<CharRange> word = table_to_ranges(tables::k_word);
    static const std::vector<CharRange> space = table_to_ranges(tables::k_space);
    static const std::vector<CharRange> ndigit = complement_of(digit);
    static const std::vector<CharRange> nword = complement_of(word);
    static const std::vector<CharRange> nspace = complement_of(space);
    static const std::vector<CharRange> dot = {{0x0000, 0x0009}, {0x000B, 0xFFFF}};
    auto rs = p.ranges();
    if (same_ranges(rs, dot)) { out += u'.'; return; }
    if (same_ranges(rs, digit)) { out += u"\\d"; return; }
    if (same_ranges(rs, word)) { out += u"\\w"; return; }
    if (same_ranges(rs, space)) { out += u"\\s"; return; }
    if (same_ranges(rs, ndigit)) { out += u"\\D"; return; }
    if (same_ranges(rs, nword)) { out += u"\\W"; return; }
    if (same_ranges(rs, nspace)) { out += u"\\S"; return; }
    if (p.count() == 1) {
        append_char(out, rs.front().lo, false);
        return;
    }
    if (p.count() > 0x8000) {
        out += u"[^";
        append_class_body(out, complement_of(rs));
    } else {
        out += u'[';
        append_class_body(out, rs);
    }
    out += u']';
}

// Alt < And < sequence element.
enum Level { kAlt, kAnd, kElem };

void append_node(std::u16string& out, const Node* n, Level level);

void append_group(std::u16string& out, const Node* n) {
    out += u'(';
    append_node(out, n, kAlt);
    out += u')';
}

void append_loop_suffix(std::u16string& out, std::uint32_t lo, std::uint32_t hi) {
    auto digits = [&](std::uint32_t v) {
        std::string d = std::to_string(v);
        out.append(d.begin(), d.end());
    };
    if (lo == 0 && hi == kInf) {
        out += u'*';
    } else if (lo == 1 && hi == kInf) {
        out += u'+';
    } else if (lo == 0 && hi == 1) {
        out += u'?';
    } else {
        out += u'{';
        digits(lo);
        if (hi != lo) {
            out += u',';
            if (hi != kInf) digits(hi);
        }
        out += u'}';
    }
}

void append_node(std::u16string& out, const Node* n, Level level) {
    switch (n->kind) {
        case Kind::Pred:
            append_pred(out, n->pred);
            return;
        case Kind::Epsilon:
            out += u"()";
            return;
        case Kind::Look:
            out += n->look_dir == LookDir::Ahead
                       ? (n->look_pol == LookPol::Positive ? u"(?=" : u"(?!")
                       : (n->look_pol == LookPol::Positive ? u"(?<=" : u"(?<!");
            append_node(out, n->head, kAlt);
            out += u')';
            return;
        case Kind::Not:
            out += u'~';
            append_group(out, n->head);
            return;
        case Kind::Loop:
            if (n->head->kind == Kind::Pred || n->head->kind == Kind::Look) {
                append_node(out, n->head, kElem);
            } else {
                append_group(out, n->head);
            }
            append_loop_suffix(out, n->lo, n->hi);
            return;
        case Kind::Concat: {
            const Node* cur = n;
            while (cur->kind == Kind::Concat) {
                append_node(out, cur->head, kElem);
                cur = cur->tail;
            }
            append_node(out, cur, kElem);
            return;
        }
        case Kind::Alt: {
            bool parens = level > kAlt;
            if (parens) out += u'(';
            bool first = true;
            for (const Node* k : n->kids) {
                if (!first) out += u'|';
                first = false;
                append_node(out, k, kAnd);
            }
            if (parens) out += u')';
            return;
        }
        case Kind::And: {
            bool parens = level > kAnd;
            if (parens) out += u'(';
            bool first = true;
            for (const Node* k : n->kids) {
                if (!first) out += u'&';
                first = false;
                append_node(out, k, kElem);
            }
            if (parens) out += u')';
            return;
        }
    }
}

}  // namespace

std::string to_pattern(const Node* n) {
    std::u16string out;
    append_node(out, n, kAlt);
    return encode_utf8(out);
}

}  // namespace rex
