#include "rex/parse.hpp"

#include <cctype>

#include "rex/text.hpp"

namespace rex {

std::string ParseDiagnostics::render() const {
    const char* k = "syntax";
    switch (kind) {
        case DiagnosticKind::Syntax: k = "syntax"; break;
        case DiagnosticKind::UnsupportedConstruct: k = "unsupported-construct"; break;
        case DiagnosticKind::NonBmpLiteral: k = "non-BMP-literal"; break;
        case DiagnosticKind::BadLoopBounds: k = "bad-loop-bounds"; break;
    }
    return std::to_string(position) + ": " + k + ": " + message;
}

const Node* desugar_anchor(Builder& b, Anchor a) {
    CharAlgebra& alg = b.algebra();
    const Node* top = b.top();
    const Node* word = b.pred(alg.word());
    const Node* nl = b.literal(u'\n');
    auto la = [&](LookPol p, const Node* body) { return b.look(LookDir::Ahead, p, body); };
    auto lb = [&](LookPol p, const Node* body) { return b.look(LookDir::Behind, p, body); };
    switch (a) {
        case Anchor::InputStart:
            return lb(LookPol::Negative, top);
        case Anchor::InputEnd:
            return la(LookPol::Negative, top);
        case Anchor::LineStart:
            return b.alternation({desugar_anchor(b, Anchor::InputStart), lb(LookPol::Positive, nl)});
        case Anchor::LineEnd:
            return b.alternation({desugar_anchor(b, Anchor::InputEnd), la(LookPol::Positive, nl)});
        case Anchor::InputEndLine:
            return b.alternation(
                {desugar_anchor(b, Anchor::InputEnd),
                 la(LookPol::Positive, b.concat(nl, desugar_anchor(b, Anchor::InputEnd)))});
        case Anchor::WordBorder:
            return b.alternation(
                {b.concat(lb(LookPol::Positive, word), la(LookPol::Negative, word)),
                 b.concat(lb(LookPol::Negative, word), la(LookPol::Positive, word))});
        case Anchor::NonWordBorder:
            return b.alternation(
                {b.concat(lb(LookPol::Positive, word), la(LookPol::Positive, word)),
                 b.concat(lb(LookPol::Negative, word), la(LookPol::Negative, word))});
    }
    return nullptr;
}

namespace {

struct ParseFailure {};

class Parser {
  public:
    Parser(Builder& b, std::u16string pattern, std::vector<std::uint32_t> byte_offsets,
           ParseDiagnostics* diag)
        : b_(b), alg_(b.algebra()), pat_(std::move(pattern)),
          bytes_(std::move(byte_offsets)), diag_(diag) {}

    const Node* run() {
        const Node* r = parse_alternation();
        if (pos_ != pat_.size()) {
            fail(DiagnosticKind::Syntax, "unmatched ')'");
        }
        return r;
    }

  private:
    [[noreturn]] void fail(DiagnosticKind kind, std::string msg) { fail_at(pos_, kind, std::move(msg)); }

    [[noreturn]] void fail_at(std::size_t cp_index, DiagnosticKind kind, std::string msg) {
        if (diag_) {
            diag_->position = cp_index < bytes_.size() ? bytes_[cp_index] : 0;
            diag_->kind = kind;
            diag_->message = std::move(msg);
        }
        throw ParseFailure{};
    }

    bool done() const { return pos_ >= pat_.size(); }
    char16_t peek(std::size_t ahead = 0) const {
        return pos_ + ahead < pat_.size() ? pat_[pos_ + ahead] : char16_t(0);
    }
    bool at(char16_t c, std::size_t ahead = 0) const {
        return pos_ + ahead < pat_.size() && pat_[pos_ + ahead] == c;
    }
    char16_t take() { return pat_[pos_++]; }
    void expect(char16_t c, const char* what) {
        if (done() || pat_[pos_] != c) fail(DiagnosticKind::Syntax, what);
        ++pos_;
    }

    const Node* parse_alternation() {
        std::vector<const Node*> parts{parse_intersection()};
        while (at(u'|')) {
            ++pos_;
            parts.push_back(parse_intersection());
        }
        return b_.alternation(std::move(parts));
    }

    const Node* parse_intersection() {
        std::vector<const Node*> parts{parse_sequence()};
        while (at(u'&')) {
            ++pos_;
            parts.push_back(parse_sequence());
        }
        return b_.intersection(std::move(parts));
    }

    const Node* parse_sequence() {
        std::vector<const Node*> parts;
        while (!done() && !at(u'|') && !at(u'&') && !at(u')')) {
            parts.push_back(parse_piece());
        }
        return b_.concat(parts);
    }

    // One complemented or quantified atom. '~' binds to the single
    // following atom together with its quantifier, so ~a* is ~(a*).
    const Node* parse_piece() {
        if (at(u'~')) {
            ++pos_;
            if (done() || at(u'|') || at(u'&') || at(u')')) {
                fail(DiagnosticKind::Syntax, "'~' with nothing to complement");
            }
            return b_.complement(parse_piece());
        }
        const Node* atom = parse_atom();
        bool quantified = false;
        while (!done()) {
            char16_t c = peek();
            if (c == u'*' || c == u'+' || c == u'?') {
                if (quantified) {
                    if (c == u'?') {
                        fail(DiagnosticKind::UnsupportedConstruct,
                             "lazy loops are not supported; rewrite a.*?b as a[^b\\n]*b");
                    }
                    fail(DiagnosticKind::Syntax, "nested quantifier");
                }
                ++pos_;
                atom = c == u'*'   ? b_.loop(atom, 0, kInf)
                       : c == u'+' ? b_.loop(atom, 1, kInf)
                                   : b_.loop(atom, 0, 1);
                quantified = true;
            } else if (c == u'{') {
                std::size_t save = pos_;
                std::uint32_t lo, hi;
                if (!try_parse_bounds(lo, hi)) {
                    pos_ = save;
                    break;  // literal '{' starts the next atom
                }
                if (quantified) fail_at(save, DiagnosticKind::Syntax, "nested quantifier");
                if (lo > hi) {
                    fail_at(save, DiagnosticKind::BadLoopBounds,
                            "loop lower bound exceeds upper bound");
                }
                atom = b_.loop(atom, lo, hi);
                quantified = true;
            } else {
                break;
            }
        }
        return atom;
    }

    bool try_parse_bounds(std::uint32_t& lo, std::uint32_t& hi) {
        ++pos_;  // '{'
        if (!parse_number(lo)) return false;
        if (at(u'}')) {
            ++pos_;
            hi = lo;
            return true;
        }
        if (!at(u',')) return false;
        ++pos_;
        if (at(u'}')) {
            ++pos_;
            hi = kInf;
            return true;
        }
        if (!parse_number(hi)) return false;
        if (!at(u'}')) return false;
        ++pos_;
        return true;
    }

    bool parse_number(std::uint32_t& out) {
        if (done() || peek() < u'0' || peek() > u'9') return false;
        std::uint64_t v = 0;
        while (!done() && peek() >= u'0' && peek() <= u'9') {
            v = v * 10 + (take() - u'0');
            if (v > 1000000000) {
                fail(DiagnosticKind::BadLoopBounds, "loop bound too large");
            }
        }
        out = static_cast<std::uint32_t>(v);
        return true;
    }

    const Node* parse_atom() {
        if (done()) fail(DiagnosticKind::Syntax, "unexpected end of pattern");
        std::size_t start = pos_;
        char16_t c = take();
        switch (c) {
            case u'(':
                return parse_group(start);
            case u'[':
                return b_.pred(parse_class());
            case u'.':
                return b_.pred(alg_.dot());
            case u'^':
                return desugar_anchor(b_, Anchor::LineStart);
            case u'$':
                return desugar_anchor(b_, Anchor::LineEnd);
            case u'\\':
                return parse_escape(start);
            case u'*':
            case u'+':
            case u'?':
                fail_at(start, DiagnosticKind::Syntax, "quantifier without a target");
            case u'{':
                return b_.literal(u'{');
            default:
                return b_.literal(c);
        }
    }

    const Node* parse_group(std::size_t start) {
        if (at(u'?')) {
            ++pos_;
            LookDir dir;
            LookPol pol;
            if (at(u'=')) {
                ++pos_;
                dir = LookDir::Ahead;
                pol = LookPol::Positive;
            } else if (at(u'!')) {
                ++pos_;
                dir = LookDir::Ahead;
                pol = LookPol::Negative;
            } else if (at(u'<') && at(u'=', 1)) {
                pos_ += 2;
                dir = LookDir::Behind;
                pol = LookPol::Positive;
            } else if (at(u'<') && at(u'!', 1)) {
                pos_ += 2;
                dir = LookDir::Behind;
                pol = LookPol::Negative;
            } else if (at(u':')) {
                ++pos_;
                const Node* body = parse_alternation();
                expect(u')', "unterminated group");
                return body;
            } else if (at(u'<')) {
                fail_at(start, DiagnosticKind::UnsupportedConstruct, "named groups are not supported");
            } else if (at(u'(')) {
                fail_at(start, DiagnosticKind::UnsupportedConstruct, "conditionals are not supported");
            } else {
                fail_at(start, DiagnosticKind::UnsupportedConstruct,
                        "unsupported group; only (?:, (?=, (?!, (?<=, (?<! are recognized");
            }
            const Node* body = parse_alternation();
            expect(u')', "unterminated lookaround");
            return b_.look(dir, pol, body);
        }
        const Node* body = parse_alternation();
        expect(u')', "unterminated group");
        return body;
    }

    const Node* parse_escape(std::size_t start) {
        if (done()) fail_at(start, DiagnosticKind::Syntax, "dangling escape");
        char16_t c = take();
        switch (c) {
            case u'n': return b_.literal(u'\n');
            case u'r': return b_.literal(u'\r');
            case u't': return b_.literal(u'\t');
            case u'f': return b_.literal(u'\f');
            case u'0': return b_.literal(u'\0');
            case u'd': return b_.pred(alg_.digit());
            case u'D': return b_.pred(alg_.not_(alg_.digit()));
            case u'w': return b_.pred(alg_.word());
            case u'W': return b_.pred(alg_.not_(alg_.word()));
            case u's': return b_.pred(alg_.space());
            case u'S': return b_.pred(alg_.not_(alg_.space()));
            case u'A': return desugar_anchor(b_, Anchor::InputStart);
            case u'z': return desugar_anchor(b_, Anchor::InputEnd);
            case u'Z': return desugar_anchor(b_, Anchor::InputEndLine);
            case u'b': return desugar_anchor(b_, Anchor::WordBorder);
            case u'B': return desugar_anchor(b_, Anchor::NonWordBorder);
            case u'G':
                fail_at(start, DiagnosticKind::UnsupportedConstruct, "\\G is not supported");
            default:
                if (c >= u'1' && c <= u'9') {
                    fail_at(start, DiagnosticKind::UnsupportedConstruct,
                            "backreferences are not supported");
                }
                if (c == u'k') {
                    fail_at(start, DiagnosticKind::UnsupportedConstruct,
                            "named backreferences are not supported");
                }
                if ((c >= u'a' && c <= u'z') || (c >= u'A' && c <= u'Z')) {
                    fail_at(start, DiagnosticKind::Syntax, "unrecognized escape");
                }
                return b_.literal(c);
        }
    }

    // Returns the literal code point for an escape inside a class, or
    // the named-class predicate through `named`.
    char16_t parse_class_escape(bool& is_named, CharPredicate& named) {
        std::size_t start = pos_ - 1;
        if (done()) fail_at(start, DiagnosticKind::Syntax, "dangling escape");
        is_named = false;
        char16_t c = take();
        switch (c) {
            case u'n': return u'\n';
            case u'r': return u'\r';
            case u't': return u'\t';
            case u'f': return u'\f';
            case u'0': return u'\0';
            case u'b': return u'\b';
            case u'd': is_named = true; named = alg_.digit(); return 0;
            case u'D': is_named = true; named = alg_.not_(alg_.digit()); return 0;
            case u'w': is_named = true; named = alg_.word(); return 0;
            case u'W': is_named = true; named = alg_.not_(alg_.word()); return 0;
            case u's': is_named = true; named = alg_.space(); return 0;
            case u'S': is_named = true; named = alg_.not_(alg_.space()); return 0;
            default:
                if ((c >= u'a' && c <= u'z') || (c >= u'A' && c <= u'Z')) {
                    fail_at(start, DiagnosticKind::Syntax, "unrecognized escape in character class");
                }
                return c;
        }
    }

    // Parses the body after '['. Supports negation, ranges, named
    // classes, and .NET-style subtraction [base-[sub]].
    CharPredicate parse_class() {
        std::size_t open = pos_ - 1;
        bool negated = false;
        if (at(u'^')) {
            ++pos_;
            negated = true;
        }
        CharPredicate acc = alg_.bot();
        bool first = true;
        bool subtracted = false;
        while (true) {
            if (done()) fail_at(open, DiagnosticKind::Syntax, "unterminated character class");
            char16_t c = peek();
            if (c == u']' && !first) {
                ++pos_;
                break;
            }
            first = false;
            if (c == u'-' && at(u'[', 1)) {
                pos_ += 2;
                CharPredicate sub = parse_class();
                if (!at(u']')) {
                    fail(DiagnosticKind::Syntax, "class subtraction must end the class");
                }
                acc = alg_.and_(acc, alg_.not_(sub));
                subtracted = true;
                ++pos_;
                break;
            }
            bool is_named = false;
            CharPredicate named;
            char16_t lo;
            if (c == u'\\') {
                ++pos_;
                lo = parse_class_escape(is_named, named);
            } else {
                lo = take();
            }
            if (is_named) {
                acc = alg_.or_(acc, named);
                continue;
            }
            if (at(u'-') && !at(u']', 1) && !at(u'[', 1) && pos_ + 1 < pat_.size()) {
                ++pos_;
                std::size_t hi_start = pos_;
                bool hi_named = false;
                CharPredicate hi_pred;
                char16_t hi;
                if (peek() == u'\\') {
                    ++pos_;
                    hi = parse_class_escape(hi_named, hi_pred);
                } else {
                    hi = take();
                }
                if (hi_named) {
                    fail_at(hi_start, DiagnosticKind::Syntax, "named class cannot bound a range");
                }
                if (lo > hi) fail_at(hi_start, DiagnosticKind::Syntax, "inverted class range");
                acc = alg_.or_(acc, alg_.range(lo, hi));
            } else {
                acc = alg_.or_(acc, alg_.singleton(lo));
            }
        }
        (void)subtracted;
        if (negated) acc = alg_.not_(acc);
        return acc;
    }

    Builder& b_;
    CharAlgebra& alg_;
    std::u16string pat_;
    std::vector<std::uint32_t> bytes_;
    ParseDiagnostics* diag_;
    std::size_t pos_ = 0;
};

}  // namespace

const Node* parse(Builder& b, std::string_view pattern, ParseDiagnostics* diag) {
    DecodeError derr;
    std::vector<std::uint32_t> offsets;
    auto decoded = decode_utf8(pattern, &derr, &offsets);
    if (!decoded) {
        if (diag) {
            diag->position = derr.byte_offset;
            diag->kind = derr.non_bmp ? DiagnosticKind::NonBmpLiteral : DiagnosticKind::Syntax;
            diag->message = derr.message;
        }
        return nullptr;
    }
    try {
        Parser p(b, std::move(*decoded), std::move(offsets), diag);
        return p.run();
    } catch (const ParseFailure&) {
        return nullptr;
    }
}

}  // namespace rex
