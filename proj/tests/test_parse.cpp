#include <doctest.h>

#include <string>
#include <vector>

#include "rex/ast.hpp"
#include "rex/engine.hpp"
#include "rex/parse.hpp"
#include "util.hpp"

using namespace rex;
using testutil::Rng;

namespace {

struct Fixture {
    CharAlgebra alg;
    Builder b{alg};
    const Node* pat(const std::string& p) {
        ParseDiagnostics d;
        const Node* n = parse(b, p, &d);
        REQUIRE_MESSAGE(n != nullptr, p + " => " + d.render());
        return n;
    }
    ParseDiagnostics fail(const std::string& p) {
        ParseDiagnostics d;
        const Node* n = parse(b, p, &d);
        REQUIRE_MESSAGE(n == nullptr, "expected a diagnostic for: " + p);
        return d;
    }
};

}  // namespace

TEST_CASE("operator precedence: | < & < concat < loops < ~") {
    Fixture f;
    Builder& b = f.b;
    CHECK(f.pat("a|b&c") ==
          b.alternation({f.pat("a"), b.intersection({f.pat("b"), f.pat("c")})}));
    CHECK(f.pat("ab|cd") == b.alternation({f.pat("ab"), f.pat("cd")}));
    CHECK(f.pat("~a*") == b.complement(f.pat("a*")));
    CHECK(f.pat("~ab") == b.concat(b.complement(f.pat("a")), f.pat("b")));
    CHECK(f.pat("~~a") == f.pat("a"));
    CHECK(f.pat("a&b|c") == b.alternation({b.intersection({f.pat("a"), f.pat("b")}), f.pat("c")}));
}

TEST_CASE("lookarounds and groups") {
    Fixture f;
    Builder& b = f.b;
    CHECK(f.pat("a(?=c)") == b.concat(f.pat("a"), b.look(LookDir::Ahead, LookPol::Positive, f.pat("c"))));
    CHECK(f.pat("(?<!a)b") == b.concat(b.look(LookDir::Behind, LookPol::Negative, f.pat("a")), f.pat("b")));
    CHECK(f.pat("(?:ab)c") == f.pat("abc"));
    CHECK(f.pat("()") == b.epsilon());
    CHECK(f.pat("(a|b)c") == b.concat(b.alternation({f.pat("a"), f.pat("b")}), f.pat("c")));
}

TEST_CASE("escaped operators are literals") {
    Fixture f;
    CHECK(f.pat("\\&") == f.b.literal(u'&'));
    CHECK(f.pat("\\~") == f.b.literal(u'~'));
    CHECK(f.pat("a\\|b") ==
          f.b.concat(f.b.literal(u'a'), f.b.concat(f.b.literal(u'|'), f.b.literal(u'b'))));
    CHECK(f.pat("\\n") == f.b.literal(u'\n'));
}

TEST_CASE("character classes") {
    Fixture f;
    CharAlgebra& alg = f.alg;
    CHECK(f.pat("[0-9]") == f.b.pred(alg.range(u'0', u'9')));
    CHECK(f.pat("[^a]") == f.b.pred(alg.not_(alg.singleton(u'a'))));
    CHECK(f.pat("[\\s\\S]") == f.b.top());
    CHECK(f.pat("[\\w-[\\d]]") == f.b.pred(alg.and_(alg.word(), alg.not_(alg.digit()))));
    CHECK(f.pat(".") == f.b.pred(alg.dot()));
    CHECK(f.pat("[]a]") == f.b.pred(alg.or_(alg.singleton(u']'), alg.singleton(u'a'))));
    CHECK(f.pat("[a-]") == f.b.pred(alg.or_(alg.singleton(u'a'), alg.singleton(u'-'))));
    CHECK(f.pat("[a-c1]") == f.b.pred(alg.or_(alg.range(u'a', u'c'), alg.singleton(u'1'))));
}

TEST_CASE("loops and bounds") {
    Fixture f;
    CHECK(f.pat("a{2,3}") == f.b.loop(f.pat("a"), 2, 3));
    CHECK(f.pat("a{2,}") == f.b.loop(f.pat("a"), 2, kInf));
    CHECK(f.pat("a{2}") == f.b.loop(f.pat("a"), 2, 2));
    CHECK(f.pat("a{0,1}") == f.pat("a?"));
    CHECK(f.pat("a{1}") == f.pat("a"));
    // A brace that is not a quantifier is a literal.
    CHECK(f.pat("a{x}") == f.pat("a\\{x\\}"));
}

TEST_CASE("diagnostics for malformed and unsupported patterns") {
    Fixture f;
    CHECK(f.fail("a**").kind == DiagnosticKind::Syntax);
    CHECK(f.fail("*a").kind == DiagnosticKind::Syntax);
    CHECK(f.fail("(a").kind == DiagnosticKind::Syntax);
    CHECK(f.fail("a)").kind == DiagnosticKind::Syntax);
    CHECK(f.fail("[ab").kind == DiagnosticKind::Syntax);
    CHECK(f.fail("a{3,2}").kind == DiagnosticKind::BadLoopBounds);
    CHECK(f.fail("a*?").kind == DiagnosticKind::UnsupportedConstruct);
    CHECK(f.fail("a*?").message.find("lazy") != std::string::npos);
    CHECK(f.fail("a.*?b").message.find("[^b\\n]*b") != std::string::npos);
    CHECK(f.fail("\\1").kind == DiagnosticKind::UnsupportedConstruct);
    CHECK(f.fail("(?<name>a)").kind == DiagnosticKind::UnsupportedConstruct);
    CHECK(f.fail("\\G").kind == DiagnosticKind::UnsupportedConstruct);
    CHECK(f.fail("(?(a)b|c)").kind == DiagnosticKind::UnsupportedConstruct);
    CHECK(f.fail("\\q").kind == DiagnosticKind::Syntax);
    ParseDiagnostics d = f.fail("ab\xF0\x9F\x98\x80");  // supplementary-plane literal
    CHECK(d.kind == DiagnosticKind::NonBmpLiteral);
    CHECK(d.position == 2);
    CHECK(d.render().find("2: non-BMP-literal:") == 0);
}

TEST_CASE("diagnostic positions are byte offsets") {
    Fixture f;
    ParseDiagnostics d = f.fail("ab(");
    CHECK(d.position == 3);  // at end of input after the open paren
    d = f.fail("\xC3\xA9**");  // two-byte literal then a doubled quantifier
    CHECK(d.position == 3);
}

TEST_CASE("anchors desugar to lookarounds") {
    Fixture f;
    Builder& b = f.b;
    CHECK(desugar_anchor(b, Anchor::InputStart) ==
          b.look(LookDir::Behind, LookPol::Negative, b.top()));
    CHECK(desugar_anchor(b, Anchor::InputEnd) ==
          b.look(LookDir::Ahead, LookPol::Negative, b.top()));
    CHECK(f.pat("\\A") == desugar_anchor(b, Anchor::InputStart));
    CHECK(f.pat("^") == desugar_anchor(b, Anchor::LineStart));
    CHECK(f.pat("$") == desugar_anchor(b, Anchor::LineEnd));
    CHECK(f.pat("\\Z") == desugar_anchor(b, Anchor::InputEndLine));
    CHECK(f.pat("\\b") == desugar_anchor(b, Anchor::WordBorder));
    CHECK(f.pat("\\B") == desugar_anchor(b, Anchor::NonWordBorder));

    Matcher m(b, f.pat("\\w\\n"));
    Subject hash = testutil::make_subject(u"#");
    CHECK_FALSE(m.nullable(Loc(hash, 0), f.pat("\\b")));
    CHECK(m.nullable(Loc(hash, 0), f.pat("\\B")));
    Subject anb = testutil::make_subject(u"a\nb");
    CHECK(m.nullable(Loc(anb, 2), f.pat("^")));
    CHECK_FALSE(m.nullable(Loc(anb, 1), f.pat("^")));
    CHECK(m.nullable(Loc(anb, 1), f.pat("$")));
}

TEST_CASE("anchor nullability equals the positional meaning everywhere") {
    Fixture f;
    Builder& b = f.b;
    Matcher m(b, f.pat("\\w\\n"));
    Rng rng(99);
    const Anchor anchors[] = {Anchor::InputStart, Anchor::InputEnd, Anchor::InputEndLine,
                              Anchor::LineStart, Anchor::LineEnd, Anchor::WordBorder,
                              Anchor::NonWordBorder};
    for (int iter = 0; iter < 100; ++iter) {
        Subject s = testutil::make_subject(testutil::random_string(rng, u"a# \n", 8));
        for (Anchor a : anchors) {
            const Node* node = desugar_anchor(b, a);
            for (std::int32_t i = 0; i <= static_cast<std::int32_t>(s.size()); ++i) {
                REQUIRE(m.nullable(Loc(s, i), node) == testutil::anchor_meaning(f.alg, a, s, i));
            }
        }
    }
}

TEST_CASE("the positive-pair rewrite of a non-word-border is wrong") {
    Fixture f;
    Builder& b = f.b;
    const Node* wrong = f.pat("(?<=\\w)(?=\\w)|(?<=\\W)(?=\\W)");
    const Node* right = desugar_anchor(b, Anchor::NonWordBorder);
    Matcher m(b, f.pat("\\w"));
    Subject hash = testutil::make_subject(u"#");
    for (std::int32_t i = 0; i <= 1; ++i) {
        CHECK_FALSE(m.nullable(Loc(hash, i), wrong));
        CHECK(m.nullable(Loc(hash, i), right));
    }
}

TEST_CASE("parse/print round trip over a 200-pattern corpus") {
    Fixture f;
    std::vector<std::string> corpus = {
        "a", "ab", "a|b", "a&b", "a|b&c", "(a|b)c", "a*", "a+", "a?", "a{2,3}", "a{2,}",
        "a{3}", "(ab)*", "~a", "~(ab)", "~a*", "a~b", "[a-z]", "[^a-z]", "[\\d]",
        "[\\w-[\\d]]", "[]a]", "\\d\\w\\s", "\\D\\W\\S", ".", ".*", "..", "a.c",
        "(?=a)", "(?!a)", "(?<=a)", "(?<!a)", "a(?=c)", "a(?!c)d", "(?<=ab)c",
        "\\A", "\\z", "\\Z", "^", "$", "\\b", "\\B", "^ab$", "\\bword\\b",
        "a\\nb", "\\t\\r\\f", "\\0", "\\.", "\\*", "\\(", "\\)", "\\[", "\\]",
        "\\{", "\\}", "\\|", "\\&", "\\~", "\\\\", "()", "(())", "a()b",
        "abc|def|ghi", "a&b&c", "~(a|b)&c", "(a|b)&(c|d)",
        ".*[a-z].*&.*[A-Z].*&.*\\d.*&[a-zA-Z\\d]{8,}",
        "King~([\\s\\S]*\\d\\d[\\s\\S]*)Paris",
        "\\n\\n~([\\s\\S]*\\n\\n[\\s\\S]*)\\n&[\\s\\S]*King[\\s\\S]*",
        "(a|ab)*", "(a*b*)*", "abacaraba\\b", "~([^x]*)x", "a{0,1}b{1,2}c{2,}",
    };
    Rng rng(321);
    while (corpus.size() < 200) {
        corpus.push_back(to_pattern(testutil::random_node(f.b, rng, 3)));
    }
    REQUIRE(corpus.size() == 200);
    for (const std::string& p : corpus) {
        const Node* first = f.pat(p);
        const Node* second = f.pat(to_pattern(first));
        CHECK_MESSAGE(first == second, p + " -> " + to_pattern(first));
    }
}
