#include <doctest.h>

#include "rex/engine.hpp"
#include "rex/skip.hpp"
#include "util.hpp"

using namespace rex;
using testutil::Rng;

namespace {

struct Fixture {
    CharAlgebra alg;
    Builder b{alg};
    const Node* pat(const char* p) {
        ParseDiagnostics d;
        const Node* n = parse(b, p, &d);
        REQUIRE_MESSAGE(n != nullptr, d.render());
        return n;
    }
};

Subject utf8_subject(std::string_view text) {
    DecodeError err;
    auto s = Subject::from_utf8(text, &err);
    REQUIRE(s.has_value());
    return std::move(*s);
}

}  // namespace

TEST_CASE("scan advances to the first startset character") {
    Fixture f;
    Subject s1 = utf8_subject("xxxa");
    CHECK(skip_to(s1, 0, f.alg.singleton(u'a')) == 3);
    Subject s2 = utf8_subject("xxx");
    CHECK(skip_to(s2, 0, f.alg.singleton(u'a')) == 3);
    Subject s3 = utf8_subject("ab12");
    CHECK(skip_to(s3, 0, f.alg.or_(f.alg.digit(), f.alg.singleton(u'\n'))) == 2);
    CHECK(skip_to(s3, 3, f.alg.digit()) == 3);
    CHECK(skip_to(s3, 4, f.alg.digit()) == 4);
    // Wide predicates fall back to per-character classification.
    Subject s4 = utf8_subject("##åb");
    CHECK(skip_to(s4, 0, f.alg.word()) == 2);
    Subject s5 = testutil::make_subject(u"zzö");
    CHECK(skip_to(s5, 0, f.alg.singleton(u'ö')) == 2);
}

TEST_CASE("skippability of star-headed states") {
    Fixture f;
    CHECK_FALSE(is_skippable(f.pat("(12.*)&(.*\\d)")));
    CHECK(is_skippable(f.pat("(.*12.*)&(.*\\d)")));
    CHECK_FALSE(is_skippable(f.pat("ab")));
    CHECK(is_skippable(f.pat(".*ab")));
    CHECK(is_skippable(f.pat("~([\\s\\S]*\\n\\n[\\s\\S]*)")));
    CHECK(is_skippable(f.pat("(?=.*a)")));
    CHECK_FALSE(is_skippable(f.pat("(?<=.*a)")));
    CHECK_FALSE(is_skippable(f.pat("(?<=a*)x")));
    // Finite upper bounds count states, so they are not skippable.
    CHECK_FALSE(is_skippable(f.pat(".{0,5}x")));
}

TEST_CASE("startsets of the paper-style states") {
    Fixture f;
    CharAlgebra& alg = f.alg;
    CHECK(startset(alg, f.pat("(.*12.*)&(.*\\d)")) ==
          alg.or_(alg.digit(), alg.singleton(u'\n')));
    CHECK(startset(alg, f.pat(".*ab")) == alg.or_(alg.singleton(u'a'), alg.singleton(u'\n')));
    CHECK(startset(alg, f.pat("~([\\s\\S]*\\n\\n[\\s\\S]*)")) == alg.singleton(u'\n'));
    CHECK(startset(alg, f.pat("ab")) == alg.singleton(u'a'));
    CHECK(startset(alg, f.b.epsilon()) == alg.top());
    CHECK(startset(alg, f.pat("(?=a*)")) == alg.top());
    CHECK(startset(alg, f.pat("[\\s\\S]*King[\\s\\S]*")) == alg.singleton(u'K'));
}

TEST_CASE("stability classification") {
    Fixture f;
    auto st = classify_stability(f.alg, f.pat("[\\s\\S]*King[\\s\\S]*"));
    CHECK(st.kind == Stability::SelfStable);
    CHECK(st.startset == f.alg.singleton(u'K'));
    CHECK(classify_stability(f.alg, f.pat("abc")).kind == Stability::BotStable);
    CHECK(classify_stability(f.alg, f.pat("(?=a)b")).kind == Stability::Unstable);
    // Alternatives with different stability kinds cannot be classified.
    CHECK(classify_stability(f.alg, f.pat("a*b|cd")).kind == Stability::Unstable);
    // Both branches self-stable: the union of their startsets carries over.
    auto both = classify_stability(f.alg, f.pat("a*b|c*d"));
    CHECK(both.kind == Stability::SelfStable);
}

TEST_CASE("skippable states really are derivative-stable outside their startset") {
    Fixture f;
    Builder& b = f.b;
    Matcher master(b, f.pat("ab\\n"));
    const MintermTable& table = master.minterms();
    Rng rng(2024);
    int verified = 0;
    for (int iter = 0; iter < 400; ++iter) {
        const Node* r = testutil::random_node(b, rng, 3);
        SkipInfo info = skip_info(f.alg, r);
        if (!info.skippable) continue;
        for (std::size_t mi = 0; mi < table.size(); ++mi) {
            CharPredicate m = table.minterm(mi);
            if (CharAlgebra::is_sat(f.alg.and_(m, info.startset))) continue;
            char16_t c = m.ranges().front().lo;
            Subject probe = testutil::make_subject(std::u16string(1, c));
            CHECK(master.derive(Loc(probe, 0), r) == r);
            ++verified;
        }
    }
    CHECK(verified > 100);
}

TEST_CASE("matching with and without skipping is indistinguishable") {
    Fixture f;
    Builder& b = f.b;
    Rng rng(606);
    for (int iter = 0; iter < 300; ++iter) {
        const Node* r = testutil::random_node(b, rng, 3);
        Matcher m(b, r);
        Subject s = testutil::make_subject(testutil::random_string(rng, u"ab\n", 7));
        auto on = m.find_all(s, {.skip = true, .strategy = FindStrategy::Branching});
        auto off = m.find_all(s, {.skip = false, .strategy = FindStrategy::Branching});
        REQUIRE(on == off);
    }
}

TEST_CASE("skipping accelerates without changing long-text results") {
    Fixture f;
    std::string text;
    for (int i = 0; i < 200; ++i) {
        text += (i % 37 == 0) ? "line with King inside\n" : "plain filler line here\n";
        if (i % 11 == 0) text += "\n";
    }
    Subject s = utf8_subject(text);
    for (const char* p : {"[\\s\\S]*King[\\s\\S]*&[\\s\\S]*filler[\\s\\S]*",
                          "\\n\\n~([\\s\\S]*\\n\\n[\\s\\S]*)\\n&[\\s\\S]*King[\\s\\S]*",
                          ".*King.*"}) {
        Matcher m(f.b, f.pat(p));
        auto on = m.find_all(s, {.skip = true});
        auto off = m.find_all(s, {.skip = false});
        CHECK(on == off);
        CHECK_FALSE(on.empty());
    }
}
