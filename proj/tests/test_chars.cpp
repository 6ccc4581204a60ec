#include <doctest.h>

#include <thread>

#include "rex/chars.hpp"
#include "util.hpp"

using namespace rex;

namespace {

bool subset(CharAlgebra& alg, CharPredicate a, CharPredicate b) {
    return alg.and_(a, b) == a;
}

// Membership probes: the full 256-point low grid plus spread samples
// across the plane.
std::vector<char16_t> probe_points() {
    std::vector<char16_t> pts;
    for (int c = 0; c < 256; ++c) pts.push_back(static_cast<char16_t>(c));
    for (int c = 256; c < 0x10000; c += 257) pts.push_back(static_cast<char16_t>(c));
    return pts;
}

}  // namespace

TEST_CASE("boolean connectives agree with set denotation") {
    CharAlgebra alg;
    CHECK(alg.and_(alg.range(u'0', u'9'), alg.digit()) == alg.range(u'0', u'9'));
    CHECK(alg.not_(alg.not_(alg.word())) == alg.word());
    CHECK(alg.or_(alg.space(), alg.not_(alg.space())) == alg.top());
    CHECK(subset(alg, alg.range(u'0', u'9'), alg.digit()));
    CHECK(alg.range(u'0', u'9') != alg.digit());
    CHECK(subset(alg, alg.digit(), alg.word()));
}

TEST_CASE("satisfiability and membership") {
    CharAlgebra alg;
    CHECK_FALSE(CharAlgebra::is_sat(alg.bot()));
    CHECK(CharAlgebra::is_sat(alg.top()));
    CHECK_FALSE(CharAlgebra::denotes(alg.word(), u'\n'));
    CHECK_FALSE(CharAlgebra::denotes(alg.dot(), u'\n'));
    CHECK(CharAlgebra::denotes(alg.dot(), u'a'));
    CHECK(CharAlgebra::denotes(alg.word(), u'_'));
    CHECK_FALSE(CharAlgebra::denotes(alg.word(), u'#'));
}

TEST_CASE("canonical interning yields identical ids") {
    CharAlgebra alg;
    CharPredicate a = alg.from_ranges({{u'a', u'c'}, {u'e', u'f'}});
    CharPredicate b = alg.or_(alg.range(u'a', u'c'), alg.range(u'e', u'f'));
    CHECK(a.id() == b.id());
    CHECK(alg.or_(alg.range(u'a', u'b'), alg.range(u'b', u'c')) == alg.range(u'a', u'c'));
    // Adjacent ranges coalesce to one canonical form.
    CHECK(alg.or_(alg.range(u'a', u'b'), alg.range(u'c', u'd')) == alg.range(u'a', u'd'));
}

TEST_CASE("algebra laws hold on membership probes") {
    CharAlgebra alg;
    testutil::Rng rng(42);
    auto pts = probe_points();
    auto random_pred = [&] {
        CharPredicate p = alg.bot();
        for (int i = 0; i < 3; ++i) {
            char16_t lo = static_cast<char16_t>(rng.below(0xFFF0));
            p = alg.or_(p, alg.range(lo, static_cast<char16_t>(lo + rng.below(300))));
        }
        return p;
    };
    for (int iter = 0; iter < 50; ++iter) {
        CharPredicate p = random_pred(), q = random_pred(), r = random_pred();
        CHECK(alg.not_(alg.or_(p, q)) == alg.and_(alg.not_(p), alg.not_(q)));
        CHECK(alg.or_(p, alg.and_(p, q)) == p);
        CHECK(alg.and_(p, alg.or_(q, r)) == alg.or_(alg.and_(p, q), alg.and_(p, r)));
        for (char16_t c : pts) {
            CHECK(alg.or_(p, q).contains(c) == (p.contains(c) || q.contains(c)));
            CHECK(alg.and_(p, q).contains(c) == (p.contains(c) && q.contains(c)));
            CHECK(alg.not_(p).contains(c) == !p.contains(c));
        }
    }
}

TEST_CASE("minterms of {a, b}") {
    CharAlgebra alg;
    CharPredicate preds[] = {alg.singleton(u'a'), alg.singleton(u'b')};
    MintermTable t = MintermTable::build(alg, preds);
    REQUIRE(t.size() == 3);
    CHECK(t.minterm(0) == alg.singleton(u'a'));
    CHECK(t.minterm(1) == alg.singleton(u'b'));
    CHECK(t.minterm(2) == alg.not_(alg.or_(alg.singleton(u'a'), alg.singleton(u'b'))));
    CHECK(t.classify(u'a') == 0);
    CHECK(t.classify(u'b') == 1);
    CHECK(t.classify(u'z') == 2);
}

TEST_CASE("minterms of {top} is the whole plane") {
    CharAlgebra alg;
    CharPredicate preds[] = {alg.top()};
    MintermTable t = MintermTable::build(alg, preds);
    REQUIRE(t.size() == 1);
    CHECK(t.minterm(0) == alg.top());
}

TEST_CASE("minterms of {\\d, [0-9]} against a brute-force partition") {
    CharAlgebra alg;
    CharPredicate digits09 = alg.range(u'0', u'9');
    CharPredicate preds[] = {alg.digit(), digits09};
    MintermTable t = MintermTable::build(alg, preds);
    REQUIRE(t.size() == 3);
    CHECK(t.minterm(0) == digits09);
    CHECK(t.minterm(1) == alg.and_(alg.digit(), alg.not_(digits09)));
    CHECK(t.minterm(2) == alg.not_(alg.digit()));
    for (std::uint32_t c = 0; c <= 0xFFFF; ++c) {
        auto ch = static_cast<char16_t>(c);
        std::uint16_t expect = digits09.contains(ch) ? 0 : alg.digit().contains(ch) ? 1 : 2;
        REQUIRE(t.classify(ch) == expect);
    }
}

TEST_CASE("minterms refine every input predicate") {
    CharAlgebra alg;
    testutil::Rng rng(7);
    for (int iter = 0; iter < 20; ++iter) {
        std::vector<CharPredicate> preds;
        for (int i = 0; i < 4; ++i) {
            char16_t lo = static_cast<char16_t>(rng.below(0xFF00));
            preds.push_back(alg.range(lo, static_cast<char16_t>(lo + rng.below(500))));
        }
        MintermTable t = MintermTable::build(alg, preds);
        CharPredicate all = alg.bot();
        for (std::size_t i = 0; i < t.size(); ++i) {
            all = alg.or_(all, t.minterm(i));
            for (std::size_t j = i + 1; j < t.size(); ++j) {
                CHECK(alg.and_(t.minterm(i), t.minterm(j)) == alg.bot());
            }
            for (CharPredicate p : preds) {
                bool inside = subset(alg, t.minterm(i), p);
                bool outside = alg.and_(t.minterm(i), p) == alg.bot();
                CHECK((inside || outside));
            }
        }
        CHECK(all == alg.top());
    }
}

TEST_CASE("interning is safe under concurrent construction") {
    CharAlgebra alg;
    std::vector<std::uint32_t> ids(8);
    std::vector<std::thread> threads;
    for (int i = 0; i < 8; ++i) {
        threads.emplace_back([&alg, &ids, i] {
            CharPredicate p = alg.or_(alg.range(u'a', u'm'), alg.range(u'p', u'z'));
            ids[static_cast<std::size_t>(i)] = p.id();
        });
    }
    for (auto& t : threads) t.join();
    for (std::uint32_t id : ids) CHECK(id == ids[0]);
}
