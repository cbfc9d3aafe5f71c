#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "sln/klr.hpp"
#include "support/suites.hpp"

using namespace sln;

namespace {

KLRWord closed(const GlWeight& w, std::vector<KLRSlice> s) {
    KLRWord d;
    d.weight = w;
    d.slices = std::move(s);
    return d;
}

} // namespace

TEST_SUITE("klr") {

TEST_CASE("slice degrees") {
    std::vector<Strand> ee{E(1), E(1)}, e12{E(1), E(2)}, e13{E(1), E(3)};
    GlWeight w{3, {0, 3, 3, 0}};
    CHECK(slice_degree(KLRSlice::crossing(0), ee, w) == -2);
    CHECK(slice_degree(KLRSlice::crossing(0), e12, w) == 1);
    CHECK(slice_degree(KLRSlice::crossing(0), e13, w) == 0);
    CHECK(slice_degree(KLRSlice::dot(0, 2), ee, w) == 4);
}

TEST_CASE("empty diagram evaluates to 1") {
    CHECK(evaluate_closed(closed(GlWeight{2, {2, 0}}, {})) == Scalar(1));
    KLRWord open;
    open.weight = GlWeight{2, {2, 0}};
    open.domain = {F(1)};
    CHECK_THROWS_AS(evaluate_closed(open), DomainError);
}

TEST_CASE("degree-zero circle with n-1 dots is a unit") {
    for (int n = 2; n <= 4; ++n) {
        GlWeight w{n, {n, 0}};
        // counterclockwise and clockwise thin circles of colour 1
        for (Orient o : {Orient::FE, Orient::EF}) {
            KLRWord d = closed(w, {KLRSlice::cup(0, o, 1, 1), KLRSlice::dot(0, n - 1), KLRSlice::cap(0)});
            if (d.is_zero_by_weights()) continue;
            CHECK(d.degree() == 0);
            Scalar v = evaluate_closed(d);
            CHECK(v.is_unit());
            KLRSum r = reduce(d);
            Scalar acc(0);
            for (auto& t : r.terms) acc += evaluate_closed(t);
            CHECK(acc == v);
        }
    }
}

TEST_CASE("positive-degree closed diagrams vanish") {
    GlWeight w{3, {3, 0}};
    KLRWord d = closed(w, {KLRSlice::cup(0, Orient::EF, 1, 1), KLRSlice::dot(0, 4), KLRSlice::cap(0)});
    if (!d.is_zero_by_weights()) {
        CHECK(d.degree() > 0);
        CHECK(evaluate_closed(d).is_zero());
    }
}

TEST_CASE("local rewrites") {
    GlWeight w{2, {0, 2}};
    KLRWord d;
    d.weight = w;
    d.domain = {E(1), E(1)};
    d.slices = {KLRSlice::crossing(0), KLRSlice::crossing(0)};
    auto r = rewrite_step(d, 0);
    REQUIRE(r);
    CHECK(r->empty()); // nilHecke: crossing squared is zero

    GlWeight w3{3, {0, 3, 3, 0}};
    KLRWord far;
    far.weight = GlWeight{3, {0, 1, 0, 1}};
    far.domain = {E(1), E(3)};
    far.slices = {KLRSlice::crossing(0), KLRSlice::crossing(0)};
    auto rf = rewrite_step(far, 0);
    REQUIRE(rf);
    REQUIRE(rf->size() == 1);
    CHECK((*rf)[0].slices.empty());

    KLRWord slide;
    slide.weight = w;
    slide.domain = {E(1), E(1)};
    slide.slices = {KLRSlice::crossing(0), KLRSlice::dot(0, 1)};
    auto rs = rewrite_step(slide, 0);
    REQUIRE(rs);
    CHECK(rs->size() == 2); // crossing with the dot moved below, plus the identity
    for (auto& t : *rs) CHECK(t.degree() == slide.degree());
}

TEST_CASE("reduce is idempotent on its output") {
    GlWeight w{2, {0, 2}};
    KLRWord d;
    d.weight = w;
    d.domain = {E(1), E(1)};
    d.slices = {KLRSlice::dot(1, 1), KLRSlice::crossing(0), KLRSlice::dot(0, 1), KLRSlice::crossing(0)};
    KLRSum r = reduce(d);
    for (auto& t : r.terms) {
        KLRSum again = reduce(t);
        REQUIRE(again.terms.size() == 1);
        CHECK(again.terms[0].canonical() == t.canonical());
    }
}

TEST_CASE("thick strands explode into idempotents") {
    GlWeight w{3, {0, 3}};
    auto one = explode_thick(w, {E(1, 1)});
    CHECK(one.shift == 0);
    CHECK(one.word.slices.empty());
    auto two = explode_thick(w, {E(1, 2)});
    CHECK(two.shift == 1);
    CHECK(two.word.domain.size() == 2);
    int crossings = 0, dots = 0;
    for (auto& s : two.word.slices) {
        crossings += s.kind == SliceKind::Crossing;
        if (s.kind == SliceKind::Dot) dots += s.count;
    }
    CHECK(crossings == 1);
    CHECK(dots == 1);
    // e_a e_a = e_a as operators on the localized states
    for (int a = 2; a <= 3; ++a) {
        auto ex = explode_thick(w, {E(1, a)});
        KLRWord twice = ex.word.then(ex.word);
        Localization<mpq_class> loc(3);
        for (auto& st : loc.states(w, ex.word.domain)) {
            StateVec<mpq_class> v;
            v[st] = 1;
            auto once = loc.run(ex.word, v), both = loc.run(twice, v);
            for (auto it = once.begin(); it != once.end();) it = it->second == 0 ? once.erase(it) : std::next(it);
            for (auto it = both.begin(); it != both.end();) it = it->second == 0 ? both.erase(it) : std::next(it);
            CHECK(once == both);
        }
    }
}

TEST_CASE("bubble values") {
    // clockwise with λ - 1 dots has degree zero
    for (int lam = 1; lam <= 3; ++lam) {
        Bubble b{1, BubbleOrient::Clockwise, lam - 1, lam};
        CHECK(b.degree() == 0);
        auto v = bubble_value(b, false);
        REQUIRE(v);
        CHECK(v->is_one());
        Bubble neg{1, BubbleOrient::Clockwise, lam - 2, lam};
        if (lam >= 2) {
            auto z = bubble_value(neg, false);
            REQUIRE(z);
            CHECK(z->is_zero());
        }
    }
    Bubble pos{1, BubbleOrient::Clockwise, 3, 1};
    CHECK_FALSE(bubble_value(pos, false));
    auto at_trivial = bubble_value(pos, true);
    REQUIRE(at_trivial);
    CHECK(at_trivial->is_zero());
}

TEST_CASE("fake bubbles follow the infinite Grassmannian recursion") {
    // degree 2 fake bubble at λ = 3: minus the degree-2 real bubble of the other orientation
    auto e = fake_bubble_expansion(BubbleOrient::CounterClockwise, 2, 3);
    REQUIRE(e.size() == 1);
    CHECK(e.begin()->first == std::vector<int>{2});
    CHECK(e.begin()->second == Scalar(-1));
    CHECK(fake_bubble_expansion(BubbleOrient::CounterClockwise, 0, 3).at({}) == Scalar(1));
    // degree 4: b_2 = -(c_2 + b_1 c_1) with b_1 = -c_1, so b_2 = c_1^2 - c_2
    auto e4 = fake_bubble_expansion(BubbleOrient::CounterClockwise, 4, 3);
    CHECK(e4.at({2, 2}) == Scalar(1));
    CHECK(e4.at({4}) == Scalar(-1));
}

TEST_CASE("evaluation cache persists and skips corrupt lines") {
    auto path = std::filesystem::temp_directory_path() / "slnfoam_cache_test.txt";
    std::filesystem::remove(path);
    {
        EvalCache c(path);
        c.insert(0xabcull, Scalar::parse("-3/4"));
        c.insert(0x10ull, Scalar(5));
    }
    {
        std::ofstream out(path, std::ios::app);
        out << "not a line\n";
    }
    EvalCache again(path);
    CHECK(again.size() == 2);
    CHECK(again.skipped_lines() == 1);
    CHECK(*again.find(0xabcull) == Scalar::parse("-3/4"));
    CHECK_FALSE(again.find(0x11ull));
    std::filesystem::remove(path);
}

TEST_CASE("relation probes at random weights") {
    auto v = testing::klr_suite({20, 7});
    INFO(v.text());
    CHECK(v.pass);
}

}
