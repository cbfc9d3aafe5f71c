#include <doctest.h>

#include <fstream>
#include <sstream>

#include "sln/foam.hpp"
#include "support/suites.hpp"

using namespace sln;

namespace {

FoamWord load(const std::string& name) {
    std::ifstream in(testing::foam_fixture_dir() / name);
    std::stringstream ss;
    ss << in.rdbuf();
    return FoamWord::from_text(ss.str());
}

// the foam as a map on localized states; zero entries dropped
StateVec<mpq_class> image(const KLRWord& k, const std::vector<uint32_t>& st) {
    Localization<mpq_class> loc(k.weight.n);
    StateVec<mpq_class> v;
    v[st] = 1;
    auto out = loc.run(k, v);
    for (auto it = out.begin(); it != out.end();) it = it->second == 0 ? out.erase(it) : std::next(it);
    return out;
}

bool is_zero_map(const KLRWord& k) {
    Localization<mpq_class> loc(k.weight.n);
    for (auto& st : loc.states(k.weight, k.domain))
        if (!image(k, st).empty()) return false;
    return true;
}

} // namespace

TEST_SUITE("foam") {

TEST_CASE("fixture corpus") {
    auto v = testing::foam_suite();
    INFO(v.text());
    CHECK(v.pass);
}

TEST_CASE("degree of a blister") {
    FoamWord b = load("blister.foam"), bd = load("blister_dotted.foam");
    CHECK(foam_degree(b) == -2);
    CHECK(weighted_euler_validate(b) == -2);
    CHECK(foam_degree(bd) == 0);
    CHECK(weighted_euler_validate(bd) == 0);
    // undotted blister vanishes, the dotted one is the identity up to sign
    CHECK(is_zero_map(foam_to_klr(b)));
    CHECK_FALSE(is_zero_map(foam_to_klr(bd)));
}

TEST_CASE("replay and target") {
    FoamWord f = load("blister.foam");
    auto words = f.replay();
    REQUIRE(words.size() == 3);
    CHECK(words[1].size() == 2);
    CHECK(f.target().rungs() == f.source.rungs());
    FoamWord twice = f.then(f);
    CHECK(foam_degree(twice) == -4);
    CHECK(twice.replay() == twice.replay());
}

TEST_CASE("text round trip") {
    FoamWord f = load("cup_thick2.foam");
    FoamWord g = FoamWord::from_text(f.to_text());
    CHECK(g.to_text() == f.to_text());
    CHECK(foam_degree(g) == 2);
}

TEST_CASE("malformed foam text names the line") {
    try {
        FoamWord::from_text("web 2 0,2 E1^2\nunzip 0 1\nfrobnicate 0\n");
        FAIL("no error");
    } catch (const std::exception& e) {
        CHECK(std::string(e.what()).find("3") != std::string::npos);
    }
    CHECK_THROWS(FoamWord::from_text("web 2 0,2 E1^2\nzip 0\n").replay());
}

TEST_CASE("move outside the web is rejected") {
    FoamWord f;
    f.source = LadderWeb(GlWeight{2, {0, 2}}, {E(1, 2)});
    f.moves = {FoamMove::zip(0)};
    CHECK_THROWS_AS(f.replay(), DomainError);
}

}
