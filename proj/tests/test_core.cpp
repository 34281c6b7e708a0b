#include <doctest.h>

#include "discop/core.hpp"
#include "discop/finsupp.hpp"
#include "fixtures.hpp"

using namespace discop;
using fixtures::L;

TEST_CASE("rational arithmetic is exact and normalized") {
    Rat half(1, 2);
    Rat third(1, 3);
    CHECK((half + third).str() == "5/6");
    CHECK((half * third).str() == "1/6");
    CHECK((half - half).is_zero());
    CHECK((half / third).str() == "3/2");
    CHECK(Rat(2, 4) == half);
    CHECK(Rat(-3).is_negative());
    CHECK(half < Rat(1));
    CHECK(Rat(7).is_integer());
    CHECK_FALSE(half.is_integer());
}

TEST_CASE("rational powers, including negative exponents") {
    CHECK(Rat(2).pow(10) == Rat(1024));
    CHECK(Rat(2).pow(0) == Rat(1));
    CHECK(Rat(2).pow(-3) == Rat(1, 8));
    CHECK(Rat(2, 3).pow(2) == Rat(4, 9));
}

TEST_CASE("rational parsing round-trips") {
    CHECK(Rat::parse("3/4")->str() == "3/4");
    CHECK(Rat::parse("-7")->str() == "-7");
    CHECK(Rat::parse("6/4")->str() == "3/2");
    CHECK_FALSE(Rat::parse("1/0").has_value());
    CHECK_FALSE(Rat::parse("x").has_value());
    CHECK_FALSE(Rat::parse("").has_value());
}

TEST_CASE("complex rationals") {
    ComplexRat z(Rat(1), Rat(-2));
    CHECK(z.conj().im == Rat(2));
    CHECK(z.abs_sq() == Rat(5));
    CHECK(z.str() == "1,-2");
    CHECK(ComplexRat::parse("1,-2") == z);
    CHECK(ComplexRat::parse("3/2") == ComplexRat(Rat(3, 2)));
}

TEST_CASE("mass values distinguish finite from infinite") {
    Mass m(Rat(5, 2));
    CHECK(m.is_finite());
    CHECK(m.str() == "5/2");
    CHECK(Mass::infinite().is_infinite());
    CHECK(Mass::infinite().str() == "inf");
}

TEST_CASE("labels order deterministically") {
    CHECK(Label::named("a") < Label::named("b"));
    CHECK(Label::at(0, -1) < Label::at(0, 0));
    CHECK(Label::at(0, 5) < Label::at(1, 0));
    CHECK(Label::at(2, 3).str() == "2:3");
    CHECK(Label::named("p").str() == "p");
}

TEST_CASE("finite instances validate their data") {
    CHECK_THROWS_AS(fixtures::finite({"a"}, {1}, {"z"}), ValidationError);
    CHECK_THROWS_AS(fixtures::finite({"a", "a"}, {1, 1}, {"a", "a"}), ValidationError);
    CHECK_THROWS_AS(fixtures::finite({"a"}, {-1}, {"a"}), ValidationError);
    FiniteInstance fi = fixtures::finite({"a", "b"}, {1, 0}, {"b", "a"});
    CHECK(fi.support() == std::vector<Label>{L("a")});
    CHECK(fi.fiber(L("a")) == std::vector<Label>{L("b")});
}

TEST_CASE("orbit specs expose weights, images and fibers") {
    OrbitSpec fixed = OrbitSpec::fixed_point(Rat(3));
    CHECK(fixed.weight_at(0) == Rat(3));
    CHECK(fixed.image_of(0) == 0);
    CHECK(fixed.fiber_of(0) == std::vector<std::int64_t>{0});

    OrbitSpec cyc = OrbitSpec::cycle({Rat(1), Rat(2), Rat(4)});
    CHECK(cyc.image_of(2) == 0);
    CHECK(cyc.fiber_of(0) == std::vector<std::int64_t>{2});
    CHECK(cyc.weight_at(1) == Rat(2));

    OrbitSpec line = OrbitSpec::line(Rat(1), Rat(1, 2));
    CHECK(line.weight_at(-2) == Rat(4));
    CHECK(line.weight_at(3) == Rat(1, 8));
    CHECK(line.image_of(5) == 6);
    CHECK(line.fiber_of(0) == std::vector<std::int64_t>{-1});

    OrbitSpec loop = OrbitSpec::ray_loop(Rat(2));
    CHECK(loop.weight_at(0) == Rat(1));
    CHECK(loop.weight_at(1) == Rat(1));
    CHECK(loop.weight_at(3) == Rat(4));
    CHECK(loop.image_of(0) == 0);
    CHECK(loop.image_of(4) == 3);
    CHECK(loop.fiber_of(0) == std::vector<std::int64_t>{0, 1});
    CHECK(loop.fiber_of(2) == std::vector<std::int64_t>{3});
    CHECK_THROWS_AS(OrbitSpec::ray_loop(Rat(1)), ValidationError);
}

TEST_CASE("line orbits enumerate outward from the base") {
    OrbitSpec line = OrbitSpec::line(Rat(1), Rat(1, 2));
    std::vector<std::int64_t> got;
    for (std::int64_t r = 0; r < 5; ++r) got.push_back(*line.enum_index(r));
    CHECK(got == std::vector<std::int64_t>{0, 1, -1, 2, -2});
}

TEST_CASE("orbit families answer point queries") {
    OrbitFamilyInstance fam({OrbitSpec::fixed_point(Rat(1)),
                             OrbitSpec::cycle({Rat(2), Rat(2)}),
                             OrbitSpec::line(Rat(1), Rat(1, 2))});
    CHECK(fam.contains(Label::at(1, 1)));
    CHECK_FALSE(fam.contains(Label::at(1, 2)));
    CHECK_FALSE(fam.contains(L("a")));
    CHECK(fam.weight(Label::at(2, -1)) == Rat(2));
    CHECK(fam.image(Label::at(1, 1)) == Label::at(1, 0));
    FiberInfo f = fam.fiber(Label::at(0, 0));
    CHECK(f.is_finite());
    CHECK(f.members() == std::vector<Label>{Label::at(0, 0)});
    CHECK_FALSE(fam.finitely_many_points());

    std::vector<Label> first = fam.enumerate(5);
    CHECK(first == std::vector<Label>{Label::at(0, 0), Label::at(1, 0), Label::at(2, 0),
                                      Label::at(1, 1), Label::at(2, 1)});
}

TEST_CASE("support respects windows and demands them for black boxes") {
    Instance fin(fixtures::swap_ab());
    CHECK(support(fin).size() == 3);

    Instance lazy = fixtures::lazy_line_half();
    CHECK_THROWS_AS(support(lazy), MissingWindow);
    CHECK(support(lazy, 4).size() == 4);
}

TEST_CASE("nonsingularity check finds the offending null point") {
    CHECK(std::holds_alternative<std::monostate>(check_nonsingular(fixtures::swap_ab())));
    auto bad = check_nonsingular(fixtures::null_receiver());
    auto* v = std::get_if<NonsingularityViolation>(&bad);
    REQUIRE(v != nullptr);
    CHECK(v->witness == L("b"));
}

TEST_CASE("canonical representative fixes null points and nothing else") {
    FiniteInstance fi = fixtures::finite({"a", "b", "c"}, {1, 0, 1}, {"c", "c", "a"});
    FiniteInstance canon = canonical_representative(fi);
    CHECK(canon.phi(L("b")) == L("b"));
    CHECK(canon.phi(L("a")) == L("c"));
    CHECK(canonical_representative(canon) == canon);
    CHECK_THROWS_AS(canonical_representative(fixtures::null_receiver()), NotNonsingular);
}

TEST_CASE("preimage sets walk the map backwards") {
    Instance collapse(fixtures::collapse3());
    auto pre1 = preimage_set(collapse, 1, L("c"));
    REQUIRE(pre1.has_value());
    CHECK(pre1->size() == 3);
    auto pre2 = preimage_set(collapse, 2, L("a"));
    REQUIRE(pre2.has_value());
    CHECK(pre2->empty());

    CHECK_FALSE(preimage_set(fixtures::lazy_infinite_fiber(), 1, L("w")).has_value());
}

TEST_CASE("pushforward mass matches the loop-end geometry") {
    Instance loop = fixtures::ray_loop(2);
    Label end = Label::at(0, 0);
    CHECK(pushforward(loop, 1, end) == Mass(Rat(2)));
    CHECK(pushforward(loop, 2, end) == Mass(Rat(4)));
    CHECK(pushforward(loop, 3, end) == Mass(Rat(8)));
    CHECK(pushforward(loop, 1, Label::at(0, 2)) == Mass(Rat(4)));

    CHECK(pushforward(fixtures::lazy_infinite_fiber(), 1, L("w")).is_infinite());
}

TEST_CASE("finitely supported functions accumulate and drop zeros") {
    FinSuppFn f = FinSuppFn::basis(L("a"));
    f.add(L("b"), ComplexRat(Rat(2)));
    f.add(L("a"), ComplexRat(Rat(-1)));
    CHECK(f.entries().size() == 1);
    CHECK(f.at(L("b")) == ComplexRat(Rat(2)));
    CHECK(f.at(L("a")).is_zero());
    CHECK(f.str() == "b -> 2,0");
    CHECK(FinSuppFn().str() == "0");

    FinSuppFn g = f + f.scaled(ComplexRat(Rat(-1)));
    CHECK(g == FinSuppFn());
}
