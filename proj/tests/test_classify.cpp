#include <doctest.h>

#include "discop/classify.hpp"
#include "discop/decompose.hpp"
#include "discop/errors.hpp"
#include "fixtures.hpp"

using namespace discop;
using fixtures::L;

TEST_CASE("the collapse map is not quasinormal and the witness re-evaluates") {
    Instance inst{fixtures::collapse3()};
    Verdict v = classify_quasinormal(inst);
    REQUIRE(v.is_fails());
    const Witness& w = v.witness();
    CHECK(w.condition == "h_constant_on_fibers");
    REQUIRE(w.points.size() == 2);
    CHECK(w.points[0] == L("a"));
    CHECK(w.points[1] == L("c"));
    CHECK(w.lhs == "0");
    CHECK(w.rhs == "3");
    // The witness values are the actual derivative values at those points.
    CHECK(radon_nikodym(inst, w.points[0]).value().str() == w.lhs);
    CHECK(radon_nikodym(inst, w.points[1]).value().str() == w.rhs);
}

TEST_CASE("the power identity at n = 1 is vacuous; depth 2 exposes the collapse map") {
    Instance inst{fixtures::collapse3()};
    CHECK(multiplicative_quasinormal_check(inst, 1).is_holds());
    Verdict v = multiplicative_quasinormal_check(inst, 2);
    REQUIRE(v.is_fails());
    const Witness& w = v.witness();
    CHECK(w.condition == "multiplicative_power");
    CHECK(w.points == std::vector<Label>{L("c")});
    CHECK(w.depth == 2);
    CHECK(w.lhs == "9");  // h(c)^2
    CHECK(w.rhs == "3");  // two-step preimage mass of c over mu(c)
    CHECK_THROWS_AS(multiplicative_quasinormal_check(inst, 0), BadParameters);
}

TEST_CASE("a constant-weight cycle is normal; skewed weights break it") {
    Instance flat{fixtures::cycle3(1, 1, 1)};
    CHECK(classify_normal(flat).is_holds());
    CHECK(classify_quasinormal(flat).is_holds());
    CHECK(formally_normal_on_basis(flat).is_holds());
    Boundedness b = is_bounded(flat);
    CHECK(b.verdict.is_holds());
    CHECK(b.sup_h == SupH::exact(Rat(1)));

    Instance skew{fixtures::cycle3(1, 2, 4)};
    Verdict v = classify_normal(skew);
    REQUIRE(v.is_fails());
    CHECK(v.witness().condition == "finite_orbit_constant_measure");
    CHECK(classify_quasinormal(skew).is_fails());
    // The cycle is still a bijection, so it is surjective onto the support.
    CHECK(almost_surjective(skew).is_holds());
}

TEST_CASE("an involution with matching weights is symmetric") {
    Instance inst{fixtures::swap_ab()};
    SymmetryReport r = check_symmetric(inst);
    CHECK(r.verdict.is_holds());
    CHECK(r.involution_on_support);
    CHECK(r.weights_phi_invariant);
    REQUIRE(r.sup_h.has_value());
    CHECK(*r.sup_h == Rat(1));
    // Symmetry forces normality here: the swap is a constant-weight 2-cycle.
    CHECK(classify_normal(inst).is_holds());
}

TEST_CASE("symmetry fails when the swapped weights differ") {
    Instance inst{fixtures::swap_ab(1, 2, 1)};
    SymmetryReport r = check_symmetric(inst);
    REQUIRE(r.verdict.is_fails());
    CHECK(r.verdict.witness().condition == "adjoint_pairing");
    CHECK(r.involution_on_support);
    CHECK_FALSE(r.weights_phi_invariant);
    // The witness carries the two inner products, and they really differ.
    const Witness& w = r.verdict.witness();
    FinSuppFn ex = FinSuppFn::basis(w.points[0]);
    FinSuppFn ey = FinSuppFn::basis(w.points[1]);
    ComplexRat lhs = inner_product(inst, apply_c(inst, ex), ey);
    ComplexRat rhs = inner_product(inst, ex, apply_c(inst, ey));
    CHECK(lhs.str() == w.lhs);
    CHECK(rhs.str() == w.rhs);
    CHECK_FALSE(lhs == rhs);
}

TEST_CASE("a three-cycle is not an involution, so it is not symmetric") {
    Instance inst{fixtures::cycle3(1, 1, 1)};
    SymmetryReport r = check_symmetric(inst);
    CHECK(r.verdict.is_fails());
    CHECK_FALSE(r.involution_on_support);
}

TEST_CASE("full profile of the loop-ended ray with ratio 2") {
    Instance inst = fixtures::ray_loop(2);
    ClassificationReport rep = full_report(inst);

    CHECK(rep.densely_defined.is_holds());
    CHECK(rep.bounded.is_holds());
    CHECK(rep.sup_h == SupH::exact(Rat(2)));
    CHECK(rep.quasinormal.is_holds());
    CHECK(rep.multiplicative.is_holds());
    CHECK(rep.almost_surjective.is_holds());

    REQUIRE(rep.normal.is_fails());
    const Witness& nw = rep.normal.witness();
    CHECK(nw.condition == "injective_on_support");
    CHECK(nw.points == std::vector<Label>{Label::at(0, 0), Label::at(0, 1)});

    REQUIRE(rep.formally_normal_on_basis.is_fails());
    const Witness& fw = rep.formally_normal_on_basis.witness();
    CHECK(fw.condition == "basis_norm_equality");
    CHECK(fw.points == std::vector<Label>{Label::at(0, 0)});
    CHECK(fw.lhs == "2");  // ||C e_0||^2: the loop end has a two-point fiber
    CHECK(fw.rhs == "1");  // ||C* e_0||^2

    CHECK(rep.symmetric.is_fails());
    CHECK(rep.consistency_violations.empty());
    CHECK(rep.infinite_orbit_witnesses.empty());
}

TEST_CASE("full profile of the geometric line with ratio one half") {
    Instance inst = fixtures::line(1, 1, 1, 2);
    ClassificationReport rep = full_report(inst);

    CHECK(rep.densely_defined.is_holds());
    CHECK(rep.bounded.is_holds());
    CHECK(rep.sup_h == SupH::exact(Rat(2)));  // h = 1/q everywhere
    CHECK(rep.normal.is_holds());
    CHECK(rep.quasinormal.is_holds());
    CHECK(rep.multiplicative.is_holds());
    CHECK(rep.formally_normal_on_basis.is_holds());
    CHECK(rep.almost_surjective.is_holds());
    CHECK(rep.symmetric.is_fails());  // the shift is not an involution
    CHECK(rep.consistency_violations.empty());
}

TEST_CASE("a black-box line is verified as far as the window reaches") {
    Instance inst = fixtures::lazy_line_half();
    ClassificationReport rep = full_report(inst, Window{8});

    REQUIRE(rep.densely_defined.is_window());
    CHECK(rep.densely_defined.window() == 8);
    CHECK(rep.bounded.is_window());
    CHECK(rep.sup_h == SupH::window(Rat(2)));
    CHECK(rep.normal.is_window());
    CHECK(rep.quasinormal.is_window());
    CHECK(rep.multiplicative.is_window());
    CHECK(rep.formally_normal_on_basis.is_window());
    CHECK(rep.almost_surjective.is_window());
    // Non-involutivity is an exact counterexample even through the window.
    CHECK(rep.symmetric.is_fails());
    CHECK(rep.consistency_violations.empty());
}

TEST_CASE("black-box instances demand a window") {
    Instance inst = fixtures::lazy_line_half();
    CHECK_THROWS_AS(classify_normal(inst), MissingWindow);
    CHECK_THROWS_AS(classify_quasinormal(inst), MissingWindow);
    CHECK_THROWS_AS(is_bounded(inst), MissingWindow);
}

TEST_CASE("the unbounded normal family: normal holds, boundedness fails with anchors") {
    Instance inst{construct_unbounded_normal_measure(LineSkeletonTemplate{})};
    ClassificationReport rep = full_report(inst);

    CHECK(rep.densely_defined.is_holds());
    CHECK(rep.normal.is_holds());
    CHECK(rep.quasinormal.is_holds());
    CHECK(rep.formally_normal_on_basis.is_holds());
    CHECK(rep.sup_h == SupH::unbounded());
    REQUIRE(rep.bounded.is_fails());
    CHECK(rep.bounded.witness().condition == "sup_h_finite");
    CHECK(rep.bounded.witness().points.size() == 3);

    // One representative per orbit, pairwise disjoint by construction.
    REQUIRE(rep.infinite_orbit_witnesses.size() == 16);
    for (std::size_t i = 0; i < rep.infinite_orbit_witnesses.size(); ++i)
        CHECK(rep.infinite_orbit_witnesses[i] == Label::at(static_cast<std::int64_t>(i), 0));
    // h on orbit i is constant equal to i + 1, so the anchors really do
    // exhibit arbitrarily large derivative values.
    for (std::int64_t i = 0; i < 16; ++i) {
        DerivativeValue h = radon_nikodym(inst, Label::at(i, 0));
        REQUIRE(h.is_finite());
        CHECK(h.value() == Rat(i + 1));
    }
    CHECK(rep.consistency_violations.empty());
}

TEST_CASE("without dense definedness every operator verdict fails with the same witness") {
    Instance inst = fixtures::lazy_infinite_fiber();
    ClassificationReport rep = full_report(inst, Window{4});

    REQUIRE(rep.densely_defined.is_fails());
    const Witness& w = rep.densely_defined.witness();
    CHECK(w.condition == "finite_fiber_mass");
    CHECK(w.points == std::vector<Label>{L("w")});
    CHECK(rep.bounded.is_fails());
    CHECK(rep.bounded.witness() == w);
    CHECK(rep.normal.is_fails());
    CHECK(rep.quasinormal.is_fails());
    CHECK(rep.multiplicative.is_fails());
    CHECK(rep.formally_normal_on_basis.is_fails());
    CHECK(rep.symmetric.is_fails());
    CHECK(rep.sup_h == SupH::unbounded());
    CHECK(rep.consistency_violations.empty());
}

TEST_CASE("identity maps are everything at once") {
    Instance inst{fixtures::identity3()};
    ClassificationReport rep = full_report(inst);
    CHECK(rep.densely_defined.is_holds());
    CHECK(rep.bounded.is_holds());
    CHECK(rep.normal.is_holds());
    CHECK(rep.quasinormal.is_holds());
    CHECK(rep.multiplicative.is_holds());
    CHECK(rep.formally_normal_on_basis.is_holds());
    CHECK(rep.symmetric.is_holds());
    CHECK(rep.almost_surjective.is_holds());
    CHECK(rep.sup_h == SupH::exact(Rat(1)));
    CHECK(rep.consistency_violations.empty());
}

TEST_CASE("the commutation condition singles out the same instances as normality") {
    // Spot checks; the exhaustive comparison lives in the acceptance run.
    CHECK(check_condition_31(Instance{fixtures::identity3()}).is_holds());
    CHECK(check_condition_31(Instance{fixtures::cycle3(1, 1, 1)}).is_holds());
    CHECK(check_condition_31(Instance{fixtures::cycle3(1, 2, 4)}).is_fails());
    CHECK(check_condition_31(Instance{fixtures::collapse3()}).is_fails());
    CHECK(check_condition_31(fixtures::line(1, 1, 1, 2)).is_holds());
    CHECK(check_condition_31(fixtures::ray_loop(2)).is_fails());
}

TEST_CASE("almost surjectivity fails exactly at massive points outside the image") {
    // d has weight but no preimage at all.
    Instance inst{fixtures::finite({"a", "b", "d"}, {1, 1, 5}, {"b", "a", "a"})};
    Verdict v = almost_surjective(inst);
    REQUIRE(v.is_fails());
    CHECK(v.witness().condition == "mass_outside_image");
    CHECK(v.witness().points == std::vector<Label>{L("d")});
    CHECK(v.witness().lhs == "5");
    CHECK(v.witness().rhs == "0");

    // Give d weight zero instead: the missing preimage no longer matters.
    Instance ok{fixtures::finite({"a", "b", "d"}, {1, 1, 0}, {"b", "a", "a"})};
    CHECK(almost_surjective(ok).is_holds());
}
