#include <doctest.h>

#include "discop/classify.hpp"
#include "discop/errors.hpp"
#include "discop/oracle.hpp"
#include "fixtures.hpp"

using namespace discop;
using fixtures::L;

TEST_CASE("the identity map has the identity matrix") {
    WeightedMatrixRep rep = build_matrices(fixtures::identity3());
    REQUIRE(rep.basis.size() == 3);
    for (std::int64_t i = 0; i < 3; ++i)
        for (std::int64_t j = 0; j < 3; ++j) {
            CHECK(rep.m_c.at(i, j) == (i == j ? ComplexRat(Rat(1)) : ComplexRat()));
            CHECK(rep.m_c_star.at(i, j) == rep.m_c.at(i, j));
        }
}

TEST_CASE("adjoint matrix entries carry the weight quotients") {
    FiniteInstance inst =
        fixtures::finite({"a", "b", "c"}, {1, 2, 1}, {"b", "a", "c"});
    WeightedMatrixRep rep = build_matrices(inst);
    std::int64_t ia = rep.index_of(L("a")), ib = rep.index_of(L("b"));
    REQUIRE(ia >= 0);
    REQUIRE(ib >= 0);
    // phi(a) = b with mu(a) = 1, mu(b) = 2: the adjoint sends e_b to
    // (1/2) e_a ... no: (C* f)(b) = f(a) mu(a)/mu(b), i.e. entry (b, a).
    CHECK(rep.m_c_star.at(ib, ia) == ComplexRat(Rat(1, 2)));
    CHECK(rep.m_c_star.at(ia, ib) == ComplexRat(Rat(2)));
    // The matrices satisfy the defining pairing <C f, g> = <f, C* g>.
    Instance wrapped{inst};
    for (const Label& x : inst.support())
        for (const Label& y : inst.support()) {
            FinSuppFn ex = FinSuppFn::basis(x), ey = FinSuppFn::basis(y);
            ComplexRat lhs = inner_product(wrapped, apply_c(wrapped, ex), ey);
            ComplexRat rhs =
                inner_product(wrapped, ex, column_fn(rep, rep.m_c_star, y));
            CHECK(lhs == rhs);
        }
}

TEST_CASE("the collapse map concentrates the forward matrix on one column") {
    WeightedMatrixRep rep = build_matrices(fixtures::collapse3());
    std::int64_t ic = rep.index_of(L("c"));
    for (std::int64_t row = 0; row < rep.m_c.size(); ++row)
        for (std::int64_t col = 0; col < rep.m_c.size(); ++col)
            CHECK(rep.m_c.at(row, col) ==
                  (col == ic ? ComplexRat(Rat(1)) : ComplexRat()));
}

TEST_CASE("matrices refuse instances that are not nonsingular") {
    CHECK_THROWS_AS(build_matrices(fixtures::null_receiver()), NotNonsingular);
}

TEST_CASE("oracle verdicts on the fixture zoo") {
    CHECK(oracle_normal(fixtures::cycle3(1, 1, 1)));
    CHECK_FALSE(oracle_normal(fixtures::cycle3(1, 2, 4)));
    CHECK(oracle_normal(fixtures::identity3()));
    CHECK_FALSE(oracle_quasinormal(fixtures::collapse3()));
    CHECK(oracle_symmetric(fixtures::swap_ab()));
    CHECK_FALSE(oracle_symmetric(fixtures::swap_ab(1, 2, 1)));
    CHECK_FALSE(oracle_symmetric(fixtures::cycle3(1, 1, 1)));
}

TEST_CASE("on finite instances quasinormal and normal agree") {
    for (const FiniteInstance& fi : enumerate_instances(3, {Rat(0), Rat(1), Rat(2)})) {
        if (!std::holds_alternative<std::monostate>(check_nonsingular(fi))) continue;
        CHECK(oracle_quasinormal(fi) == oracle_normal(fi));
    }
}

TEST_CASE("the adjoint column oracle matches the adjoint application") {
    for (const FiniteInstance& fi : enumerate_instances(3, {Rat(1), Rat(3)})) {
        Instance inst{fi};
        for (const Label& x : fi.support()) {
            FinSuppFn expected = oracle_adjoint_column(fi, x);
            FinSuppFn actual = apply_c_star(inst, FinSuppFn::basis(x));
            CHECK(expected == actual);
        }
    }
}

TEST_CASE("a single point with a single weight is the whole one-point world") {
    CrosscheckReport rep = exhaustive_crosscheck(1, {Rat(1)});
    CHECK(rep.instances_enumerated == 1);
    CHECK(rep.disagreements.empty());
}

TEST_CASE("classifiers and oracle agree on every instance with up to three points") {
    // Counted by hand over the grid {0, 1, 2}: one point gives 2
    // instances, two points 24, three points 414 (all-positive measures
    // contribute n^n * 2^n; a null point additionally forces the positive
    // points to map away from it).
    CrosscheckReport rep = exhaustive_crosscheck(3, {Rat(0), Rat(1), Rat(2)});
    CHECK(rep.disagreements.empty());
    CHECK(rep.instances_enumerated == 440);
}
