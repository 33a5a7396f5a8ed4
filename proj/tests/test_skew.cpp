#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "iwasawa/skew.hpp"

#include <random>

using namespace iwa;

namespace {

const Poly t = Poly::variable(2, 0);
const Poly tau = Poly::variable(2, 1);

Poly num(long v)
{
    return Poly::constant(2, v);
}

SkewAlgebraDescriptor algebra()
{
    return SkewAlgebraDescriptor{};
}

Poly random_element(std::mt19937_64& rng, unsigned level)
{
    std::uniform_int_distribution<unsigned> deg(0, level - 1);
    std::uniform_int_distribution<long> coef(-40, 40);
    Poly f(2);
    for (int k = 0; k < 4; ++k) {
        const unsigned i = deg(rng), j = deg(rng);
        if (i + j < level)
            f.add_term(Exponent{i, j}, coef(rng));
    }
    return f;
}

// Normal form of f in the truncated algebra.
Poly nf(const Poly& f, unsigned level)
{
    const SkewTruncatedAlgebra alg(3, 4, level);
    return alg.to_poly(alg.from_poly(f));
}

}  // namespace

TEST_CASE("descriptor validation")
{
    CHECK_NOTHROW(algebra().validate());
    SkewAlgebraDescriptor bad;
    bad.kappa0 = 5;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad.kappa0 = -2;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("normal form is idempotent")
{
    std::mt19937_64 rng(1);
    const SkewTruncatedAlgebra alg(3, 4, 7);
    for (int trial = 0; trial < 50; ++trial) {
        const Poly f = random_element(rng, 9);
        const Poly once = alg.to_poly(alg.from_poly(f));
        CHECK(alg.to_poly(alg.from_poly(once)) == once);
        for (const auto& [e, c] : once.terms()) {
            CHECK(e[0] + e[1] < 7);
            CHECK(c > 0);
        }
    }
}

TEST_CASE("group relation gamma (1+t) = (1+t)^kappa0 gamma")
{
    const auto a = algebra();
    for (unsigned level : {4u, 6u, 8u}) {
        const Poly gamma = num(1) + tau, sigma = num(1) + t;
        const Poly lhs = skew_multiply(a, gamma, sigma, level);
        const Poly rhs = skew_multiply(a, sigma.pow(4), gamma, level);
        CHECK(lhs == rhs);
        // tau t = (c - t) + c tau with c = (1+t)^4 - 1
        const Poly c = sigma.pow(4) - num(1);
        CHECK(skew_multiply(a, tau, t, level) == nf(c - t + c * tau, level));
    }
}

TEST_CASE("associativity and unit at random elements")
{
    std::mt19937_64 rng(2);
    const auto a = algebra();
    const unsigned level = 8;
    for (int trial = 0; trial < 40; ++trial) {
        const Poly x = random_element(rng, level), y = random_element(rng, level), z = random_element(rng, level);
        const Poly left = skew_multiply(a, skew_multiply(a, x, y, level), z, level);
        const Poly right = skew_multiply(a, x, skew_multiply(a, y, z, level), level);
        CHECK(left == right);
        CHECK(skew_multiply(a, num(1), x, level) == nf(x, level));
        CHECK(skew_multiply(a, x, num(1), level) == nf(x, level));
        // t-powers commute among themselves
        CHECK(skew_multiply(a, t, t.pow(2), level) == nf(t.pow(3), level));
    }
}

TEST_CASE("N-homology examples")
{
    const auto a = algebra();
    const auto sched = default_schedule();
    const auto mt = n_homology(SkewModulePresentation::cyclic(a, {t}), sched);
    CHECK(mt.h0_rank == 1);
    CHECK(mt.h1_rank == 1u);
    CHECK(mt.h1_torsion == false);
    CHECK(mt.twist_exponent == 1u);
    CHECK(mt.h0_consistent);

    const auto fr = n_homology(SkewModulePresentation::free(a, 1), sched);
    CHECK(fr.h1_rank == 0u);
    for (auto s : fr.h1_log_sizes)
        CHECK(s == 0);

    const auto fin = n_homology(SkewModulePresentation::cyclic(a, {t, num(3), tau - num(3)}), sched);
    CHECK(fin.h0_finite == Finiteness::finite);
    CHECK(fin.h1_torsion == true);
    CHECK(fin.h0_consistent);
}

TEST_CASE("twist exponent on the canonical example")
{
    const auto m = SkewModulePresentation::cyclic(algebra(), {t});
    CHECK(detect_twist_exponents(m, 6) == std::vector<unsigned>{1});
    CHECK(detect_twist_exponents(m, 8) == std::vector<unsigned>{1});
}

TEST_CASE("skew ranks")
{
    const auto a = algebra();
    const auto sched = default_schedule();
    CHECK(skew_rank(SkewModulePresentation::free(a, 1), sched).rank == 1);
    CHECK(skew_rank(SkewModulePresentation::cyclic(a, {t}), sched).rank == 0);
    const auto p = skew_rank(SkewModulePresentation::cyclic(a, {num(3)}), sched);
    CHECK(p.rank == 0);
    CHECK(p.h1_rank == 0u);
}

TEST_CASE("H_0 torsion matches higher torsion on skew examples")
{
    const auto a = algebra();
    const auto sched = default_schedule();
    const auto tp = prop_main_skew_check(SkewModulePresentation::cyclic(a, {t, num(3)}), sched);
    CHECK(tp.status == CheckStatus::holds);
    CHECK(tp.ledger["statement_a"] == true);
    CHECK(prop_main_skew_check(SkewModulePresentation::free(a, 1), sched).status == CheckStatus::holds);
    const auto mt = prop_main_skew_check(SkewModulePresentation::cyclic(a, {t}), sched);
    CHECK(mt.status == CheckStatus::holds);
    CHECK(mt.ledger["statement_a"] == false);
    CHECK(mt.ledger["statement_b"] == false);
}

TEST_CASE("finite H_0 forces torsion H_1 on a seeded family")
{
    std::mt19937_64 rng(5);
    const auto a = algebra();
    const auto sched = default_schedule();
    int checked = 0;
    for (int trial = 0; trial < 30; ++trial) {
        std::uniform_int_distribution<long> coef(-9, 9);
        const Poly f1 = num(3) + t * num(coef(rng)) + t * tau * num(coef(rng));
        const Poly f2 = tau.pow(2) + num(3) * tau * num(coef(rng)) + t * num(coef(rng));
        const auto rep = n_homology(SkewModulePresentation::cyclic(a, {f1, f2}), sched);
        if (rep.h0_finite != Finiteness::finite)
            continue;
        ++checked;
        CHECK(rep.h0_consistent);
        CHECK(rep.h1_torsion != false);
    }
    CHECK(checked >= 20);
}
