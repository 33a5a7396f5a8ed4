#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "iwasawa/errors.hpp"
#include "iwasawa/module.hpp"
#include "iwasawa/padic.hpp"

#include <random>

using namespace iwa;

namespace {

const AlgebraDescriptor L1 = AlgebraDescriptor::standard(3, 1);
const AlgebraDescriptor L2 = AlgebraDescriptor::standard(3, 2);

Poly var(std::size_t d, std::size_t i)
{
    return Poly::variable(d, i);
}

Poly num(std::size_t d, long v)
{
    return Poly::constant(d, v);
}

Poly random_entry(std::mt19937_64& rng, std::size_t d)
{
    std::uniform_int_distribution<int> pick(0, 3), coef(-9, 9), deg(0, 2);
    Poly f(d);
    if (pick(rng) == 0)
        return f;
    for (int k = 0; k < 2; ++k) {
        Exponent e(d);
        for (auto& x : e)
            x = static_cast<std::uint32_t>(deg(rng));
        f.add_term(e, coef(rng));
    }
    return f;
}

ModulePresentation random_module(std::mt19937_64& rng, const AlgebraDescriptor& a)
{
    std::uniform_int_distribution<std::size_t> size(1, 3), rows(0, 3);
    ModulePresentation m = ModulePresentation::free(a, size(rng));
    const std::size_t k = rows(rng);
    for (std::size_t i = 0; i < k; ++i) {
        std::vector<Poly> row;
        for (std::size_t j = 0; j < m.generators; ++j)
            row.push_back(random_entry(rng, a.dimension));
        m.relations.push_back(row);
    }
    return m;
}

// n minus the matrix rank at the best of several random rational points.
std::size_t rank_oracle(const ModulePresentation& m, std::mt19937_64& rng)
{
    std::uniform_int_distribution<int> v(-10000, 10000);
    std::size_t best = 0;
    for (int trial = 0; trial < 4; ++trial) {
        std::vector<Integer> x(m.algebra.dimension);
        for (auto& c : x)
            c = v(rng);
        std::vector<std::vector<mpq_class>> a;
        for (const auto& row : m.relations) {
            std::vector<mpq_class> r;
            for (const auto& f : row)
                r.emplace_back(f.evaluate(x));
            a.push_back(r);
        }
        std::size_t r = 0;
        for (std::size_t c = 0; c < m.generators && r < a.size(); ++c) {
            std::size_t piv = r;
            while (piv < a.size() && a[piv][c] == 0)
                ++piv;
            if (piv == a.size())
                continue;
            std::swap(a[piv], a[r]);
            for (std::size_t i = r + 1; i < a.size(); ++i) {
                const mpq_class f = a[i][c] / a[r][c];
                for (std::size_t j = c; j < m.generators; ++j)
                    a[i][j] -= f * a[r][j];
            }
            ++r;
        }
        best = std::max(best, r);
    }
    return m.generators - best;
}

}  // namespace

TEST_CASE("rank examples")
{
    CHECK(rank(ModulePresentation::free(L2, 1)) == 1);
    CHECK(rank(ModulePresentation::cyclic(L2, {var(2, 0)})) == 0);
    ModulePresentation m = ModulePresentation::free(L2, 2);
    m.relations = {{var(2, 0), num(2, 0)}, {num(2, 0), num(2, 0)}};
    CHECK(rank(m) == 1);
}

TEST_CASE("torsion examples")
{
    CHECK(is_torsion(ModulePresentation::cyclic(L2, {var(2, 0)})));
    CHECK_FALSE(is_torsion(ModulePresentation::free(L2, 1)));
    CHECK(is_torsion(ModulePresentation::cyclic(L1, {num(1, 3) + num(1, 4) * var(1, 0)})));
}

TEST_CASE("pseudo-null examples")
{
    const auto a = pseudonull_verdict(ModulePresentation::cyclic(L2, {var(2, 0), var(2, 1)}));
    CHECK(a.pseudonull);
    CHECK_FALSE(a.proxy_complete);
    CHECK_FALSE(is_pseudonull(ModulePresentation::cyclic(L2, {var(2, 0)})));
    const auto c = pseudonull_verdict(ModulePresentation::cyclic(L1, {num(1, 3), var(1, 0)}));
    CHECK(c.pseudonull);
    CHECK(c.proxy_complete);
    CHECK_FALSE(is_pseudonull(ModulePresentation::free(L1, 1)));
}

TEST_CASE("twist examples")
{
    const auto m = ModulePresentation::cyclic(L1, {var(1, 0)});
    CHECK(twist(m, {{1}, 4}).exact == m);
    const auto t = twist(m, {{4}, 4});
    CHECK(t.principal);
    CHECK(t.exact.relations[0][0] == num(1, 3) + num(1, 4) * var(1, 0));
    CHECK(mu_lambda(t.exact.relations[0][0], 3, {4, 6}) == std::pair{0, 1});
    const auto f = ModulePresentation::free(L2, 1);
    CHECK(rank(twist(f, {{7, 13}, 4}).exact) == 1);
    CHECK_THROWS_AS(twist(m, {{3}, 4}), std::invalid_argument);
    CHECK_THROWS_AS(twist(m, {{4}, 2}), PrecisionMismatch);
    CHECK_FALSE(twist(m, {{2}, 4}).principal);
}

TEST_CASE("quotient examples")
{
    const auto a = reduce_to_quotient(ModulePresentation::cyclic(L2, {var(2, 0)}), {0});
    CHECK(a.algebra.dimension == 1);
    CHECK(rank(a) == 1);
    const auto b = reduce_to_quotient(ModulePresentation::cyclic(L2, {var(2, 1) - var(2, 0)}), {0});
    CHECK(b.relations.size() == 1);
    CHECK(b.relations[0][0] == var(1, 0));
    CHECK(b.algebra.variables == std::vector<std::string>{"T2"});
    const auto c = reduce_to_quotient(ModulePresentation::free(L2, 1), {0, 1});
    CHECK(c.algebra.dimension == 0);
    CHECK(zp_structure(c) == ZpStructure{1, {}});
}

TEST_CASE("direct sum examples")
{
    const auto s = direct_sum(ModulePresentation::free(L1, 1), ModulePresentation::cyclic(L1, {var(1, 0)}));
    CHECK(rank(s) == 1);
    const auto m = ModulePresentation::cyclic(L2, {var(2, 0) + num(2, 3)});
    const auto z = direct_sum(ModulePresentation::free(L2, 0), m);
    CHECK(rank(z) == rank(m));
    CHECK(fitting_ideal(z).gcd_over_z == fitting_ideal(m).gcd_over_z);
    const auto b = direct_sum(ModulePresentation::cyclic(L2, {var(2, 0)}), ModulePresentation::cyclic(L2, {var(2, 1)}));
    const auto fitt = fitting_ideal(b);
    CHECK(fitt.gcd_over_z == var(2, 0) * var(2, 1));
    CHECK(fitt.unit_status == UnitStatus::non_unit);
    CHECK_FALSE(is_pseudonull(b));
    CHECK_THROWS_AS(direct_sum(ModulePresentation::free(L1, 1), ModulePresentation::free(L2, 1)), AlgebraMismatch);
}

TEST_CASE("finiteness examples")
{
    const auto a = is_finite(ModulePresentation::cyclic(L1, {num(1, 3), var(1, 0)}), default_schedule());
    CHECK(a.verdict == Finiteness::finite);
    CHECK(a.log_cardinality == 1u);
    CHECK(is_finite(ModulePresentation::cyclic(L1, {var(1, 0)}), default_schedule()).verdict == Finiteness::infinite);
    const auto c = is_finite(ModulePresentation::cyclic(L2, {num(2, 9), var(2, 0), var(2, 1)}), default_schedule());
    CHECK(c.verdict == Finiteness::finite);
    CHECK(c.log_cardinality == 2u);
    // Lambda_1 / (T - p) is Zp
    CHECK(is_finite(ModulePresentation::cyclic(L1, {var(1, 0) - num(1, 3)}), default_schedule()).verdict ==
          Finiteness::infinite);
}

TEST_CASE("m-adic sizes of small modules")
{
    // Lambda_1 / (p, T): one copy of F_p at every level >= 1
    const auto m = ModulePresentation::cyclic(L1, {num(1, 3), var(1, 0)});
    CHECK(madic_log_size(m, 1) == 1);
    CHECK(madic_log_size(m, 4) == 1);
    // Lambda_1 / m^L has log size L(L+1)/2
    const auto f = ModulePresentation::free(L1, 1);
    for (unsigned L = 1; L < 6; ++L)
        CHECK(madic_log_size(f, L) == L * (L + 1) / 2);
}

TEST_CASE("descriptor and presentation validation")
{
    CHECK_THROWS(AlgebraDescriptor::standard(4, 1).validate());
    ModulePresentation m = ModulePresentation::free(L2, 2);
    m.relations = {{var(2, 0)}};
    CHECK_THROWS_AS(m.validate(), std::invalid_argument);
    CHECK_THROWS_AS(pseudonull_verdict(ModulePresentation::free(AlgebraDescriptor::standard(3, 0), 1)),
                    std::invalid_argument);
}

TEST_CASE("properties on random presentations")
{
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 120; ++trial) {
        const auto& a = trial % 2 ? L1 : L2;
        const auto m1 = random_module(rng, a), m2 = random_module(rng, a);
        const std::size_t r1 = rank(m1), r2 = rank(m2);
        CHECK(r1 == rank_oracle(m1, rng));
        CHECK(rank(direct_sum(m1, m2)) == r1 + r2);
        CHECK((fitting_ideal(m1).unit_status == UnitStatus::zero_ideal) == (r1 > 0));
        CHECK(is_torsion(m1) == (r1 == 0));

        CharacterTwist k;
        k.precision = a.window.precision;
        std::uniform_int_distribution<long> u(0, 26);
        for (std::size_t i = 0; i < a.dimension; ++i)
            k.values.push_back(1 + 3 * u(rng));
        CHECK(is_torsion(twist(m1, k).exact) == is_torsion(m1));

        if (a.dimension == 1) {
            const auto fin = is_finite(m1, default_schedule());
            REQUIRE(fin.verdict != Finiteness::unstable);
            CHECK(is_pseudonull(m1) == (fin.verdict == Finiteness::finite));
        }
    }
}
