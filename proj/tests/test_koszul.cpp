#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "iwasawa/koszul.hpp"

#include <cmath>
#include <random>
#include <set>

using namespace iwa;

namespace {

const AlgebraDescriptor L1 = AlgebraDescriptor::standard(3, 1);
const AlgebraDescriptor L2 = AlgebraDescriptor::standard(3, 2);
const AlgebraDescriptor L3 = AlgebraDescriptor::standard(3, 3);

Poly var(std::size_t d, std::size_t i)
{
    return Poly::variable(d, i);
}

Poly num(std::size_t d, long v)
{
    return Poly::constant(d, v);
}

// The finite ring (Z/p^e)[x1, x2] / (x1^a, x2^b) as a Lambda_2-module,
// with subgroup orders found by enumerating spans.
struct FiniteMonomialModule {
    unsigned p, e, a, b;

    std::size_t size() const { return a * b; }
    unsigned mod() const { return static_cast<unsigned>(std::pow(p, e)); }

    using Vec = std::vector<unsigned>;
    Vec shift(const Vec& v, unsigned var) const
    {
        Vec out(size(), 0);
        for (unsigned i = 0; i < a; ++i)
            for (unsigned j = 0; j < b; ++j) {
                const unsigned ni = i + (var == 0), nj = j + (var == 1);
                if (ni < a && nj < b)
                    out[ni * b + nj] = v[i * b + j];
            }
        return out;
    }
    Vec unit(std::size_t k) const
    {
        Vec v(size(), 0);
        v[k] = 1;
        return v;
    }
    std::uint64_t log_span(const std::vector<Vec>& gens) const
    {
        const std::size_t n = gens.empty() ? 0 : gens[0].size();
        std::set<Vec> seen{Vec(n, 0)};
        std::vector<Vec> frontier{Vec(n, 0)};
        while (!frontier.empty()) {
            std::vector<Vec> next;
            for (const auto& x : frontier)
                for (const auto& g : gens) {
                    Vec y(n);
                    for (std::size_t i = 0; i < n; ++i)
                        y[i] = (x[i] + g[i]) % mod();
                    if (seen.insert(y).second)
                        next.push_back(y);
                }
            frontier = std::move(next);
        }
        return static_cast<std::uint64_t>(std::lround(std::log(static_cast<double>(seen.size())) / std::log(p)));
    }
    std::uint64_t log_module() const { return static_cast<std::uint64_t>(e) * size(); }

    // log |H_n| of the Koszul complex of (x1, x2)
    std::vector<std::uint64_t> koszul2() const
    {
        std::vector<Vec> im1, im2;
        for (std::size_t k = 0; k < size(); ++k) {
            im1.push_back(shift(unit(k), 0));
            im1.push_back(shift(unit(k), 1));
            Vec d2 = shift(unit(k), 1);
            for (auto& x : d2)
                x = (mod() - x) % mod();
            const Vec t1 = shift(unit(k), 0);
            d2.insert(d2.end(), t1.begin(), t1.end());
            im2.push_back(d2);
        }
        const auto l1 = log_span(im1), l2 = log_span(im2), m = log_module();
        return {m - l1, 2 * m - l1 - l2, m - l2};
    }
    // log |H_n| of the Koszul complex of x1 alone
    std::vector<std::uint64_t> koszul1() const
    {
        std::vector<Vec> im;
        for (std::size_t k = 0; k < size(); ++k)
            im.push_back(shift(unit(k), 0));
        const auto l = log_span(im);
        return {log_module() - l, log_module() - l};
    }
    ModulePresentation presentation() const
    {
        return ModulePresentation::cyclic(L2, {num(2, static_cast<long>(mod())), var(2, 0).pow(a), var(2, 1).pow(b)});
    }
};

ModulePresentation random_module(std::mt19937_64& rng, const AlgebraDescriptor& a)
{
    std::uniform_int_distribution<int> coef(-9, 9), deg(0, 2), pick(0, 2);
    std::uniform_int_distribution<std::size_t> gens(1, 2), rows(0, 2);
    ModulePresentation m = ModulePresentation::free(a, gens(rng));
    const std::size_t k = rows(rng);
    for (std::size_t i = 0; i < k; ++i) {
        std::vector<Poly> row;
        for (std::size_t j = 0; j < m.generators; ++j) {
            Poly f(a.dimension);
            if (pick(rng))
                for (int t = 0; t < 2; ++t) {
                    Exponent e(a.dimension);
                    for (auto& x : e)
                        x = static_cast<std::uint32_t>(deg(rng));
                    f.add_term(e, coef(rng));
                }
            row.push_back(f);
        }
        m.relations.push_back(row);
    }
    return m;
}

}  // namespace

TEST_CASE("koszul examples")
{
    const auto sched = default_schedule();
    auto free = koszul_homology(ModulePresentation::free(L2, 1), 1, sched);
    CHECK(free.degrees[0].rank == 1u);
    CHECK(free.degrees[0].stability == Stability::exact);
    CHECK(free.degrees[1].rank == 0u);
    CHECK(free.degrees[1].log_cardinality == 0u);

    auto t1 = koszul_homology(ModulePresentation::cyclic(L2, {var(2, 0)}), 1, sched);
    CHECK(t1.degrees[0].rank == 1u);
    CHECK(t1.degrees[1].rank == 1u);
    CHECK(t1.degrees[1].torsion == false);
    CHECK(t1.degrees[1].stability != Stability::unstable);

    auto p = koszul_homology(ModulePresentation::cyclic(L2, {num(2, 3)}), 2, sched);
    CHECK(p.degrees[0].log_cardinality == 1u);
    CHECK(p.degrees[1].log_cardinality == 0u);
    CHECK(p.degrees[2].log_cardinality == 0u);

    auto pt = koszul_homology(ModulePresentation::cyclic(L2, {num(2, 3), var(2, 0)}), 2, sched);
    CHECK(pt.degrees[0].log_cardinality == 1u);
    CHECK(pt.degrees[1].log_cardinality == 1u);
    CHECK(pt.degrees[2].log_cardinality == 0u);
    CHECK(pt.ranks_stable());
}

TEST_CASE("top invariants")
{
    const auto sched = default_schedule();
    auto a = invariants_top(ModulePresentation::free(L2, 1), 1, sched);
    CHECK(a.rank == 0u);
    CHECK(a.log_cardinality == 0u);
    auto b = invariants_top(ModulePresentation::cyclic(L2, {var(2, 0)}), 1, sched);
    CHECK(b.rank == 1u);
    auto c = invariants_top(ModulePresentation::cyclic(L1, {num(1, 3)}), 1, sched);
    CHECK(c.rank == 0u);
    CHECK(c.log_cardinality == 0u);
}

TEST_CASE("howson examples")
{
    const auto sched = default_schedule();
    auto a = howson_check(ModulePresentation::cyclic(L2, {var(2, 0)}), 1, sched);
    CHECK(a.status == CheckStatus::holds);
    CHECK(a.module_rank == 0);
    CHECK(a.alternating_sum == 0);
    CHECK(a.homology_ranks == std::vector<std::optional<std::size_t>>{1u, 1u});
    auto b = howson_check(ModulePresentation::free(L2, 1), 1, sched);
    CHECK(b.status == CheckStatus::holds);
    CHECK(b.module_rank == 1);
    CHECK(b.homology_ranks == std::vector<std::optional<std::size_t>>{1u, 0u});
    auto c = howson_check(ModulePresentation::cyclic(L2, {num(2, 3)}), 1, sched);
    CHECK(c.status == CheckStatus::holds);
    CHECK(c.homology_ranks == std::vector<std::optional<std::size_t>>{0u, 0u});
}

TEST_CASE("finite modules against enumerated koszul complexes")
{
    const auto sched = default_schedule();
    for (unsigned e : {1u, 2u})
        for (unsigned a = 1; a <= 3; ++a)
            for (unsigned b = 1; b <= 3; ++b) {
                const FiniteMonomialModule fm{3, e, a, b};
                if (fm.log_module() > 6)
                    continue;
                CAPTURE(e);
                CAPTURE(a);
                CAPTURE(b);
                const auto m = fm.presentation();
                const auto want2 = fm.koszul2();
                const auto got2 = koszul_homology(m, 2, sched);
                for (std::size_t n = 0; n <= 2; ++n)
                    CHECK(got2.degrees[n].log_cardinality == want2[n]);
                const auto want1 = fm.koszul1();
                const auto got1 = koszul_homology(m, 1, sched);
                for (std::size_t n = 0; n <= 1; ++n) {
                    CHECK(got1.degrees[n].rank == 0u);
                    CHECK(got1.degrees[n].log_cardinality == want1[n]);
                }
            }
}

TEST_CASE("degree zero agrees with the quotient; free modules are acyclic")
{
    std::mt19937_64 rng(17);
    const auto sched = default_schedule();
    for (int trial = 0; trial < 30; ++trial) {
        const auto& a = trial % 3 == 0 ? L3 : L2;
        const std::size_t r = 1 + trial % 2;
        const auto m = random_module(rng, a);
        const auto rep = koszul_homology(m, r, sched);
        std::vector<std::size_t> first(r);
        for (std::size_t i = 0; i < r; ++i)
            first[i] = i;
        REQUIRE(rep.degrees[0].presentation.has_value());
        CHECK(*rep.degrees[0].presentation == reduce_to_quotient(m, first));
        CHECK(rep.degrees[0].stability == Stability::exact);

        const auto f = koszul_homology(ModulePresentation::free(a, m.generators), r, sched);
        for (std::size_t n = 1; n < f.degrees.size(); ++n) {
            CHECK(f.degrees[n].rank == 0u);
            CHECK(f.degrees[n].log_cardinality == 0u);
        }
    }
}

TEST_CASE("window monotonicity of truncated cardinalities")
{
    std::mt19937_64 rng(23);
    const Schedule chain{{3, 5}, {4, 5}, {4, 6}, {5, 7}};
    for (int trial = 0; trial < 15; ++trial) {
        const auto m = random_module(rng, L2);
        std::vector<std::uint64_t> prev;
        for (const auto& w : chain) {
            const auto sizes = truncated_homology(m, ModuleKind::cokernel, 1, w);
            if (!prev.empty())
                for (std::size_t n = 0; n < sizes.size(); ++n)
                    CHECK(sizes[n] >= prev[n]);
            prev = sizes;
        }
    }
}

TEST_CASE("howson identity on random modules")
{
    std::mt19937_64 rng(29);
    const auto sched = default_schedule();
    int stabilized = 0;
    for (int trial = 0; trial < 40; ++trial) {
        const auto& a = trial % 2 ? L3 : L2;
        const auto res = howson_check(random_module(rng, a), 1 + trial % 2, sched);
        CHECK(res.status != CheckStatus::violated);
        stabilized += res.status == CheckStatus::holds;
    }
    CHECK(stabilized >= 32);
}
