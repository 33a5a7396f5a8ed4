#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "iwasawa/poly.hpp"

#include <algorithm>
#include <random>

using namespace iwa;

namespace {

Poly random_poly(std::mt19937_64& rng, std::size_t nvars, unsigned max_deg)
{
    std::uniform_int_distribution<int> coef(-9, 9), deg(0, static_cast<int>(max_deg)), terms(0, 4);
    Poly f(nvars);
    const int k = terms(rng);
    for (int i = 0; i < k; ++i) {
        Exponent e(nvars);
        for (auto& x : e)
            x = static_cast<std::uint32_t>(deg(rng));
        f.add_term(e, coef(rng));
    }
    return f;
}

std::vector<Integer> random_point(std::mt19937_64& rng, std::size_t nvars)
{
    std::uniform_int_distribution<int> v(-5, 5);
    std::vector<Integer> x(nvars);
    for (auto& c : x)
        c = v(rng);
    return x;
}

// Leibniz expansion at a point.
Integer det_at(const std::vector<std::vector<Integer>>& a)
{
    const std::size_t n = a.size();
    std::vector<std::size_t> perm(n);
    for (std::size_t i = 0; i < n; ++i)
        perm[i] = i;
    Integer total = 0;
    do {
        Integer term = 1;
        for (std::size_t i = 0; i < n; ++i)
            term *= a[i][perm[i]];
        int inversions = 0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j)
                if (perm[i] > perm[j])
                    ++inversions;
        total += inversions % 2 ? -term : term;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return total;
}

std::size_t rank_q(std::vector<std::vector<mpq_class>> a)
{
    std::size_t r = 0;
    const std::size_t rows = a.size(), cols = rows ? a[0].size() : 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t piv = r;
        while (piv < rows && a[piv][c] == 0)
            ++piv;
        if (piv == rows)
            continue;
        std::swap(a[piv], a[r]);
        for (std::size_t i = r + 1; i < rows; ++i) {
            const mpq_class f = a[i][c] / a[r][c];
            for (std::size_t j = c; j < cols; ++j)
                a[i][j] -= f * a[r][j];
        }
        ++r;
    }
    return r;
}

}  // namespace

TEST_CASE("printing")
{
    const std::vector<std::string> names{"T1", "T2"};
    Poly f = Poly::variable(2, 0).pow(2) * Integer(3) - Poly::variable(2, 1) + Poly::constant(2, 1);
    CHECK(f.to_string(names) == "3*T1^2 - T2 + 1");
    CHECK(Poly(2).to_string(names) == "0");
    CHECK((-Poly::variable(2, 0)).to_string(names) == "-T1");
}

TEST_CASE("ring laws at random points")
{
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 200; ++trial) {
        const Poly f = random_poly(rng, 3, 3), g = random_poly(rng, 3, 3);
        const auto x = random_point(rng, 3);
        CHECK((f * g).evaluate(x) == f.evaluate(x) * g.evaluate(x));
        CHECK((f + g).evaluate(x) == f.evaluate(x) + g.evaluate(x));
        CHECK((f - g).evaluate(x) == f.evaluate(x) - g.evaluate(x));
        CHECK(f.pow(3).evaluate(x) == f.evaluate(x) * f.evaluate(x) * f.evaluate(x));
    }
}

TEST_CASE("gcd divides and recovers common factors")
{
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 100; ++trial) {
        const Poly a = random_poly(rng, 2, 2), b = random_poly(rng, 2, 2), c = random_poly(rng, 2, 2);
        if (c.is_zero() || (a.is_zero() && b.is_zero()))
            continue;
        const Poly g = gcd(a * c, b * c);
        CHECK(g.normalized() == g);
        CHECK((a * c).exact_div(g).has_value());
        CHECK((b * c).exact_div(g).has_value());
        CHECK(g.exact_div(c.normalized()).has_value());
    }
    CHECK(gcd(Poly(1), Poly(1)).is_zero());
}

TEST_CASE("determinant and rank against point evaluation")
{
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 60; ++trial) {
        const std::size_t n = 1 + trial % 3;
        PolyMatrix m(n, std::vector<Poly>(n, Poly(2)));
        for (auto& row : m)
            for (auto& e : row)
                e = random_poly(rng, 2, 2);
        if (trial % 5 == 0 && n > 1)
            m[n - 1] = m[0];
        const Poly det = determinant(m);
        for (int k = 0; k < 3; ++k) {
            const auto x = random_point(rng, 2);
            std::vector<std::vector<Integer>> at(n, std::vector<Integer>(n));
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j)
                    at[i][j] = m[i][j].evaluate(x);
            CHECK(det.evaluate(x) == det_at(at));
        }
        // the rank at a generic point equals the fraction-field rank; take the max over points
        std::size_t best = 0;
        for (int k = 0; k < 6; ++k) {
            std::uniform_int_distribution<int> v(-1000, 1000);
            std::vector<Integer> x{v(rng), v(rng)};
            std::vector<std::vector<mpq_class>> at(n, std::vector<mpq_class>(n));
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j)
                    at[i][j] = mpq_class(m[i][j].evaluate(x));
            best = std::max(best, rank_q(at));
        }
        CHECK(rank_over_fraction_field(m) == best);
    }
}

TEST_CASE("substitution and dropping variables")
{
    const Poly T1 = Poly::variable(2, 0), T2 = Poly::variable(2, 1);
    const Poly f = T1 * T2 + T2 - Poly::constant(2, 3);
    const Poly dropped = f.drop_variables({0});
    CHECK(dropped.nvars() == 1);
    CHECK(dropped == Poly::variable(1, 0) - Poly::constant(1, 3));
    CHECK(f.substitute(0, Poly::constant(2, 2)) == T2 * Integer(3) - Poly::constant(2, 3));
}
