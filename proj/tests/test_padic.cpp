#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "iwasawa/errors.hpp"
#include "iwasawa/padic.hpp"

#include <random>

using namespace iwa;

namespace {

const Poly T = Poly::variable(1, 0);

Poly c(long v)
{
    return Poly::constant(1, v);
}

Integer modp(const Integer& x, const Integer& m)
{
    Integer r = x % m;
    if (r < 0)
        r += m;
    return r;
}

std::vector<Integer> coeffs(const Poly& f, std::size_t n)
{
    std::vector<Integer> out(n, 0);
    for (const auto& [e, v] : f.terms())
        if (e[0] < n)
            out[e[0]] = v;
    return out;
}

// mu = least coefficient valuation, lambda = first unit coefficient of f / p^mu.
std::pair<int, int> classical_invariants(const Poly& f, unsigned p)
{
    int mu = -1;
    for (const auto& [e, v] : f.terms()) {
        const int val = valuation(v, p);
        mu = mu < 0 ? val : std::min(mu, val);
    }
    const Integer pmu = ipow(p, static_cast<unsigned>(mu));
    const auto cs = coeffs(f, f.total_degree() + 1);
    for (std::size_t i = 0; i < cs.size(); ++i)
        if (cs[i] != 0 && valuation(cs[i], p) == mu)
            return {mu, static_cast<int>(i)};
    return {mu, -1};
}

// p^mu * u * P mod (p^N, T^D), by schoolbook convolution.
std::vector<Integer> recombine(const WeierstrassFactorization& w, unsigned p, TruncationWindow win)
{
    const Integer pN = ipow(p, win.precision);
    const auto P = coeffs(w.distinguished, win.degree);
    std::vector<Integer> out(win.degree, 0);
    for (std::size_t i = 0; i < win.degree; ++i)
        for (std::size_t j = 0; i + j < win.degree; ++j)
            out[i + j] += w.unit.residues()[i] * P[j];
    for (auto& x : out)
        x = modp(x * ipow(p, static_cast<unsigned>(w.mu)), pN);
    return out;
}

Poly random_poly(std::mt19937_64& rng, unsigned p, int max_deg)
{
    std::uniform_int_distribution<int> deg(0, max_deg);
    const long bound = static_cast<long>(p) * p * p;
    std::uniform_int_distribution<long> coef(-bound, bound);
    Poly f(1);
    while (f.is_zero()) {
        const int d = deg(rng);
        for (int i = 0; i <= d; ++i)
            f.add_term(Exponent{static_cast<std::uint32_t>(i)}, coef(rng));
    }
    return f;
}

}  // namespace

TEST_CASE("valuation examples")
{
    CHECK(PAdicTruncated(3, 8, 18).valuation() == Valuation::exact(2));
    const auto zero = PAdicTruncated(3, 8, 0).valuation();
    CHECK_FALSE(zero.is_exact());
    CHECK(zero.value() == 8);
    CHECK(zero.to_string() == ">= 8");
    CHECK(PAdicTruncated(5, 4, 7).valuation() == Valuation::exact(0));
    CHECK(PAdicTruncated(3, 2, -1).residue() == 8);
}

TEST_CASE("Weierstrass preparation examples")
{
    const TruncationWindow w{8, 12};
    auto a = weierstrass_prepare(T * T + c(3), 3, w);
    CHECK(a.mu == 0);
    CHECK(a.lambda == 2);
    CHECK(a.distinguished == T * T + c(3));
    CHECK(a.unit.residues()[0] == 1);
    for (std::size_t i = 1; i < 12; ++i)
        CHECK(a.unit.residues()[i] == 0);

    auto b = weierstrass_prepare(c(3) * (c(1) + T), 3, w);
    CHECK(b.mu == 1);
    CHECK(b.lambda == 0);
    CHECK(b.distinguished == c(1));
    CHECK(b.unit.residues()[0] == 1);
    CHECK(b.unit.residues()[1] == 1);

    const Poly f = (c(1) + T).pow(3) - c(1);
    auto d = weierstrass_prepare(f, 3, w);
    CHECK(d.mu == 0);
    CHECK(d.lambda == 3);
    CHECK(d.distinguished == T.pow(3) + c(3) * T * T + c(3) * T);

    auto e = weierstrass_prepare(c(3) * T * T + c(9) * T + c(3), 3, w);
    CHECK(e.mu == 1);
    CHECK(e.lambda == 0);
    CHECK(e.distinguished == c(1));
    CHECK(e.unit.residues()[0] == 1);
    CHECK(e.unit.residues()[1] == 3);
    CHECK(e.unit.residues()[2] == 1);
}

TEST_CASE("mu and lambda examples")
{
    const TruncationWindow w{6, 10};
    CHECK(mu_lambda(T.pow(5), 3, w) == std::pair{0, 5});
    CHECK(mu_lambda(c(9), 3, w) == std::pair{2, 0});
    CHECK(mu_lambda((c(1) + T).pow(3) - c(1), 3, w) == std::pair{0, 3});
}

TEST_CASE("preparation errors")
{
    CHECK_THROWS_AS(weierstrass_prepare(c(81), 3, {4, 6}), ZeroAtPrecision);
    CHECK_THROWS_AS(weierstrass_prepare(T.pow(6) + c(3), 3, {4, 6}), WindowTooSmall);
}

TEST_CASE("round trip, invariants and multiplicativity on random polynomials")
{
    std::mt19937_64 rng(2024);
    const TruncationWindow w{12, 20};
    for (unsigned p : {3u, 5u}) {
        const Integer pN = ipow(p, w.precision);
        for (int trial = 0; trial < 100; ++trial) {
            const Poly f = random_poly(rng, p, 6);
            const auto wf = weierstrass_prepare(f, p, w);
            const auto back = recombine(wf, p, w);
            const auto want = coeffs(f, w.degree);
            for (std::size_t i = 0; i < w.degree; ++i)
                CHECK(back[i] == modp(want[i], pN));
            // distinguished and unit shape
            CHECK(wf.distinguished.leading().second == 1);
            CHECK(static_cast<int>(wf.distinguished.total_degree()) == wf.lambda);
            for (const auto& [e, v] : wf.distinguished.terms())
                if (static_cast<int>(e[0]) != wf.lambda)
                    CHECK(v % p == 0);
            CHECK(wf.unit.residues()[0] % p != 0);
            CHECK(std::pair{wf.mu, wf.lambda} == classical_invariants(f, p));
            // unit criterion
            const bool unit = wf.mu == 0 && wf.lambda == 0;
            CHECK(unit == (f.constant_term() % p != 0));

            const Poly g = random_poly(rng, p, 6);
            const auto mf = mu_lambda(f, p, w), mg = mu_lambda(g, p, w), mfg = mu_lambda(f * g, p, w);
            CHECK(mfg.first == mf.first + mg.first);
            CHECK(mfg.second == mf.second + mg.second);
        }
    }
}

TEST_CASE("truncated series arithmetic")
{
    const auto s = TruncatedPowerSeries::from_poly(c(1) + T, 3, {4, 6});
    const auto inv = s.inverse();
    const auto one = s * inv;
    CHECK(one.residues()[0] == 1);
    for (std::size_t i = 1; i < 6; ++i)
        CHECK(one.residues()[i] == 0);
    CHECK(inv.residues()[1] == 80);
}
