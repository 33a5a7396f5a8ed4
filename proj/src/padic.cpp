#include "iwasawa/padic.hpp"

#include "iwasawa/errors.hpp"

#include <algorithm>

namespace iwa {

namespace {

Integer mod(const Integer& x, const Integer& m)
{
    Integer r;
    mpz_fdiv_r(r.get_mpz_t(), x.get_mpz_t(), m.get_mpz_t());
    return r;
}

using Series = std::vector<Integer>;

Series mul_trunc(const Series& a, const Series& b, std::size_t len, const Integer& m)
{
    Series r(len, 0);
    for (std::size_t i = 0; i < a.size() && i < len; ++i) {
        if (a[i] == 0)
            continue;
        for (std::size_t j = 0; j < b.size() && i + j < len; ++j)
            r[i + j] += a[i] * b[j];
    }
    for (auto& c : r)
        c = mod(c, m);
    return r;
}

Series inverse_trunc(const Series& a, std::size_t len, const Integer& m)
{
    Integer inv0;
    if (mpz_invert(inv0.get_mpz_t(), a.at(0).get_mpz_t(), m.get_mpz_t()) == 0)
        throw std::domain_error("series has no unit constant term");
    Series r(len, 0);
    r[0] = inv0;
    for (std::size_t k = 1; k < len; ++k) {
        Integer s = 0;
        for (std::size_t j = 1; j <= k && j < a.size(); ++j)
            s += a[j] * r[k - j];
        r[k] = mod(-s * inv0, m);
    }
    return r;
}

}  // namespace

std::string Valuation::to_string() const
{
    return exact_ ? std::to_string(value_) : ">= " + std::to_string(value_);
}

PAdicTruncated::PAdicTruncated(unsigned prime, unsigned precision, const Integer& value)
    : p_(prime), n_(precision), residue_(mod(value, ipow(prime, precision)))
{
    if (prime < 2 || precision < 1)
        throw std::invalid_argument("p-adic value needs p >= 2 and N >= 1");
}

Valuation PAdicTruncated::valuation() const
{
    if (residue_ == 0)
        return Valuation::at_least(static_cast<int>(n_));
    return Valuation::exact(iwa::valuation(residue_, p_));
}

bool PAdicTruncated::is_unit() const
{
    auto v = valuation();
    return v.is_exact() && v.value() == 0;
}

void PAdicTruncated::check_compatible(const PAdicTruncated& o) const
{
    if (p_ != o.p_ || n_ != o.n_)
        throw PrecisionMismatch("p-adic operands differ in prime or precision");
}

PAdicTruncated PAdicTruncated::operator+(const PAdicTruncated& o) const
{
    check_compatible(o);
    return {p_, n_, residue_ + o.residue_};
}

PAdicTruncated PAdicTruncated::operator-(const PAdicTruncated& o) const
{
    check_compatible(o);
    return {p_, n_, residue_ - o.residue_};
}

PAdicTruncated PAdicTruncated::operator*(const PAdicTruncated& o) const
{
    check_compatible(o);
    return {p_, n_, residue_ * o.residue_};
}

Valuation valuation(const PAdicTruncated& x)
{
    return x.valuation();
}

TruncatedPowerSeries::TruncatedPowerSeries(unsigned prime, unsigned precision, unsigned degree)
    : p_(prime), n_(precision), coeffs_(degree, 0)
{
}

TruncatedPowerSeries TruncatedPowerSeries::from_poly(const Poly& f, unsigned prime, TruncationWindow w)
{
    if (f.nvars() != 1)
        throw std::invalid_argument("expected a one-variable polynomial");
    TruncatedPowerSeries s(prime, w.precision, w.degree);
    for (const auto& [e, c] : f.terms())
        if (e[0] < w.degree)
            s.set(e[0], c);
    return s;
}

PAdicTruncated TruncatedPowerSeries::coefficient(std::size_t i) const
{
    return {p_, n_, coeffs_.at(i)};
}

void TruncatedPowerSeries::set(std::size_t i, const Integer& v)
{
    coeffs_.at(i) = mod(v, ipow(p_, n_));
}

TruncatedPowerSeries TruncatedPowerSeries::operator*(const TruncatedPowerSeries& o) const
{
    if (p_ != o.p_ || n_ != o.n_ || coeffs_.size() != o.coeffs_.size())
        throw PrecisionMismatch("power series windows differ");
    TruncatedPowerSeries r(p_, n_, degree_cutoff());
    r.coeffs_ = mul_trunc(coeffs_, o.coeffs_, coeffs_.size(), ipow(p_, n_));
    return r;
}

TruncatedPowerSeries TruncatedPowerSeries::operator+(const TruncatedPowerSeries& o) const
{
    if (p_ != o.p_ || n_ != o.n_ || coeffs_.size() != o.coeffs_.size())
        throw PrecisionMismatch("power series windows differ");
    TruncatedPowerSeries r(p_, n_, degree_cutoff());
    for (std::size_t i = 0; i < coeffs_.size(); ++i)
        r.set(i, coeffs_[i] + o.coeffs_[i]);
    return r;
}

TruncatedPowerSeries TruncatedPowerSeries::inverse() const
{
    TruncatedPowerSeries r(p_, n_, degree_cutoff());
    r.coeffs_ = inverse_trunc(coeffs_, coeffs_.size(), ipow(p_, n_));
    return r;
}

WeierstrassFactorization weierstrass_prepare(const Poly& f, unsigned prime, TruncationWindow window)
{
    if (f.nvars() != 1)
        throw std::invalid_argument("weierstrass_prepare expects a one-variable polynomial");
    const unsigned N = window.precision;
    const unsigned D = window.degree;
    if (N < 1 || D < 1)
        throw std::invalid_argument("window components must be >= 1");
    const Integer pN = ipow(prime, N);

    int mu = -1;
    for (const auto& [e, c] : f.terms()) {
        if (mod(c, pN) == 0)
            continue;
        const int v = valuation(c, prime);
        mu = mu < 0 ? v : std::min(mu, v);
    }
    if (mu < 0)
        throw ZeroAtPrecision("polynomial vanishes modulo p^" + std::to_string(N));
    if (f.total_degree() >= D)
        throw WindowTooSmall("degree cutoff " + std::to_string(D) + " does not exceed deg f = " +
                             std::to_string(f.total_degree()));

    const Integer pmu = ipow(prime, static_cast<unsigned>(mu));
    const std::size_t deg = f.total_degree();
    Series g(deg + 1, 0);
    for (const auto& [e, c] : f.terms())
        g[e[0]] = c / pmu;  // exact: every coefficient has valuation >= mu or is dropped below

    std::size_t lambda = 0;
    while (mod(g[lambda], Integer(prime)) == 0)
        ++lambda;
    for (auto& c : g)
        c = mod(c, pN);

    WeierstrassFactorization out;
    out.mu = mu;
    out.lambda = static_cast<int>(lambda);

    // Weierstrass division of T^lambda by g: q*g = T^lambda + (deg < lambda).
    // Split g = low + T^lambda * h with low = 0 mod p; iterate
    // q <- h^{-1} (1 - shift(q * low)). Each pass gains one power of p; the
    // shift by lambda eats lambda trailing coefficients of precision.
    const std::size_t iterations = N + 2;
    const std::size_t work = D + lambda * (iterations + 1) + 1;
    Series low(g.begin(), g.begin() + static_cast<std::ptrdiff_t>(lambda));
    Series h(g.begin() + static_cast<std::ptrdiff_t>(lambda), g.end());
    const Series hinv = inverse_trunc(h, work, pN);

    Series q = hinv;
    bool settled = lambda == 0;
    for (std::size_t it = 0; it < iterations && lambda > 0; ++it) {
        Series ql = mul_trunc(q, low, work + lambda, pN);
        Series rhs(work, 0);
        rhs[0] = 1;
        for (std::size_t i = 0; i < work; ++i)
            if (i + lambda < ql.size())
                rhs[i] = mod(rhs[i] - ql[i + lambda], pN);
        Series next = mul_trunc(hinv, rhs, work, pN);
        settled = std::equal(next.begin(), next.begin() + static_cast<std::ptrdiff_t>(D), q.begin());
        q = std::move(next);
    }
    if (!settled)
        throw WindowTooSmall("Weierstrass splitting did not settle modulo (p^N, T^D)");

    Poly P(1);
    const Series qlow = mul_trunc(q, low, lambda, pN);
    for (std::size_t i = 0; i < lambda; ++i)
        P.add_term(Exponent{static_cast<std::uint32_t>(i)}, qlow[i]);
    P.add_term(Exponent{static_cast<std::uint32_t>(lambda)}, 1);
    out.distinguished = P;

    Series qd(q.begin(), q.begin() + static_cast<std::ptrdiff_t>(D));
    TruncatedPowerSeries unit(prime, N, D);
    const Series u = inverse_trunc(qd, D, pN);
    for (std::size_t i = 0; i < D; ++i)
        unit.set(i, u[i]);
    out.unit = unit;
    return out;
}

std::pair<int, int> mu_lambda(const Poly& f, unsigned prime, TruncationWindow window)
{
    auto w = weierstrass_prepare(f, prime, window);
    return {w.mu, w.lambda};
}

}  // namespace iwa
