#include "iwasawa/poly.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace iwa {

std::uint32_t total_degree(const Exponent& e)
{
    return std::accumulate(e.begin(), e.end(), std::uint32_t{0});
}

bool GradedLexGreater::operator()(const Exponent& a, const Exponent& b) const
{
    const auto da = total_degree(a);
    const auto db = total_degree(b);
    if (da != db)
        return da > db;
    return a > b;
}

Poly Poly::constant(std::size_t nvars, const Integer& c)
{
    Poly p(nvars);
    p.add_term(Exponent(nvars, 0), c);
    return p;
}

Poly Poly::variable(std::size_t nvars, std::size_t index)
{
    Exponent e(nvars, 0);
    e.at(index) = 1;
    return monomial(nvars, std::move(e), 1);
}

Poly Poly::monomial(std::size_t nvars, Exponent e, const Integer& c)
{
    Poly p(nvars);
    p.add_term(e, c);
    return p;
}

bool Poly::is_constant() const
{
    return terms_.empty() || (terms_.size() == 1 && iwa::total_degree(terms_.begin()->first) == 0);
}

Integer Poly::constant_term() const
{
    return coefficient(Exponent(nvars_, 0));
}

Integer Poly::coefficient(const Exponent& e) const
{
    auto it = terms_.find(e);
    return it == terms_.end() ? Integer(0) : it->second;
}

std::uint32_t Poly::total_degree() const
{
    return terms_.empty() ? 0 : iwa::total_degree(terms_.begin()->first);
}

std::uint32_t Poly::degree_in(std::size_t var) const
{
    std::uint32_t d = 0;
    for (const auto& [e, c] : terms_)
        d = std::max(d, e[var]);
    return d;
}

void Poly::add_term(const Exponent& e, const Integer& c)
{
    if (c == 0)
        return;
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0)
            terms_.erase(it);
    }
}

Poly& Poly::operator+=(const Poly& o)
{
    for (const auto& [e, c] : o.terms_)
        add_term(e, c);
    return *this;
}

Poly& Poly::operator-=(const Poly& o)
{
    for (const auto& [e, c] : o.terms_)
        add_term(e, -c);
    return *this;
}

Poly& Poly::operator*=(const Integer& c)
{
    if (c == 0) {
        terms_.clear();
        return *this;
    }
    for (auto& [e, v] : terms_)
        v *= c;
    return *this;
}

Poly operator*(const Poly& a, const Poly& b)
{
    Poly r(a.nvars_);
    Exponent e(a.nvars_);
    for (const auto& [ea, ca] : a.terms_)
        for (const auto& [eb, cb] : b.terms_) {
            for (std::size_t i = 0; i < e.size(); ++i)
                e[i] = ea[i] + eb[i];
            r.add_term(e, ca * cb);
        }
    return r;
}

Poly Poly::operator-() const
{
    Poly r = *this;
    for (auto& [e, c] : r.terms_)
        c = -c;
    return r;
}

Poly Poly::pow(unsigned k) const
{
    Poly result = constant(nvars_, 1);
    Poly base = *this;
    while (k) {
        if (k & 1u)
            result = result * base;
        k >>= 1;
        if (k)
            base = base * base;
    }
    return result;
}

Poly Poly::substitute(std::size_t var, const Poly& value) const
{
    std::vector<Poly> powers{constant(nvars_, 1)};
    Poly r(nvars_);
    for (const auto& [e, c] : terms_) {
        while (powers.size() <= e[var])
            powers.push_back(powers.back() * value);
        Exponent rest = e;
        rest[var] = 0;
        r += monomial(nvars_, rest, c) * powers[e[var]];
    }
    return r;
}

Poly Poly::drop_variables(const std::vector<std::size_t>& vars) const
{
    std::vector<bool> drop(nvars_, false);
    for (auto v : vars)
        drop.at(v) = true;
    const std::size_t kept = nvars_ - static_cast<std::size_t>(std::count(drop.begin(), drop.end(), true));
    Poly r(kept);
    for (const auto& [e, c] : terms_) {
        bool vanishes = false;
        Exponent f;
        f.reserve(kept);
        for (std::size_t i = 0; i < nvars_; ++i) {
            if (drop[i]) {
                if (e[i] > 0)
                    vanishes = true;
            } else {
                f.push_back(e[i]);
            }
        }
        if (!vanishes)
            r.add_term(f, c);
    }
    return r;
}

Integer Poly::evaluate(const std::vector<Integer>& point) const
{
    Integer total = 0;
    for (const auto& [e, c] : terms_) {
        Integer t = c;
        for (std::size_t i = 0; i < nvars_; ++i) {
            Integer pw;
            mpz_pow_ui(pw.get_mpz_t(), point[i].get_mpz_t(), e[i]);
            t *= pw;
        }
        total += t;
    }
    return total;
}

std::optional<Poly> Poly::exact_div(const Poly& divisor) const
{
    if (divisor.is_zero())
        throw std::domain_error("division by the zero polynomial");
    const auto& [ld, lc] = divisor.leading();
    Poly rem = *this;
    Poly quo(nvars_);
    Exponent e(nvars_);
    while (!rem.is_zero()) {
        const auto& [lr, cr] = rem.leading();
        for (std::size_t i = 0; i < nvars_; ++i) {
            if (lr[i] < ld[i])
                return std::nullopt;
            e[i] = lr[i] - ld[i];
        }
        if (!mpz_divisible_p(cr.get_mpz_t(), lc.get_mpz_t()))
            return std::nullopt;
        Integer q = cr / lc;
        Poly t = monomial(nvars_, e, q);
        quo += t;
        rem -= t * divisor;
    }
    return quo;
}

Integer Poly::content() const
{
    Integer g = 0;
    for (const auto& [e, c] : terms_) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
        if (g == 1)
            break;
    }
    return g;
}

Poly Poly::reduced_mod(const Integer& modulus) const
{
    Poly r(nvars_);
    for (const auto& [e, c] : terms_) {
        Integer v;
        mpz_fdiv_r(v.get_mpz_t(), c.get_mpz_t(), modulus.get_mpz_t());
        r.add_term(e, v);
    }
    return r;
}

Poly Poly::normalized() const
{
    if (!terms_.empty() && leading().second < 0)
        return -*this;
    return *this;
}

std::string Poly::to_string(const std::vector<std::string>& names) const
{
    if (terms_.empty())
        return "0";
    std::ostringstream out;
    bool first = true;
    for (const auto& [e, c] : terms_) {
        Integer mag = abs(c);
        if (first) {
            if (c < 0)
                out << '-';
        } else {
            out << (c < 0 ? " - " : " + ");
        }
        first = false;
        bool wrote = false;
        if (mag != 1 || iwa::total_degree(e) == 0) {
            out << mag.get_str();
            wrote = true;
        }
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (e[i] == 0)
                continue;
            if (wrote)
                out << '*';
            out << names.at(i);
            if (e[i] > 1)
                out << '^' << e[i];
            wrote = true;
        }
    }
    return out.str();
}

int valuation(const Integer& x, unsigned p)
{
    if (x == 0)
        throw std::domain_error("valuation of zero");
    Integer rest;
    Integer prime = p;
    return static_cast<int>(mpz_remove(rest.get_mpz_t(), x.get_mpz_t(), prime.get_mpz_t()));
}

Integer ipow(unsigned p, unsigned k)
{
    Integer r;
    mpz_ui_pow_ui(r.get_mpz_t(), p, k);
    return r;
}

namespace {

std::vector<Poly> coefficients_in(const Poly& a, std::size_t x)
{
    std::vector<Poly> c(a.degree_in(x) + 1, Poly(a.nvars()));
    for (const auto& [e, v] : a.terms()) {
        Exponent f = e;
        const auto k = f[x];
        f[x] = 0;
        c[k].add_term(f, v);
    }
    return c;
}

Poly leading_coefficient_in(const Poly& a, std::size_t x)
{
    const auto d = a.degree_in(x);
    Poly c(a.nvars());
    for (const auto& [e, v] : a.terms())
        if (e[x] == d) {
            Exponent f = e;
            f[x] = 0;
            c.add_term(f, v);
        }
    return c;
}

Poly content_in(const Poly& a, std::size_t x)
{
    Poly g(a.nvars());
    for (const auto& c : coefficients_in(a, x)) {
        if (c.is_zero())
            continue;
        g = gcd(g, c);
        if (g.is_constant() && g.constant_term() == 1)
            break;
    }
    return g;
}

Poly pseudo_remainder(const Poly& a, const Poly& b, std::size_t x)
{
    const auto db = b.degree_in(x);
    const Poly lcb = leading_coefficient_in(b, x);
    Poly r = a;
    while (!r.is_zero() && r.degree_in(x) >= db) {
        const auto dr = r.degree_in(x);
        Exponent shift(a.nvars(), 0);
        shift[x] = dr - db;
        const Poly lcr = leading_coefficient_in(r, x);
        r = r * lcb - lcr * Poly::monomial(a.nvars(), shift, 1) * b;
    }
    return r;
}

Poly divide_exactly(const Poly& a, const Poly& b)
{
    auto q = a.exact_div(b);
    if (!q)
        throw std::logic_error("expected exact polynomial division");
    return *q;
}

}  // namespace

Poly gcd(const Poly& a, const Poly& b)
{
    const std::size_t n = a.nvars();
    if (a.is_zero())
        return b.normalized();
    if (b.is_zero())
        return a.normalized();
    if (a.is_constant() || b.is_constant()) {
        Integer g = a.is_constant() ? b.content() : a.content();
        Integer c = a.is_constant() ? a.constant_term() : b.constant_term();
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
        return Poly::constant(n, g);
    }
    std::size_t x = n;
    for (std::size_t v = n; v-- > 0;)
        if (a.involves(v) || b.involves(v)) {
            x = v;
            break;
        }

    const Poly ca = content_in(a, x);
    const Poly cb = content_in(b, x);
    const Poly c = gcd(ca, cb);
    Poly pa = divide_exactly(a, ca);
    Poly pb = divide_exactly(b, cb);
    if (pa.degree_in(x) == 0 || pb.degree_in(x) == 0)
        return c.normalized();
    if (pa.degree_in(x) < pb.degree_in(x))
        std::swap(pa, pb);

    Poly g(n);
    for (;;) {
        Poly r = pseudo_remainder(pa, pb, x);
        if (r.is_zero()) {
            g = pb;
            break;
        }
        if (r.degree_in(x) == 0) {
            g = Poly::constant(n, 1);
            break;
        }
        pa = std::move(pb);
        pb = divide_exactly(r, content_in(r, x));
    }
    g = divide_exactly(g, content_in(g, x));
    return (g * c).normalized();
}

Poly determinant(PolyMatrix m)
{
    const std::size_t n = m.size();
    if (n == 0)
        return Poly::constant(0, 1);
    const std::size_t nv = m[0][0].nvars();
    Poly prev = Poly::constant(nv, 1);
    bool negate = false;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = k;
        while (piv < n && m[piv][k].is_zero())
            ++piv;
        if (piv == n)
            return Poly(nv);
        if (piv != k) {
            std::swap(m[piv], m[k]);
            negate = !negate;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j)
                m[i][j] = divide_exactly(m[i][j] * m[k][k] - m[i][k] * m[k][j], prev);
            m[i][k] = Poly(nv);
        }
        prev = m[k][k];
    }
    return negate ? -m[n - 1][n - 1] : m[n - 1][n - 1];
}

std::size_t rank_over_fraction_field(PolyMatrix m)
{
    const std::size_t rows = m.size();
    if (rows == 0)
        return 0;
    const std::size_t cols = m[0].size();
    if (cols == 0)
        return 0;
    const std::size_t nv = m[0][0].nvars();
    Poly prev = Poly::constant(nv, 1);
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t piv = r;
        while (piv < rows && m[piv][c].is_zero())
            ++piv;
        if (piv == rows)
            continue;
        std::swap(m[piv], m[r]);
        for (std::size_t i = r + 1; i < rows; ++i) {
            for (std::size_t j = c + 1; j < cols; ++j)
                m[i][j] = divide_exactly(m[i][j] * m[r][c] - m[i][c] * m[r][j], prev);
            m[i][c] = Poly(nv);
        }
        prev = m[r][c];
        ++r;
    }
    return r;
}

}  // namespace iwa
