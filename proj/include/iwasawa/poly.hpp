#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace iwa {

using Integer = mpz_class;
using Exponent = std::vector<std::uint32_t>;

/// Graded lexicographic order, largest first. Used both as the monomial
/// order for division and as the printing order.
struct GradedLexGreater {
    bool operator()(const Exponent& a, const Exponent& b) const;
};

std::uint32_t total_degree(const Exponent& e);

/// Sparse multivariate polynomial with integer coefficients in a fixed
/// number of variables. Zero coefficients are never stored.
class Poly {
public:
    using TermMap = std::map<Exponent, Integer, GradedLexGreater>;

    explicit Poly(std::size_t nvars = 0) : nvars_(nvars) {}

    static Poly constant(std::size_t nvars, const Integer& c);
    static Poly variable(std::size_t nvars, std::size_t index);
    static Poly monomial(std::size_t nvars, Exponent e, const Integer& c);

    std::size_t nvars() const { return nvars_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    const TermMap& terms() const { return terms_; }
    std::size_t term_count() const { return terms_.size(); }

    Integer constant_term() const;
    Integer coefficient(const Exponent& e) const;
    /// Leading term in graded-lex order; the polynomial must be nonzero.
    const std::pair<const Exponent, Integer>& leading() const { return *terms_.begin(); }

    std::uint32_t total_degree() const;
    std::uint32_t degree_in(std::size_t var) const;
    bool involves(std::size_t var) const { return degree_in(var) > 0; }

    void add_term(const Exponent& e, const Integer& c);

    Poly& operator+=(const Poly& o);
    Poly& operator-=(const Poly& o);
    Poly& operator*=(const Integer& c);
    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    friend Poly operator*(const Poly& a, const Poly& b);
    friend Poly operator*(Poly a, const Integer& c) { return a *= c; }
    Poly operator-() const;
    bool operator==(const Poly& o) const { return nvars_ == o.nvars_ && terms_ == o.terms_; }
    bool operator!=(const Poly& o) const { return !(*this == o); }

    Poly pow(unsigned k) const;

    /// Replace variable `var` by `value` (a polynomial in the same ring).
    Poly substitute(std::size_t var, const Poly& value) const;
    /// Set the listed variables to zero and delete them from the ring.
    Poly drop_variables(const std::vector<std::size_t>& vars) const;
    /// Evaluate all variables at integers.
    Integer evaluate(const std::vector<Integer>& point) const;

    /// Exact quotient if `divisor` divides this polynomial in Z[T], else nullopt.
    std::optional<Poly> exact_div(const Poly& divisor) const;
    /// Gcd of the integer coefficients (0 for the zero polynomial).
    Integer content() const;
    /// Coefficients reduced into [0, modulus).
    Poly reduced_mod(const Integer& modulus) const;
    /// Sign-normalized: leading coefficient positive.
    Poly normalized() const;

    std::string to_string(const std::vector<std::string>& names) const;

private:
    std::size_t nvars_;
    TermMap terms_;
};

/// Gcd in Z[T1,...,Td], content included, normalized to positive leading
/// coefficient. gcd(0, 0) = 0.
Poly gcd(const Poly& a, const Poly& b);

using PolyMatrix = std::vector<std::vector<Poly>>;

/// Determinant of a square matrix by fraction-free elimination.
Poly determinant(PolyMatrix m);
/// Rank over the fraction field Q(T1,...,Td).
std::size_t rank_over_fraction_field(PolyMatrix m);

/// Integer helpers shared across modules.
int valuation(const Integer& x, unsigned p);  // requires x != 0
Integer ipow(unsigned p, unsigned k);

}  // namespace iwa
