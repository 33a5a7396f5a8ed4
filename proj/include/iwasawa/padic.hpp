#pragma once

#include "iwasawa/poly.hpp"
#include "iwasawa/window.hpp"

#include <string>
#include <utility>
#include <vector>

namespace iwa {

/// Result of a valuation at finite precision: either an exact integer or the
/// statement "at least N" for residues that vanish at precision N.
class Valuation {
public:
    static Valuation exact(int v) { return Valuation(true, v); }
    static Valuation at_least(int bound) { return Valuation(false, bound); }

    bool is_exact() const { return exact_; }
    /// The exact value, or the lower bound when !is_exact().
    int value() const { return value_; }
    std::string to_string() const;

    bool operator==(const Valuation&) const = default;

private:
    Valuation(bool exact, int v) : exact_(exact), value_(v) {}
    bool exact_;
    int value_;
};

class PAdicTruncated {
public:
    PAdicTruncated(unsigned prime, unsigned precision, const Integer& value);

    unsigned prime() const { return p_; }
    unsigned precision() const { return n_; }
    const Integer& residue() const { return residue_; }
    Valuation valuation() const;
    bool is_unit() const;

    PAdicTruncated operator+(const PAdicTruncated& o) const;
    PAdicTruncated operator-(const PAdicTruncated& o) const;
    PAdicTruncated operator*(const PAdicTruncated& o) const;
    bool operator==(const PAdicTruncated& o) const = default;

private:
    void check_compatible(const PAdicTruncated& o) const;
    unsigned p_;
    unsigned n_;
    Integer residue_;
};

Valuation valuation(const PAdicTruncated& x);

/// Element of (Z/p^N)[[T]] / (T^D).
class TruncatedPowerSeries {
public:
    TruncatedPowerSeries(unsigned prime, unsigned precision, unsigned degree);
    static TruncatedPowerSeries from_poly(const Poly& f, unsigned prime, TruncationWindow w);

    unsigned prime() const { return p_; }
    unsigned precision() const { return n_; }
    unsigned degree_cutoff() const { return static_cast<unsigned>(coeffs_.size()); }
    PAdicTruncated coefficient(std::size_t i) const;
    const std::vector<Integer>& residues() const { return coeffs_; }
    void set(std::size_t i, const Integer& v);

    TruncatedPowerSeries operator*(const TruncatedPowerSeries& o) const;
    TruncatedPowerSeries operator+(const TruncatedPowerSeries& o) const;
    /// Inverse of a series with unit constant term.
    TruncatedPowerSeries inverse() const;
    bool operator==(const TruncatedPowerSeries& o) const = default;

private:
    unsigned p_;
    unsigned n_;
    std::vector<Integer> coeffs_;
};

struct WeierstrassFactorization {
    int mu = 0;
    Poly distinguished{1};  // monic, non-leading coefficients in pZ, stored mod p^N
    TruncatedPowerSeries unit{2, 1, 1};
    int lambda = 0;
};

/// f = p^mu * unit * distinguished modulo (p^N, T^D), f a one-variable integer
/// polynomial. Throws ZeroAtPrecision when f vanishes mod p^N and
/// WindowTooSmall when D <= deg f or the splitting does not settle.
WeierstrassFactorization weierstrass_prepare(const Poly& f, unsigned prime, TruncationWindow window);

std::pair<int, int> mu_lambda(const Poly& f, unsigned prime, TruncationWindow window);

}  // namespace iwa
