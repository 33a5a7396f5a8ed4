#pragma once

// Zp[[G]] for G = N x| Gamma with N, Gamma ~ Zp, t = sigma - 1, tau = gamma - 1
// and gamma (1+t) gamma^-1 = (1+t)^kappa0. Elements are kept in the normal
// form sum c_ij t^i tau^j, stored as a two-variable Poly in (t, tau).

#include "iwasawa/koszul.hpp"
#include "iwasawa/lattice.hpp"
#include "iwasawa/module.hpp"

#include "json.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace iwa {

struct SkewAlgebraDescriptor {
    unsigned prime = 3;
    Integer kappa0 = 4;  // positive integer, 1 mod p (mod 4 when p = 2)
    std::vector<std::string> variables{"t", "tau"};
    TruncationWindow window;

    void validate() const;
    bool operator==(const SkewAlgebraDescriptor&) const = default;
};

struct SkewModulePresentation {
    SkewAlgebraDescriptor algebra;
    std::size_t generators = 0;
    PolyMatrix relations;  // left module Lambda(G)^n / sum Lambda(G) * row

    static SkewModulePresentation free(const SkewAlgebraDescriptor& a, std::size_t n);
    /// Lambda(G) modulo the left ideal generated by `ideal`.
    static SkewModulePresentation cyclic(const SkewAlgebraDescriptor& a, const std::vector<Poly>& ideal);
    void validate() const;
};

/// Lambda(G) / m^D with m = (p, t, tau): the group sum over i + j < D of
/// Z/p^(D-i-j) t^i tau^j.
class SkewTruncatedAlgebra {
public:
    using Element = std::vector<std::uint64_t>;  // dense, indexed by basis position, mod p^D

    SkewTruncatedAlgebra(unsigned prime, const Integer& kappa0, unsigned level);

    unsigned level() const { return level_; }
    const ModRing& ring() const { return ring_; }
    std::size_t size() const { return exps_.size(); }
    /// -1 when i + j >= level.
    std::int64_t index(unsigned i, unsigned j) const;
    std::pair<unsigned, unsigned> exponent(std::size_t k) const { return exps_[k]; }

    Element zero() const { return Element(size(), 0); }
    Element from_poly(const Poly& f) const;
    /// Canonical normal form: coefficient of t^i tau^j in [0, p^(D-i-j)).
    Poly to_poly(const Element& x) const;
    Element reduce(Element x) const;

    Element multiply(const Element& a, const Element& b) const;
    /// t^a tau^b * x
    Element monomial_times(unsigned a, unsigned b, const Element& x) const;
    /// x * tau^b
    Element times_tau_power(const Element& x, unsigned b) const;

private:
    Element tau_times(const Element& x) const;

    unsigned prime_;
    unsigned level_;
    ModRing ring_;
    std::vector<std::pair<unsigned, unsigned>> exps_;
    std::vector<std::uint64_t> mods_;  // p^(D-i-j)
    std::vector<std::vector<std::int64_t>> index_;
    std::vector<Element> tau_t_;                 // tau * t^i
    std::vector<std::vector<Element>> tau_pow_t_;  // tau^b * t^i
};

/// Truncated product in normal form.
Poly skew_multiply(const SkewAlgebraDescriptor& a, const Poly& x, const Poly& y, unsigned level);

struct SkewHomologyReport {
    ModulePresentation h0;  // exact, over Lambda(Gamma) in the variable tau
    std::size_t h0_rank = 0;
    bool h0_torsion = false;
    Finiteness h0_finite = Finiteness::unstable;

    std::vector<unsigned> levels;                  // m-adic levels evaluated
    std::vector<std::uint64_t> h1_log_sizes;       // log_p of the stable image of M[t] in M/m^D M
    std::vector<std::uint64_t> h0_log_sizes;       // log_p |H_0 / m^D H_0| from the truncated module
    std::vector<long long> h1_rank_estimates;      // second differences
    std::optional<std::size_t> h1_rank;
    std::optional<bool> h1_torsion;
    Stability stability = Stability::unstable;
    bool h0_consistent = true;  // truncated H_0 sizes agree with the exact presentation
    std::optional<unsigned> twist_exponent;  // for cyclic modules with t M = 0

    nlohmann::json to_json() const;
};

SkewHomologyReport n_homology(const SkewModulePresentation& m, const Schedule& schedule);

struct SkewRankReport {
    CheckStatus status = CheckStatus::unstable;  // holds = both terms known
    std::optional<long long> rank;
    std::size_t h0_rank = 0;
    std::optional<std::size_t> h1_rank;
};

SkewRankReport skew_rank(const SkewModulePresentation& m, const Schedule& schedule);

struct PropMainResult {
    CheckStatus status = CheckStatus::unstable;
    nlohmann::json ledger;
};

PropMainResult prop_main_skew_check(const SkewModulePresentation& m, const Schedule& schedule);

/// Exponents s in [0, max_s] with (u(t) gamma) x = kappa0^s gamma x on the
/// t-invariants at the given level, u = ((1+t)^kappa0 - 1)/t.
std::vector<unsigned> detect_twist_exponents(const SkewModulePresentation& m, unsigned level, unsigned max_s = 3);

}  // namespace iwa
