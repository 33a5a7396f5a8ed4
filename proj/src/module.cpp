#include "iwasawa/module.hpp"

#include "iwasawa/errors.hpp"
#include "iwasawa/truncated.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

namespace iwa {

AlgebraDescriptor AlgebraDescriptor::standard(unsigned prime, std::size_t dimension)
{
    AlgebraDescriptor a;
    a.prime = prime;
    a.dimension = dimension;
    a.variables.clear();
    for (std::size_t i = 0; i < dimension; ++i)
        a.variables.push_back("T" + std::to_string(i + 1));
    return a;
}

void AlgebraDescriptor::validate() const
{
    if (prime < 2)
        throw std::invalid_argument("prime must be >= 2");
    for (unsigned q = 2; q * q <= prime; ++q)
        if (prime % q == 0)
            throw std::invalid_argument(std::to_string(prime) + " is not prime");
    if (variables.size() != dimension)
        throw std::invalid_argument("number of variable names differs from the dimension");
    if (window.precision < 1 || window.degree < 1)
        throw std::invalid_argument("window components must be >= 1");
}

ModulePresentation ModulePresentation::free(const AlgebraDescriptor& a, std::size_t n)
{
    ModulePresentation m;
    m.algebra = a;
    m.generators = n;
    return m;
}

ModulePresentation ModulePresentation::cyclic(const AlgebraDescriptor& a, const std::vector<Poly>& ideal)
{
    ModulePresentation m = free(a, 1);
    for (const auto& f : ideal)
        m.relations.push_back({f});
    return m;
}

void ModulePresentation::validate() const
{
    algebra.validate();
    for (const auto& row : relations) {
        if (row.size() != generators)
            throw std::invalid_argument("relation row length differs from the number of generators");
        for (const auto& f : row)
            if (f.nvars() != algebra.dimension)
                throw std::invalid_argument("matrix entry lives in the wrong polynomial ring");
    }
}

std::string to_string(UnitStatus s)
{
    switch (s) {
    case UnitStatus::unit: return "unit";
    case UnitStatus::non_unit: return "non-unit";
    case UnitStatus::zero_ideal: return "zero-ideal";
    }
    return "?";
}

std::size_t rank(const ModulePresentation& m)
{
    if (m.relations.empty())
        return m.generators;
    return m.generators - rank_over_fraction_field(m.relations);
}

bool is_torsion(const ModulePresentation& m)
{
    return rank(m) == 0;
}

namespace {

void row_subsets(std::size_t m, std::size_t k, std::size_t start, std::vector<std::size_t>& cur,
                 std::vector<std::vector<std::size_t>>& out)
{
    if (cur.size() == k) {
        out.push_back(cur);
        return;
    }
    for (std::size_t i = start; i + (k - cur.size()) <= m; ++i) {
        cur.push_back(i);
        row_subsets(m, k, i + 1, cur, out);
        cur.pop_back();
    }
}

bool constant_is_unit(const Poly& g, unsigned p)
{
    const Integer c = g.constant_term();
    return c != 0 && valuation(c, p) == 0;
}

}  // namespace

FittingIdealData fitting_ideal(const ModulePresentation& m)
{
    const std::size_t d = m.algebra.dimension;
    FittingIdealData out;
    out.gcd_over_z = Poly(d);
    if (m.generators == 0) {
        out.minors.push_back(Poly::constant(d, 1));
        out.gcd_over_z = Poly::constant(d, 1);
        out.unit_status = UnitStatus::unit;
        return out;
    }
    std::vector<std::vector<std::size_t>> subsets;
    std::vector<std::size_t> cur;
    row_subsets(m.relations.size(), m.generators, 0, cur, subsets);
    Poly g(d);
    for (const auto& rows : subsets) {
        PolyMatrix sub;
        for (auto r : rows)
            sub.push_back(m.relations[r]);
        Poly det = determinant(sub);
        g = gcd(g, det);
        out.minors.push_back(std::move(det));
    }
    out.gcd_over_z = g;
    if (g.is_zero())
        out.unit_status = UnitStatus::zero_ideal;
    else
        out.unit_status = constant_is_unit(g, m.algebra.prime) ? UnitStatus::unit : UnitStatus::non_unit;
    return out;
}

PseudoNullVerdict pseudonull_verdict(const ModulePresentation& m)
{
    const std::size_t d = m.algebra.dimension;
    if (d == 0)
        throw std::invalid_argument("pseudo-null test needs d >= 1");
    PseudoNullVerdict v;
    if (m.generators == 0) {
        v.pseudonull = true;
        v.reason = "zero module";
        v.gcd = Poly::constant(d, 1);
        return v;
    }
    if (!is_torsion(m)) {
        v.reason = "not torsion";
        v.gcd = Poly(d);
        return v;
    }
    const auto fit = fitting_ideal(m);
    v.gcd = fit.gcd_over_z;
    if (fit.unit_status == UnitStatus::unit) {
        v.pseudonull = true;
        v.proxy_complete = d == 1;
        v.reason = "gcd of maximal minors is a unit";
    } else {
        v.reason = "maximal minors share the non-unit factor " + fit.gcd_over_z.to_string(m.algebra.variables);
    }
    return v;
}

bool is_pseudonull(const ModulePresentation& m)
{
    return pseudonull_verdict(m).pseudonull;
}

TwistedPresentation twist(const ModulePresentation& m, const CharacterTwist& kappa)
{
    const std::size_t d = m.algebra.dimension;
    const unsigned p = m.algebra.prime;
    if (kappa.values.size() != d)
        throw std::invalid_argument("character needs one value per variable");
    if (kappa.precision < m.algebra.window.precision)
        throw PrecisionMismatch("character precision " + std::to_string(kappa.precision) +
                                " is below the algebra precision " + std::to_string(m.algebra.window.precision));
    TwistedPresentation out;
    const Integer principal_mod = p == 2 ? 4 : p;
    for (const auto& k : kappa.values) {
        if (k == 0 || valuation(k, p) != 0)
            throw std::invalid_argument("character value " + k.get_str() + " is not a p-adic unit");
        Integer r;
        mpz_fdiv_r(r.get_mpz_t(), Integer(k - 1).get_mpz_t(), principal_mod.get_mpz_t());
        if (r != 0)
            out.principal = false;
    }
    out.exact = m;
    for (auto& row : out.exact.relations)
        for (auto& f : row)
            for (std::size_t i = 0; i < d; ++i) {
                const Integer& k = kappa.values[i];
                f = f.substitute(i, Poly::variable(d, i) * k + Poly::constant(d, k - 1));
            }
    out.reduced = out.exact;
    const Integer pN = ipow(p, m.algebra.window.precision);
    for (auto& row : out.reduced.relations)
        for (auto& f : row)
            f = f.reduced_mod(pN);
    return out;
}

ModulePresentation reduce_to_quotient(const ModulePresentation& m, const std::vector<std::size_t>& subset)
{
    const std::size_t d = m.algebra.dimension;
    std::set<std::size_t> s(subset.begin(), subset.end());
    if (s.empty())
        throw std::invalid_argument("subgroup must contain at least one variable");
    if (*s.rbegin() >= d)
        throw std::invalid_argument("variable index out of range");
    const std::vector<std::size_t> vars(s.begin(), s.end());
    ModulePresentation out;
    out.algebra = m.algebra;
    out.algebra.dimension = d - vars.size();
    out.algebra.variables.clear();
    for (std::size_t i = 0; i < d; ++i)
        if (!s.count(i))
            out.algebra.variables.push_back(m.algebra.variables[i]);
    out.generators = m.generators;
    for (const auto& row : m.relations) {
        std::vector<Poly> r;
        bool zero = true;
        for (const auto& f : row) {
            r.push_back(f.drop_variables(vars));
            zero = zero && r.back().is_zero();
        }
        if (!zero)
            out.relations.push_back(std::move(r));
    }
    return out;
}

ModulePresentation direct_sum(const ModulePresentation& a, const ModulePresentation& b)
{
    if (a.algebra.prime != b.algebra.prime || a.algebra.dimension != b.algebra.dimension ||
        a.algebra.variables != b.algebra.variables)
        throw AlgebraMismatch("direct sum of modules over different algebras");
    const std::size_t d = a.algebra.dimension;
    ModulePresentation out = ModulePresentation::free(a.algebra, a.generators + b.generators);
    for (const auto& row : a.relations) {
        std::vector<Poly> r = row;
        r.resize(out.generators, Poly(d));
        out.relations.push_back(std::move(r));
    }
    for (const auto& row : b.relations) {
        std::vector<Poly> r(a.generators, Poly(d));
        r.insert(r.end(), row.begin(), row.end());
        out.relations.push_back(std::move(r));
    }
    return out;
}

std::uint64_t ZpStructure::log_torsion_size() const
{
    std::uint64_t s = 0;
    for (auto e : torsion_exponents)
        s += e;
    return s;
}

ZpStructure zp_structure(const ModulePresentation& m)
{
    if (m.algebra.dimension != 0)
        throw std::invalid_argument("Zp structure needs a module over Lambda_0");
    const std::size_t rows = m.relations.size(), cols = m.generators;
    std::vector<std::vector<Integer>> a(rows, std::vector<Integer>(cols));
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j)
            a[i][j] = m.relations[i][j].constant_term();

    std::vector<Integer> diag;
    for (std::size_t t = 0; t < std::min(rows, cols); ++t) {
        while (true) {
            std::size_t bi = rows, bj = cols;
            for (std::size_t i = t; i < rows; ++i)
                for (std::size_t j = t; j < cols; ++j)
                    if (a[i][j] != 0 && (bi == rows || abs(a[i][j]) < abs(a[bi][bj]))) {
                        bi = i;
                        bj = j;
                    }
            if (bi == rows)
                break;
            std::swap(a[t], a[bi]);
            for (auto& row : a)
                std::swap(row[t], row[bj]);
            bool clean = true;
            for (std::size_t i = t + 1; i < rows; ++i) {
                if (a[i][t] == 0)
                    continue;
                Integer q;
                mpz_fdiv_q(q.get_mpz_t(), a[i][t].get_mpz_t(), a[t][t].get_mpz_t());
                for (std::size_t j = t; j < cols; ++j)
                    a[i][j] -= q * a[t][j];
                clean = clean && a[i][t] == 0;
            }
            for (std::size_t j = t + 1; j < cols; ++j) {
                if (a[t][j] == 0)
                    continue;
                Integer q;
                mpz_fdiv_q(q.get_mpz_t(), a[t][j].get_mpz_t(), a[t][t].get_mpz_t());
                for (std::size_t i = t; i < rows; ++i)
                    a[i][j] -= q * a[i][t];
                clean = clean && a[t][j] == 0;
            }
            if (clean)
                break;
        }
        if (a[t][t] == 0)
            break;
        diag.push_back(a[t][t]);
    }
    ZpStructure s;
    s.free_rank = cols - diag.size();
    for (const auto& x : diag) {
        const int v = valuation(x, m.algebra.prime);
        if (v > 0)
            s.torsion_exponents.push_back(static_cast<unsigned>(v));
    }
    std::sort(s.torsion_exponents.begin(), s.torsion_exponents.end());
    return s;
}

std::string to_string(Finiteness f)
{
    switch (f) {
    case Finiteness::finite: return "true";
    case Finiteness::infinite: return "false";
    case Finiteness::unstable: return "unstable";
    }
    return "?";
}

std::uint64_t madic_log_size(const ModulePresentation& m, unsigned level)
{
    if (m.generators == 0 || level == 0)
        return 0;
    const ModRing ring(m.algebra.prime, level);
    trunc::FreeLevel free{ring, trunc::MonomialBasis(m.algebra.dimension, level), m.generators};
    Lattice lat = trunc::relation_lattice(free, trunc::to_mod_matrix(m.relations, ring));
    for (std::size_t g = 0; g < free.rank; ++g)
        for (std::size_t i = 0; i < free.basis.size(); ++i) {
            const unsigned deg = total_degree(free.basis.exponent(i));
            if (deg > 0)
                lat.insert({{static_cast<std::uint32_t>(free.coord(g, i)), ring.prime_power(level - deg)}});
        }
    return free.dim() * level - lat.log_size();
}

FinitenessReport is_finite(const ModulePresentation& m, const Schedule& schedule)
{
    FinitenessReport rep;
    const std::size_t d = m.algebra.dimension;
    if (m.generators == 0) {
        rep.verdict = Finiteness::finite;
        rep.log_cardinality = 0;
        rep.reason = "zero module";
        return rep;
    }
    if (d == 0) {
        const auto s = zp_structure(m);
        if (s.free_rank > 0) {
            rep.verdict = Finiteness::infinite;
            rep.reason = "free Zp-summand of rank " + std::to_string(s.free_rank);
        } else {
            rep.verdict = Finiteness::finite;
            rep.log_cardinality = s.log_torsion_size();
            rep.reason = "elementary divisors";
        }
        return rep;
    }
    const auto pn = pseudonull_verdict(m);
    if (!pn.pseudonull) {
        rep.verdict = Finiteness::infinite;
        rep.reason = pn.reason;
        return rep;
    }
    bool known_finite = d == 1;
    if (d == 1)
        rep.reason = "pseudo-null over Lambda_1";
    for (std::size_t keep = 0; keep < d && !known_finite; ++keep) {
        std::vector<std::size_t> drop;
        for (std::size_t i = 0; i < d; ++i)
            if (i != keep)
                drop.push_back(i);
        const auto q = reduce_to_quotient(m, drop);
        if (!is_pseudonull(q)) {
            rep.verdict = Finiteness::infinite;
            rep.reason = "quotient in " + m.algebra.variables[keep] + " alone is infinite";
            return rep;
        }
    }

    // |M/m^L M| = |M/m^(L+1) M| forces m^L M = 0 by Nakayama.
    std::map<unsigned, std::uint64_t> cache;
    auto size_at = [&](unsigned level) {
        auto it = cache.find(level);
        if (it != cache.end())
            return it->second;
        const auto s = madic_log_size(m, level);
        cache[level] = s;
        rep.ledger.emplace_back(level, s);
        return s;
    };
    std::vector<unsigned> levels;
    for (const auto& w : schedule)
        levels.push_back(w.degree);
    if (known_finite && !levels.empty())
        for (unsigned extra = 1; extra <= 8; ++extra)
            levels.push_back(levels.back() + 1);
    try {
        for (auto level : levels) {
            if (size_at(level) == size_at(level + 1)) {
                rep.verdict = Finiteness::finite;
                rep.log_cardinality = cache[level];
                if (!known_finite)
                    rep.reason = "m-adic quotients stable at level " + std::to_string(level);
                return rep;
            }
        }
    } catch (const std::overflow_error&) {
        // p^L no longer fits the lattice engine
    }
    if (known_finite) {
        rep.verdict = Finiteness::finite;
        return rep;
    }
    rep.verdict = Finiteness::unstable;
    rep.reason = "m-adic quotients did not stabilize over the schedule";
    return rep;
}

}  // namespace iwa
