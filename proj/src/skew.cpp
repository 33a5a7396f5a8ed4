#include "iwasawa/skew.hpp"

#include "iwasawa/truncated.hpp"

#include <stdexcept>

namespace iwa {

void SkewAlgebraDescriptor::validate() const
{
    AlgebraDescriptor base = AlgebraDescriptor::standard(prime, 2);
    base.variables = variables;
    base.window = window;
    base.validate();
    const Integer m = prime == 2 ? 4 : prime;
    Integer r;
    mpz_fdiv_r(r.get_mpz_t(), Integer(kappa0 - 1).get_mpz_t(), m.get_mpz_t());
    if (kappa0 <= 0 || r != 0)
        throw std::invalid_argument("kappa0 must be a positive integer congruent to 1 mod " + m.get_str());
}

SkewModulePresentation SkewModulePresentation::free(const SkewAlgebraDescriptor& a, std::size_t n)
{
    SkewModulePresentation m;
    m.algebra = a;
    m.generators = n;
    return m;
}

SkewModulePresentation SkewModulePresentation::cyclic(const SkewAlgebraDescriptor& a, const std::vector<Poly>& ideal)
{
    SkewModulePresentation m = free(a, 1);
    for (const auto& f : ideal)
        m.relations.push_back({f});
    return m;
}

void SkewModulePresentation::validate() const
{
    algebra.validate();
    for (const auto& row : relations) {
        if (row.size() != generators)
            throw std::invalid_argument("relation row length differs from the number of generators");
        for (const auto& f : row)
            if (f.nvars() != 2)
                throw std::invalid_argument("skew entries are polynomials in (t, tau)");
    }
}

SkewTruncatedAlgebra::SkewTruncatedAlgebra(unsigned prime, const Integer& kappa0, unsigned level)
    : prime_(prime), level_(level), ring_(prime, level)
{
    const unsigned D = level;
    index_.assign(D, std::vector<std::int64_t>(D, -1));
    for (unsigned s = 0; s < D; ++s)
        for (unsigned i = s + 1; i-- > 0;) {
            index_[i][s - i] = static_cast<std::int64_t>(exps_.size());
            exps_.emplace_back(i, s - i);
            mods_.push_back(ipow(prime, D - s).get_ui());
        }

    // c = (1+t)^kappa0 - 1 and its powers, as polynomials in t below degree D
    std::vector<std::uint64_t> c(D, 0);
    for (unsigned i = 1; i < D; ++i) {
        Integer b;
        mpz_bin_ui(b.get_mpz_t(), kappa0.get_mpz_t(), i);
        c[i] = mpz_fdiv_ui(b.get_mpz_t(), ring_.modulus());
    }
    std::vector<std::uint64_t> cpow(D, 0);
    cpow[0] = 1 % ring_.modulus();
    for (unsigned u = 0; u < D; ++u) {
        Element e = zero();
        for (unsigned i = 0; i < D; ++i) {
            if (cpow[i] == 0 && i != u)
                continue;
            const auto a = index(i, 0);
            if (a >= 0)
                e[a] = ring_.sub(cpow[i], i == u ? 1 : 0);
            const auto b = index(i, 1);
            if (b >= 0)
                e[b] = cpow[i];
        }
        tau_t_.push_back(reduce(std::move(e)));
        std::vector<std::uint64_t> next(D, 0);
        for (unsigned i = 0; i < D; ++i)
            for (unsigned j = 1; i + j < D; ++j)
                next[i + j] = ring_.add(next[i + j], ring_.mul(cpow[i], c[j]));
        cpow = std::move(next);
    }

    tau_pow_t_.assign(D, std::vector<Element>(D));
    for (unsigned i = 0; i < D; ++i) {
        Element e = zero();
        e[index(i, 0)] = 1 % ring_.modulus();
        tau_pow_t_[0][i] = reduce(std::move(e));
    }
    for (unsigned b = 1; b < D; ++b)
        for (unsigned i = 0; i < D; ++i)
            tau_pow_t_[b][i] = tau_times(tau_pow_t_[b - 1][i]);
}

std::int64_t SkewTruncatedAlgebra::index(unsigned i, unsigned j) const
{
    if (i + j >= level_)
        return -1;
    return index_[i][j];
}

SkewTruncatedAlgebra::Element SkewTruncatedAlgebra::reduce(Element x) const
{
    for (std::size_t k = 0; k < x.size(); ++k)
        x[k] %= mods_[k];
    return x;
}

SkewTruncatedAlgebra::Element SkewTruncatedAlgebra::from_poly(const Poly& f) const
{
    Element e = zero();
    for (const auto& [ex, c] : f.terms()) {
        const auto k = index(ex[0], ex[1]);
        if (k < 0)
            continue;
        e[k] = ring_.add(e[k], mpz_fdiv_ui(c.get_mpz_t(), ring_.modulus()));
    }
    return reduce(std::move(e));
}

Poly SkewTruncatedAlgebra::to_poly(const Element& x) const
{
    const Element r = reduce(x);
    Poly f(2);
    for (std::size_t k = 0; k < r.size(); ++k)
        if (r[k])
            f.add_term(Exponent{exps_[k].first, exps_[k].second}, Integer(static_cast<unsigned long>(r[k])));
    return f;
}

SkewTruncatedAlgebra::Element SkewTruncatedAlgebra::tau_times(const Element& x) const
{
    Element out = zero();
    for (std::size_t k = 0; k < x.size(); ++k) {
        if (!x[k])
            continue;
        const auto [u, v] = exps_[k];
        const Element& tt = tau_t_[u];
        for (std::size_t q = 0; q < tt.size(); ++q) {
            if (!tt[q])
                continue;
            const auto [i, j] = exps_[q];
            const auto dst = index(i, j + v);
            if (dst >= 0)
                out[dst] = ring_.add(out[dst], ring_.mul(x[k], tt[q]));
        }
    }
    return reduce(std::move(out));
}

SkewTruncatedAlgebra::Element SkewTruncatedAlgebra::monomial_times(unsigned a, unsigned b, const Element& x) const
{
    Element out = zero();
    if (a + b >= level_)
        return out;
    for (std::size_t k = 0; k < x.size(); ++k) {
        if (!x[k])
            continue;
        const auto [i, j] = exps_[k];
        const Element& r = tau_pow_t_[b][i];
        for (std::size_t q = 0; q < r.size(); ++q) {
            if (!r[q])
                continue;
            const auto [u, v] = exps_[q];
            const auto dst = index(u + a, v + j);
            if (dst >= 0)
                out[dst] = ring_.add(out[dst], ring_.mul(x[k], r[q]));
        }
    }
    return reduce(std::move(out));
}

SkewTruncatedAlgebra::Element SkewTruncatedAlgebra::times_tau_power(const Element& x, unsigned b) const
{
    Element out = zero();
    for (std::size_t k = 0; k < x.size(); ++k) {
        if (!x[k])
            continue;
        const auto [i, j] = exps_[k];
        const auto dst = index(i, j + b);
        if (dst >= 0)
            out[dst] = x[k];
    }
    return reduce(std::move(out));
}

SkewTruncatedAlgebra::Element SkewTruncatedAlgebra::multiply(const Element& a, const Element& b) const
{
    Element out = zero();
    for (std::size_t k = 0; k < a.size(); ++k) {
        if (!a[k])
            continue;
        const auto [i, j] = exps_[k];
        const Element term = monomial_times(i, j, b);
        for (std::size_t q = 0; q < out.size(); ++q)
            if (term[q])
                out[q] = ring_.add(out[q], ring_.mul(a[k], term[q]));
    }
    return reduce(std::move(out));
}

Poly skew_multiply(const SkewAlgebraDescriptor& a, const Poly& x, const Poly& y, unsigned level)
{
    const SkewTruncatedAlgebra alg(a.prime, a.kappa0, level);
    return alg.to_poly(alg.multiply(alg.from_poly(x), alg.from_poly(y)));
}

namespace {

constexpr unsigned kLift = 3;
constexpr unsigned kExtraLevels = 3;

// M / m^D M as (Z/p^D)^(n * |basis|) modulo a lattice.
struct SkewLevel {
    SkewTruncatedAlgebra alg;
    std::size_t n;
    std::vector<SparseVec> rel;

    std::size_t dim() const { return n * alg.size(); }
    std::size_t coord(std::size_t g, std::size_t k) const { return g * alg.size() + k; }

    SparseVec pack(const std::vector<SkewTruncatedAlgebra::Element>& comps) const
    {
        SparseVec v;
        for (std::size_t g = 0; g < comps.size(); ++g)
            for (std::size_t k = 0; k < comps[g].size(); ++k)
                if (comps[g][k])
                    v.emplace_back(static_cast<std::uint32_t>(coord(g, k)), comps[g][k]);
        return v;
    }
    std::vector<SkewTruncatedAlgebra::Element> unpack(const SparseVec& v) const
    {
        std::vector<SkewTruncatedAlgebra::Element> comps(n, alg.zero());
        for (const auto& [c, x] : v)
            comps[c / alg.size()][c % alg.size()] = x;
        return comps;
    }
};

SkewLevel make_level(const SkewModulePresentation& m, unsigned level)
{
    SkewLevel L{SkewTruncatedAlgebra(m.algebra.prime, m.algebra.kappa0, level), m.generators, {}};
    Lattice lat(L.alg.ring(), L.dim());
    for (const auto& row : m.relations) {
        std::vector<SkewTruncatedAlgebra::Element> comps;
        for (const auto& f : row)
            comps.push_back(L.alg.from_poly(f));
        for (std::size_t k = 0; k < L.alg.size(); ++k) {
            const auto [a, b] = L.alg.exponent(k);
            std::vector<SkewTruncatedAlgebra::Element> shifted;
            for (const auto& c : comps)
                shifted.push_back(L.alg.monomial_times(a, b, c));
            lat.insert(L.pack(shifted));
        }
    }
    for (std::size_t g = 0; g < L.n; ++g)
        for (std::size_t k = 0; k < L.alg.size(); ++k) {
            const auto [i, j] = L.alg.exponent(k);
            if (i + j > 0)
                lat.insert({{static_cast<std::uint32_t>(L.coord(g, k)), L.alg.ring().prime_power(level - i - j)}});
        }
    L.rel = lat.basis();
    return L;
}

// 0 -> M --t--> M -> 0 at one level.
trunc::ComplexLevel t_complex(const SkewLevel& L)
{
    trunc::ComplexLevel cx;
    cx.ring = L.alg.ring();
    cx.dims = {L.dim(), L.dim()};
    cx.sub = {std::nullopt, std::nullopt};
    cx.rel = {L.rel, L.rel};
    cx.diff.assign(2, {});
    cx.diff[1].resize(L.dim());
    for (std::size_t g = 0; g < L.n; ++g)
        for (std::size_t k = 0; k < L.alg.size(); ++k) {
            const auto [i, j] = L.alg.exponent(k);
            const auto dst = L.alg.index(i + 1, j);
            if (dst >= 0)
                cx.diff[1][L.coord(g, k)] = {{static_cast<std::uint32_t>(L.coord(g, static_cast<std::size_t>(dst))), 1}};
        }
    return cx;
}

std::vector<std::int64_t> level_projection(const SkewLevel& hi, const SkewLevel& lo)
{
    std::vector<std::int64_t> map(hi.dim(), -1);
    for (std::size_t g = 0; g < hi.n; ++g)
        for (std::size_t k = 0; k < hi.alg.size(); ++k) {
            const auto [i, j] = hi.alg.exponent(k);
            const auto dst = lo.alg.index(i, j);
            if (dst >= 0)
                map[hi.coord(g, k)] = static_cast<std::int64_t>(lo.coord(g, static_cast<std::size_t>(dst)));
        }
    return map;
}

ModulePresentation h0_presentation(const SkewModulePresentation& m)
{
    AlgebraDescriptor a = AlgebraDescriptor::standard(m.algebra.prime, 1);
    a.variables = {m.algebra.variables.at(1)};
    a.window = m.algebra.window;
    ModulePresentation h0 = ModulePresentation::free(a, m.generators);
    for (const auto& row : m.relations) {
        std::vector<Poly> r;
        bool zero = true;
        for (const auto& f : row) {
            r.push_back(f.drop_variables({0}));
            zero = zero && r.back().is_zero();
        }
        if (!zero)
            h0.relations.push_back(std::move(r));
    }
    return h0;
}

std::vector<unsigned> skew_levels(const Schedule& schedule)
{
    const unsigned first = schedule.empty() ? 6 : schedule.front().degree;
    unsigned last = schedule.empty() ? 8 : schedule.back().degree;
    last = std::max(last + 1, first + 3);
    std::vector<unsigned> out;
    for (unsigned d = first; d <= last; ++d)
        out.push_back(d);
    return out;
}

bool t_kills_module(const SkewLevel& L)
{
    Lattice lat(L.alg.ring(), L.dim());
    for (const auto& r : L.rel)
        lat.insert(r);
    for (std::size_t g = 0; g < L.n; ++g) {
        const auto k = L.alg.index(1, 0);
        if (k >= 0 && !lat.contains({{static_cast<std::uint32_t>(L.coord(g, static_cast<std::size_t>(k))), 1}}))
            return false;
    }
    return true;
}

}  // namespace

SkewHomologyReport n_homology(const SkewModulePresentation& m, const Schedule& schedule)
{
    m.validate();
    SkewHomologyReport rep;
    rep.h0 = h0_presentation(m);
    rep.h0_rank = rank(rep.h0);
    rep.h0_torsion = rep.h0_rank == 0;
    rep.h0_finite = is_finite(rep.h0, schedule).verdict;
    rep.levels = skew_levels(schedule);

    auto evaluate = [&](unsigned D) {
        const SkewLevel lo = make_level(m, D);
        const SkewLevel hi = make_level(m, D + kLift);
        const auto map = level_projection(hi, lo);
        const auto sizes = trunc::stable_homology(t_complex(hi), t_complex(lo), {map, map});
        rep.h0_log_sizes.push_back(sizes[0]);
        rep.h1_log_sizes.push_back(sizes[1]);
        if (sizes[0] != madic_log_size(rep.h0, D))
            rep.h0_consistent = false;
    };
    auto settle = [&]() {
        const auto& s = rep.h1_log_sizes;
        rep.h1_rank_estimates.clear();
        for (std::size_t i = 0; i + 2 < s.size(); ++i)
            rep.h1_rank_estimates.push_back(static_cast<long long>(s[i + 2]) - 2 * static_cast<long long>(s[i + 1]) +
                                            static_cast<long long>(s[i]));
        const auto& e = rep.h1_rank_estimates;
        for (std::size_t i = 0; i + 1 < e.size(); ++i)
            if (e[i] == e[i + 1] && e[i] >= 0) {
                rep.h1_rank = static_cast<std::size_t>(e[i]);
                rep.h1_torsion = e[i] == 0;
                rep.stability = Stability::stabilized;
                return true;
            }
        return false;
    };
    for (auto D : rep.levels)
        evaluate(D);
    // a few deeper levels before giving up
    for (unsigned extra = 0; !settle() && extra < kExtraLevels; ++extra) {
        rep.levels.push_back(rep.levels.back() + 1);
        evaluate(rep.levels.back());
    }

    if (m.generators == 1 && t_kills_module(make_level(m, rep.levels.front()))) {
        const auto found = detect_twist_exponents(m, rep.levels.front());
        if (found.size() == 1)
            rep.twist_exponent = found.front();
    }
    return rep;
}

std::vector<unsigned> detect_twist_exponents(const SkewModulePresentation& m, unsigned level, unsigned max_s)
{
    const SkewLevel lo = make_level(m, level);
    const SkewLevel hi = make_level(m, level + kLift);
    const auto& alg = lo.alg;
    const auto& ring = alg.ring();

    // generators of the t-invariants, truncated from the deeper level
    std::vector<SparseVec> images;
    for (std::size_t c = 0; c < hi.dim(); ++c) {
        const auto [i, j] = hi.alg.exponent(c % hi.alg.size());
        const auto dst = hi.alg.index(i + 1, j);
        SparseVec v;
        if (dst >= 0)
            v.emplace_back(static_cast<std::uint32_t>(hi.coord(c / hi.alg.size(), static_cast<std::size_t>(dst))), 1);
        images.push_back(std::move(v));
    }
    const auto map = level_projection(hi, lo);
    std::vector<SparseVec> cycles;
    for (const auto& k : kernel_modulo(hi.alg.ring(), hi.dim(), images, hi.rel))
        cycles.push_back(trunc::project(k, map, ring));

    Lattice rel(ring, lo.dim());
    for (const auto& r : lo.rel)
        rel.insert(r);

    // u(t) = sum_{i >= 1} C(kappa0, i) t^(i-1), gamma = 1 + tau
    Poly u(2);
    for (unsigned i = 1; i <= level; ++i) {
        Integer b;
        mpz_bin_ui(b.get_mpz_t(), m.algebra.kappa0.get_mpz_t(), i);
        u.add_term(Exponent{i - 1, 0}, b);
    }
    Poly gamma = Poly::constant(2, 1) + Poly::variable(2, 1);
    const auto ug = alg.multiply(alg.from_poly(u), alg.from_poly(gamma));
    const auto g = alg.from_poly(gamma);

    std::vector<unsigned> out;
    for (unsigned s = 0; s <= max_s; ++s) {
        const std::uint64_t ks = mpz_fdiv_ui(Integer(m.algebra.kappa0).get_mpz_t(), ring.modulus());
        const std::uint64_t scale = ring.pow(ks, s);
        bool ok = true;
        for (const auto& x : cycles) {
            const auto comps = lo.unpack(x);
            std::vector<SkewTruncatedAlgebra::Element> diff;
            for (const auto& c : comps) {
                auto a = alg.multiply(ug, c);
                const auto b = alg.multiply(g, c);
                for (std::size_t q = 0; q < a.size(); ++q)
                    a[q] = ring.sub(a[q], ring.mul(scale, b[q]));
                diff.push_back(alg.reduce(std::move(a)));
            }
            if (!rel.contains(lo.pack(diff))) {
                ok = false;
                break;
            }
        }
        if (ok)
            out.push_back(s);
    }
    return out;
}

SkewRankReport skew_rank(const SkewModulePresentation& m, const Schedule& schedule)
{
    const auto h = n_homology(m, schedule);
    SkewRankReport r;
    r.h0_rank = h.h0_rank;
    r.h1_rank = h.h1_rank;
    if (h.h1_rank) {
        r.rank = static_cast<long long>(h.h0_rank) - static_cast<long long>(*h.h1_rank);
        r.status = CheckStatus::holds;
    }
    return r;
}

PropMainResult prop_main_skew_check(const SkewModulePresentation& m, const Schedule& schedule)
{
    const auto h = n_homology(m, schedule);
    PropMainResult res;
    res.ledger = h.to_json();
    if (!h.h1_rank) {
        res.status = CheckStatus::unstable;
    } else {
        const long long rk = static_cast<long long>(h.h0_rank) - static_cast<long long>(*h.h1_rank);
        const bool a = h.h0_torsion;
        const bool b = rk == 0 && *h.h1_torsion;
        res.ledger["skew_rank"] = rk;
        res.ledger["statement_a"] = a;
        res.ledger["statement_b"] = b;
        res.status = a == b && h.h0_consistent ? CheckStatus::holds : CheckStatus::violated;
    }
    res.ledger["status"] = to_string(res.status);
    return res;
}

nlohmann::json SkewHomologyReport::to_json() const
{
    nlohmann::json j;
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& row : h0.relations) {
        nlohmann::json jr = nlohmann::json::array();
        for (const auto& f : row)
            jr.push_back(f.to_string(h0.algebra.variables));
        rows.push_back(jr);
    }
    j["h0"] = {{"generators", h0.generators}, {"relations", rows}, {"rank", h0_rank},
               {"torsion", h0_torsion}, {"finite", iwa::to_string(h0_finite)}};
    j["levels"] = levels;
    j["h0_log_sizes"] = h0_log_sizes;
    j["h0_consistent"] = h0_consistent;
    j["h1_log_sizes"] = h1_log_sizes;
    j["h1_rank_estimates"] = h1_rank_estimates;
    j["h1_rank"] = h1_rank ? nlohmann::json(*h1_rank) : nlohmann::json(nullptr);
    j["h1_torsion"] = h1_torsion ? nlohmann::json(*h1_torsion) : nlohmann::json(nullptr);
    j["stability"] = iwa::to_string(stability);
    j["twist_exponent"] = twist_exponent ? nlohmann::json(*twist_exponent) : nlohmann::json(nullptr);
    return j;
}

}  // namespace iwa
