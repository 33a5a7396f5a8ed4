#include "iwasawa/truncated.hpp"

#include "iwasawa/window.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <stdexcept>

namespace iwa {

Schedule default_schedule()
{
    return {{4, 6}, {5, 7}, {6, 8}};
}

}  // namespace iwa

namespace iwa::trunc {

namespace {

void enumerate(std::size_t nvars, unsigned total, Exponent& cur, std::size_t pos, std::vector<Exponent>& out)
{
    if (pos + 1 == nvars) {
        cur[pos] = total;
        out.push_back(cur);
        return;
    }
    for (unsigned a = total + 1; a-- > 0;) {
        cur[pos] = a;
        enumerate(nvars, total - a, cur, pos + 1, out);
    }
}

std::vector<unsigned> subsets_of_size(std::size_t r, std::size_t k)
{
    std::vector<unsigned> out;
    for (unsigned mask = 0; mask < (1u << r); ++mask)
        if (static_cast<std::size_t>(std::popcount(mask)) == k)
            out.push_back(mask);
    return out;
}

std::size_t binomial(std::size_t n, std::size_t k)
{
    std::size_t r = 1;
    for (std::size_t i = 0; i < k; ++i)
        r = r * (n - i) / (i + 1);
    return r;
}

SparseVec from_map(const std::map<std::uint32_t, std::uint64_t>& acc)
{
    SparseVec v;
    v.reserve(acc.size());
    for (const auto& [c, x] : acc)
        if (x)
            v.emplace_back(c, x);
    return v;
}

SparseVec apply(const ModRing& ring, const std::vector<SparseVec>& images, const SparseVec& x)
{
    std::map<std::uint32_t, std::uint64_t> acc;
    for (const auto& [i, a] : x)
        for (const auto& [c, v] : images[i]) {
            auto& slot = acc[c];
            slot = ring.add(slot, ring.mul(a, v));
        }
    return from_map(acc);
}

std::vector<SparseVec> replicate(const std::vector<SparseVec>& gens, std::size_t copies, std::size_t stride)
{
    std::vector<SparseVec> out;
    out.reserve(gens.size() * copies);
    for (std::size_t s = 0; s < copies; ++s)
        for (const auto& g : gens) {
            SparseVec shifted;
            shifted.reserve(g.size());
            for (const auto& [c, v] : g)
                shifted.emplace_back(static_cast<std::uint32_t>(c + s * stride), v);
            out.push_back(std::move(shifted));
        }
    return out;
}

ComplexLevel koszul_skeleton(const FreeLevel& level, std::size_t r)
{
    ComplexLevel cx;
    cx.ring = level.ring;
    const std::size_t dim = level.dim();
    std::vector<std::vector<unsigned>> subsets(r + 1);
    std::vector<std::map<unsigned, std::size_t>> position(r + 1);
    for (std::size_t k = 0; k <= r; ++k) {
        subsets[k] = subsets_of_size(r, k);
        for (std::size_t s = 0; s < subsets[k].size(); ++s)
            position[k][subsets[k][s]] = s;
        cx.dims.push_back(subsets[k].size() * dim);
    }
    cx.sub.assign(r + 1, std::nullopt);
    cx.rel.assign(r + 1, {});
    cx.diff.assign(r + 1, {});
    const ModRing& ring = level.ring;
    for (std::size_t k = 1; k <= r; ++k) {
        auto& d = cx.diff[k];
        d.resize(cx.dims[k]);
        for (std::size_t s = 0; s < subsets[k].size(); ++s) {
            const unsigned mask = subsets[k][s];
            for (std::size_t g = 0; g < level.rank; ++g)
                for (std::size_t m = 0; m < level.basis.size(); ++m) {
                    std::map<std::uint32_t, std::uint64_t> acc;
                    int pos = 0;
                    for (std::size_t var = 0; var < r; ++var) {
                        if (!(mask & (1u << var)))
                            continue;
                        const auto shifted = level.basis.times_variable(m, var);
                        if (shifted >= 0) {
                            const std::size_t target = position[k - 1].at(mask & ~(1u << var));
                            const auto col = static_cast<std::uint32_t>(
                                target * dim + level.coord(g, static_cast<std::size_t>(shifted)));
                            acc[col] = ring.add(acc[col], pos % 2 == 0 ? 1 : ring.neg(1));
                        }
                        ++pos;
                    }
                    d[s * dim + level.coord(g, m)] = from_map(acc);
                }
        }
    }
    return cx;
}

}  // namespace

MonomialBasis::MonomialBasis(std::size_t nvars, unsigned degree) : nvars_(nvars), degree_(degree)
{
    if (nvars == 0) {
        if (degree > 0)
            exps_.push_back({});
    } else {
        Exponent cur(nvars, 0);
        for (unsigned t = 0; t < degree; ++t)
            enumerate(nvars, t, cur, 0, exps_);
    }
    shift_.assign(nvars, std::vector<std::int64_t>(exps_.size(), -1));
    for (std::size_t var = 0; var < nvars; ++var)
        for (std::size_t i = 0; i < exps_.size(); ++i) {
            Exponent e = exps_[i];
            ++e[var];
            shift_[var][i] = index(e);
        }
}

std::int64_t MonomialBasis::index(const Exponent& e) const
{
    if (total_degree(e) >= degree_)
        return -1;
    // graded order: binary search within the block of equal degree
    auto it = std::lower_bound(exps_.begin(), exps_.end(), e, [](const Exponent& a, const Exponent& b) {
        const auto da = total_degree(a), db = total_degree(b);
        if (da != db)
            return da < db;
        return a > b;
    });
    if (it == exps_.end() || *it != e)
        return -1;
    return it - exps_.begin();
}

ModPoly to_mod_poly(const Poly& f, const ModRing& ring, const std::vector<std::optional<std::uint64_t>>& fixed)
{
    std::map<Exponent, std::uint64_t> acc;
    for (const auto& [e, c] : f.terms()) {
        std::uint64_t v = mpz_fdiv_ui(c.get_mpz_t(), ring.modulus());
        Exponent kept;
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (i < fixed.size() && fixed[i])
                v = ring.mul(v, ring.pow(*fixed[i], e[i]));
            else
                kept.push_back(e[i]);
        }
        auto& slot = acc[kept];
        slot = ring.add(slot, v);
    }
    ModPoly out;
    for (const auto& [e, v] : acc)
        if (v)
            out.emplace_back(e, v);
    return out;
}

ModPolyMatrix to_mod_matrix(const PolyMatrix& m, const ModRing& ring,
                            const std::vector<std::optional<std::uint64_t>>& fixed)
{
    ModPolyMatrix out;
    out.reserve(m.size());
    for (const auto& row : m) {
        std::vector<ModPoly> r;
        r.reserve(row.size());
        for (const auto& f : row)
            r.push_back(to_mod_poly(f, ring, fixed));
        out.push_back(std::move(r));
    }
    return out;
}

std::vector<std::uint64_t> stable_homology(const ComplexLevel& hi, const ComplexLevel& lo, const Projection& proj)
{
    const std::size_t top = hi.dims.size() - 1;
    std::vector<std::uint64_t> out;
    for (std::size_t k = 0; k <= top; ++k) {
        // generators of the subgroup S_k at the deep level
        std::vector<SparseVec> gens;
        const bool full = !hi.sub[k].has_value();
        if (!full)
            gens = *hi.sub[k];

        Lattice bound(lo.ring, lo.dims[k]);
        for (const auto& r : lo.rel[k])
            bound.insert(r);
        if (k < top) {
            if (lo.sub[k + 1]) {
                for (const auto& g : *lo.sub[k + 1])
                    bound.insert(apply(lo.ring, lo.diff[k + 1], g));
            } else {
                for (const auto& img : lo.diff[k + 1])
                    bound.insert(img);
            }
        }
        const auto log_bound = bound.log_size();

        if (k == 0 && full) {
            out.push_back(lo.dims[0] * lo.ring.exponent() - log_bound);
            continue;
        }

        std::vector<SparseVec> cycles;
        if (k == 0) {
            cycles = gens;
        } else if (full) {
            cycles = kernel_modulo(hi.ring, hi.dims[k - 1], hi.diff[k], hi.rel[k - 1]);
        } else {
            std::vector<SparseVec> images;
            images.reserve(gens.size());
            for (const auto& g : gens)
                images.push_back(apply(hi.ring, hi.diff[k], g));
            for (const auto& c : kernel_modulo(hi.ring, hi.dims[k - 1], images, hi.rel[k - 1])) {
                std::map<std::uint32_t, std::uint64_t> acc;
                for (const auto& [i, a] : c)
                    for (const auto& [col, v] : gens[i]) {
                        auto& slot = acc[col];
                        slot = hi.ring.add(slot, hi.ring.mul(a, v));
                    }
                cycles.push_back(from_map(acc));
            }
        }
        for (const auto& z : cycles)
            bound.insert(project(z, proj[k], lo.ring));
        out.push_back(bound.log_size() - log_bound);
    }
    return out;
}

Projection identity_projection(const ComplexLevel& level)
{
    Projection p;
    for (auto d : level.dims) {
        std::vector<std::int64_t> m(d);
        for (std::size_t i = 0; i < d; ++i)
            m[i] = static_cast<std::int64_t>(i);
        p.push_back(std::move(m));
    }
    return p;
}

SparseVec row_times_monomial(const FreeLevel& level, const std::vector<ModPoly>& row, std::size_t mono)
{
    std::map<std::uint32_t, std::uint64_t> acc;
    const Exponent& base = level.basis.exponent(mono);
    Exponent e(base.size());
    for (std::size_t g = 0; g < row.size(); ++g)
        for (const auto& [te, c] : row[g]) {
            for (std::size_t i = 0; i < e.size(); ++i)
                e[i] = base[i] + te[i];
            const auto idx = level.basis.index(e);
            if (idx < 0)
                continue;
            auto& slot = acc[static_cast<std::uint32_t>(level.coord(g, static_cast<std::size_t>(idx)))];
            slot = level.ring.add(slot, c);
        }
    return from_map(acc);
}

Lattice relation_lattice(const FreeLevel& level, const ModPolyMatrix& matrix)
{
    Lattice lat(level.ring, level.dim());
    for (const auto& row : matrix) {
        if (row.size() != level.rank)
            throw std::invalid_argument("relation row length does not match the free rank");
        for (std::size_t m = 0; m < level.basis.size(); ++m)
            lat.insert(row_times_monomial(level, row, m));
    }
    return lat;
}

std::uint64_t cokernel_log_size(const FreeLevel& level, const ModPolyMatrix& matrix)
{
    return level.dim() * level.ring.exponent() - relation_lattice(level, matrix).log_size();
}

std::vector<SparseVec> kernel_generators(const FreeLevel& source, const ModPolyMatrix& matrix)
{
    const std::size_t b = matrix.empty() ? 0 : matrix[0].size();
    FreeLevel target{source.ring, source.basis, b};
    std::vector<SparseVec> images(source.dim());
    for (std::size_t i = 0; i < source.rank; ++i)
        for (std::size_t m = 0; m < source.basis.size(); ++m)
            images[source.coord(i, m)] = row_times_monomial(target, matrix.at(i), m);
    return kernel_modulo(source.ring, target.dim(), images, {});
}

ComplexLevel koszul_presented(const FreeLevel& level, const ModPolyMatrix& matrix, std::size_t r)
{
    ComplexLevel cx = koszul_skeleton(level, r);
    const auto rel = relation_lattice(level, matrix).basis();
    for (std::size_t k = 0; k <= r; ++k)
        cx.rel[k] = replicate(rel, binomial(r, k), level.dim());
    return cx;
}

ComplexLevel koszul_submodule(const FreeLevel& level, const std::vector<SparseVec>& generators, std::size_t r)
{
    ComplexLevel cx = koszul_skeleton(level, r);
    Lattice lat(level.ring, level.dim());
    for (const auto& g : generators)
        lat.insert(g);
    const auto basis = lat.basis();
    for (std::size_t k = 0; k <= r; ++k)
        cx.sub[k] = replicate(basis, binomial(r, k), level.dim());
    return cx;
}

std::vector<std::int64_t> free_projection(const FreeLevel& hi, const FreeLevel& lo)
{
    std::vector<std::int64_t> map(hi.dim(), -1);
    for (std::size_t g = 0; g < hi.rank; ++g)
        for (std::size_t m = 0; m < hi.basis.size(); ++m) {
            const auto idx = lo.basis.index(hi.basis.exponent(m));
            if (idx >= 0)
                map[hi.coord(g, m)] = static_cast<std::int64_t>(lo.coord(g, static_cast<std::size_t>(idx)));
        }
    return map;
}

Projection koszul_projection(const FreeLevel& hi, const FreeLevel& lo, std::size_t r)
{
    const auto base = free_projection(hi, lo);
    Projection p;
    for (std::size_t k = 0; k <= r; ++k) {
        const std::size_t copies = binomial(r, k);
        std::vector<std::int64_t> m(copies * hi.dim(), -1);
        for (std::size_t s = 0; s < copies; ++s)
            for (std::size_t i = 0; i < hi.dim(); ++i)
                if (base[i] >= 0)
                    m[s * hi.dim() + i] = static_cast<std::int64_t>(s * lo.dim()) + base[i];
        p.push_back(std::move(m));
    }
    return p;
}

SparseVec project(const SparseVec& v, const std::vector<std::int64_t>& map, const ModRing& target)
{
    SparseVec out;
    out.reserve(v.size());
    for (const auto& [c, x] : v) {
        const auto t = map[c];
        if (t < 0)
            continue;
        const auto y = x % target.modulus();
        if (y)
            out.emplace_back(static_cast<std::uint32_t>(t), y);
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace iwa::trunc
