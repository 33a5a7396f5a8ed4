#include "iwasawa/lattice.hpp"

#include <stdexcept>

namespace iwa {

using u128 = unsigned __int128;

ModRing::ModRing(std::uint64_t p, unsigned k) : p_(p), k_(k), mod_(1)
{
    if (p < 2 || k < 1)
        throw std::invalid_argument("ModRing needs p >= 2 and k >= 1");
    powers_.push_back(1);
    for (unsigned i = 0; i < k; ++i) {
        if (mod_ > (std::uint64_t{1} << 62) / p)
            throw std::overflow_error("p^k exceeds 2^62");
        mod_ *= p;
        powers_.push_back(mod_);
    }
}

std::uint64_t ModRing::reduce(std::int64_t x) const
{
    const auto m = static_cast<std::int64_t>(mod_);
    std::int64_t r = x % m;
    return static_cast<std::uint64_t>(r < 0 ? r + m : r);
}

std::uint64_t ModRing::add(std::uint64_t a, std::uint64_t b) const
{
    std::uint64_t s = a + b;
    return s >= mod_ ? s - mod_ : s;
}

std::uint64_t ModRing::sub(std::uint64_t a, std::uint64_t b) const
{
    return a >= b ? a - b : a + mod_ - b;
}

std::uint64_t ModRing::mul(std::uint64_t a, std::uint64_t b) const
{
    return static_cast<std::uint64_t>(static_cast<u128>(a) * b % mod_);
}

std::uint64_t ModRing::pow(std::uint64_t a, std::uint64_t e) const
{
    std::uint64_t r = 1 % mod_;
    while (e) {
        if (e & 1u)
            r = mul(r, a);
        a = mul(a, a);
        e >>= 1;
    }
    return r;
}

unsigned ModRing::valuation(std::uint64_t a) const
{
    if (a == 0)
        return k_;
    unsigned v = 0;
    while (a % p_ == 0) {
        a /= p_;
        ++v;
    }
    return v;
}

std::uint64_t ModRing::inverse(std::uint64_t unit) const
{
    // extended Euclid on signed 128-bit values
    __int128 r0 = static_cast<__int128>(mod_), r1 = static_cast<__int128>(unit % mod_);
    __int128 t0 = 0, t1 = 1;
    while (r1 != 0) {
        __int128 q = r0 / r1;
        __int128 tmp = r0 - q * r1;
        r0 = r1;
        r1 = tmp;
        tmp = t0 - q * t1;
        t0 = t1;
        t1 = tmp;
    }
    if (r0 != 1)
        throw std::domain_error("element is not a unit");
    if (t0 < 0)
        t0 += static_cast<__int128>(mod_);
    return static_cast<std::uint64_t>(t0);
}

std::uint64_t ModRing::prime_power(unsigned e) const
{
    return e > k_ ? 0 : (e == k_ ? 0 : powers_[e]);
}

SparseVec sparse_axpy(const ModRing& ring, const SparseVec& x, std::uint64_t a, const SparseVec& y)
{
    SparseVec out;
    out.reserve(x.size() + y.size());
    std::size_t i = 0, j = 0;
    while (i < x.size() || j < y.size()) {
        if (j == y.size() || (i < x.size() && x[i].first < y[j].first)) {
            out.push_back(x[i++]);
        } else if (i == x.size() || y[j].first < x[i].first) {
            auto v = ring.mul(a, y[j].second);
            if (v)
                out.emplace_back(y[j].first, v);
            ++j;
        } else {
            auto v = ring.add(x[i].second, ring.mul(a, y[j].second));
            if (v)
                out.emplace_back(x[i].first, v);
            ++i;
            ++j;
        }
    }
    return out;
}

SparseVec sparse_scale(const ModRing& ring, const SparseVec& x, std::uint64_t a)
{
    SparseVec out;
    out.reserve(x.size());
    for (const auto& [c, v] : x) {
        auto w = ring.mul(a, v);
        if (w)
            out.emplace_back(c, w);
    }
    return out;
}

Lattice::Lattice(const ModRing& ring, std::size_t dim) : ring_(ring), pivot_(dim, -1) {}

SparseVec Lattice::reduce(SparseVec x) const
{
    std::size_t pos = 0;
    while (pos < x.size()) {
        const auto [c, a] = x[pos];
        const int r = pivot_[c];
        if (r < 0) {
            ++pos;
            continue;
        }
        const unsigned v = ring_.valuation(a);
        const unsigned vr = row_val_[r];
        if (v < vr) {
            ++pos;
            continue;
        }
        const std::uint64_t coef = a / ring_.prime_power(vr);
        x = sparse_axpy(ring_, x, ring_.neg(coef), rows_[r]);
        // entries before pos are untouched because pivot rows start at c
    }
    return x;
}

bool Lattice::contains(const SparseVec& v) const
{
    return reduce(v).empty();
}

void Lattice::insert(SparseVec v)
{
    std::vector<SparseVec> stack;
    stack.push_back(std::move(v));
    const unsigned k = ring_.exponent();
    while (!stack.empty()) {
        SparseVec x = std::move(stack.back());
        stack.pop_back();
        while (!x.empty()) {
            const auto [c, a] = x.front();
            const unsigned v = ring_.valuation(a);
            const int r = pivot_[c];
            if (r >= 0 && v >= row_val_[r]) {
                const std::uint64_t coef = a / ring_.prime_power(row_val_[r]);
                x = sparse_axpy(ring_, x, ring_.neg(coef), rows_[r]);
                continue;
            }
            const std::uint64_t unit = a / ring_.prime_power(v);
            x = sparse_scale(ring_, x, ring_.inverse(unit));
            if (v > 0) {
                auto sat = sparse_scale(ring_, x, ring_.prime_power(k - v));
                if (!sat.empty())
                    stack.push_back(std::move(sat));
            }
            if (r >= 0) {
                stack.push_back(std::move(rows_[r]));
                rows_[r] = std::move(x);
                row_val_[r] = v;
            } else {
                pivot_[c] = static_cast<int>(rows_.size());
                rows_.push_back(std::move(x));
                row_val_.push_back(v);
            }
            break;
        }
    }
}

std::uint64_t Lattice::log_size() const
{
    std::uint64_t total = 0;
    for (auto v : row_val_)
        total += ring_.exponent() - v;
    return total;
}

std::vector<SparseVec> Lattice::basis() const
{
    return rows_;
}

std::vector<SparseVec> Lattice::rows_from(std::uint32_t first) const
{
    std::vector<SparseVec> out;
    for (const auto& row : rows_) {
        if (row.front().first < first)
            continue;
        SparseVec shifted;
        shifted.reserve(row.size());
        for (const auto& [c, v] : row)
            shifted.emplace_back(c - first, v);
        out.push_back(std::move(shifted));
    }
    return out;
}

std::vector<SparseVec> kernel_modulo(const ModRing& ring, std::size_t target_dim,
                                     const std::vector<SparseVec>& images,
                                     const std::vector<SparseVec>& relations)
{
    Lattice lat(ring, target_dim + images.size());
    for (const auto& rel : relations)
        lat.insert(rel);
    for (std::size_t i = 0; i < images.size(); ++i) {
        SparseVec row = images[i];
        row.emplace_back(static_cast<std::uint32_t>(target_dim + i), 1);
        lat.insert(std::move(row));
    }
    return lat.rows_from(static_cast<std::uint32_t>(target_dim));
}

}  // namespace iwa
