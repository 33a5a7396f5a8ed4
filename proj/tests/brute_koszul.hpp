#pragma once

#include <algorithm>
#include <cstdint>
#include <set>
#include <vector>

namespace oracle {

// Brute-force G-homology of M = Lambda_2 / (p^e, T1) (or / (p^e, T1, T2) when
// t2_zero) through the Koszul complex of (T1, T2) on the truncation
// M_L = (Z/p^e)[x] / (x^L): cycles at level L + 2, projected to L, modulo
// boundaries at L. Returns log_p |H_n| for n = 0, 1, 2.
struct BruteKoszul {
    unsigned p, e;
    bool t2_zero;

    using Elem = std::vector<unsigned>;  // coefficients of 1, x, ..., x^(L-1)

    unsigned mod() const
    {
        unsigned m = 1;
        for (unsigned i = 0; i < e; ++i)
            m *= p;
        return m;
    }
    unsigned length(unsigned level) const { return t2_zero ? 1 : level; }
    Elem times_x(const Elem& a) const
    {
        Elem out(a.size(), 0);
        if (t2_zero)
            return out;
        for (std::size_t i = 0; i + 1 < a.size(); ++i)
            out[i + 1] = a[i];
        return out;
    }
    std::vector<Elem> all(unsigned len, std::size_t copies) const
    {
        std::vector<Elem> out{Elem(len * copies, 0)};
        for (std::size_t k = 0; k < len * copies; ++k) {
            std::vector<Elem> next;
            for (const auto& v : out)
                for (unsigned c = 0; c < mod(); ++c) {
                    Elem w = v;
                    w[k] = c;
                    next.push_back(w);
                }
            out = std::move(next);
        }
        return out;
    }
    Elem slice(const Elem& v, std::size_t part, unsigned len) const
    {
        return Elem(v.begin() + static_cast<long>(part * len), v.begin() + static_cast<long>((part + 1) * len));
    }
    std::uint64_t log_count(std::size_t n) const
    {
        std::uint64_t l = 0;
        while (n > 1) {
            n /= p;
            ++l;
        }
        return l;
    }
    std::vector<std::uint64_t> homology(unsigned level) const
    {
        const unsigned lo = length(level), hi = length(level + 2);
        auto project = [&](const Elem& v, std::size_t copies) {
            Elem out;
            for (std::size_t c = 0; c < copies; ++c) {
                const Elem s = slice(v, c, hi);
                out.insert(out.end(), s.begin(), s.begin() + lo);
            }
            return out;
        };
        auto is_zero = [](const Elem& v) {
            return std::all_of(v.begin(), v.end(), [](unsigned x) { return x == 0; });
        };
        // boundaries at lo
        std::set<Elem> b0, b1;
        for (const auto& m : all(lo, 2)) {
            b0.insert(times_x(slice(m, 1, lo)));  // T1 a + T2 b with T1 = 0
        }
        for (const auto& m : all(lo, 1)) {
            Elem d = times_x(m);
            for (auto& x : d)
                x = (mod() - x) % mod();
            d.insert(d.end(), lo, 0);
            b1.insert(d);
        }
        // cycles at hi, projected
        std::set<Elem> z1, z2;
        for (const auto& v : all(hi, 2))
            if (is_zero(times_x(slice(v, 1, hi))))
                z1.insert(project(v, 2));
        for (const auto& v : all(hi, 1))
            if (is_zero(times_x(v)))
                z2.insert(project(v, 1));
        const std::uint64_t c0 = static_cast<std::uint64_t>(lo) * e;
        return {c0 - log_count(b0.size()), log_count(z1.size()) - log_count(b1.size()), log_count(z2.size())};
    }
};

}  // namespace oracle
