#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace iwa {

/// Z/p^k with p^k < 2^62. With k = 1 and p a large prime this is a finite
/// field, which the generic-rank computations rely on.
class ModRing {
public:
    ModRing(std::uint64_t p, unsigned k);

    std::uint64_t prime() const { return p_; }
    unsigned exponent() const { return k_; }
    std::uint64_t modulus() const { return mod_; }

    std::uint64_t reduce(std::int64_t x) const;
    std::uint64_t add(std::uint64_t a, std::uint64_t b) const;
    std::uint64_t sub(std::uint64_t a, std::uint64_t b) const;
    std::uint64_t mul(std::uint64_t a, std::uint64_t b) const;
    std::uint64_t neg(std::uint64_t a) const { return a == 0 ? 0 : mod_ - a; }
    std::uint64_t pow(std::uint64_t a, std::uint64_t e) const;
    /// p-adic valuation; returns k for zero.
    unsigned valuation(std::uint64_t a) const;
    /// Inverse of a unit (an element not divisible by p).
    std::uint64_t inverse(std::uint64_t unit) const;
    std::uint64_t prime_power(unsigned e) const;

private:
    std::uint64_t p_;
    unsigned k_;
    std::uint64_t mod_;
    std::vector<std::uint64_t> powers_;
};

/// Sparse vector over Z/p^k, entries sorted by column, no zeros stored.
using SparseVec = std::vector<std::pair<std::uint32_t, std::uint64_t>>;

SparseVec sparse_axpy(const ModRing& ring, const SparseVec& x, std::uint64_t a, const SparseVec& y);  // x + a*y
SparseVec sparse_scale(const ModRing& ring, const SparseVec& x, std::uint64_t a);

/// Subgroup of (Z/p^k)^dim kept in Howell form: echelon rows whose pivots are
/// powers of p, closed under the saturation x -> p^(k-v) x. The Howell
/// property makes reduction a complete membership test and lets the rows with
/// pivots at or past a column span every element vanishing before it.
class Lattice {
public:
    Lattice(const ModRing& ring, std::size_t dim);

    const ModRing& ring() const { return ring_; }
    std::size_t dim() const { return pivot_.size(); }

    void insert(SparseVec v);
    bool contains(const SparseVec& v) const;
    SparseVec reduce(SparseVec v) const;

    /// log_p of the subgroup order.
    std::uint64_t log_size() const;
    std::size_t row_count() const { return rows_.size(); }
    std::vector<SparseVec> basis() const;
    /// Rows whose pivot column is >= `first`, shifted left by `first`.
    std::vector<SparseVec> rows_from(std::uint32_t first) const;

private:
    ModRing ring_;
    std::vector<int> pivot_;  // column -> row index, -1 if free
    std::vector<SparseVec> rows_;
    std::vector<unsigned> row_val_;
};

/// Generators of {x in (Z/p^k)^n : sum x_i images_i in span(relations)}.
/// `images` are the images of the n standard basis vectors in (Z/p^k)^m.
std::vector<SparseVec> kernel_modulo(const ModRing& ring, std::size_t target_dim,
                                     const std::vector<SparseVec>& images,
                                     const std::vector<SparseVec>& relations);

}  // namespace iwa
