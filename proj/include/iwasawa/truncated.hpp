#pragma once

// Finite models of modules over Zp[[T1..Td]]: everything is cut down to a
// free Z/p^k-module of finite rank (or a finite-dimensional F_q-space), then
// handled by Lattice. Homology of inverse systems is read off as the stable
// image of a deeper level, which removes the boundary artifacts a single
// truncation introduces (e.g. T^(D-1) spuriously killed by T).

#include "iwasawa/lattice.hpp"
#include "iwasawa/poly.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace iwa::trunc {

/// Monomials in `nvars` variables of total degree < `degree`, graded order.
class MonomialBasis {
public:
    MonomialBasis(std::size_t nvars, unsigned degree);

    std::size_t nvars() const { return nvars_; }
    unsigned degree() const { return degree_; }
    std::size_t size() const { return exps_.size(); }
    const Exponent& exponent(std::size_t i) const { return exps_[i]; }
    /// Index of a monomial, or -1 when its degree is >= the cutoff.
    std::int64_t index(const Exponent& e) const;
    /// Index of x_var * monomial(i), or -1 if it leaves the window.
    std::int64_t times_variable(std::size_t i, std::size_t var) const { return shift_[var][i]; }

private:
    std::size_t nvars_;
    unsigned degree_;
    std::vector<Exponent> exps_;
    std::vector<std::vector<std::int64_t>> shift_;
};

using ModPoly = std::vector<std::pair<Exponent, std::uint64_t>>;
using ModPolyMatrix = std::vector<std::vector<ModPoly>>;

/// Reduce coefficients into the ring; variables listed in `fixed` are replaced
/// by the given ring elements and removed, the rest keep their order.
ModPoly to_mod_poly(const Poly& f, const ModRing& ring,
                    const std::vector<std::optional<std::uint64_t>>& fixed = {});
ModPolyMatrix to_mod_matrix(const PolyMatrix& m, const ModRing& ring,
                            const std::vector<std::optional<std::uint64_t>>& fixed = {});

/// Finite complex C_top -> ... -> C_0 of subquotients S_k / R_k of free
/// modules (Z/p^k)^{dims[k]}. diff[k][i] is the image of basis vector i of
/// degree k (k >= 1). A missing `sub` entry means S_k is the whole ambient.
struct ComplexLevel {
    ModRing ring{2, 1};
    std::vector<std::size_t> dims;
    std::vector<std::optional<std::vector<SparseVec>>> sub;
    std::vector<std::vector<SparseVec>> rel;
    std::vector<std::vector<SparseVec>> diff;
};

/// Coordinate maps from a deeper level to a shallower one, one per degree;
/// -1 drops the coordinate. Values are reduced into the shallower ring.
using Projection = std::vector<std::vector<std::int64_t>>;

/// log_p |image(H_k(hi) -> H_k(lo))| for every degree k. With hi == lo and the
/// identity projection this is plain homology of one level.
std::vector<std::uint64_t> stable_homology(const ComplexLevel& hi, const ComplexLevel& lo,
                                           const Projection& proj);

Projection identity_projection(const ComplexLevel& level);

/// Free module A^n with A = R[x_1..x_v]/(x)^D.
struct FreeLevel {
    ModRing ring;
    MonomialBasis basis;
    std::size_t rank;

    std::size_t dim() const { return rank * basis.size(); }
    std::size_t coord(std::size_t generator, std::size_t monomial) const
    {
        return generator * basis.size() + monomial;
    }
};

/// Row vector (p_1, ..., p_n) times the monomial with index `mono`, truncated.
SparseVec row_times_monomial(const FreeLevel& level, const std::vector<ModPoly>& row, std::size_t mono);

/// Relation lattice of coker(A^m -> A^n) given by the rows of `matrix`.
Lattice relation_lattice(const FreeLevel& level, const ModPolyMatrix& matrix);

/// log_p |coker(A^m -> A^n)|.
std::uint64_t cokernel_log_size(const FreeLevel& level, const ModPolyMatrix& matrix);

/// Generators of ker(A^a -> A^b), x -> x * matrix, as vectors in A^a.
std::vector<SparseVec> kernel_generators(const FreeLevel& source, const ModPolyMatrix& matrix);

/// Koszul complex of the first `r` variables on coker(matrix) at this level.
ComplexLevel koszul_presented(const FreeLevel& level, const ModPolyMatrix& matrix, std::size_t r);

/// Koszul complex of the first `r` variables on the submodule spanned by
/// `generators` of the free module A^rank.
ComplexLevel koszul_submodule(const FreeLevel& level, const std::vector<SparseVec>& generators, std::size_t r);

/// Truncation map between two Koszul complexes over the same free rank.
Projection koszul_projection(const FreeLevel& hi, const FreeLevel& lo, std::size_t r);

/// Coordinate map A_hi^n -> A_lo^n.
std::vector<std::int64_t> free_projection(const FreeLevel& hi, const FreeLevel& lo);

SparseVec project(const SparseVec& v, const std::vector<std::int64_t>& map, const ModRing& target);

}  // namespace iwa::trunc
