#pragma once

#include "iwasawa/poly.hpp"
#include "iwasawa/window.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace iwa {

/// Lambda_d = Zp[[T1..Td]].
struct AlgebraDescriptor {
    unsigned prime = 3;
    std::size_t dimension = 1;
    std::vector<std::string> variables{"T1"};
    TruncationWindow window;

    static AlgebraDescriptor standard(unsigned prime, std::size_t dimension);
    void validate() const;
    bool operator==(const AlgebraDescriptor&) const = default;
};

/// Cokernel of Lambda^m -> Lambda^n, x -> x * relations (row vectors).
struct ModulePresentation {
    AlgebraDescriptor algebra;
    std::size_t generators = 0;
    PolyMatrix relations;  // m rows of length n

    static ModulePresentation free(const AlgebraDescriptor& a, std::size_t n);
    /// Lambda / (f_1, ..., f_k).
    static ModulePresentation cyclic(const AlgebraDescriptor& a, const std::vector<Poly>& ideal);

    std::size_t relation_count() const { return relations.size(); }
    void validate() const;
    bool operator==(const ModulePresentation&) const = default;
};

struct CharacterTwist {
    std::vector<Integer> values;  // kappa(gamma_i), p-adic units
    unsigned precision = 4;
};

enum class UnitStatus { unit, non_unit, zero_ideal };
std::string to_string(UnitStatus s);

struct FittingIdealData {
    std::vector<Poly> minors;  // lexicographic row subsets
    Poly gcd_over_z;
    UnitStatus unit_status = UnitStatus::zero_ideal;
};

std::size_t rank(const ModulePresentation& m);
bool is_torsion(const ModulePresentation& m);
FittingIdealData fitting_ideal(const ModulePresentation& m);

struct PseudoNullVerdict {
    bool pseudonull = false;
    std::string reason;
    /// false when a positive answer rests on the Z-polynomial gcd standing in
    /// for the Lambda_d gcd (d >= 2).
    bool proxy_complete = true;
    Poly gcd;
};

PseudoNullVerdict pseudonull_verdict(const ModulePresentation& m);
bool is_pseudonull(const ModulePresentation& m);

struct TwistedPresentation {
    ModulePresentation exact;    // integer substitution
    ModulePresentation reduced;  // coefficients mod p^N
    bool principal = true;       // every value is 1 mod p (mod 4 for p = 2)
};

TwistedPresentation twist(const ModulePresentation& m, const CharacterTwist& kappa);

/// Coinvariants for the variables in `subset` (0-based): set them to zero and
/// drop them from the algebra.
ModulePresentation reduce_to_quotient(const ModulePresentation& m, const std::vector<std::size_t>& subset);

ModulePresentation direct_sum(const ModulePresentation& a, const ModulePresentation& b);

/// Structure of a finitely generated Zp-module: Zp^free_rank plus Z/p^e_i.
struct ZpStructure {
    std::size_t free_rank = 0;
    std::vector<unsigned> torsion_exponents;  // ascending

    std::uint64_t log_torsion_size() const;
    bool operator==(const ZpStructure&) const = default;
};

/// Module over Lambda_0 = Zp from an integer matrix.
ZpStructure zp_structure(const ModulePresentation& m);

enum class Finiteness { finite, infinite, unstable };
std::string to_string(Finiteness f);

struct FinitenessReport {
    Finiteness verdict = Finiteness::unstable;
    std::optional<std::uint64_t> log_cardinality;
    std::string reason;
    std::vector<std::pair<unsigned, std::uint64_t>> ledger;  // m-adic level, log_p |M / m^L M|
};

FinitenessReport is_finite(const ModulePresentation& m, const Schedule& schedule);

/// log_p |M / m^level M| with m = (p, T1..Td).
std::uint64_t madic_log_size(const ModulePresentation& m, unsigned level);

}  // namespace iwa
