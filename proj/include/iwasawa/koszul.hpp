#pragma once

#include "iwasawa/module.hpp"

#include "json.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace iwa {

enum class Stability { exact, stabilized, unstable };
std::string to_string(Stability s);

/// Which module a ModulePresentation stands for: its cokernel (the usual
/// reading) or the kernel {x : x * relations = 0} inside Lambda^m.
enum class ModuleKind { cokernel, kernel };

struct WindowRecord {
    TruncationWindow window;
    std::optional<std::uint64_t> log_cardinality;  // log_p of the stable truncated group
    std::optional<std::size_t> generic_rank;        // one entry per field choice agreeing
};

struct DegreeReport {
    std::size_t degree = 0;
    std::optional<ModulePresentation> presentation;  // degree 0 of a cokernel
    std::vector<WindowRecord> windows;
    std::optional<std::size_t> rank;  // over Lambda_{d-r}
    std::optional<bool> torsion;
    Stability stability = Stability::unstable;
    /// Set when the homology is finite and its truncated size settled.
    std::optional<std::uint64_t> log_cardinality;
    Stability cardinality_stability = Stability::unstable;
};

struct HomologyReport {
    std::size_t subgroup_rank = 0;
    AlgebraDescriptor quotient_algebra;
    std::vector<DegreeReport> degrees;

    bool ranks_stable() const;
};

struct KoszulOptions {
    bool cardinalities = true;     // run the Z/p^N route as well
    unsigned lift_precision = 2;   // depth of the stable image, p-adically
    unsigned lift_degree = 3;      // and in degree
    bool stop_when_settled = true; // skip later windows once two agree
};

/// H_n(N, M) for N generated by the first r variables.
HomologyReport koszul_homology(const ModulePresentation& m, std::size_t r, const Schedule& schedule,
                               const KoszulOptions& options = {});

/// Same for the kernel module {x in Lambda^m : x * relations = 0}.
HomologyReport kernel_koszul_homology(const ModulePresentation& m, std::size_t r, const Schedule& schedule,
                                      const KoszulOptions& options = {});

/// H_r(N, M) = M[T1..Tr].
DegreeReport invariants_top(const ModulePresentation& m, std::size_t r, const Schedule& schedule);

/// log_p of the stable image of H_k at window w, Z/p^N route, all degrees.
std::vector<std::uint64_t> truncated_homology(const ModulePresentation& m, ModuleKind kind, std::size_t r,
                                              TruncationWindow w, const KoszulOptions& options = {});

/// dim over F_q of the stable image with the surviving variables specialized
/// at a seeded random point; equals rank over Lambda_{d-r} for generic choices.
std::vector<std::size_t> generic_homology_dims(const ModulePresentation& m, ModuleKind kind, std::size_t r,
                                               unsigned degree, std::uint64_t field_prime, std::uint64_t seed,
                                               unsigned lift_degree = 3);

enum class CheckStatus { holds, violated, unstable };
std::string to_string(CheckStatus s);

struct HowsonResult {
    CheckStatus status = CheckStatus::unstable;
    std::size_t module_rank = 0;
    std::vector<std::optional<std::size_t>> homology_ranks;
    long long alternating_sum = 0;
    nlohmann::json ledger;
};

HowsonResult howson_check(const ModulePresentation& m, std::size_t r, const Schedule& schedule);

nlohmann::json report_json(const HomologyReport& r);

}  // namespace iwa
