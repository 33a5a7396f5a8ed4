#pragma once

#include "iwasawa/koszul.hpp"
#include "iwasawa/module.hpp"

#include "json.hpp"

#include <optional>
#include <string>
#include <vector>

namespace iwa {

/// Lambda^a -> Lambda^b in degrees 1 and 2 (row vectors, x -> x * differential).
/// H1 is the kernel, H2 the cokernel.
struct PerfectComplex {
    AlgebraDescriptor algebra;
    PolyMatrix differential;  // a rows of length b
    std::size_t target_rank = 0;  // b, kept explicit for a = 0

    /// The differential as a presentation; its cokernel is H2 and, read as a
    /// kernel, it gives H1.
    ModulePresentation h2() const;
};

struct DescentLedger {
    CheckStatus status = CheckStatus::unstable;
    CheckStatus edge = CheckStatus::unstable;
    CheckStatus shift = CheckStatus::unstable;
    ZpStructure h0_of_h2;  // elementary divisors of H_0(G, H2)
    nlohmann::json entries;
};

DescentLedger descent_check(const PerfectComplex& c, const Schedule& schedule);

enum class EulerStatus { defined, undefined, unstable };
std::string to_string(EulerStatus s);

struct EulerCharacteristic {
    EulerStatus status = EulerStatus::unstable;
    std::optional<long long> log_p;  // chi = p^log_p
    Integer numerator = 1;
    Integer denominator = 1;
    std::vector<std::optional<std::uint64_t>> log_sizes;  // log_p |H_n(G, M)|
    std::string reason;

    std::string value_string() const;  // "1", "9", "1/3"
};

EulerCharacteristic euler_characteristic(const ModulePresentation& m, const Schedule& schedule);

}  // namespace iwa
