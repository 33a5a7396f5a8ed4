#pragma once

#include <vector>

namespace iwa {

/// Truncation of Zp[[T1..Td]] to coefficients mod p^N and total degree < D.
struct TruncationWindow {
    unsigned precision = 4;  // N
    unsigned degree = 6;     // D

    bool operator==(const TruncationWindow&) const = default;
};

using Schedule = std::vector<TruncationWindow>;

/// {(4,6), (5,7), (6,8)}
Schedule default_schedule();

}  // namespace iwa
