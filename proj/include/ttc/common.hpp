#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace ttc {

using Time = std::uint32_t;
using Vertex = std::uint32_t;

/// Raised when a caller breaks an operation's precondition (bad position,
/// rank out of range, ...). Distinct from data errors such as bad input files.
class contract_violation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

inline void require(bool condition, const char* what) {
    if (!condition) throw contract_violation(what);
}

/// Shape parameters of a dynamic bit-vector.
struct BitVectorParams {
    std::uint32_t max_children = 32;  // m: fan-out of internal nodes
    std::uint32_t leaf_bits = 4096;   // l: dense leaf capacity in bits
    std::uint32_t sparse_ones = 128;  // s_max: sparse leaf capacity in set bits
};

/// Per-thread count of tree nodes visited by bit-vector queries and updates.
/// Tests read it before and after an operation to bound traversal cost.
inline std::uint64_t& node_touches() {
    thread_local std::uint64_t counter = 0;
    return counter;
}

}  // namespace ttc
