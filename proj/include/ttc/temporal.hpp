#pragma once

#include <iosfwd>
#include <vector>

#include "ttc/common.hpp"

namespace ttc {

/// Shape of a temporal graph. A lifetime `tau` of 0 means open-ended: the
/// lifetime then grows with the latest arrival seen.
struct GraphParams {
    Vertex n = 1;
    Time tau = 0;
    Time delta = 1;
};

/// Edge u -> v usable at time t; traversing it arrives at t + delta.
struct Contact {
    Vertex u = 0;
    Vertex v = 0;
    Time t = 0;

    friend bool operator==(const Contact&, const Contact&) = default;
};

struct Journey {
    std::vector<Contact> contacts;
    Time departure = 0;
    Time arrival = 0;
};

/// Throws std::out_of_range when the contact does not fit the graph
/// (vertex >= n, t == 0, or arrival past a fixed lifetime) and
/// contract_violation for self-loops.
void check_contact(const GraphParams& params, const Contact& c);

/// Parses "u v t" lines; blank lines and '#' comments are skipped. Vertices
/// are 0-based and must be < n. Throws std::runtime_error naming the line.
std::vector<Contact> read_contacts(std::istream& in, Vertex n);

}  // namespace ttc
