#include "ttc/ttc.hpp"

#include <istream>
#include <sstream>
#include <string>

namespace ttc {

template class CompactReachSet<DenseLeaf>;
template class CompactReachSet<SparseLeaf>;
template class TemporalClosure<DenseReachSet>;
template class TemporalClosure<SparseReachSet>;
template class TemporalClosure<BaselineReachSet>;

void check_contact(const GraphParams& params, const Contact& c) {
    if (c.u >= params.n || c.v >= params.n) throw std::out_of_range("contact vertex out of range");
    require(c.u != c.v, "contact must join two distinct vertices");
    if (c.t == 0) throw std::out_of_range("contact time must be at least 1");
    if (params.tau != 0 && std::uint64_t{c.t} + params.delta > std::uint64_t{params.tau} + 1)
        throw std::out_of_range("contact arrives after the end of the lifetime");
}

std::vector<Contact> read_contacts(std::istream& in, Vertex n) {
    std::vector<Contact> out;
    std::string line;
    for (std::size_t lineno = 1; std::getline(in, line); ++lineno) {
        if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
        std::istringstream fields(line);
        long long u = 0, v = 0, t = 0;
        if (!(fields >> u)) continue;
        std::string rest;
        if (!(fields >> v >> t) || (fields >> rest))
            throw std::runtime_error("line " + std::to_string(lineno) + ": expected \"u v t\"");
        if (u < 0 || v < 0 || u >= n || v >= n)
            throw std::runtime_error("line " + std::to_string(lineno) + ": vertex out of range");
        if (t < 1 || t > 0xffffffffLL)
            throw std::runtime_error("line " + std::to_string(lineno) + ": time out of range");
        out.push_back({static_cast<Vertex>(u), static_cast<Vertex>(v), static_cast<Time>(t)});
    }
    return out;
}

}  // namespace ttc
