// Loads a contact file into a closure and answers one reachability query.
//
//   ttc_query --n 4 contacts.txt reach 0 3 1 10
//   ttc_query --n 4 contacts.txt journey 0 3 1 10
//   ttc_query --n 4 contacts.txt connected 1 10

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "ttc/ttc.hpp"

namespace {

struct Window {
    ttc::Vertex u = 0, v = 0;
    ttc::Time t1 = 0, t2 = 0;
};

template <class Set>
int answer(const ttc::GraphParams& params, const std::vector<ttc::Contact>& contacts, const std::string& what,
           const Window& w) {
    ttc::TemporalClosure<Set> closure(params);
    for (const auto& c : contacts) closure.add_contact(c);
    if (what == "connected") {
        std::cout << (closure.is_connected(w.t1, w.t2) ? "yes" : "no") << '\n';
        return 0;
    }
    if (w.u >= params.n || w.v >= params.n) {
        std::cerr << "ttc_query: vertex out of range\n";
        return 2;
    }
    if (what == "reach") {
        std::cout << (closure.can_reach(w.u, w.v, w.t1, w.t2) ? "yes" : "no") << '\n';
        return 0;
    }
    const auto j = closure.reconstruct_journey(w.u, w.v, w.t1, w.t2);
    if (!j) {
        std::cout << "none\n";
        return 0;
    }
    std::cout << "departure " << j->departure << " arrival " << j->arrival << '\n';
    for (const auto& c : j->contacts) std::cout << c.u << ' ' << c.v << ' ' << c.t << '\n';
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Reachability queries over a contact file"};
    app.require_subcommand(1);
    ttc::GraphParams params;
    std::string path;
    std::string impl = "compact-dense";
    app.add_option("--n", params.n, "number of vertices")->required()->check(CLI::PositiveNumber);
    app.add_option("--delta", params.delta, "traversal latency")->capture_default_str()->check(CLI::PositiveNumber);
    app.add_option("--tau", params.tau, "lifetime, 0 for open-ended")->capture_default_str();
    app.add_option("--impl", impl, "compact-dense, compact-sparse or bptree")
        ->capture_default_str()
        ->check(CLI::IsMember({"compact-dense", "compact-sparse", "bptree"}));
    app.add_option("contacts", path, "contact file, one \"u v t\" per line")->required()->check(CLI::ExistingFile);

    Window w;
    auto* reach = app.add_subcommand("reach", "can u reach v within [t1, t2]");
    auto* journey = app.add_subcommand("journey", "print a journey from u to v within [t1, t2]");
    for (auto* sub : {reach, journey}) {
        sub->add_option("u", w.u)->required();
        sub->add_option("v", w.v)->required();
        sub->add_option("t1", w.t1)->required();
        sub->add_option("t2", w.t2)->required();
    }
    auto* connected = app.add_subcommand("connected", "is every pair reachable within [t1, t2]");
    connected->add_option("t1", w.t1)->required();
    connected->add_option("t2", w.t2)->required();
    CLI11_PARSE(app, argc, argv);

    try {
        std::ifstream in(path);
        const auto contacts = ttc::read_contacts(in, params.n);
        const std::string what = app.got_subcommand(reach) ? "reach" : app.got_subcommand(journey) ? "journey" : "connected";
        if (impl == "compact-sparse") return answer<ttc::SparseReachSet>(params, contacts, what, w);
        if (impl == "bptree") return answer<ttc::BaselineReachSet>(params, contacts, what, w);
        return answer<ttc::DenseReachSet>(params, contacts, what, w);
    } catch (const std::exception& e) {
        std::cerr << "ttc_query: " << e.what() << '\n';
        return 1;
    }
}
