#include "stieltjes/mutation.hpp"

#include <atomic>

namespace stieltjes {

namespace {
std::atomic<Mutation> g_mutation{Mutation::None};
}

void set_active_mutation(Mutation m) { g_mutation.store(m); }
Mutation active_mutation() { return g_mutation.load(); }
bool mutation_active(Mutation m) { return m != Mutation::None && g_mutation.load() == m; }

std::optional<Mutation> parse_mutation(const std::string& name) {
    if (name == "none") return Mutation::None;
    if (name == "flip-c1") return Mutation::FlipDefc1Sign;
    if (name == "drop-dg2") return Mutation::DropWronskianDg2;
    if (name == "drop-jump-log") return Mutation::DropExpJumpTerm;
    return std::nullopt;
}

std::string mutation_name(Mutation m) {
    switch (m) {
    case Mutation::None: return "none";
    case Mutation::FlipDefc1Sign: return "flip-c1";
    case Mutation::DropWronskianDg2: return "drop-dg2";
    case Mutation::DropExpJumpTerm: return "drop-jump-log";
    }
    return "none";
}

}  // namespace stieltjes
