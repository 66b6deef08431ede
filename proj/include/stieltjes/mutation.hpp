#pragma once

#include <optional>
#include <string>

namespace stieltjes {

/// Deliberate defects used to confirm that the verification suites detect them.
enum class Mutation {
    None,
    FlipDefc1Sign,     // particular solution: c1 integrand with flipped sign
    DropWronskianDg2,  // g-Wronskian without its dg^2 term
    DropExpJumpTerm,   // g-exponential without the ln(1 + p dg) jump factors
};

void set_active_mutation(Mutation m);
Mutation active_mutation();
bool mutation_active(Mutation m);

std::optional<Mutation> parse_mutation(const std::string& name);
std::string mutation_name(Mutation m);

/// Sets a mutation for the lifetime of the guard.
class MutationGuard {
public:
    explicit MutationGuard(Mutation m) : previous_(active_mutation()) { set_active_mutation(m); }
    ~MutationGuard() { set_active_mutation(previous_); }
    MutationGuard(const MutationGuard&) = delete;
    MutationGuard& operator=(const MutationGuard&) = delete;

private:
    Mutation previous_;
};

}  // namespace stieltjes
