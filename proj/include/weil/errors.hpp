#pragma once

#include <stdexcept>
#include <string>

namespace weil
{

// Gram matrix is not symmetric, has an odd diagonal entry, or is singular.
struct InvalidLattice : std::invalid_argument
{
    using std::invalid_argument::invalid_argument;
};

// Integer that is not congruent to 0 or 1 mod 4 passed as a discriminant.
struct InvalidDiscriminant : std::invalid_argument
{
    using std::invalid_argument::invalid_argument;
};

// Caller broke a documented precondition.
struct ContractViolation : std::logic_error
{
    using std::logic_error::logic_error;
};

// An internal invariant failed; indicates a bug or inconsistent input data.
struct InvariantViolation : std::logic_error
{
    using std::logic_error::logic_error;
};

// L-value requested at a point where the functional equation gives zero.
struct ParityError : std::domain_error
{
    using std::domain_error::domain_error;
};

// Brute-force enumeration would exceed the configured work budget.
struct BudgetExceeded : std::runtime_error
{
    using std::runtime_error::runtime_error;
};

// Hecke action needs source coefficients deeper than the table holds.
struct DepthError : std::out_of_range
{
    using std::out_of_range::out_of_range;
};

// The exact backend cannot produce this value; the numeric backend can.
struct ExactFallback : std::runtime_error
{
    using std::runtime_error::runtime_error;
};

#define WEIL_STRINGIFY_(x) #x
#define WEIL_STRINGIFY(x) WEIL_STRINGIFY_(x)
#define WEIL_REQUIRE(cond, Error, msg)                                                        \
    do {                                                                                      \
        if (!(cond))                                                                          \
            throw Error(std::string(__FILE__ ":" WEIL_STRINGIFY(__LINE__) ": ") + (msg));     \
    } while (0)

} // namespace weil
