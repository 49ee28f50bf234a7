#ifndef MODQ_ERROR_HPP
#define MODQ_ERROR_HPP

#include <cstdint>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace modq {

// Base class for all library errors.
class error : public std::runtime_error {
public:
    explicit error(const std::string& what) : std::runtime_error(what) {}
};

// A documented precondition does not hold (bad instance, bad argument, ...).
class precondition_error : public error {
public:
    explicit precondition_error(const std::string& what) : error(what) {}
};

// An enumeration blew through its step budget.  Deliberately distinct from
// precondition_error so callers can tell "instance too big" from "instance
// malformed".
class budget_exceeded : public error {
public:
    explicit budget_exceeded(const std::string& what) : error(what) {}
};

// Parsing / serialization problems.
class format_error : public error {
public:
    explicit format_error(const std::string& what) : error(what) {}
};

// Step budget for the exponential-time reference enumerations (varieties,
// monomial tuples, brute-force solvers).  One unit ~ one visited candidate.
// The default cap is 10^7 steps and can be overridden with the TFNP_BUDGET
// environment variable or per call site.
class Budget {
public:
    static std::uint64_t default_limit() {
        if (const char* env = std::getenv("TFNP_BUDGET")) {
            char* end = nullptr;
            unsigned long long v = std::strtoull(env, &end, 10);
            if (end && *end == '\0' && v > 0) return v;
        }
        return 10'000'000ull;
    }

    Budget() : limit_(default_limit()) {}
    explicit Budget(std::uint64_t limit) : limit_(limit) {}

    std::uint64_t limit() const { return limit_; }
    std::uint64_t used() const { return used_; }
    std::uint64_t remaining() const { return used_ >= limit_ ? 0 : limit_ - used_; }

    void charge(std::uint64_t steps, const char* where) {
        used_ += steps;
        if (used_ > limit_)
            throw budget_exceeded(std::string(where) + ": enumeration budget of " +
                                  std::to_string(limit_) + " steps exceeded");
    }

    // Up-front check for loops whose size is known in advance.
    void require(std::uint64_t steps, const char* where) const {
        if (steps > remaining())
            throw budget_exceeded(std::string(where) + ": would need " +
                                  std::to_string(steps) + " steps, budget has " +
                                  std::to_string(remaining()) + " left");
    }

private:
    std::uint64_t limit_;
    std::uint64_t used_ = 0;
};

} // namespace modq

#endif
