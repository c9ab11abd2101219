#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace qnr {

// Thrown when an exhaustive enumeration would exceed the configured budget.
// Enumerations never truncate silently.
class budget_error : public std::runtime_error {
  public:
    budget_error(uint64_t required, uint64_t budget)
        : std::runtime_error("enumeration budget exceeded: needs " + std::to_string(required) +
                             " vectors, budget is " + std::to_string(budget)),
          required_(required), budget_(budget) {}
    uint64_t required() const noexcept { return required_; }
    uint64_t budget() const noexcept { return budget_; }

  private:
    uint64_t required_, budget_;
};

// A nonzero vector with <u,u> = 0 showed up where the form was assumed definite.
class isotropic_error : public std::runtime_error {
  public:
    explicit isotropic_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace qnr
