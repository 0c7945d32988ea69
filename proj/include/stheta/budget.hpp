#pragma once

#include <stdexcept>
#include <string>

namespace stheta {

/// Thrown when an enumeration or backtracking run exceeds its node budget.
struct BudgetExceeded : std::runtime_error {
    long long limit;
    explicit BudgetExceeded(long long lim)
        : std::runtime_error("node budget of " + std::to_string(lim) + " exceeded"), limit(lim) {}
};

/// Counts backtracking nodes across one logical computation.  Every search
/// routine charges the budget as it visits candidates; once the limit is
/// crossed the whole run aborts with BudgetExceeded.  A null NodeBudget*
/// everywhere means "unlimited".
class NodeBudget {
  public:
    explicit NodeBudget(long long limit) : limit_(limit) {}

    void charge(long long n = 1) {
        used_ += n;
        if (used_ > limit_) throw BudgetExceeded(limit_);
    }

    long long used() const { return used_; }
    long long limit() const { return limit_; }

  private:
    long long limit_;
    long long used_ = 0;
};

inline void charge(NodeBudget* b, long long n = 1) {
    if (b) b->charge(n);
}

} // namespace stheta
