#pragma once

#include <cmath>

namespace wdl {

// Neumaier's variant of Kahan summation: also correct when the addend is
// larger in magnitude than the running sum.
template <typename T>
class CompensatedSum {
public:
    CompensatedSum() = default;
    explicit CompensatedSum(T initial) : sum_(initial) {}

    void add(T value) {
        T t = sum_ + value;
        if (std::abs(sum_) >= std::abs(value)) {
            comp_ += (sum_ - t) + value;
        } else {
            comp_ += (value - t) + sum_;
        }
        sum_ = t;
    }

    CompensatedSum& operator+=(T value) {
        add(value);
        return *this;
    }

    T value() const { return sum_ + comp_; }

private:
    T sum_{0};
    T comp_{0};
};

}  // namespace wdl
