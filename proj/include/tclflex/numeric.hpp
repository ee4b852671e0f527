#pragma once

#include <cmath>
#include <span>
#include <stdexcept>
#include <string>

namespace tclflex {

/// Malformed or inconsistent input (bad file, violated precondition).
class ValidationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A non-finite value showed up in an intermediate result.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Neumaier compensated sum. Reduction order is the call order, so results
/// are reproducible for a given input sequence.
class CompensatedSum {
public:
    void add(double v) noexcept
    {
        const double t = sum_ + v;
        if (std::abs(sum_) >= std::abs(v))
            comp_ += (sum_ - t) + v;
        else
            comp_ += (v - t) + sum_;
        sum_ = t;
    }
    [[nodiscard]] double value() const noexcept { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

inline double compensated_sum(std::span<const double> values) noexcept
{
    CompensatedSum s;
    for (double v : values)
        s.add(v);
    return s.value();
}

inline void require_finite(double v, const std::string& what)
{
    if (!std::isfinite(v))
        throw ValidationError(what + " must be finite");
}

inline void check_numeric(double v, const std::string& what)
{
    if (!std::isfinite(v))
        throw NumericalError("non-finite intermediate: " + what);
}

} // namespace tclflex
