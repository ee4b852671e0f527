#pragma once

#include <array>
#include <span>
#include <string>
#include <vector>

#include "tclflex/fleet.hpp"
#include "tclflex/timestamp.hpp"

namespace tclflex {

/// Hourly market clearing prices, $/MW per hour.
struct PriceSeries {
    Timestamp start{};
    double step_hours = 1.0;
    std::vector<double> up_capacity;
    std::vector<double> down_capacity;
    std::vector<double> up_mileage;
    std::vector<double> down_mileage;

    [[nodiscard]] std::size_t hours() const noexcept { return up_capacity.size(); }
    void validate() const;
};

/// Flat price series holding the given values at every hour.
PriceSeries flat_prices(Timestamp start, std::size_t hours, double up_capacity, double down_capacity,
                        double up_mileage, double down_mileage);

/// One hour of awarded regulation, MW.
struct Award {
    double up_capacity = 0.0;
    double down_capacity = 0.0;
    double up_mileage = 0.0;
    double down_mileage = 0.0;
    double accuracy = 1.0;
};

/// Awards the offered hourly limits in full: up capacity = n₋, down capacity = n₊,
/// mileage = multiplier × capacity.
std::vector<Award> award_from_flexibility(const ClassFlexibility& flex, double mileage_multiplier,
                                          double accuracy = 0.95);

enum class RevenueStream { up_capacity = 0, down_capacity = 1, up_mileage = 2, down_mileage = 3 };
inline constexpr std::array<const char*, 4> kRevenueStreamNames{"up_capacity", "down_capacity", "up_mileage",
                                                                 "down_mileage"};

struct RevenueReport {
    /// [stream][hour], dollars.
    std::array<std::vector<double>, 4> hourly;
    std::array<double, 4> annual{};
    double total = 0.0;

    [[nodiscard]] double stream(RevenueStream s) const noexcept { return annual[static_cast<int>(s)]; }
};

/// capacity price × awarded capacity + mileage price × awarded mileage × accuracy,
/// computed separately for up and down.
RevenueReport revenue(std::span<const Award> awards, const PriceSeries& prices);

/// Divides every entry by the installed unit count.
RevenueReport per_unit(const RevenueReport& fleet, double installed_units);

} // namespace tclflex
