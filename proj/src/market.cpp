#include "tclflex/market.hpp"

#include <cmath>

#include "tclflex/numeric.hpp"
#include "tclflex/units.hpp"

namespace tclflex {

void PriceSeries::validate() const
{
    const std::size_t n = up_capacity.size();
    if (n == 0)
        throw ValidationError("price series is empty");
    if (down_capacity.size() != n || up_mileage.size() != n || down_mileage.size() != n)
        throw ValidationError("price columns have different lengths");
    for (const auto* col : {&up_capacity, &down_capacity, &up_mileage, &down_mileage})
        for (std::size_t h = 0; h < n; ++h)
            if (!std::isfinite((*col)[h]) || (*col)[h] < 0.0)
                throw ValidationError("price at hour " + std::to_string(h) + " must be non-negative and finite");
}

PriceSeries flat_prices(Timestamp start, std::size_t hours, double up_capacity, double down_capacity,
                        double up_mileage, double down_mileage)
{
    PriceSeries p;
    p.start = start;
    p.up_capacity.assign(hours, up_capacity);
    p.down_capacity.assign(hours, down_capacity);
    p.up_mileage.assign(hours, up_mileage);
    p.down_mileage.assign(hours, down_mileage);
    return p;
}

std::vector<Award> award_from_flexibility(const ClassFlexibility& flex, double mileage_multiplier, double accuracy)
{
    if (!std::isfinite(mileage_multiplier) || mileage_multiplier < 0.0)
        throw ValidationError("mileage multiplier must be non-negative");
    if (!(accuracy >= 0.0 && accuracy <= 1.0))
        throw ValidationError("accuracy must lie in [0, 1]");
    std::vector<Award> out;
    out.reserve(flex.capacity.size());
    for (std::size_t h = 0; h < flex.capacity.size(); ++h) {
        Award a;
        a.up_capacity = flex.decrease_limit[h] * kKwToMw;
        a.down_capacity = flex.increase_limit[h] * kKwToMw;
        a.up_mileage = mileage_multiplier * a.up_capacity;
        a.down_mileage = mileage_multiplier * a.down_capacity;
        a.accuracy = accuracy;
        out.push_back(a);
    }
    return out;
}

RevenueReport revenue(std::span<const Award> awards, const PriceSeries& prices)
{
    prices.validate();
    if (awards.size() != prices.hours())
        throw ValidationError("award horizon (" + std::to_string(awards.size()) + " h) does not match price horizon ("
                              + std::to_string(prices.hours()) + " h)");

    RevenueReport r;
    for (auto& v : r.hourly)
        v.resize(awards.size());
    std::array<CompensatedSum, 4> sums{};
    for (std::size_t h = 0; h < awards.size(); ++h) {
        const Award& a = awards[h];
        for (double v : {a.up_capacity, a.down_capacity, a.up_mileage, a.down_mileage})
            if (!std::isfinite(v) || v < 0.0)
                throw ValidationError("award at hour " + std::to_string(h) + " is negative or not finite");
        if (!(a.accuracy >= 0.0 && a.accuracy <= 1.0))
            throw ValidationError("award accuracy at hour " + std::to_string(h) + " is outside [0, 1]");

        const double dt = prices.step_hours;
        r.hourly[0][h] = prices.up_capacity[h] * a.up_capacity * dt;
        r.hourly[1][h] = prices.down_capacity[h] * a.down_capacity * dt;
        r.hourly[2][h] = prices.up_mileage[h] * a.up_mileage * a.accuracy * dt;
        r.hourly[3][h] = prices.down_mileage[h] * a.down_mileage * a.accuracy * dt;
        for (int s = 0; s < 4; ++s)
            sums[s].add(r.hourly[s][h]);
    }
    CompensatedSum total;
    for (int s = 0; s < 4; ++s) {
        r.annual[s] = sums[s].value();
        total.add(r.annual[s]);
    }
    r.total = total.value();
    check_numeric(r.total, "revenue total");
    return r;
}

RevenueReport per_unit(const RevenueReport& fleet, double installed_units)
{
    if (!std::isfinite(installed_units) || installed_units <= 0.0)
        throw ValidationError("installed unit count must be positive");
    RevenueReport r = fleet;
    for (auto& v : r.hourly)
        for (double& x : v)
            x /= installed_units;
    for (double& x : r.annual)
        x /= installed_units;
    r.total /= installed_units;
    return r;
}

} // namespace tclflex
