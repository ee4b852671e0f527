#include <gtest/gtest.h>

#include "tclflex/market.hpp"
#include "tclflex/numeric.hpp"
#include "test_helpers.hpp"

using namespace tclflex;

namespace {

const Timestamp kStart = std::chrono::sys_days{std::chrono::year{2013} / 6 / 1};

ClassFlexibility constant_class(const TclParams& p, double units, std::size_t hours)
{
    const FleetBattery fb = battery_from_fleet(p, 20.0, units);
    ClassFlexibility f;
    f.name = "c";
    f.installed_units = units;
    f.temperature_independent = true;
    f.decrease_limit.assign(hours, fb.battery.decrease_limit);
    f.increase_limit.assign(hours, fb.battery.increase_limit);
    f.capacity.assign(hours, fb.battery.capacity);
    f.participating_units.assign(hours, units);
    return f;
}

PriceSeries year_prices()
{
    return flat_prices(kStart, 8760, 4.61, 3.43, 0.069, 0.130);
}

} // namespace

TEST(Market, OneMegawattHourOfUpCapacity)
{
    const std::vector<Award> awards{{1.0, 0.0, 0.0, 0.0, 1.0}};
    const RevenueReport r = revenue(awards, flat_prices(kStart, 1, 4.61, 3.43, 0.069, 0.130));
    EXPECT_DOUBLE_EQ(r.stream(RevenueStream::up_capacity), 4.61);
    EXPECT_DOUBLE_EQ(r.total, 4.61);
}

TEST(Market, WaterHeaterCapacityRevenuePerUnit)
{
    const ClassFlexibility f = constant_class(test::water_heater_params(), test::kWaterHeaterUnits, 8760);
    const RevenueReport r = per_unit(revenue(award_from_flexibility(f, 2.5), year_prices()), f.installed_units);
    EXPECT_NEAR(r.stream(RevenueStream::up_capacity), 2.375e-4 * 8760 * 4.61, 1e-9);
    EXPECT_NEAR(r.stream(RevenueStream::down_capacity), 4.2625e-3 * 8760 * 3.43, 1e-9);
    EXPECT_NEAR(r.stream(RevenueStream::up_capacity), 9.60, 0.02 * 9.60);
    EXPECT_NEAR(r.stream(RevenueStream::down_capacity), 128.06, 0.02 * 128.06);
}

TEST(Market, RefrigeratorCapacityRevenuePerUnit)
{
    const ClassFlexibility f = constant_class(test::fridge_params(), test::kFridgeUnits, 8760);
    const RevenueReport r = per_unit(revenue(award_from_flexibility(f, 2.5), year_prices()), f.installed_units);
    EXPECT_NEAR(r.stream(RevenueStream::up_capacity), 3.93, 0.02 * 3.93);
    EXPECT_NEAR(r.stream(RevenueStream::down_capacity), 6.09, 0.02 * 6.09);
}

TEST(Market, ZeroMileageMultiplierOnlyRemovesMileage)
{
    const ClassFlexibility f = constant_class(test::water_heater_params(), 1000.0, 48);
    const PriceSeries prices = flat_prices(kStart, 48, 4.61, 3.43, 0.069, 0.130);
    const RevenueReport with = revenue(award_from_flexibility(f, 2.5), prices);
    const RevenueReport without = revenue(award_from_flexibility(f, 0.0), prices);
    EXPECT_EQ(without.stream(RevenueStream::up_mileage), 0.0);
    EXPECT_EQ(without.stream(RevenueStream::down_mileage), 0.0);
    EXPECT_EQ(without.stream(RevenueStream::up_capacity), with.stream(RevenueStream::up_capacity));
    EXPECT_EQ(without.stream(RevenueStream::down_capacity), with.stream(RevenueStream::down_capacity));
    EXPECT_GT(with.stream(RevenueStream::down_mileage), 0.0);
}

TEST(Market, ZeroAccuracyRemovesMileage)
{
    const ClassFlexibility f = constant_class(test::fridge_params(), 1000.0, 24);
    const RevenueReport r =
        revenue(award_from_flexibility(f, 2.5, 0.0), flat_prices(kStart, 24, 4.61, 3.43, 0.069, 0.130));
    EXPECT_EQ(r.stream(RevenueStream::up_mileage), 0.0);
    EXPECT_EQ(r.stream(RevenueStream::down_mileage), 0.0);
    EXPECT_GT(r.stream(RevenueStream::up_capacity), 0.0);
}

TEST(Market, AwardsFollowTheOfferedLimits)
{
    const ClassFlexibility f = constant_class(test::water_heater_params(), 1000.0, 3);
    const auto awards = award_from_flexibility(f, 2.0, 0.9);
    ASSERT_EQ(awards.size(), 3u);
    EXPECT_DOUBLE_EQ(awards[0].up_capacity, f.decrease_limit[0] * kKwToMw);
    EXPECT_DOUBLE_EQ(awards[0].down_capacity, f.increase_limit[0] * kKwToMw);
    EXPECT_DOUBLE_EQ(awards[0].up_mileage, 2.0 * awards[0].up_capacity);
    EXPECT_EQ(awards[0].accuracy, 0.9);
    EXPECT_THROW(award_from_flexibility(f, -1.0), ValidationError);
    EXPECT_THROW(award_from_flexibility(f, 1.0, 1.5), ValidationError);
}

TEST(Market, RevenueIsLinearInPrices)
{
    const ClassFlexibility f = constant_class(test::fridge_params(), 12345.0, 100);
    PriceSeries p = flat_prices(kStart, 100, 4.61, 3.43, 0.069, 0.130);
    for (std::size_t h = 0; h < 100; ++h)
        p.up_capacity[h] += 0.01 * static_cast<double>(h);
    PriceSeries p2 = p;
    for (auto* col : {&p2.up_capacity, &p2.down_capacity, &p2.up_mileage, &p2.down_mileage})
        for (double& v : *col)
            v *= 2.0;
    const auto awards = award_from_flexibility(f, 2.5);
    const RevenueReport a = revenue(awards, p);
    const RevenueReport b = revenue(awards, p2);
    for (int s = 0; s < 4; ++s) {
        EXPECT_EQ(b.annual[s], 2.0 * a.annual[s]);
        for (std::size_t h = 0; h < 100; ++h)
            EXPECT_EQ(b.hourly[s][h], 2.0 * a.hourly[s][h]);
    }
    EXPECT_EQ(b.total, 2.0 * a.total);
}

TEST(Market, RevenueIsLinearInAwards)
{
    std::vector<Award> awards(10, Award{1.5, 2.5, 3.0, 4.0, 0.9});
    std::vector<Award> doubled = awards;
    for (auto& a : doubled) {
        a.up_capacity *= 2;
        a.down_capacity *= 2;
        a.up_mileage *= 2;
        a.down_mileage *= 2;
    }
    const PriceSeries p = flat_prices(kStart, 10, 4.61, 3.43, 0.069, 0.130);
    const RevenueReport a = revenue(awards, p), b = revenue(doubled, p);
    for (int s = 0; s < 4; ++s)
        EXPECT_EQ(b.annual[s], 2.0 * a.annual[s]);
}

TEST(Market, StreamsAndHoursDecomposeTheTotal)
{
    const ClassFlexibility f = constant_class(test::water_heater_params(), 777.0, 8760);
    const RevenueReport r = revenue(award_from_flexibility(f, 2.5), year_prices());
    CompensatedSum streams, hours;
    for (int s = 0; s < 4; ++s) {
        streams.add(r.annual[s]);
        for (double v : r.hourly[s])
            hours.add(v);
    }
    EXPECT_EQ(r.total, streams.value());
    EXPECT_NEAR(r.total, hours.value(), 1e-9 * r.total);
}

TEST(Market, PerUnitTimesCountIsFleetForConstantClasses)
{
    const ClassFlexibility f = constant_class(test::fridge_params(), 1000.0, 24);
    const RevenueReport fleet = revenue(award_from_flexibility(f, 2.5), flat_prices(kStart, 24, 4.61, 3.43, 0.069, 0.130));
    const RevenueReport unit = per_unit(fleet, f.installed_units);
    for (int s = 0; s < 4; ++s)
        for (std::size_t h = 0; h < 24; ++h)
            EXPECT_NEAR(unit.hourly[s][h] * 1000.0, fleet.hourly[s][h], 1e-12 * fleet.hourly[s][h]);
    EXPECT_THROW(per_unit(fleet, 0.0), ValidationError);
}

TEST(Market, InputErrors)
{
    const std::vector<Award> two(2, Award{1.0, 1.0, 1.0, 1.0, 1.0});
    EXPECT_THROW(revenue(two, flat_prices(kStart, 3, 1, 1, 1, 1)), ValidationError);
    std::vector<Award> negative = two;
    negative[1].down_capacity = -1.0;
    EXPECT_THROW(revenue(negative, flat_prices(kStart, 2, 1, 1, 1, 1)), ValidationError);
    PriceSeries bad = flat_prices(kStart, 2, 1, 1, 1, 1);
    bad.down_mileage[1] = -0.5;
    EXPECT_THROW(revenue(two, bad), ValidationError);
}
