#include "capstruct/synth.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "capstruct/errors.hpp"
#include "capstruct/rng.hpp"

namespace capstruct {

namespace {

bool is_trading_day(const Date& d) {
    // Weekdays minus sparse pseudo-holidays; about 251 trading days a year,
    // so paper-scale day and month counts can coexist.
    return d.is_weekday() && d.serial() % 27 != 0;
}

std::vector<Date> trading_days(Date start, std::size_t count) {
    std::vector<Date> out;
    out.reserve(count);
    Date cur = start;
    while (out.size() < count) {
        if (is_trading_day(cur)) out.push_back(cur);
        cur = cur.next_day();
    }
    return out;
}

std::string asset_name(std::size_t i) {
    // AA, AB, ... two-letter tickers, extended with digits past 676.
    std::string name;
    name += static_cast<char>('A' + (i / 26) % 26);
    name += static_cast<char>('A' + i % 26);
    if (i >= 676) name += std::to_string(i / 676);
    return name;
}

} // namespace

std::pair<PricePanel, CapPanel> generate_synthetic(const SynthConfig& config) {
    if (config.assets < 2 || config.days < 2 || config.months < 1) {
        throw ConfigError("synthetic panel needs at least 2 assets, 2 days, 1 month");
    }
    if (config.break_magnitude < 0.0 || config.break_magnitude > 1.0) {
        throw ConfigError("break magnitude must lie in [0, 1]");
    }
    const std::size_t n = config.assets;

    std::vector<std::string> assets;
    assets.reserve(n);
    for (std::size_t i = 0; i < n; ++i) assets.push_back(asset_name(i));

    auto days = trading_days(config.start, config.days);

    // Prices: per-asset geometric random walk.
    Rng price_rng(Rng::derive(config.seed, 0x70726963ULL));
    std::vector<double> level(n), drift(n), vol(n);
    for (std::size_t i = 0; i < n; ++i) {
        level[i] = price_rng.uniform(20.0, 200.0);
        drift[i] = price_rng.uniform(-0.0002, 0.0008);
        vol[i] = price_rng.uniform(0.008, 0.025);
    }
    std::vector<std::optional<double>> price_cells;
    price_cells.reserve(days.size() * n);
    for (std::size_t s = 0; s < days.size(); ++s) {
        for (std::size_t i = 0; i < n; ++i) {
            price_cells.emplace_back(level[i]);
        }
        for (std::size_t i = 0; i < n; ++i) {
            level[i] *= std::exp(drift[i] + vol[i] * price_rng.normal());
        }
    }
    PricePanel prices(PanelKind::Price, days, assets, std::move(price_cells));

    // Month-end dates: last trading day of each calendar month, generated
    // independently of the price window. A cap panel may extend past the
    // price days; structure-only analyses never join the two calendars.
    std::vector<Date> month_ends;
    {
        Date cursor = config.start;
        while (month_ends.size() < config.months) {
            Date end = cursor.month_end();
            while (!is_trading_day(end)) end = Date::from_serial(end.serial() - 1);
            if (!(end < config.start)) month_ends.push_back(end);
            cursor = Date::from_serial(cursor.month_end().serial() + 1);
        }
    }

    // Size profiles: Zipf-like decay for regime A; regime B blends toward
    // uniform by break_magnitude, which moves the normalized distribution.
    std::vector<double> profile_a(n), profile_b(n);
    for (std::size_t i = 0; i < n; ++i) {
        profile_a[i] = std::pow(static_cast<double>(i + 1), -1.2);
        profile_b[i] = (1.0 - config.break_magnitude) * profile_a[i] +
                       config.break_magnitude / static_cast<double>(n);
    }

    Rng cap_rng(Rng::derive(config.seed, 0x63617073ULL));
    const std::size_t T = month_ends.size();
    std::vector<std::optional<double>> cap_cells;
    cap_cells.reserve(T * n);
    for (std::size_t t = 0; t < T; ++t) {
        const bool post_break = config.break_month > 0 && t + 1 >= config.break_month;
        const auto& profile = post_break ? profile_b : profile_a;
        const double progress = T > 1 ? static_cast<double>(t) / static_cast<double>(T - 1) : 0.0;
        const double market_level = 1000.0 * std::exp(0.005 * static_cast<double>(t));
        for (std::size_t i = 0; i < n; ++i) {
            double ramp = 1.0;
            if (config.ramp > 0.0 && i < 5) {
                ramp += config.ramp * progress;
            }
            double wobble = 1.0 + config.noise * cap_rng.normal();
            // Multiplicative noise floored to keep caps positive.
            wobble = std::max(wobble, 0.05);
            cap_cells.emplace_back(market_level * profile[i] * ramp * wobble);
        }
    }
    CapPanel caps(PanelKind::Cap, month_ends, assets, std::move(cap_cells));
    return {std::move(prices), std::move(caps)};
}

} // namespace capstruct
