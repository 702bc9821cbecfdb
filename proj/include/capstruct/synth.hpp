#ifndef CAPSTRUCT_SYNTH_HPP
#define CAPSTRUCT_SYNTH_HPP

#include <cstdint>
#include <utility>

#include "capstruct/panel.hpp"

namespace capstruct {

/// Knobs for the synthetic price/cap panel pair. Output is a deterministic
/// function of this struct.
struct SynthConfig {
    std::size_t assets = 20;
    std::size_t months = 24;     // capped to the months spanned by the days
    std::size_t days = 600;      // trading days of prices
    std::uint64_t seed = 1;
    Date start = Date{2004, 1, 2};

    // Cap-distribution regimes: profile A before break_month (1-based),
    // profile B from it onward. 0 disables the break.
    std::size_t break_month = 0;
    double break_magnitude = 0.5; // blend of profile A toward uniform, in [0, 1]
    double noise = 0.02;          // per-cell multiplicative cap noise

    // When positive, the largest assets' caps grow by this factor over the
    // window, so top-k concentration ratios ramp upward.
    double ramp = 0.0;
};

/// Deterministic synthetic panels: geometric random-walk prices on a weekday
/// calendar thinned by sparse pseudo-holidays (~251 trading days/year), and
/// month-end caps drawn from a Zipf-like size profile with optional regime
/// break and concentration ramp.
std::pair<PricePanel, CapPanel> generate_synthetic(const SynthConfig& config);

} // namespace capstruct

#endif // CAPSTRUCT_SYNTH_HPP
