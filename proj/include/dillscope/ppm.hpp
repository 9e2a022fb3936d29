#pragma once

#include <array>
#include <string>

#include "dillscope/dill_map.hpp"

namespace dillscope {

// Fixed letter palette for space-time diagrams. Letters beyond the table
// cycle through it.
inline constexpr std::array<std::array<unsigned char, 3>, 8> kLetterPalette = {{
    {0xCC, 0x00, 0x00},  // 0: red
    {0x00, 0x00, 0x00},  // 1: black
    {0x00, 0x72, 0xB2},  // 2: blue
    {0xE6, 0x9F, 0x00},  // 3: orange
    {0x00, 0x9E, 0x73},  // 4: green
    {0x56, 0xB4, 0xE9},  // 5: sky
    {0xD5, 0x5E, 0x00},  // 6: vermilion
    {0xF0, 0xE4, 0x42},  // 7: yellow
}};

// P6 image, one row per time step, pixel (t, i) colored by F^t(x)_i.
inline std::string render_spacetime_ppm(const DillMap& F, const InfiniteWordSpec& x,
                                        std::uint64_t steps, std::uint64_t width) {
    if (steps < 1 || width < 1) throw std::invalid_argument("steps and width must be >= 1");
    const LocalRule& f = F.rule();
    const std::uint32_t s = f.diameter();

    // row t must still feed rows t+1..steps-1
    std::vector<std::uint64_t> keep(steps);
    keep[steps - 1] = width;
    for (std::uint64_t t = steps - 1; t-- > 0;) {
        const std::uint64_t need_next = (keep[t + 1] + f.lower_norm() - 1) / f.lower_norm() + s - 1;
        keep[t] = std::max(width, need_next);
        if (keep[t] > orbit_input_cap()) throw OrbitBlowupError("orbit blow-up");
    }

    std::string out = "P6\n" + std::to_string(width) + " " + std::to_string(steps) + "\n255\n";
    out.reserve(out.size() + steps * width * 3);
    Word w = x.prefix(keep[0]);
    for (std::uint64_t t = 0; t < steps; ++t) {
        for (std::uint64_t i = 0; i < width; ++i) {
            const auto& rgb = kLetterPalette[w[i] % kLetterPalette.size()];
            out.push_back(static_cast<char>(rgb[0]));
            out.push_back(static_cast<char>(rgb[1]));
            out.push_back(static_cast<char>(rgb[2]));
        }
        if (t + 1 == steps) break;
        Word next(f.alphabet());
        next.letters.reserve(keep[t + 1] + f.upper_norm());
        for (std::size_t i = 0; i + s <= w.size() && next.size() < keep[t + 1]; ++i)
            next.append(f.image(w.view().subspan(i, s)));
        if (next.size() < keep[t + 1]) throw std::logic_error("diagram row underproduced");
        next.letters.resize(keep[t + 1]);
        w = std::move(next);
    }
    return out;
}

}  // namespace dillscope
