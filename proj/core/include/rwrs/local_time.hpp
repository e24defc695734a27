#pragma once

#include <cstdint>
#include <vector>

#include "rwrs/sampler.hpp"

namespace rwrs {

// Binned local-time profile.  Global bin j covers [j*h, (j+1)*h); masses are
// occupation time divided by h, so sum(mass)*h equals the elapsed time of the
// source path (exactly n for a walk at h=1, within one dt for a Brownian path).
struct LocalTimeGrid {
    double h = 1.0;
    std::int64_t origin_offset = 0;  // global index of masses[0]
    std::vector<double> masses;
    double support_min = 0.0;  // running path min (m_1)
    double support_max = 0.0;  // running path max (M_1)
    double elapsed = 0.0;

    std::int64_t first_bin() const { return origin_offset; }
    std::int64_t last_bin() const {
        return origin_offset + static_cast<std::int64_t>(masses.size()) - 1;
    }
    double mass_at_bin(std::int64_t j) const {
        const std::int64_t i = j - origin_offset;
        if (i < 0 || i >= static_cast<std::int64_t>(masses.size())) return 0.0;
        return masses[static_cast<std::size_t>(i)];
    }
    double mass_at(double x) const;
};

// Exact visit counts #{1 <= i <= n : S_i = x}, one unit-width bin per site.
LocalTimeGrid walk_local_time(const WalkPath& path);

// Occupation-density estimate: time in bin (left-endpoint attribution) / h.
LocalTimeGrid bm_local_time(const BrownianPath& path, double h);

double sup_local_time(const LocalTimeGrid& grid);

// Integral of the squared profile, sum(mass^2)*h; the self-intersection proxy.
double local_time_l2(const LocalTimeGrid& grid);

}  // namespace rwrs
