#include "rwrs/local_time.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace rwrs {

double LocalTimeGrid::mass_at(double x) const {
    return mass_at_bin(static_cast<std::int64_t>(std::floor(x / h)));
}

LocalTimeGrid walk_local_time(const WalkPath& path) {
    LocalTimeGrid grid;
    grid.h = 1.0;
    const auto& pos = path.positions;
    if (pos.empty()) return grid;
    const auto [lo_it, hi_it] = std::minmax_element(pos.begin(), pos.end());
    grid.support_min = *lo_it;
    grid.support_max = *hi_it;
    grid.origin_offset = *lo_it;
    grid.masses.assign(static_cast<std::size_t>(*hi_it - *lo_it) + 1, 0.0);
    for (std::size_t i = 1; i < pos.size(); ++i)
        grid.masses[static_cast<std::size_t>(pos[i] - *lo_it)] += 1.0;
    grid.elapsed = static_cast<double>(pos.size() - 1);
    return grid;
}

LocalTimeGrid bm_local_time(const BrownianPath& path, double h) {
    if (h <= 0.0) throw std::invalid_argument("bm_local_time: bin width must be > 0");
    LocalTimeGrid grid;
    grid.h = h;
    const auto& v = path.values;
    if (v.size() < 2) return grid;
    const auto [lo_it, hi_it] = std::minmax_element(v.begin(), v.end());
    grid.support_min = *lo_it;
    grid.support_max = *hi_it;
    const auto lo_bin = static_cast<std::int64_t>(std::floor(*lo_it / h));
    const auto hi_bin = static_cast<std::int64_t>(std::floor(*hi_it / h));
    grid.origin_offset = lo_bin;
    grid.masses.assign(static_cast<std::size_t>(hi_bin - lo_bin) + 1, 0.0);
    const double w = path.dt / h;
    for (std::size_t k = 0; k + 1 < v.size(); ++k) {
        const auto j = static_cast<std::int64_t>(std::floor(v[k] / h));
        grid.masses[static_cast<std::size_t>(j - lo_bin)] += w;
    }
    grid.elapsed = path.dt * static_cast<double>(v.size() - 1);
    return grid;
}

double sup_local_time(const LocalTimeGrid& grid) {
    double m = 0.0;
    for (double x : grid.masses) m = std::max(m, x);
    return m;
}

double local_time_l2(const LocalTimeGrid& grid) {
    double s = 0.0;
    for (double x : grid.masses) s += x * x;
    return s * grid.h;
}

}  // namespace rwrs
