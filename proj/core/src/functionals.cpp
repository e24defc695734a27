#include "rwrs/functionals.hpp"

#include <cmath>
#include <stdexcept>

namespace rwrs {

double compute_K(const WalkPath& path, const QuenchedField& field) {
    double k = 0.0;
    for (std::size_t i = 1; i < path.positions.size(); ++i)
        k += field.site_value(path.positions[i]);
    return k;
}

double compute_K(const WalkPath& path, const std::function<double(std::int64_t)>& site) {
    double k = 0.0;
    for (std::size_t i = 1; i < path.positions.size(); ++i)
        k += site(path.positions[i]);
    return k;
}

double compute_K_from_local_time(const LocalTimeGrid& grid, const QuenchedField& field) {
    return compute_K_from_local_time(grid,
                                     [&](std::int64_t x) { return field.site_value(x); });
}

double compute_K_from_local_time(const LocalTimeGrid& grid,
                                 const std::function<double(std::int64_t)>& site) {
    double k = 0.0;
    for (std::size_t i = 0; i < grid.masses.size(); ++i) {
        if (grid.masses[i] == 0.0) continue;
        const std::int64_t x = grid.origin_offset + static_cast<std::int64_t>(i);
        k += grid.masses[i] * site(x);
    }
    return k;
}

int dyadic_level_for_spacing(double h) {
    if (h <= 0.0) throw std::invalid_argument("dyadic_level_for_spacing: h must be > 0");
    const double lvl = std::ceil(std::log2(64.0 / h));
    return lvl < 0.0 ? 0 : static_cast<int>(lvl);
}

double compute_Z(const LocalTimeGrid& grid, const QuenchedField& field) {
    if (field.kind() != FieldKind::continuum_scenery)
        throw std::invalid_argument("compute_Z: field is not a continuum scenery");
    if (grid.masses.empty()) return 0.0;
    const int level = dyadic_level_for_spacing(grid.h);
    double z = 0.0;
    double w_lo = field.continuum_value(static_cast<double>(grid.first_bin()) * grid.h, level);
    for (std::size_t i = 0; i < grid.masses.size(); ++i) {
        const double edge_hi = static_cast<double>(grid.first_bin() + static_cast<std::int64_t>(i) + 1) * grid.h;
        const double w_hi = field.continuum_value(edge_hi, level);
        z += grid.masses[i] * (w_hi - w_lo);
        w_lo = w_hi;
    }
    return z;
}

RescaledValue rescale(double raw, double time) {
    if (!(time > kMinRescaleTime))
        throw std::domain_error("rescale: time must exceed e^e so lnln(time) > 0");
    RescaledValue v;
    v.raw = raw;
    v.time = time;
    v.scaled = raw / std::sqrt(2.0 * std::pow(time, 1.5) * std::log(std::log(time)));
    return v;
}

double unscale(double scaled, double time) {
    if (!(time > kMinRescaleTime))
        throw std::domain_error("unscale: time must exceed e^e so lnln(time) > 0");
    return scaled * std::sqrt(2.0 * std::pow(time, 1.5) * std::log(std::log(time)));
}

}  // namespace rwrs
