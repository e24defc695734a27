#include "rwrs/sampler.hpp"

#include <cmath>

namespace rwrs {

namespace {

// Substream tags for deriving independent keys from one user seed.
enum : std::uint64_t {
    kTagWalk = 0x5741u,
    kTagBrownian = 0x424du,
    kTagSites = 0x5349u,
    kTagAnchorPos = 0x4150u,
    kTagAnchorNeg = 0x414eu,
    kTagMidPos = 0x4d50u,
    kTagMidNeg = 0x4d4eu,
};

// Z -> N, sign-interleaved, so one counter stream covers both directions.
std::uint64_t zigzag(std::int64_t x) {
    return x >= 0 ? static_cast<std::uint64_t>(x) << 1
                  : (static_cast<std::uint64_t>(-(x + 1)) << 1) | 1u;
}

}  // namespace

struct QuenchedField::ContinuumCache {
    std::mutex mu;
    // W at integer anchors: pos[i] = W(i), neg[i] = W(-i); pos[0] = neg[0] = 0.
    std::vector<double> pos{0.0}, neg{0.0};
    rng::Stream pos_stream, neg_stream;
    // Midpoint corrections, keyed (level << 56) | odd_index.
    std::unordered_map<std::uint64_t, double> mid_pos, mid_neg;
    std::uint64_t mid_pos_key = 0, mid_neg_key = 0;

    ContinuumCache(std::uint64_t seed)
        : pos_stream(rng::derive(seed, kTagAnchorPos)),
          neg_stream(rng::derive(seed, kTagAnchorNeg)),
          mid_pos_key(rng::derive(seed, kTagMidPos)),
          mid_neg_key(rng::derive(seed, kTagMidNeg)) {}
};

QuenchedField::QuenchedField(std::uint64_t seed, FieldKind kind, SceneryLaw law)
    : seed_(seed), kind_(kind), law_(law), site_key_(rng::derive(seed, kTagSites)) {
    if (kind_ == FieldKind::continuum_scenery)
        cache_ = std::make_shared<ContinuumCache>(seed);
}

QuenchedField QuenchedField::discrete(std::uint64_t seed, SceneryLaw law) {
    return QuenchedField(seed, FieldKind::discrete_scenery, law);
}

QuenchedField QuenchedField::continuum(std::uint64_t seed) {
    return QuenchedField(seed, FieldKind::continuum_scenery, SceneryLaw::gaussian);
}

double QuenchedField::site_value(std::int64_t x) const {
    if (kind_ != FieldKind::discrete_scenery)
        throw std::invalid_argument("site_value: field is not a discrete scenery");
    const std::uint64_t c = zigzag(x);
    switch (law_) {
        case SceneryLaw::gaussian:
            return rng::gauss(site_key_, c);
        case SceneryLaw::rademacher:
            return (rng::at(site_key_, c) & 1u) ? 1.0 : -1.0;
        case SceneryLaw::centered_exponentialized:
            // Exp(1) - 1: centered, unit variance, E|xi|^{2+d} finite for all d.
            return -std::log(rng::u01(site_key_, c)) - 1.0;
    }
    return 0.0;
}

double QuenchedField::anchor(bool negative_side, std::size_t i) const {
    auto& v = negative_side ? cache_->neg : cache_->pos;
    auto& s = negative_side ? cache_->neg_stream : cache_->pos_stream;
    while (v.size() <= i) v.push_back(v.back() + s.next_gauss());
    return v[i];
}

double QuenchedField::dyadic_value(bool neg, int level, std::uint64_t k) const {
    // Value at k * 2^-level on the chosen side, anchors at level 0.
    while (level > 0 && (k & 1u) == 0) {
        k >>= 1;
        --level;
    }
    if (level == 0) return anchor(neg, static_cast<std::size_t>(k));
    auto& memo = neg ? cache_->mid_neg : cache_->mid_pos;
    const std::uint64_t code = (static_cast<std::uint64_t>(level) << 56) | k;
    if (auto it = memo.find(code); it != memo.end()) return it->second;
    const double lo = dyadic_value(neg, level - 1, (k - 1) >> 1);
    const double hi = dyadic_value(neg, level - 1, (k + 1) >> 1);
    const double sd = std::exp2(-0.5 * (level + 1));
    const double v = 0.5 * (lo + hi) +
                     sd * rng::gauss(neg ? cache_->mid_neg_key : cache_->mid_pos_key, code);
    memo.emplace(code, v);
    return v;
}

double QuenchedField::continuum_value(double x, int level) const {
    if (kind_ != FieldKind::continuum_scenery)
        throw std::invalid_argument("continuum_value: field is not a continuum scenery");
    if (level < 0) throw std::invalid_argument("continuum_value: negative level");
    if (x == 0.0) return 0.0;
    const bool neg = x < 0.0;
    const double t = std::ldexp(neg ? -x : x, level);
    const double k0 = std::floor(t);
    const double frac = t - k0;
    std::lock_guard<std::mutex> lock(cache_->mu);
    const double v0 = dyadic_value(neg, level, static_cast<std::uint64_t>(k0));
    if (frac == 0.0) return v0;
    const double v1 = dyadic_value(neg, level, static_cast<std::uint64_t>(k0) + 1);
    return v0 + frac * (v1 - v0);
}

WalkPath simulate_srw(int n, std::uint64_t seed) {
    if (n < 0) throw std::invalid_argument("simulate_srw: negative step count");
    WalkPath path;
    path.positions.resize(static_cast<std::size_t>(n) + 1);
    path.positions[0] = 0;
    rng::Stream s(rng::derive(seed, kTagWalk));
    std::uint64_t word = 0;
    std::int32_t pos = 0;
    for (int i = 0; i < n; ++i) {
        if ((i & 63) == 0) word = s.next_u64();
        pos += (word & 1u) ? 1 : -1;
        word >>= 1;
        path.positions[static_cast<std::size_t>(i) + 1] = pos;
    }
    return path;
}

BrownianPath simulate_bm(double horizon, double dt, std::uint64_t seed) {
    if (horizon <= 0.0) throw std::invalid_argument("simulate_bm: horizon must be > 0");
    if (dt <= 0.0 || dt > horizon) throw std::invalid_argument("simulate_bm: need 0 < dt <= horizon");
    BrownianPath path;
    path.horizon = horizon;
    path.dt = dt;
    const auto n = static_cast<std::size_t>(std::floor(horizon / dt + 1e-9));
    path.values.resize(n + 1);
    path.values[0] = 0.0;
    rng::Stream s(rng::derive(seed, kTagBrownian));
    const double sd = std::sqrt(dt);
    double v = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        v += sd * s.next_gauss();
        path.values[k + 1] = v;
    }
    return path;
}

double field_site_value(const QuenchedField& field, std::int64_t x) {
    return field.site_value(x);
}

double field_continuum_value(const QuenchedField& field, double x, int level) {
    return field.continuum_value(x, level);
}

}  // namespace rwrs
