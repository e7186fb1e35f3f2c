#include "relax/littlewood_paley.hpp"

#include <cmath>
#include <stdexcept>

namespace relax {

namespace {

double theta(double t) { return t > 0.0 ? std::exp(-1.0 / t) : 0.0; }

// C-infinity step: 0 for t <= 0, 1 for t >= 1
double smoothstep(double t) {
    if (t <= 0.0) return 0.0;
    if (t >= 1.0) return 1.0;
    const double a = theta(t);
    const double b = theta(1.0 - t);
    return a / (a + b);
}

// chi = 1 for r <= 3/4, 0 for r >= 4/3, smooth in between
double chi(double r) { return 1.0 - smoothstep((r - 0.75) / (4.0 / 3.0 - 0.75)); }

} // namespace

double lp_profile(double r) { return chi(0.5 * r) - chi(r); }

std::string regime_name(Regime r) {
    switch (r) {
        case Regime::Full: return "full";
        case Regime::Low: return "l";
        case Regime::High: return "h";
        case Regime::LowMinusEps: return "l-eps";
        case Regime::LowPlusEps: return "l+eps";
    }
    return "?";
}

bool DyadicPartition::in_regime(int j, Regime r) const {
    const double twoj = std::ldexp(1.0, j);
    const bool low = twoj <= 2.0 * hf_threshold;
    switch (r) {
        case Regime::Full: return true;
        case Regime::Low: return low;
        case Regime::High: return !low;
        case Regime::LowMinusEps: return low && twoj <= eps_threshold;
        case Regime::LowPlusEps: return low && twoj > eps_threshold;
    }
    return false;
}

DyadicPartition build_partition(const Grid& grid, double eps, double hf_threshold) {
    grid.validate();
    if (!(eps > 0.0)) throw std::invalid_argument("build_partition: eps must be positive");

    const double kmin = grid.k_fund();
    const double radius = std::sqrt(static_cast<double>(grid.d)) * grid.nyquist();

    // Block j_min must vanish nowhere needed: choose it so chi(2^-j_min kmin)=0,
    // i.e. all blocks below j_min are zero on resolved modes, while its annulus
    // still contains kmin. j_max so the cumulative chi has reached 1 at the
    // Nyquist radius.
    const int j_min = static_cast<int>(std::floor(std::log2(0.75 * kmin) + 1e-12));
    const int j_max = static_cast<int>(std::ceil(std::log2(radius * 2.0 / 3.0) - 1e-12));

    if (j_max - j_min + 1 < 4)
        throw std::invalid_argument("build_partition: grid too coarse, fewer than 4 dyadic blocks");

    DyadicPartition p;
    p.j_min = j_min;
    p.j_max = j_max;
    p.eps_threshold = eps;
    p.hf_threshold = hf_threshold;
    p.grid = grid;
    return p;
}

SpectralField dyadic_block(const SpectralField& u, int j, const DyadicPartition& p) {
    if (!p.contains(j)) throw std::out_of_range("dyadic_block: j outside [j_min, j_max]");
    SpectralField out(u.grid);
    const double scale = std::ldexp(1.0, -j);
    for (std::size_t idx = 1; idx < u.size(); ++idx) {
        const double r = scale * std::sqrt(u.grid.xi_norm2(idx));
        if (r > 0.7 && r < 2.7) out.c[idx] = lp_profile(r) * u.c[idx];
    }
    return out;
}

double block_l2(const SpectralField& u, int j, const DyadicPartition& p) {
    if (!p.contains(j)) throw std::out_of_range("block_l2: j outside [j_min, j_max]");
    const double scale = std::ldexp(1.0, -j);
    double s = 0.0;
    for (std::size_t idx = 1; idx < u.size(); ++idx) {
        const double r = scale * std::sqrt(u.grid.xi_norm2(idx));
        if (r > 0.7 && r < 2.7) {
            const double w = lp_profile(r);
            s += w * w * std::norm(u.c[idx]);
        }
    }
    return std::sqrt(u.box_volume() * s);
}

double besov_norm(const SpectralField& u, double s, Regime regime,
                  const DyadicPartition& p) {
    if (u.grid != p.grid) throw std::invalid_argument("besov_norm: partition grid mismatch");
    double total = 0.0;
    for (int j = p.j_min; j <= p.j_max; ++j) {
        if (!p.in_regime(j, regime)) continue;
        total += std::pow(2.0, j * s) * block_l2(u, j, p);
    }
    return total;
}

double besov_norm(const VectorField& u, double s, Regime regime,
                  const DyadicPartition& p) {
    // l1-in-j of the euclidean block norms across components
    double total = 0.0;
    for (int j = p.j_min; j <= p.j_max; ++j) {
        if (!p.in_regime(j, regime)) continue;
        double b2 = 0.0;
        for (const auto& comp : u) {
            const double b = block_l2(comp, j, p);
            b2 += b * b;
        }
        total += std::pow(2.0, j * s) * std::sqrt(b2);
    }
    return total;
}

} // namespace relax
