#include "beecol/operators.hpp"

#include <cmath>
#include <limits>

namespace beecol::ops {

int xor_bit(int x_bit, int n_bit, bool state2) noexcept {
    if (state2) return n_bit;
    // Complemented branch: invert where the bits agree, keep x where they differ.
    return x_bit ^ (1 - (x_bit ^ n_bit));
}

double dissimilarity(const BitVector& x, const BitVector& y) {
    if (x.size() != y.size()) throw std::invalid_argument("dissimilarity: length mismatch");
    std::int64_t both = 0;
    std::int64_t only_x = 0;
    std::int64_t only_y = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i] && y[i])
            ++both;
        else if (x[i])
            ++only_x;
        else if (y[i])
            ++only_y;
    }
    const std::int64_t support = both + only_x + only_y;
    if (support == 0)
        throw std::domain_error("dissimilarity: undefined for two all-zero vectors");
    return 1.0 - static_cast<double>(both) / static_cast<double>(support);
}

DissimTarget disabc_subproblem(std::int64_t n1, std::int64_t n0, double target) {
    if (n1 < 0 || n0 < 0 || n1 + n0 < 1)
        throw std::invalid_argument("disabc_subproblem: need n1 >= 0, n0 >= 0, n1 + n0 >= 1");
    if (!(target >= 0.0))
        throw std::invalid_argument("disabc_subproblem: target must be >= 0");

    bool found = false;
    DissimTarget best{};
    double best_err = std::numeric_limits<double>::infinity();

    // Enumeration order realizes the tie-break: shared_ones descending,
    // raised_zeros ascending, keeping only strict improvements.
    for (std::int64_t shared = n1; shared >= 0; --shared) {
        for (std::int64_t raised = 0; raised <= n0; ++raised) {
            const std::int64_t support = n1 + raised;  // cleared ones re-enter the union
            if (support == 0) continue;                // ratio undefined at (0, 0)
            const double dissim = 1.0 - static_cast<double>(shared) / static_cast<double>(support);
            const double err = std::abs(dissim - target);
            if (err < best_err) {
                best_err = err;
                best = DissimTarget{shared, n1 - shared, raised};
                found = true;
            }
        }
    }
    if (!found) return DissimTarget{0, 0, n0 < 1 ? n0 : 1};
    return best;
}

int abcbin_binarize_coord(double x) {
    if (!std::isfinite(x))
        throw std::invalid_argument("abcbin_binarize: coordinate must be finite");
    const double wrapped = std::abs(std::fmod(x, 2.0));
    const auto rounded = static_cast<std::int64_t>(std::round(wrapped));
    return static_cast<int>(rounded % 2);
}

BitVector abcbin_binarize(const ContinuousSource& c) {
    BitVector v(c.position.size());
    for (std::size_t i = 0; i < c.position.size(); ++i)
        v.set(i, abcbin_binarize_coord(c.position[i]) != 0);
    return v;
}

double schedule_decay(const ScheduleContext& ctx) {
    const double progress = static_cast<double>(ctx.t) / static_cast<double>(ctx.t_max);
    return std::exp(-progress * 0.1 * static_cast<double>(ctx.dim)) + 1.0;
}

double ibinabc_theta(const ScheduleContext& ctx, double neighbor_fitness,
                     double selected_fitness) {
    if (!(neighbor_fitness > 0.0) || !(selected_fitness > 0.0))
        throw std::invalid_argument("ibinabc_theta: fitness values must be > 0");
    if (neighbor_fitness >= selected_fitness) return 0.0;
    // Exact endpoints; the linear form can be an ulp off at t = t_max.
    if (ctx.t == 0) return ctx.q_start;
    if (ctx.t == ctx.t_max) return ctx.q_end;
    const double slope = (ctx.q_start - ctx.q_end) / static_cast<double>(ctx.t_max);
    return ctx.q_start - slope * static_cast<double>(ctx.t);
}

}  // namespace beecol::ops
