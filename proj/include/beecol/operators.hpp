#pragma once

#include <cassert>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "beecol/bitvector.hpp"
#include "beecol/rng.hpp"

namespace beecol::ops {

// Iteration-dependent inputs of the decaying-perturbation schedule.
struct ScheduleContext {
    std::uint64_t t = 0;      // current iteration, 0-based
    std::uint64_t t_max = 1;  // maximum iterations, >= 1
    std::size_t dim = 1;      // problem dimension
    double q_start = 0.3;     // schedule value at t = 0
    double q_end = 0.1;       // schedule value at t = t_max
    std::uint32_t alpha = 2;  // perturbation bound, rand(0, alpha) bits extra

    void validate() const {
        if (t_max < 1) throw std::invalid_argument("ScheduleContext: t_max must be >= 1");
        if (t > t_max) throw std::invalid_argument("ScheduleContext: t must be <= t_max");
        if (dim < 1) throw std::invalid_argument("ScheduleContext: dimension must be >= 1");
        if (!(q_end > 0.0 && q_end <= q_start && q_start < 1.0))
            throw std::invalid_argument("ScheduleContext: need 0 < q_end <= q_start < 1");
    }
};

// Continuous position with its box bounds; only the continuous-mapping
// variant carries these alongside the binary image.
struct ContinuousSource {
    std::vector<double> position;
    double lower = 0.0;
    double upper = 2.0;
};

// How the adaptive parameter steers the XOR neighborhood. `probabilistic`
// treats it as the per-bit probability of the complemented branch
// (state 1); `threshold` applies the literal >= 0.5 reading, which picks one
// branch for the whole candidate.
enum class ThetaMode { probabilistic, threshold };

// --- XOR neighborhood ------------------------------------------------------

// Per-bit neighborhood rule. state2 = false complements the XOR: bits that
// agree are inverted and bits that differ keep the selected value. state2 =
// true yields the neighbor's bit.
int xor_bit(int x_bit, int n_bit, bool state2) noexcept;

// Single-bit XOR neighborhood: one uniformly chosen position is updated,
// with the branch chosen by a fresh draw against 0.5.
template <UniformRng R>
BitVector binabc_generate(const BitVector& selected, const BitVector& neighbor, R& rng) {
    if (selected.size() != neighbor.size())
        throw std::invalid_argument("binabc_generate: length mismatch");
    BitVector v = selected;
    const auto j = static_cast<std::size_t>(
        rng.uniform_int(0, static_cast<std::int64_t>(selected.size()) - 1));
    const bool state2 = rng.uniform01() >= 0.5;
    v.set(j, xor_bit(selected[j], neighbor[j], state2) != 0);
    return v;
}

// --- Dissimilarity-driven generation ---------------------------------------

// 1 - |x AND y| / |x OR y| over the bit supports. Undefined (domain_error)
// when both vectors are all-zero.
double dissimilarity(const BitVector& x, const BitVector& y);

// Composition of a candidate relative to a reference vector with n1 ones and
// n0 zeros: how many reference ones survive, how many are cleared, and how
// many reference zeros are raised.
struct DissimTarget {
    std::int64_t shared_ones = 0;   // reference 1-bits kept at 1
    std::int64_t cleared_ones = 0;  // reference 1-bits set to 0
    std::int64_t raised_zeros = 0;  // reference 0-bits set to 1
};

// Picks the integer composition whose dissimilarity to the reference is
// closest to `target`, by exhaustive enumeration of shared_ones in [0, n1]
// and raised_zeros in [0, n0]. Ties prefer the larger shared_ones, then the
// smaller raised_zeros. The all-zero composition with n1 = 0 has an
// undefined ratio and is skipped; if nothing else is feasible the result
// raises min(1, n0) zeros.
DissimTarget disabc_subproblem(std::int64_t n1, std::int64_t n0, double target);

namespace detail {

// First `count` elements of a uniformly random subset of `pool`, via partial
// Fisher-Yates; draw order is part of the determinism contract.
template <UniformRng R>
void partial_shuffle(std::vector<std::uint32_t>& pool, std::int64_t count, R& rng) {
    const auto n = static_cast<std::int64_t>(pool.size());
    for (std::int64_t k = 0; k < count; ++k) {
        const auto m = static_cast<std::size_t>(rng.uniform_int(k, n - 1));
        std::swap(pool[static_cast<std::size_t>(k)], pool[m]);
    }
}

}  // namespace detail

// Dissimilarity-matching candidate: scales the selected-to-neighbor
// dissimilarity by a random factor in (0, 1], solves for the closest integer
// composition, then keeps a random subset of the selected ones and raises a
// random subset of its zeros.
template <UniformRng R>
BitVector disabc_generate(const BitVector& selected, const BitVector& neighbor, R& rng) {
    if (selected.size() != neighbor.size())
        throw std::invalid_argument("disabc_generate: length mismatch");

    double dissim = 0.0;
    if (selected.any() || neighbor.any()) dissim = dissimilarity(selected, neighbor);

    const double phi = 1.0 - rng.uniform01();  // (0, 1]
    const double target = phi * dissim;

    std::vector<std::uint32_t> one_positions;
    std::vector<std::uint32_t> zero_positions;
    one_positions.reserve(selected.size());
    zero_positions.reserve(selected.size());
    for (std::size_t i = 0; i < selected.size(); ++i)
        (selected[i] ? one_positions : zero_positions).push_back(static_cast<std::uint32_t>(i));

    const auto plan = disabc_subproblem(static_cast<std::int64_t>(one_positions.size()),
                                        static_cast<std::int64_t>(zero_positions.size()), target);

    detail::partial_shuffle(one_positions, plan.shared_ones, rng);
    detail::partial_shuffle(zero_positions, plan.raised_zeros, rng);

    BitVector v(selected.size());
    for (std::int64_t k = 0; k < plan.shared_ones; ++k)
        v.set(one_positions[static_cast<std::size_t>(k)], true);
    for (std::int64_t k = 0; k < plan.raised_zeros; ++k)
        v.set(zero_positions[static_cast<std::size_t>(k)], true);
    return v;
}

// --- Continuous-mapping variant --------------------------------------------

// Quantizes one coordinate to a bit: round(|x mod 2|) mod 2 with truncated
// remainder and half-away-from-zero rounding.
int abcbin_binarize_coord(double x);

// Binary image of a continuous position.
BitVector abcbin_binarize(const ContinuousSource& c);

// Classic one-coordinate move v_j = x_j + phi * (x_j - xn_j), phi uniform in
// (-1, 1), clamped to the box.
template <UniformRng R>
ContinuousSource abcbin_neighbor(const ContinuousSource& selected,
                                 const ContinuousSource& neighbor, R& rng) {
    if (selected.position.size() != neighbor.position.size())
        throw std::invalid_argument("abcbin_neighbor: dimension mismatch");
    ContinuousSource v = selected;
    const auto j = static_cast<std::size_t>(
        rng.uniform_int(0, static_cast<std::int64_t>(selected.position.size()) - 1));
    const double phi = rng.uniform_real(-1.0, 1.0);
    double moved = selected.position[j] + phi * (selected.position[j] - neighbor.position[j]);
    if (moved < v.lower) moved = v.lower;
    if (moved > v.upper) moved = v.upper;
    v.position[j] = moved;
    return v;
}

// Fresh random position, each coordinate uniform in [lower, upper).
template <UniformRng R>
ContinuousSource continuous_reinit(std::size_t dim, double lower, double upper, R& rng) {
    if (!(lower < upper))
        throw std::invalid_argument("continuous_reinit: lower bound must be < upper bound");
    if (dim == 0) throw std::invalid_argument("continuous_reinit: dimension must be >= 1");
    ContinuousSource c;
    c.lower = lower;
    c.upper = upper;
    c.position.resize(dim);
    for (std::size_t i = 0; i < dim; ++i) c.position[i] = lower + rng.uniform01() * (upper - lower);
    return c;
}

// --- Decaying multi-bit schedule -------------------------------------------

// Deterministic part of the bit-count schedule: exp(-(t / t_max) * 0.1 * D) + 1,
// non-increasing in t.
double schedule_decay(const ScheduleContext& ctx);

// Number of bits to perturb this candidate: floor(rand(0, alpha) + decay),
// clamped to [1, D].
template <UniformRng R>
std::int64_t ibinabc_dt(const ScheduleContext& ctx, R& rng) {
    const std::int64_t r = rng.uniform_int(0, static_cast<std::int64_t>(ctx.alpha));
    auto d = static_cast<std::int64_t>(static_cast<double>(r) + schedule_decay(ctx));
    if (d < 1) d = 1;
    const auto dim = static_cast<std::int64_t>(ctx.dim);
    return d < dim ? d : dim;
}

// Adaptive branch parameter: 0 whenever the neighbor is not worse (its bits
// are then copied outright), otherwise a value decaying linearly from
// q_start at t = 0 to q_end at t = t_max.
double ibinabc_theta(const ScheduleContext& ctx, double neighbor_fitness,
                     double selected_fitness);

// Applies the XOR neighborhood to `count` distinct uniformly chosen
// positions. In probabilistic mode each touched bit draws u and takes the
// neighbor-copy branch when u >= theta; in threshold mode the branch is
// fixed by theta >= 0.5 for the whole candidate.
template <UniformRng R>
BitVector xor_multi_bit(const BitVector& selected, const BitVector& neighbor, double theta,
                        std::int64_t count, ThetaMode mode, R& rng) {
    if (selected.size() != neighbor.size())
        throw std::invalid_argument("xor_multi_bit: length mismatch");
    std::vector<std::uint32_t> positions(selected.size());
    std::iota(positions.begin(), positions.end(), 0u);
    detail::partial_shuffle(positions, count, rng);

    BitVector v = selected;
    for (std::int64_t k = 0; k < count; ++k) {
        const std::size_t p = positions[static_cast<std::size_t>(k)];
        const bool state2 =
            mode == ThetaMode::probabilistic ? rng.uniform01() >= theta : theta >= 0.5;
        v.set(p, xor_bit(selected[p], neighbor[p], state2) != 0);
    }
    return v;
}

// Multi-bit XOR neighborhood under the adaptive schedule: derives theta from
// the fitness comparison, draws the bit count, then perturbs that many
// distinct positions.
template <UniformRng R>
BitVector ibinabc_generate(const BitVector& selected, const BitVector& neighbor,
                           double selected_fitness, double neighbor_fitness,
                           const ScheduleContext& ctx, R& rng,
                           ThetaMode mode = ThetaMode::probabilistic) {
    assert(selected.size() == ctx.dim);
    const double theta = ibinabc_theta(ctx, neighbor_fitness, selected_fitness);
    const std::int64_t d = ibinabc_dt(ctx, rng);
    return xor_multi_bit(selected, neighbor, theta, d, mode, rng);
}

}  // namespace beecol::ops
