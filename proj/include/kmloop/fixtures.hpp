#ifndef KMLOOP_FIXTURES_HPP
#define KMLOOP_FIXTURES_HPP

#include <cstdint>
#include <optional>

#include "kmloop/kacmoody.hpp"
#include "kmloop/loopgroup.hpp"

namespace kmloop {

/// Deterministic PRNG for fixtures: splitmix64 (public-domain mixer), with
/// uniform doubles built from the top 53 bits. Identical (seed, spec) pairs
/// reproduce bit-identical fixtures on any platform; no standard-library
/// distributions are involved.
class FixtureRng {
public:
    explicit FixtureRng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64();
    double uniform();                       // [0, 1)
    double uniform(double lo, double hi);   // [lo, hi)
    int uniform_int(int lo, int hi);        // inclusive
    Complex unit_complex();                 // |z| = 1
    Complex disc_complex(double radius);    // |z| <= radius

private:
    std::uint64_t state_;
};

struct FixtureSpec {
    LieBackend backend = make_backend('A', 2);
    int window_min = -4;
    int window_max = 4;
    double scale = 1.0;
    std::optional<int> twist_order;  // 2 for the A-series involution
    bool real_form = false;
};

/// Random traceless-coefficient Laurent loop honoring the requested flags
/// (projectors applied after drawing).
LoopAlgebraElement random_loop_element(FixtureRng& rng, const FixtureSpec& spec);

LaurentMatrix random_laurent(FixtureRng& rng, Eigen::Index dim, int window_min, int window_max,
                             double scale);

KacMoodyVector random_km_vector(FixtureRng& rng, const FixtureSpec& spec, double extension_scale,
                                Convention convention = Convention::standard);

/// Exact-unitary based loop (value I at z = 1) in the det-1 loop group:
/// a product of `factors` Blaschke-type pairs
/// (P + z (I-P)) (Q + z^{-1} (I-Q)) for random rank-1 projectors P, Q.
/// Window is contained in [-factors, factors].
LoopGroupElement random_based_unitary_loop(FixtureRng& rng, Eigen::Index dim, int factors);

/// Random det-certified loop: a constant SL(d) matrix times Blaschke pairs.
LoopGroupElement random_group_element(FixtureRng& rng, Eigen::Index dim, int factors);

/// Random section element in the fundamental alcove (theta descending,
/// width strictly below the lattice step), sum zero.
SectionElement random_alcove_section(FixtureRng& rng, Eigen::Index dim);

}  // namespace kmloop

#endif
