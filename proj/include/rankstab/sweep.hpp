#pragma once

#include "rankstab/rng.hpp"
#include "rankstab/stabilize.hpp"

namespace rankstab {

/// Randomized repair experiment: for each admissible size (multiples of the
/// reference size inside [size_lo, size_hi]) and each trial, tensor the
/// reference solution up, apply `noise_rank` seeded rank-one updates, run
/// stabilize_findim and report one CSV row.
struct SweepSpec {
    Presentation pres;
    MatTuple ref;
    long size_lo = 0;
    long size_hi = 0;
    int noise_rank = 0;
    int trials = 0;
    std::uint64_t seed = 0;
    long m_degree = 2;
    mpq_class eps = mpq_class(1, 2);
};

/// CSV with header "size,trial,defect,recovered_distance,verified"; byte
/// output depends only on the parameters, never on `threads`.
std::string sweep_csv(const SweepSpec& spec, int threads);

}  // namespace rankstab
