#pragma once

#include <cstdint>

#include "rankstab/freealg.hpp"

namespace rankstab {

/// splitmix64: deterministic across platforms, unlike std distributions.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    /// Independent stream derived from (seed, a, b); used so sweep trials are
    /// reproducible regardless of scheduling.
    static Rng stream(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
        Rng r(seed);
        r.state_ ^= 0x9e3779b97f4a7c15ull * (a + 1);
        r.next();
        r.state_ ^= 0xbf58476d1ce4e5b9ull * (b + 1);
        r.next();
        return r;
    }

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    std::uint64_t below(std::uint64_t bound) { return bound == 0 ? 0 : next() % bound; }

    long int_in(long lo, long hi) {  // inclusive
        return lo + (long)below((std::uint64_t)(hi - lo + 1));
    }

    /// Small exact scalar: integers in [-4, 4] over Q, uniform residue in F_p.
    Scalar scalar(const FieldSpec& f) {
        if (f.is_rationals()) return Scalar::from_integer(f, int_in(-4, 4));
        return Scalar::from_integer(f, (long)below(f.prime()));
    }

    Scalar nonzero_scalar(const FieldSpec& f) {
        while (true) {
            Scalar s = scalar(f);
            if (!s.is_zero()) return s;
        }
    }

private:
    std::uint64_t state_;
};

Mat random_mat(Rng& rng, const FieldSpec& f, int rows, int cols);
/// Product of unit lower- and upper-triangular matrices: always invertible.
Mat random_invertible(Rng& rng, const FieldSpec& f, int n);
Mat random_rank_one(Rng& rng, const FieldSpec& f, int n);
/// Adds `count` random rank-one updates to randomly chosen tuple entries.
MatTuple perturb_tuple(Rng& rng, const MatTuple& t, int count);

}  // namespace rankstab
