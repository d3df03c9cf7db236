#include "rankstab/sweep.hpp"

#include <algorithm>
#include <thread>

namespace rankstab {

Mat random_mat(Rng& rng, const FieldSpec& f, int rows, int cols) {
    Mat m(f, rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) m.set(i, j, rng.scalar(f));
    return m;
}

Mat random_invertible(Rng& rng, const FieldSpec& f, int n) {
    Mat lower = Mat::identity(f, n);
    Mat upper = Mat::identity(f, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < i; ++j) {
            lower.set(i, j, rng.scalar(f));
            upper.set(j, i, rng.scalar(f));
        }
    return lower * upper;
}

Mat random_rank_one(Rng& rng, const FieldSpec& f, int n) {
    Mat u(f, n, 1), v(f, 1, n);
    for (int i = 0; i < n; ++i) {
        u.set(i, 0, rng.scalar(f));
        v.set(0, i, rng.scalar(f));
    }
    // keep the update honestly rank one
    bool uz = u.is_zero(), vz = v.is_zero();
    if (uz) u.set((int)rng.below(n), 0, rng.nonzero_scalar(f));
    if (vz) v.set(0, (int)rng.below(n), rng.nonzero_scalar(f));
    return u * v;
}

MatTuple perturb_tuple(Rng& rng, const MatTuple& t, int count) {
    std::vector<Mat> mats = t.mats();
    for (int c = 0; c < count; ++c) {
        int g = (int)rng.below(mats.size());
        mats[g] = mats[g] + random_rank_one(rng, t.field(), t.n());
    }
    return MatTuple(t.field(), t.n(), std::move(mats));
}

namespace {

struct TrialCell {
    long size;
    int trial;
    std::string row;
};

std::string run_trial(const SweepSpec& spec, long size, int trial) {
    Rng rng = Rng::stream(spec.seed, (std::uint64_t)size, (std::uint64_t)trial);
    long factor = size / spec.ref.n();
    Mat id_f = Mat::identity(spec.ref.field(), (int)factor);
    std::vector<Mat> base;
    for (const Mat& m : spec.ref.mats()) base.push_back(kronecker(m, id_f));
    MatTuple exact(spec.ref.field(), (int)size, std::move(base));
    MatTuple noisy = perturb_tuple(rng, exact, spec.noise_rank);

    mpq_class def = defect(spec.pres, noisy).max_defect;
    FindimAttempt att =
        stabilize_findim_attempt(spec.pres, spec.m_degree, spec.ref, noisy, spec.eps);
    mpq_class dist = 0;
    if (att.ok) {
        long worst = 0;
        for (long d : att.outcome.distances) worst = std::max(worst, d);
        dist = mpq_class(worst, size);
        dist.canonicalize();
    } else {
        // distance of the failed candidate, when the diagnostics carry one
        auto it = att.diagnostics.find("distances");
        long worst = 0;
        if (it != att.diagnostics.end()) {
            long cur = 0;
            bool any = false;
            for (char ch : it->second + ",") {
                if (ch == ',') {
                    worst = std::max(worst, cur);
                    cur = 0;
                    any = true;
                } else if (ch >= '0' && ch <= '9') {
                    cur = cur * 10 + (ch - '0');
                }
            }
            if (any) {
                dist = mpq_class(worst, size);
                dist.canonicalize();
            }
        }
    }
    std::string row = std::to_string(size) + "," + std::to_string(trial) + "," + def.get_str() +
                      "," + dist.get_str() + "," + (att.ok ? "true" : "false") + "\n";
    return row;
}

}  // namespace

std::string sweep_csv(const SweepSpec& spec, int threads) {
    if (spec.ref.n() < 1) throw PreconditionError("sweep: reference solution must be nonempty");
    std::vector<std::pair<long, int>> cells;
    for (long size = spec.size_lo; size <= spec.size_hi; ++size) {
        if (size % spec.ref.n() != 0) continue;
        for (int trial = 0; trial < spec.trials; ++trial) cells.emplace_back(size, trial);
    }
    std::vector<std::string> rows(cells.size());

    int workers = std::max(1, threads);
    workers = std::min<int>(workers, std::max<std::size_t>(cells.size(), 1));
    if (workers == 1) {
        for (std::size_t i = 0; i < cells.size(); ++i)
            rows[i] = run_trial(spec, cells[i].first, cells[i].second);
    } else {
        std::vector<std::thread> pool;
        std::size_t chunk = (cells.size() + workers - 1) / workers;
        for (int w = 0; w < workers; ++w) {
            std::size_t lo = w * chunk, hi = std::min(cells.size(), lo + chunk);
            pool.emplace_back([&, lo, hi]() {
                for (std::size_t i = lo; i < hi; ++i)
                    rows[i] = run_trial(spec, cells[i].first, cells[i].second);
            });
        }
        for (auto& t : pool) t.join();
    }

    std::string out = "size,trial,defect,recovered_distance,verified\n";
    for (const std::string& r : rows) out += r;
    return out;
}

}  // namespace rankstab
