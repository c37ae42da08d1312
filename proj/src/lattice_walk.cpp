#include "thickpoints/lattice_walk.hpp"

#include <stdexcept>

namespace thick {

WalkRun simulate_srw(std::uint64_t seed, std::uint64_t steps, LatticePoint start) {
    return WalkRun{seed, steps, start};
}

std::vector<LatticePoint> walk_positions(const WalkRun& run) {
    std::vector<LatticePoint> out;
    out.reserve(std::size_t(run.steps) + 1);
    WalkStream s(run);
    out.push_back(s.position());
    while (!s.done()) out.push_back(s.advance());
    return out;
}

LocalTimeField local_time_field(const WalkRun& run, std::uint64_t n) {
    if (n > run.steps)
        throw std::out_of_range("local_time_field: horizon n exceeds run.steps");
    LocalTimeField field;
    field.total_steps = n;
    field.counts = PointMap<std::uint32_t>(64);
    WalkStream s(run);
    field.counts[s.position()] += 1;
    for (std::uint64_t i = 0; i < n; ++i) field.counts[s.advance()] += 1;
    return field;
}

LocalTimeField local_time_field(std::span<const LatticePoint> path, std::uint64_t n) {
    if (path.empty() || n + 1 > path.size())
        throw std::out_of_range("local_time_field: horizon n exceeds path length");
    LocalTimeField field;
    field.total_steps = n;
    field.counts = PointMap<std::uint32_t>(64);
    for (std::uint64_t i = 0; i <= n; ++i) field.counts[path[i]] += 1;
    return field;
}

ExitRun run_until_exit(std::uint64_t seed, double R, LatticePoint start) {
    const LatticeDisc disc{{0, 0}, R};
    if (!disc.contains(start))
        throw std::invalid_argument("run_until_exit: start not inside D_0(R)");
    Rng rng(seed);
    LatticePoint pos = start;
    ExitRun out;
    std::uint64_t i = 0;
    for (;;) {
        if (pos.x == 0 && pos.y == 0) ++out.visits_to_origin;
        pos = step_lattice(pos, rng.next_dir());
        ++i;
        if (!disc.contains(pos)) {
            out.exit_step = i;
            out.exit_point = pos;
            return out;
        }
    }
}

} // namespace thick
