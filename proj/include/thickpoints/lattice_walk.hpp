#pragma once
// Simple random walk on Z^2, local-time fields, and exit runs from lattice
// discs. Walks are streamed: a WalkRun is just the (seed, steps, start)
// triple, and WalkStream regenerates the identical path on demand.

#include <cstdint>
#include <span>
#include <vector>

#include "thickpoints/geometry.hpp"
#include "thickpoints/rng.hpp"

namespace thick {

struct WalkRun {
    std::uint64_t seed = 0;
    std::uint64_t steps = 0;
    LatticePoint start{};
};

// Unit steps, uniform on {+e1,-e1,+e2,-e2} (direction index 0,1,2,3).
inline LatticePoint step_lattice(LatticePoint p, unsigned dir) {
    switch (dir & 3u) {
        case 0: return {p.x + 1, p.y};
        case 1: return {p.x - 1, p.y};
        case 2: return {p.x, p.y + 1};
        default: return {p.x, p.y - 1};
    }
}

class WalkStream {
  public:
    explicit WalkStream(const WalkRun& run)
        : rng_(run.seed), pos_(run.start), remaining_(run.steps) {}

    LatticePoint position() const { return pos_; }
    std::uint64_t remaining() const { return remaining_; }
    bool done() const { return remaining_ == 0; }

    LatticePoint advance() {
        pos_ = step_lattice(pos_, rng_.next_dir());
        --remaining_;
        return pos_;
    }

  private:
    Rng rng_;
    LatticePoint pos_;
    std::uint64_t remaining_;
};

WalkRun simulate_srw(std::uint64_t seed, std::uint64_t steps, LatticePoint start);

// Materialized positions X_0..X_steps; test and small-scale use only.
std::vector<LatticePoint> walk_positions(const WalkRun& run);

struct LocalTimeField {
    PointMap<std::uint32_t> counts;
    std::uint64_t total_steps = 0; // the horizon n; sum of counts is n+1
};

LocalTimeField local_time_field(const WalkRun& run, std::uint64_t n);
LocalTimeField local_time_field(std::span<const LatticePoint> path, std::uint64_t n);

struct ExitRun {
    std::uint64_t exit_step = 0;       // first index with position outside D_0(R)
    std::uint64_t visits_to_origin = 0; // visits at indices [0, exit_step)
    LatticePoint exit_point{};
};

// Runs a fresh walk from `start` until it first leaves the open disc D_0(R).
ExitRun run_until_exit(std::uint64_t seed, double R, LatticePoint start);

} // namespace thick
