#include "thickpoints/intersection.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace thick {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

// ---------------------------------------------------------------- products

ProductField product_local_time(std::span<const LocalTimeField* const> fields) {
    if (fields.empty()) throw std::invalid_argument("product_local_time: m >= 1 required");
    if (fields.size() > std::size_t(kMaxWalks))
        throw std::invalid_argument("product_local_time: too many walks");
    const std::uint64_t n = fields[0]->total_steps;
    for (const auto* f : fields)
        if (f->total_steps != n)
            throw std::invalid_argument("product_local_time: mismatched horizons");

    ProductField out;
    out.m = int(fields.size());
    out.n = n;

    // Scan the smallest support, look the point up in all the others.
    std::size_t lead = 0;
    for (std::size_t i = 1; i < fields.size(); ++i)
        if (fields[i]->counts.size() < fields[lead]->counts.size()) lead = i;

    fields[lead]->counts.for_each([&](LatticePoint p, const std::uint32_t& lead_count) {
        ProductEntry entry;
        entry.counts[lead] = lead_count;
        std::uint64_t prod = lead_count;
        for (std::size_t i = 0; i < fields.size(); ++i) {
            if (i == lead) continue;
            const std::uint32_t* c = fields[i]->counts.find(p);
            if (!c) return;
            entry.counts[i] = *c;
            prod *= *c;
        }
        entry.product = prod;
        out.points[p] = entry;
    });
    return out;
}

ProductField product_local_time(const LocalTimeField& a, const LocalTimeField& b) {
    const LocalTimeField* fs[2] = {&a, &b};
    return product_local_time(std::span<const LocalTimeField* const>(fs, 2));
}

// ----------------------------------------------------------------- kernels

RadialKernel RadialKernel::tent(double eps_f) {
    RadialKernel k;
    k.eps_f = eps_f;
    k.profile = [](double r) { return (3.0 / kPi) * (1.0 - r); };
    return k;
}

double kernel_mass(const RadialKernel& kernel) {
    // Simpson on [0,1] of 2 pi r f(r), 4096 panels.
    const int n = 4096;
    const double h = 1.0 / n;
    auto g = [&](double r) { return 2.0 * kPi * r * kernel.profile(r); };
    double s = g(0.0);
    for (int i = 1; i < n; ++i) s += (i % 2 ? 4.0 : 2.0) * g(i * h);
    // f need not be defined at r = 1; the integrand vanishes there for any
    // admissible profile, so close the panel with the limit from inside.
    s += g(1.0 - 1e-12);
    return s * h / 3.0;
}

void validate_kernel(const RadialKernel& kernel, double tol) {
    if (!(kernel.eps_f > 0.0))
        throw std::invalid_argument("kernel: eps_f must be positive");
    const double mass = kernel_mass(kernel);
    if (std::abs(mass - 1.0) > tol)
        throw std::invalid_argument("kernel: profile mass " + std::to_string(mass) +
                                    " differs from 1 beyond tolerance");
}

SampleBins::SampleBins(const PlanarPath& path, double cell) : path_(path), cell_(cell) {
    for (std::size_t i = 0; i < path.points.size(); ++i) {
        const Vec2 p = path.points[i];
        bins_[{std::int32_t(std::floor(p.x / cell_)), std::int32_t(std::floor(p.y / cell_))}]
            .push_back(std::uint32_t(i));
    }
}

void SampleBins::gather(Vec2 p, std::vector<std::uint32_t>& out) const {
    out.clear();
    const std::int32_t bx = std::int32_t(std::floor(p.x / cell_));
    const std::int32_t by = std::int32_t(std::floor(p.y / cell_));
    for (std::int32_t dj = -1; dj <= 1; ++dj)
        for (std::int32_t di = -1; di <= 1; ++di) {
            const auto* bucket = bins_.find({bx + di, by + dj});
            if (bucket) out.insert(out.end(), bucket->begin(), bucket->end());
        }
    std::sort(out.begin(), out.end());
}

namespace {

void check_resolution(const PlanarPath& a, const PlanarPath& b, const RadialKernel& kernel) {
    const double guard = 2.0 * std::sqrt(std::max(a.dt, b.dt));
    if (!(kernel.eps_f >= guard))
        throw std::invalid_argument("intersection estimator: kernel scale " +
                                    std::to_string(kernel.eps_f) +
                                    " below resolution guard " + std::to_string(guard));
}

double intersection_sum(const PlanarPath& w, const PlanarPath& w2, Vec2 x, double eps,
                        const RadialKernel& kernel, double prefactor) {
    check_resolution(w, w2, kernel);
    if (!(eps > 0.0)) throw std::invalid_argument("intersection estimator: eps > 0 required");
    const SampleBins bins(w2, kernel.eps_f);
    const double weight = w.dt * w2.dt;
    const double eps2 = eps * eps;
    double total = 0.0;
    std::vector<std::uint32_t> candidates;
    for (std::size_t s = 0; s < w.points.size(); ++s) {
        const Vec2 ws = w.points[s];
        if ((ws - x).norm2() >= eps2) continue;
        bins.gather(ws, candidates);
        double inner = 0.0;
        for (std::uint32_t t : candidates) {
            const double f = kernel.eval(ws - w2.points[t]);
            if (f != 0.0) inner += f;
        }
        total += inner * weight;
    }
    return prefactor * total;
}

} // namespace

double intersection_local_time_continuum(const PlanarPath& w, const PlanarPath& w2, Vec2 x,
                                         double eps, const RadialKernel& kernel) {
    return intersection_sum(w, w2, x, eps, kernel, kPi);
}

double intersection_wx(const PlanarPath& w, const PlanarPath& x_path, double lambda_norm,
                       Vec2 x, double eps, const RadialKernel& kernel) {
    if (!(lambda_norm > 0.0))
        throw std::invalid_argument("intersection_wx: lambda_norm must be positive");
    return intersection_sum(w, x_path, x, eps, kernel, kPi / lambda_norm);
}

std::vector<double> intersection_weights(const PlanarPath& w, const PlanarPath& w2,
                                         const RadialKernel& kernel) {
    check_resolution(w, w2, kernel);
    const SampleBins bins(w2, kernel.eps_f);
    const double weight = kPi * w.dt * w2.dt;
    std::vector<double> out(w.points.size(), 0.0);
#pragma omp parallel
    {
        std::vector<std::uint32_t> candidates;
#pragma omp for schedule(static)
        for (std::int64_t s = 0; s < std::int64_t(w.points.size()); ++s) {
            const Vec2 ws = w.points[std::size_t(s)];
            bins.gather(ws, candidates);
            double inner = 0.0;
            for (std::uint32_t t : candidates) inner += kernel.eval(ws - w2.points[t]);
            out[std::size_t(s)] = inner * weight;
        }
    }
    return out;
}

// --------------------------------------------------------------- excursions

ExcursionCounter::ExcursionCounter(double inner_r, double outer_R, ExcursionMode mode)
    : r2_(inner_r * inner_r), R2_(outer_R * outer_R), mode_(mode),
      armed_(mode == ExcursionMode::OuterToInner) {
    if (!(inner_r > 0.0) || !(inner_r < outer_R))
        throw std::invalid_argument("ExcursionCounter: need 0 < r < R");
}

void ExcursionCounter::feed_dist2(double d2) {
    if (mode_ == ExcursionMode::OuterToInner) {
        if (armed_) {
            if (d2 <= r2_) {
                ++count_;
                armed_ = false;
            }
        } else if (d2 >= R2_) {
            armed_ = true;
        }
    } else { // RoundTrip: armed_ means "inner circle touched, outward leg open"
        if (!armed_) {
            if (d2 <= r2_) armed_ = true;
        } else if (d2 >= R2_) {
            ++count_;
            armed_ = false;
        }
    }
}

std::uint64_t excursion_count(std::span<const Vec2> path, Vec2 center, double inner_r,
                              double outer_R, ExcursionMode mode) {
    ExcursionCounter c(inner_r, outer_R, mode);
    for (const Vec2& p : path) c.feed_dist2((p - center).norm2());
    return c.count();
}

std::uint64_t excursion_count(std::span<const LatticePoint> path, LatticePoint center,
                              double inner_r, double outer_R, ExcursionMode mode) {
    ExcursionCounter c(inner_r, outer_R, mode);
    for (const LatticePoint& p : path) {
        const std::int64_t dx = std::int64_t(p.x) - center.x;
        const std::int64_t dy = std::int64_t(p.y) - center.y;
        c.feed_dist2(double(dx * dx + dy * dy));
    }
    return c.count();
}

// ---------------------------------------------------------------- schedules

ScaleSchedule make_factorial_schedule(double eps1, double a, int n_max) {
    if (!(eps1 > 0.0) || !(eps1 < 1.0))
        throw std::invalid_argument("make_factorial_schedule: eps1 in (0,1) required");
    if (!(a > 0.0)) throw std::invalid_argument("make_factorial_schedule: a > 0 required");
    if (n_max < 2) throw std::invalid_argument("make_factorial_schedule: n >= 2 required");
    ScaleSchedule s;
    s.kind = ScheduleKind::Factorial;
    s.eps1 = eps1;
    s.a = a;
    double prev = eps1;
    for (int k = 2; k <= n_max; ++k) {
        ScaleEntry e;
        e.k = k;
        e.outer = prev;
        e.inner = prev / (double(k) * double(k) * double(k)); // eps1 prod l^{-3}
        e.target = 3.0 * a * double(k) * double(k) * std::log(double(k));
        s.entries.push_back(e);
        prev = e.inner;
    }
    return s;
}

ScaleSchedule make_lattice_schedule(std::uint64_t n, double delta, double K, double a) {
    if (n < 2) throw std::invalid_argument("make_lattice_schedule: n >= 2 required");
    if (!(delta > 0.0) || !(delta < 1.0 / 22.0))
        throw std::invalid_argument("make_lattice_schedule: delta in (0, 1/22) required");
    if (!(K > 0.0)) throw std::invalid_argument("make_lattice_schedule: K > 0 required");
    if (!(a > 0.0)) throw std::invalid_argument("make_lattice_schedule: a > 0 required");
    ScaleSchedule s;
    s.kind = ScheduleKind::Lattice;
    s.n = n;
    s.delta = delta;
    s.K = K;
    s.a = a;
    const double log_n = std::log(double(n));
    s.k_n = int(std::floor((0.5 - delta) * log_n));
    const double base = std::sqrt(double(n) / (2.0 * K));
    s.r_n = (1.0 + 3.0 * delta) * std::exp(-double(s.k_n)) * base;
    s.R_n = (1.0 - 3.0 * delta) * std::exp(-double(s.k_n) + 1.0) * base;
    s.m_kn = a * double(s.k_n) * double(s.k_n);
    ScaleEntry e;
    e.k = s.k_n;
    e.inner = s.r_n;
    e.outer = s.R_n;
    e.target = s.m_kn;
    s.entries.push_back(e);
    return s;
}

std::vector<double> geometric_refinement(double eps_k, int k) {
    if (!(eps_k > 0.0) || k < 1)
        throw std::invalid_argument("geometric_refinement: eps_k > 0, k >= 1 required");
    const int j_max = int(std::floor(3.0 * k * std::log(double(k + 1))));
    std::vector<double> out;
    out.reserve(std::size_t(j_max) + 1);
    for (int j = 0; j <= j_max; ++j) out.push_back(eps_k * std::exp(-double(j) / k));
    return out;
}

// ---------------------------------------------------------------- detectors

PerfectPointResult perfect_point_test(std::span<const Vec2> path, Vec2 x, int n, double a,
                                      double eps1) {
    const ScaleSchedule sched = make_factorial_schedule(eps1, a, n);
    PerfectPointResult res;

    struct ScaleState {
        ExcursionCounter counter;
        std::uint64_t at_half = 0;
        std::uint64_t at_two = 0;
    };
    std::vector<ScaleState> states;
    states.reserve(sched.entries.size());
    for (const ScaleEntry& e : sched.entries)
        states.push_back({ExcursionCounter(e.inner, e.outer, ExcursionMode::OuterToInner), 0, 0});

    bool hit_half = false, hit_two = false;
    for (const Vec2& p : path) {
        const double d2 = (p - x).norm2();
        if (!hit_two) {
            for (auto& st : states) st.counter.feed_dist2(d2);
            if (!hit_half && d2 >= 0.25) {
                hit_half = true;
                for (auto& st : states) st.at_half = st.counter.count();
            }
            if (d2 >= 4.0) {
                hit_two = true;
                for (auto& st : states) st.at_two = st.counter.count();
            }
        }
    }
    if (!hit_half)
        for (auto& st : states) st.at_half = st.counter.count();
    if (!hit_two) {
        res.truncated = true;
        for (auto& st : states) st.at_two = st.counter.count();
    }

    res.is_perfect = true;
    for (std::size_t i = 0; i < states.size(); ++i) {
        const ScaleEntry& e = sched.entries[i];
        const double lo = e.target - e.k;
        const double hi = e.target + e.k;
        res.counts.push_back({e.k, states[i].at_half, states[i].at_two});
        if (!(double(states[i].at_half) >= lo) || !(double(states[i].at_two) <= hi))
            res.is_perfect = false;
    }
    return res;
}

AdmissibleResult admissible_test(const WalkRun& run_x, const WalkRun& run_x2, LatticePoint z,
                                 std::uint64_t n, double delta, double K, double a) {
    if (n > run_x.steps || n > run_x2.steps)
        throw std::out_of_range("admissible_test: step budget exceeds run lengths");
    const ScaleSchedule sched = make_lattice_schedule(n, delta, K, a);

    auto count_round_trips = [&](const WalkRun& run) {
        ExcursionCounter c(sched.r_n, sched.R_n, ExcursionMode::RoundTrip);
        WalkStream s(run);
        auto feed = [&](LatticePoint p) {
            const std::int64_t dx = std::int64_t(p.x) - z.x;
            const std::int64_t dy = std::int64_t(p.y) - z.y;
            c.feed_dist2(double(dx * dx + dy * dy));
        };
        feed(s.position());
        for (std::uint64_t i = 0; i < n; ++i) feed(s.advance());
        return c.count();
    };

    AdmissibleResult res;
    res.threshold = (1.0 - 2.0 * delta) * sched.m_kn;
    res.excursions_x = count_round_trips(run_x);
    res.excursions_x2 = count_round_trips(run_x2);
    res.admissible = double(res.excursions_x) >= res.threshold &&
                     double(res.excursions_x2) >= res.threshold;
    return res;
}

} // namespace thick
