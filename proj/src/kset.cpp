#include "thickpoints/kset.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace thick {

namespace {

// Crossing-number point-in-polygon test.
bool point_in_polygon(Vec2 p, const std::vector<Vec2>& v) {
    bool inside = false;
    const std::size_t n = v.size();
    for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
        const bool straddles = (v[i].y > p.y) != (v[j].y > p.y);
        if (!straddles) continue;
        const double x_cross = v[j].x + (p.y - v[j].y) / (v[i].y - v[j].y) * (v[i].x - v[j].x);
        if (p.x < x_cross) inside = !inside;
    }
    return inside;
}

} // namespace

void KSet::finish() {
    std::size_t ones = 0;
    for (int j = 0; j < n_; ++j) {
        for (int i = 0; i < n_; ++i) {
            if (!mask_[std::size_t(j) * n_ + i]) continue;
            ++ones;
            const double cx = -1.0 + (i + 0.5) * cell_;
            const double cy = -1.0 + (j + 0.5) * cell_;
            if (cx * cx + cy * cy >= 1.0)
                throw std::invalid_argument("KSet: set cell outside the unit disc");
        }
    }
    area_ = double(ones) * cell_ * cell_;
}

KSet KSet::from_cells(int cells_per_side, std::vector<std::uint8_t> mask) {
    if (cells_per_side <= 0 || mask.size() != std::size_t(cells_per_side) * cells_per_side)
        throw std::invalid_argument("KSet::from_cells: bad dimensions");
    KSet k;
    k.n_ = cells_per_side;
    k.cell_ = 2.0 / cells_per_side;
    k.mask_ = std::move(mask);
    k.finish();
    return k;
}

KSet KSet::raster_disc(double h) {
    const int n = int(std::lround(2.0 / h));
    std::vector<std::uint8_t> mask(std::size_t(n) * n, 0);
    const double cell = 2.0 / n;
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) {
            const double cx = -1.0 + (i + 0.5) * cell;
            const double cy = -1.0 + (j + 0.5) * cell;
            if (cx * cx + cy * cy < 1.0) mask[std::size_t(j) * n + i] = 1;
        }
    return from_cells(n, std::move(mask));
}

KSet KSet::raster_half_disc(double h) {
    const int n = int(std::lround(2.0 / h));
    std::vector<std::uint8_t> mask(std::size_t(n) * n, 0);
    const double cell = 2.0 / n;
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) {
            const double cx = -1.0 + (i + 0.5) * cell;
            const double cy = -1.0 + (j + 0.5) * cell;
            if (cy >= 0.0 && cx * cx + cy * cy < 1.0) mask[std::size_t(j) * n + i] = 1;
        }
    return from_cells(n, std::move(mask));
}

KSet KSet::from_polygon(const std::vector<Vec2>& vertices, double h) {
    if (vertices.size() < 3)
        throw std::invalid_argument("KSet::from_polygon: need at least 3 vertices");
    const int n = int(std::lround(2.0 / h));
    std::vector<std::uint8_t> mask(std::size_t(n) * n, 0);
    const double cell = 2.0 / n;
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) {
            const double cx = -1.0 + (i + 0.5) * cell;
            const double cy = -1.0 + (j + 0.5) * cell;
            if (point_in_polygon({cx, cy}, vertices)) mask[std::size_t(j) * n + i] = 1;
        }
    return from_cells(n, std::move(mask));
}

bool KSet::contains(Vec2 u) const {
    if (u.x < -1.0 || u.x >= 1.0 || u.y < -1.0 || u.y >= 1.0) return false;
    const int i = int((u.x + 1.0) / cell_);
    const int j = int((u.y + 1.0) / cell_);
    if (i < 0 || i >= n_ || j < 0 || j >= n_) return false;
    return mask_[std::size_t(j) * n_ + i] != 0;
}

KSet KSet::load(std::istream& in) {
    std::string kind;
    in >> kind;
    if (kind == "polygon") {
        std::size_t n = 0;
        in >> n;
        std::vector<Vec2> verts(n);
        for (auto& v : verts)
            if (!(in >> v.x >> v.y)) throw std::invalid_argument("KSet::load: short polygon");
        return from_polygon(verts);
    }
    if (kind == "raster") {
        double h = 0.0;
        in >> h;
        if (!(h > 0.0)) throw std::invalid_argument("KSet::load: bad cell size");
        const int n = int(std::lround(2.0 / h));
        std::vector<std::uint8_t> mask(std::size_t(n) * n, 0);
        for (int j = 0; j < n; ++j) {
            std::string row;
            if (!(in >> row) || int(row.size()) != n)
                throw std::invalid_argument("KSet::load: bad raster row");
            for (int i = 0; i < n; ++i)
                mask[std::size_t(j) * n + i] = (row[std::size_t(i)] == '1') ? 1 : 0;
        }
        return from_cells(n, std::move(mask));
    }
    throw std::invalid_argument("KSet::load: expected 'polygon' or 'raster'");
}

KSet KSet::load_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("KSet::load_file: cannot open " + path);
    return load(in);
}

void KSet::save(std::ostream& out) const {
    out << "raster " << cell_ << "\n";
    for (int j = 0; j < n_; ++j) {
        std::string row(std::size_t(n_), '0');
        for (int i = 0; i < n_; ++i)
            if (mask_[std::size_t(j) * n_ + i]) row[std::size_t(i)] = '1';
        out << row << "\n";
    }
}

} // namespace thick
