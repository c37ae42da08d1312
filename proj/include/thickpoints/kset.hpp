#pragma once
// General target sets K inside the unit disc, represented as a bitmask
// raster over [-1,1]^2. Polygon inputs are rasterized with the cell-center
// rule (a boundary cell is inside iff its center is).
//
// File format: first line "polygon n" followed by n lines "x y", or
// "raster h" followed by row-major 0/1 lines (rows from y = -1 upward).

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "thickpoints/geometry.hpp"

namespace thick {

class KSet {
  public:
    // Rasterized open unit disc at cell size h.
    static KSet raster_disc(double h = 1.0 / 512.0);
    // Upper half of the unit disc (y >= 0); used by tests.
    static KSet raster_half_disc(double h = 1.0 / 512.0);
    static KSet from_polygon(const std::vector<Vec2>& vertices, double h = 1.0 / 512.0);
    static KSet from_cells(int cells_per_side, std::vector<std::uint8_t> mask);

    static KSet load(std::istream& in);
    static KSet load_file(const std::string& path);
    void save(std::ostream& out) const;

    // Membership of a point of [-1,1]^2 (false outside the square).
    bool contains(Vec2 u) const;
    double area() const { return area_; }
    double cell() const { return cell_; }
    int cells_per_side() const { return n_; }

  private:
    KSet() = default;
    void finish(); // area, K subset D(0,1) validation

    int n_ = 0;        // cells per side over [-1,1]^2
    double cell_ = 0.0; // 2.0 / n_
    std::vector<std::uint8_t> mask_;
    double area_ = 0.0;
};

} // namespace thick
