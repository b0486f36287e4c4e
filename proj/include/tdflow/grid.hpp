#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace tdflow {

/// Binary indicator of a set on a uniform periodic grid over [0, Lx) x [0, Ly).
/// Cell (i, j) has centre ((i + 1/2) Lx/nx, (j + 1/2) Ly/ny) and is stored at j*nx + i.
class GridField {
public:
    GridField(std::size_t nx, std::size_t ny, double lx, double ly);
    GridField(std::size_t nx, std::size_t ny, double lx, double ly, std::vector<std::uint8_t> cells);

    [[nodiscard]] std::size_t nx() const noexcept { return nx_; }
    [[nodiscard]] std::size_t ny() const noexcept { return ny_; }
    [[nodiscard]] double lx() const noexcept { return lx_; }
    [[nodiscard]] double ly() const noexcept { return ly_; }
    [[nodiscard]] double dx() const noexcept { return lx_ / static_cast<double>(nx_); }
    [[nodiscard]] double dy() const noexcept { return ly_ / static_cast<double>(ny_); }
    [[nodiscard]] double center_x(std::size_t i) const noexcept { return (static_cast<double>(i) + 0.5) * dx(); }
    [[nodiscard]] double center_y(std::size_t j) const noexcept { return (static_cast<double>(j) + 0.5) * dy(); }

    [[nodiscard]] bool at(std::size_t i, std::size_t j) const noexcept { return cells_[j * nx_ + i] != 0; }
    void set(std::size_t i, std::size_t j, bool inside) noexcept { cells_[j * nx_ + i] = inside ? 1 : 0; }
    [[nodiscard]] const std::vector<std::uint8_t>& cells() const noexcept { return cells_; }

    [[nodiscard]] std::size_t count() const noexcept;
    [[nodiscard]] double area() const noexcept { return static_cast<double>(count()) * dx() * dy(); }

    /// True if every cell inside *this is inside `other` (same geometry required).
    [[nodiscard]] bool subset_of(const GridField& other) const;

    /// Periodic shift by whole cells.
    [[nodiscard]] GridField shifted(std::ptrdiff_t di, std::ptrdiff_t dj) const;

    [[nodiscard]] GridField united(const GridField& other) const;

    /// Marks every cell whose centre lies within radius r of (cx, cy), periodically.
    void add_disk(double cx, double cy, double r);

    friend bool operator==(const GridField&, const GridField&) = default;

private:
    std::size_t nx_;
    std::size_t ny_;
    double lx_;
    double ly_;
    std::vector<std::uint8_t> cells_;
};

/// Radius of the disk with the same area as the field.
[[nodiscard]] double area_radius(const GridField& field);

/// Binary PGM (P5, maxval 255, top row = highest j first, 255 = inside) plus a
/// sidecar "<path>.hdr" text header holding nx, ny, Lx, Ly.
void save_grid(const std::string& path, const GridField& field);
[[nodiscard]] GridField load_grid(const std::string& path);

/// In-memory forms of the two files above.
[[nodiscard]] std::string grid_to_pgm(const GridField& field);
[[nodiscard]] std::string grid_header(const GridField& field);
[[nodiscard]] GridField grid_from_pgm(const std::string& pgm, const std::string& header);

}  // namespace tdflow
