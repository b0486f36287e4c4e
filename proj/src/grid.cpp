#include "tdflow/grid.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include "tdflow/error.hpp"

namespace tdflow {

GridField::GridField(std::size_t nx, std::size_t ny, double lx, double ly)
    : GridField(nx, ny, lx, ly, std::vector<std::uint8_t>(nx * ny, 0)) {}

GridField::GridField(std::size_t nx, std::size_t ny, double lx, double ly, std::vector<std::uint8_t> cells)
    : nx_(nx), ny_(ny), lx_(lx), ly_(ly), cells_(std::move(cells)) {
    require(nx_ > 0 && ny_ > 0, "GridField: dimensions must be positive");
    require(std::isfinite(lx_) && lx_ > 0.0 && std::isfinite(ly_) && ly_ > 0.0,
            "GridField: domain extents must be positive");
    require(cells_.size() == nx_ * ny_, "GridField: cell count does not match dimensions");
    for (auto& c : cells_) c = c != 0 ? 1 : 0;
}

std::size_t GridField::count() const noexcept {
    return static_cast<std::size_t>(std::count(cells_.begin(), cells_.end(), std::uint8_t{1}));
}

bool GridField::subset_of(const GridField& other) const {
    require(nx_ == other.nx_ && ny_ == other.ny_, "GridField::subset_of: geometry mismatch");
    for (std::size_t k = 0; k < cells_.size(); ++k) {
        if (cells_[k] && !other.cells_[k]) return false;
    }
    return true;
}

GridField GridField::shifted(std::ptrdiff_t di, std::ptrdiff_t dj) const {
    GridField out(nx_, ny_, lx_, ly_);
    const auto nx = static_cast<std::ptrdiff_t>(nx_);
    const auto ny = static_cast<std::ptrdiff_t>(ny_);
    for (std::ptrdiff_t j = 0; j < ny; ++j) {
        const std::ptrdiff_t tj = ((j + dj) % ny + ny) % ny;
        for (std::ptrdiff_t i = 0; i < nx; ++i) {
            const std::ptrdiff_t ti = ((i + di) % nx + nx) % nx;
            out.cells_[static_cast<std::size_t>(tj * nx + ti)] = cells_[static_cast<std::size_t>(j * nx + i)];
        }
    }
    return out;
}

GridField GridField::united(const GridField& other) const {
    require(nx_ == other.nx_ && ny_ == other.ny_, "GridField::united: geometry mismatch");
    GridField out = *this;
    for (std::size_t k = 0; k < cells_.size(); ++k) out.cells_[k] |= other.cells_[k];
    return out;
}

void GridField::add_disk(double cx, double cy, double r) {
    for (std::size_t j = 0; j < ny_; ++j) {
        double ddy = std::abs(center_y(j) - cy);
        ddy = std::fmod(ddy, ly_);
        ddy = std::min(ddy, ly_ - ddy);
        for (std::size_t i = 0; i < nx_; ++i) {
            double ddx = std::abs(center_x(i) - cx);
            ddx = std::fmod(ddx, lx_);
            ddx = std::min(ddx, lx_ - ddx);
            if (ddx * ddx + ddy * ddy <= r * r) cells_[j * nx_ + i] = 1;
        }
    }
}

double area_radius(const GridField& field) { return std::sqrt(field.area() / std::numbers::pi); }

std::string grid_to_pgm(const GridField& field) {
    std::string out = "P5\n" + std::to_string(field.nx()) + " " + std::to_string(field.ny()) + "\n255\n";
    out.reserve(out.size() + field.nx() * field.ny());
    for (std::size_t r = 0; r < field.ny(); ++r) {
        const std::size_t j = field.ny() - 1 - r;
        for (std::size_t i = 0; i < field.nx(); ++i) out.push_back(field.at(i, j) ? '\xff' : '\0');
    }
    return out;
}

std::string grid_header(const GridField& field) {
    std::ostringstream os;
    os.precision(17);
    os << "# tdflow grid v1\n"
       << "nx " << field.nx() << '\n'
       << "ny " << field.ny() << '\n'
       << "Lx " << field.lx() << '\n'
       << "Ly " << field.ly() << '\n';
    return os.str();
}

namespace {

// Reads the next whitespace-delimited PGM header token, skipping '#' comments.
std::string pgm_token(const std::string& s, std::size_t& pos) {
    while (pos < s.size()) {
        if (s[pos] == '#') {
            while (pos < s.size() && s[pos] != '\n') ++pos;
        } else if (std::isspace(static_cast<unsigned char>(s[pos]))) {
            ++pos;
        } else {
            break;
        }
    }
    const std::size_t start = pos;
    while (pos < s.size() && !std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    return s.substr(start, pos - start);
}

std::size_t parse_count(const std::string& tok, const char* what) {
    try {
        std::size_t used = 0;
        const unsigned long v = std::stoul(tok, &used);
        if (used != tok.size()) throw std::invalid_argument(tok);
        return v;
    } catch (const std::exception&) {
        fail(ErrorKind::Config, std::string("grid: bad ") + what + " '" + tok + "'");
    }
}

}  // namespace

GridField grid_from_pgm(const std::string& pgm, const std::string& header) {
    std::size_t pos = 0;
    if (pgm_token(pgm, pos) != "P5") fail(ErrorKind::Config, "grid: not a binary PGM (P5)");
    const std::size_t nx = parse_count(pgm_token(pgm, pos), "width");
    const std::size_t ny = parse_count(pgm_token(pgm, pos), "height");
    const std::size_t maxval = parse_count(pgm_token(pgm, pos), "maxval");
    if (maxval == 0 || maxval > 255) fail(ErrorKind::Config, "grid: maxval must be in 1..255");
    ++pos;  // single whitespace after maxval
    if (pgm.size() < pos + nx * ny) fail(ErrorKind::Config, "grid: truncated raster");

    double lx = 0.0;
    double ly = 0.0;
    std::size_t hnx = 0;
    std::size_t hny = 0;
    std::istringstream hs(header);
    std::string line;
    while (std::getline(hs, line)) {
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        std::istringstream ls(line);
        std::string key;
        ls >> key;
        bool ok = true;
        if (key == "nx") ok = static_cast<bool>(ls >> hnx);
        else if (key == "ny") ok = static_cast<bool>(ls >> hny);
        else if (key == "Lx") ok = static_cast<bool>(ls >> lx);
        else if (key == "Ly") ok = static_cast<bool>(ls >> ly);
        else fail(ErrorKind::Config, "grid header: unknown key '" + key + "'");
        if (!ok) fail(ErrorKind::Config, "grid header: bad value for '" + key + "'");
    }
    if (hnx != nx || hny != ny) fail(ErrorKind::Config, "grid header dimensions do not match raster");

    std::vector<std::uint8_t> cells(nx * ny);
    for (std::size_t r = 0; r < ny; ++r) {
        const std::size_t j = ny - 1 - r;
        for (std::size_t i = 0; i < nx; ++i) {
            const auto v = static_cast<unsigned char>(pgm[pos + r * nx + i]);
            cells[j * nx + i] = 2 * static_cast<std::size_t>(v) > maxval ? 1 : 0;
        }
    }
    return GridField(nx, ny, lx, ly, std::move(cells));
}

void save_grid(const std::string& path, const GridField& field) {
    {
        std::ofstream out(path, std::ios::binary);
        if (!out) fail(ErrorKind::Io, "cannot write grid raster '" + path + "'");
        const std::string data = grid_to_pgm(field);
        out.write(data.data(), static_cast<std::streamsize>(data.size()));
        if (!out) fail(ErrorKind::Io, "write failed for '" + path + "'");
    }
    std::ofstream hdr(path + ".hdr");
    if (!hdr) fail(ErrorKind::Io, "cannot write grid header '" + path + ".hdr'");
    hdr << grid_header(field);
}

GridField load_grid(const std::string& path) {
    auto slurp = [](const std::string& p) {
        std::ifstream in(p, std::ios::binary);
        if (!in) fail(ErrorKind::Io, "cannot open '" + p + "'");
        std::ostringstream ss;
        ss << in.rdbuf();
        return ss.str();
    };
    return grid_from_pgm(slurp(path), slurp(path + ".hdr"));
}

}  // namespace tdflow
