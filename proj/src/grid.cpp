#include "pflab/grid.hpp"

#include <cmath>
#include <cstdio>

namespace pflab {

void GridSpec::validate() const {
    require(dim >= 1 && dim <= 3, "grid: dim must be 1, 2 or 3");
    for (int a = 0; a < dim; ++a) {
        require(extents[a] >= 4, "grid: axis " + std::to_string(a) + " needs at least 4 cells");
        require(spacing[a] > 0.0 && std::isfinite(spacing[a]),
                "grid: axis " + std::to_string(a) + " spacing must be positive");
        require(std::isfinite(origin[a]), "grid: origin must be finite");
    }
}

bool GridSpec::same_layout(const GridSpec& o) const {
    if (dim != o.dim) return false;
    for (int a = 0; a < dim; ++a) {
        if (extents[a] != o.extents[a]) return false;
        if (spacing[a] != o.spacing[a]) return false;
        if (origin[a] != o.origin[a]) return false;
        if (bc[a].kind != o.bc[a].kind) return false;
        if (bc[a].kind == BcKind::Dirichlet && bc[a].value != o.bc[a].value) return false;
    }
    return true;
}

GridSpec GridSpec::line(int cells, double x0, double x1, AxisBc b) {
    return GridSpec(1, {cells, 1, 1}, {(x1 - x0) / cells, 1, 1}, {x0, 0, 0}, {b, b, b});
}

GridSpec GridSpec::square(int cells, double x0, double x1, AxisBc b) {
    double h = (x1 - x0) / cells;
    return GridSpec(2, {cells, cells, 1}, {h, h, 1}, {x0, x0, 0}, {b, b, b});
}

GridSpec GridSpec::box3(int cells, double x0, double x1, AxisBc b) {
    double h = (x1 - x0) / cells;
    return GridSpec(3, {cells, cells, cells}, {h, h, h}, {x0, x0, x0}, {b, b, b});
}

std::string bc_code(const AxisBc& b) {
    switch (b.kind) {
    case BcKind::Neumann: return "N";
    case BcKind::Periodic: return "P";
    case BcKind::Dirichlet: {
        char buf[40];
        std::snprintf(buf, sizeof buf, "D:%.17g", b.value);
        return buf;
    }
    }
    return "N";
}

AxisBc parse_bc_code(const std::string& s) {
    require(!s.empty(), "bc code: empty token");
    if (s == "N") return AxisBc::neumann();
    if (s == "P") return AxisBc::periodic();
    if (s[0] == 'D') {
        require(s.size() > 2 && s[1] == ':', "bc code: Dirichlet token must be D:<value>, got " + s);
        return AxisBc::dirichlet(std::stod(s.substr(2)));
    }
    throw Error("bc code: unknown token " + s);
}

} // namespace pflab
