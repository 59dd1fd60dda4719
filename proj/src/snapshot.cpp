#include "pflab/snapshot.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace pflab {

void write_snapshot(std::ostream& os, const ScalarField& f) {
    const GridSpec& g = f.grid;
    os << "pfield " << g.dim;
    for (int a = 0; a < g.dim; ++a) os << ' ' << g.extents[a];
    char buf[40];
    for (int a = 0; a < g.dim; ++a) {
        std::snprintf(buf, sizeof buf, " %.17g", g.spacing[a]);
        os << buf;
    }
    for (int a = 0; a < g.dim; ++a) {
        std::snprintf(buf, sizeof buf, " %.17g", g.origin[a]);
        os << buf;
    }
    for (int a = 0; a < g.dim; ++a) os << ' ' << bc_code(g.bc[a]);
    os << '\n';
    std::size_t per_line = 0;
    for (std::size_t i = 0; i < f.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%.17g", f[i]);
        os << buf;
        if (++per_line == 8) {
            os << '\n';
            per_line = 0;
        } else {
            os << ' ';
        }
    }
    if (per_line) os << '\n';
}

void write_snapshot_file(const std::string& path, const ScalarField& f) {
    std::ofstream os(path);
    require(os.good(), "snapshot: cannot open " + path + " for writing");
    write_snapshot(os, f);
    require(os.good(), "snapshot: write failed for " + path);
}

ScalarField read_snapshot(std::istream& is) {
    std::string line;
    require(static_cast<bool>(std::getline(is, line)), "snapshot: missing header");
    std::istringstream hs(line);
    std::string tag;
    hs >> tag;
    require(tag == "pfield", "snapshot: header must start with 'pfield'");
    int dim = 0;
    require(static_cast<bool>(hs >> dim) && dim >= 1 && dim <= 3, "snapshot: bad dimension");
    std::array<int, 3> ext{1, 1, 1};
    std::array<double, 3> sp{1, 1, 1}, org{0, 0, 0};
    std::array<AxisBc, 3> bc{};
    for (int a = 0; a < dim; ++a) require(static_cast<bool>(hs >> ext[a]), "snapshot: missing extent");
    for (int a = 0; a < dim; ++a) require(static_cast<bool>(hs >> sp[a]), "snapshot: missing spacing");
    for (int a = 0; a < dim; ++a) require(static_cast<bool>(hs >> org[a]), "snapshot: missing origin");
    for (int a = 0; a < dim; ++a) {
        std::string code;
        require(static_cast<bool>(hs >> code), "snapshot: missing bc code");
        bc[a] = parse_bc_code(code);
    }
    std::string extra;
    require(!(hs >> extra), "snapshot: trailing header token '" + extra + "'");

    ScalarField f(GridSpec(dim, ext, sp, org, bc));
    for (std::size_t i = 0; i < f.size(); ++i)
        require(static_cast<bool>(is >> f.values[i]),
                "snapshot: expected " + std::to_string(f.size()) + " values, got " + std::to_string(i));
    double spare;
    require(!(is >> spare), "snapshot: more values than the header admits");
    return f;
}

ScalarField read_snapshot_file(const std::string& path) {
    std::ifstream is(path);
    require(is.good(), "snapshot: cannot open " + path);
    return read_snapshot(is);
}

} // namespace pflab
