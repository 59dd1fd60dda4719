#include "pflab/interface.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "pflab/ops.hpp"

namespace pflab {

double InterfacePolyline::length() const {
    double L = 0.0;
    const std::size_t n = vertices.size();
    if (n < 2) return 0.0;
    const std::size_t segs = closed ? n : n - 1;
    for (std::size_t i = 0; i < segs; ++i) {
        const auto& a = vertices[i];
        const auto& b = vertices[(i + 1) % n];
        L += std::hypot(b[0] - a[0], b[1] - a[1]);
    }
    return L;
}

std::array<double, 2> InterfacePolyline::centroid() const {
    std::array<double, 2> c{0, 0};
    for (const auto& v : vertices) {
        c[0] += v[0];
        c[1] += v[1];
    }
    if (!vertices.empty()) {
        c[0] /= vertices.size();
        c[1] /= vertices.size();
    }
    return c;
}

namespace {

// interpolation variable: artanh of the clamped phase value, linear across
// the interface for the tanh profile
double kink_coord(double u) {
    const double c = std::clamp(u, -1.0 + 1e-13, 1.0 - 1e-13);
    return std::atanh(c);
}

struct EdgeKey {
    int i, j, horiz; // edge from node (i,j) toward +x (horiz=1) or +y (horiz=0)
    bool operator<(const EdgeKey& o) const {
        return std::tie(i, j, horiz) < std::tie(o.i, o.j, o.horiz);
    }
};

} // namespace

InterfacePolyline extract_interface(const PhaseState& s) {
    require(s.grid.dim == 2, "extract_interface: 2D only");
    const GridSpec& g = s.grid;
    const int nx = g.nodes(0), ny = g.nodes(1);
    const ScalarField& u = s.u;
    auto val = [&](int i, int j) { return u[g.index({i, j, 0})]; };
    auto pos = [&](int i, int j) {
        return std::array<double, 2>{g.origin[0] + i * g.spacing[0], g.origin[1] + j * g.spacing[1]};
    };
    // sign with zeros counted as positive
    auto sgn = [&](int i, int j) { return val(i, j) >= 0.0; };

    // crossing point on an edge
    std::map<EdgeKey, std::array<double, 2>> verts;
    auto crossing = [&](int i, int j, int horiz) -> std::array<double, 2> {
        EdgeKey key{i, j, horiz};
        auto it = verts.find(key);
        if (it != verts.end()) return it->second;
        double ua = val(i, j);
        double ub = horiz ? val(i + 1, j) : val(i, j + 1);
        double fa = kink_coord(ua), fb = kink_coord(ub);
        double t = (fa == fb) ? 0.5 : fa / (fa - fb);
        t = std::clamp(t, 0.0, 1.0);
        auto a = pos(i, j);
        std::array<double, 2> p = a;
        if (horiz)
            p[0] += t * g.spacing[0];
        else
            p[1] += t * g.spacing[1];
        verts[key] = p;
        return p;
    };

    // segments as pairs of edge keys, indexed per cell
    std::vector<std::pair<EdgeKey, EdgeKey>> segments;
    const int cx = nx - 1, cy = ny - 1;
    for (int i = 0; i < cx; ++i) {
        for (int j = 0; j < cy; ++j) {
            bool s00 = sgn(i, j), s10 = sgn(i + 1, j), s01 = sgn(i, j + 1), s11 = sgn(i + 1, j + 1);
            int code = (s00 ? 1 : 0) | (s10 ? 2 : 0) | (s01 ? 4 : 0) | (s11 ? 8 : 0);
            if (code == 0 || code == 15) continue;
            EdgeKey bottom{i, j, 1}, top{i, j + 1, 1}, left{i, j, 0}, right{i + 1, j, 0};
            auto add = [&](EdgeKey a, EdgeKey b) { segments.emplace_back(a, b); };
            switch (code) {
            case 1: case 14: add(bottom, left); break;   // corner (i, j)
            case 2: case 13: add(bottom, right); break;  // corner (i+1, j)
            case 3: case 12: add(left, right); break;    // bottom/top row
            case 4: case 11: add(left, top); break;      // corner (i, j+1)
            case 5: case 10: add(bottom, top); break;    // left/right column
            case 7: case 8: add(top, right); break;      // corner (i+1, j+1)
            case 9: {
                // saddle, corners (i,j) and (i+1,j+1) positive
                double c = 0.25 * (val(i, j) + val(i + 1, j) + val(i, j + 1) + val(i + 1, j + 1));
                if (c >= 0.0) { add(bottom, right); add(left, top); }
                else          { add(bottom, left);  add(top, right); }
                break;
            }
            case 6: {
                // saddle, corners (i+1,j) and (i,j+1) positive
                double c = 0.25 * (val(i, j) + val(i + 1, j) + val(i, j + 1) + val(i + 1, j + 1));
                if (c >= 0.0) { add(bottom, left);  add(top, right); }
                else          { add(bottom, right); add(left, top); }
                break;
            }
            default: break;
            }
        }
    }

    InterfacePolyline poly;
    if (segments.empty()) return poly;

    // stitch segments into chains by shared edges
    std::map<EdgeKey, std::vector<int>> incidence;
    for (int sidx = 0; sidx < static_cast<int>(segments.size()); ++sidx) {
        incidence[segments[sidx].first].push_back(sidx);
        incidence[segments[sidx].second].push_back(sidx);
    }
    std::vector<bool> used(segments.size(), false);
    std::vector<std::pair<std::vector<EdgeKey>, bool>> chains; // (edge sequence, closed)
    for (int start = 0; start < static_cast<int>(segments.size()); ++start) {
        if (used[start]) continue;
        std::vector<EdgeKey> chain{segments[start].first, segments[start].second};
        used[start] = true;
        bool closed = false;
        for (int dir = 0; dir < 2; ++dir) {
            for (;;) {
                EdgeKey tail = dir == 0 ? chain.back() : chain.front();
                int next = -1;
                for (int sidx : incidence[tail])
                    if (!used[sidx]) next = sidx;
                if (next < 0) break;
                used[next] = true;
                EdgeKey other = (segments[next].first < tail || tail < segments[next].first)
                                    ? segments[next].first
                                    : segments[next].second;
                if (dir == 0)
                    chain.push_back(other);
                else
                    chain.insert(chain.begin(), other);
                EdgeKey head = chain.front(), back = chain.back();
                if (chain.size() > 2 && !(head < back) && !(back < head)) {
                    closed = true;
                    chain.pop_back();
                    break;
                }
            }
            if (closed) break;
        }
        chains.emplace_back(std::move(chain), closed);
    }

    auto longest = std::max_element(chains.begin(), chains.end(),
                                    [](const auto& a, const auto& b) {
                                        return a.first.size() < b.first.size();
                                    });
    poly.components_found = static_cast<int>(chains.size());
    poly.closed = longest->second;
    for (const EdgeKey& e : longest->first) poly.vertices.push_back(crossing(e.i, e.j, e.horiz));

    // normals from the interpolated gradient
    VectorField gu = gradient(s.u);
    poly.normals.reserve(poly.vertices.size());
    for (const auto& pvt : poly.vertices) {
        std::array<double, 3> x{pvt[0], pvt[1], 0.0};
        double gx = interpolate(gu[0], x), gy = interpolate(gu[1], x);
        double nn = std::hypot(gx, gy);
        if (nn < 1e-300) nn = 1.0;
        poly.normals.push_back({gx / nn, gy / nn});
    }
    return poly;
}

void polyline_curvature(InterfacePolyline& poly) {
    const int n = static_cast<int>(poly.vertices.size());
    poly.kappa.assign(n, 0.0);
    if (n < 5) return;
    int inward_votes = 0;
    for (int i = 0; i < n; ++i) {
        // 5-vertex window (wrap when closed, clamp when open)
        std::array<std::array<double, 2>, 5> q;
        for (int k = 0; k < 5; ++k) {
            int j = i + k - 2;
            if (poly.closed)
                j = (j % n + n) % n;
            else
                j = std::clamp(j, 0, n - 1);
            q[k] = poly.vertices[j];
        }
        // Kasa algebraic circle fit: minimize |2 c.x + d - |x|^2|
        double Sxx = 0, Sxy = 0, Syy = 0, Sx = 0, Sy = 0, Sxz = 0, Syz = 0, Sz = 0;
        for (const auto& pt : q) {
            double z = pt[0] * pt[0] + pt[1] * pt[1];
            Sxx += 4 * pt[0] * pt[0];
            Sxy += 4 * pt[0] * pt[1];
            Syy += 4 * pt[1] * pt[1];
            Sx += 2 * pt[0];
            Sy += 2 * pt[1];
            Sxz += 2 * pt[0] * z;
            Syz += 2 * pt[1] * z;
            Sz += z;
        }
        const double m = 5.0;
        // normal equations for (cx, cy, d)
        double A[3][3] = {{Sxx, Sxy, Sx}, {Sxy, Syy, Sy}, {Sx, Sy, m}};
        double b[3] = {Sxz, Syz, Sz};
        // Gaussian elimination with partial pivoting
        int piv[3] = {0, 1, 2};
        double M[3][4];
        for (int r = 0; r < 3; ++r) {
            for (int c = 0; c < 3; ++c) M[r][c] = A[r][c];
            M[r][3] = b[r];
        }
        bool singular = false;
        for (int c = 0; c < 3; ++c) {
            int best = c;
            for (int r = c + 1; r < 3; ++r)
                if (std::abs(M[r][c]) > std::abs(M[best][c])) best = r;
            std::swap(M[c], M[best]);
            std::swap(piv[c], piv[best]);
            if (std::abs(M[c][c]) < 1e-14) {
                singular = true;
                break;
            }
            for (int r = c + 1; r < 3; ++r) {
                double f = M[r][c] / M[c][c];
                for (int cc = c; cc < 4; ++cc) M[r][cc] -= f * M[c][cc];
            }
        }
        double kap = 0.0;
        if (!singular) {
            double sol[3];
            for (int r = 2; r >= 0; --r) {
                double acc = M[r][3];
                for (int c = r + 1; c < 3; ++c) acc -= M[r][c] * sol[c];
                sol[r] = acc / M[r][r];
            }
            double cx = sol[0], cy = sol[1];
            double R2 = sol[2] + cx * cx + cy * cy;
            if (R2 > 1e-20) {
                double R = std::sqrt(R2);
                double tocx = cx - poly.vertices[i][0], tocy = cy - poly.vertices[i][1];
                double along = tocx * poly.normals[i][0] + tocy * poly.normals[i][1];
                kap = (along >= 0 ? 1.0 : -1.0) / R;
                if (along >= 0) ++inward_votes;
                // straight windows fit huge circles; call them flat
                if (R > 1e6) kap = 0.0;
            }
        }
        poly.kappa[i] = kap;
    }
    poly.inward_normal_consistent = inward_votes * 10 >= 9 * n;
}

CurvatureComparison curvature_comparison(const InterfacePolyline& poly, const VectorField& v,
                                         double p) {
    require(!poly.empty(), "curvature_comparison: empty polyline");
    require(poly.kappa.size() == poly.vertices.size(),
            "curvature_comparison: run polyline_curvature first");
    const int n = v.grid.dim;
    require(n == 2, "curvature_comparison: 2D only");
    require(p > n / 2.0 && p < n, "curvature_comparison: need n/2 < p < n");
    CurvatureComparison out;
    out.q = p * (n - 1) / (n - p);

    const int m = static_cast<int>(poly.vertices.size());
    // per-vertex length weight: half the two adjacent segments
    std::vector<double> seg(m, 0.0);
    const int segs = poly.closed ? m : m - 1;
    for (int i = 0; i < segs; ++i) {
        const auto& a = poly.vertices[i];
        const auto& b = poly.vertices[(i + 1) % m];
        seg[i] = std::hypot(b[0] - a[0], b[1] - a[1]);
    }
    double defect_sum = 0.0, defect_q_sum = 0.0, line_q = 0.0;
    for (int i = 0; i < m; ++i) {
        std::array<double, 3> x{poly.vertices[i][0], poly.vertices[i][1], 0.0};
        double vn = interpolate(v[0], x) * poly.normals[i][0] +
                    interpolate(v[1], x) * poly.normals[i][1];
        double d = std::abs(poly.kappa[i] - vn);
        out.defect.push_back(d);
        defect_sum += d;
        defect_q_sum += std::pow(d, out.q);
        double wlen;
        if (poly.closed)
            wlen = 0.5 * (seg[i] + seg[(i - 1 + m) % m]);
        else
            wlen = 0.5 * ((i > 0 ? seg[i - 1] : 0.0) + (i < m - 1 ? seg[i] : 0.0));
        line_q += std::pow(std::abs(vn), out.q) * wlen;
    }
    out.mean_defect = defect_sum / m;
    out.lq_mean = std::pow(defect_q_sum / m, 1.0 / out.q);
    out.vline_integral = line_q;
    return out;
}

} // namespace pflab
