#include "oecs/curve.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace oecs {

double physical_distance(const Vec2& a, const Vec2& b, const GridSpec& grid) {
    const Vec2 m = grid.meters_per_unit(0.5 * (a + b));
    return std::hypot((b.x - a.x) * m.x, (b.y - a.y) * m.y);
}

double polygon_signed_area(const std::vector<Vec2>& ring, const GridSpec& grid) {
    const std::size_t n = ring.size();
    if (n < 3) return 0.0;
    if (grid.mode == CoordinateMode::Cartesian) {
        double acc = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const Vec2& p = ring[i];
            const Vec2& q = ring[(i + 1) % n];
            acc += p.x * q.y - q.x * p.y;
        }
        return 0.5 * acc;
    }
    // A = -R^2 * sum of (sin(lat_i)+sin(lat_j))/2 * (lon_j - lon_i), radians.
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const Vec2& p = ring[i];
        const Vec2& q = ring[(i + 1) % n];
        const double s = 0.5 * (std::sin(p.y * kDegToRad) + std::sin(q.y * kDegToRad));
        acc += s * (q.x - p.x) * kDegToRad;
    }
    return -grid.earth_radius * grid.earth_radius * acc;
}

double ring_perimeter(const std::vector<Vec2>& ring, const GridSpec& grid) {
    const std::size_t n = ring.size();
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        acc += physical_distance(ring[i], ring[(i + 1) % n], grid);
    return acc;
}

Vec2 polygon_centroid(const std::vector<Vec2>& ring) {
    const std::size_t n = ring.size();
    double a2 = 0.0, cx = 0.0, cy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const Vec2& p = ring[i];
        const Vec2& q = ring[(i + 1) % n];
        const double w = p.x * q.y - q.x * p.y;
        a2 += w;
        cx += (p.x + q.x) * w;
        cy += (p.y + q.y) * w;
    }
    if (std::abs(a2) < 1e-300) {
        Vec2 mean;
        for (const Vec2& p : ring) mean += p;
        return mean / static_cast<double>(n);
    }
    return {cx / (3.0 * a2), cy / (3.0 * a2)};
}

bool point_in_polygon(const std::vector<Vec2>& ring, const Vec2& p) {
    const std::size_t n = ring.size();
    bool inside = false;
    for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
        const Vec2& a = ring[i];
        const Vec2& b = ring[j];
        if ((a.y > p.y) != (b.y > p.y)) {
            const double x_cross = a.x + (p.y - a.y) / (b.y - a.y) * (b.x - a.x);
            if (p.x < x_cross) inside = !inside;
        }
    }
    return inside;
}

namespace {

double orient(const Vec2& a, const Vec2& b, const Vec2& c) {
    return cross(b - a, c - a);
}

bool on_segment(const Vec2& a, const Vec2& b, const Vec2& p) {
    return std::min(a.x, b.x) <= p.x && p.x <= std::max(a.x, b.x) &&
           std::min(a.y, b.y) <= p.y && p.y <= std::max(a.y, b.y);
}

bool segments_intersect(const Vec2& a, const Vec2& b, const Vec2& c, const Vec2& d) {
    const double o1 = orient(a, b, c);
    const double o2 = orient(a, b, d);
    const double o3 = orient(c, d, a);
    const double o4 = orient(c, d, b);
    if (((o1 > 0) != (o2 > 0)) && ((o3 > 0) != (o4 > 0)) && o1 != 0 && o2 != 0 && o3 != 0 &&
        o4 != 0)
        return true;
    if (o1 == 0 && on_segment(a, b, c)) return true;
    if (o2 == 0 && on_segment(a, b, d)) return true;
    if (o3 == 0 && on_segment(c, d, a)) return true;
    if (o4 == 0 && on_segment(c, d, b)) return true;
    return false;
}

struct EdgeSpan {
    double x_lo, x_hi;
    int index;
};

} // namespace

bool is_simple_polygon(const std::vector<Vec2>& ring) {
    const int n = static_cast<int>(ring.size());
    if (n < 3) return false;
    std::vector<EdgeSpan> spans(n);
    for (int i = 0; i < n; ++i) {
        const Vec2& a = ring[i];
        const Vec2& b = ring[(i + 1) % n];
        spans[i] = {std::min(a.x, b.x), std::max(a.x, b.x), i};
    }
    std::sort(spans.begin(), spans.end(),
              [](const EdgeSpan& l, const EdgeSpan& r) { return l.x_lo < r.x_lo; });
    // Sweep over x: each edge is tested against the ones whose span is still
    // open when it starts.
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            if (spans[j].x_lo > spans[i].x_hi) break;
            const int e1 = spans[i].index;
            const int e2 = spans[j].index;
            const int lo = std::min(e1, e2), hi = std::max(e1, e2);
            if (hi - lo == 1 || (lo == 0 && hi == n - 1)) continue;  // adjacent edges share a vertex
            const Vec2& a = ring[e1];
            const Vec2& b = ring[(e1 + 1) % n];
            const Vec2& c = ring[e2];
            const Vec2& d = ring[(e2 + 1) % n];
            if (segments_intersect(a, b, c, d)) return false;
        }
    }
    return true;
}

bool rings_intersect(const std::vector<Vec2>& a, const std::vector<Vec2>& b) {
    const int na = static_cast<int>(a.size());
    const int nb = static_cast<int>(b.size());
    for (int i = 0; i < na; ++i) {
        const Vec2& p = a[i];
        const Vec2& q = a[(i + 1) % na];
        for (int j = 0; j < nb; ++j) {
            if (segments_intersect(p, q, b[j], b[(j + 1) % nb])) return true;
        }
    }
    return false;
}

void finalize_curve(ClosedCurve& curve, const GridSpec& grid) {
    if (polygon_signed_area(curve.vertices, grid) < 0.0)
        std::reverse(curve.vertices.begin(), curve.vertices.end());
    const std::size_t n = curve.vertices.size();
    curve.arclength.assign(n, 0.0);
    for (std::size_t i = 1; i < n; ++i)
        curve.arclength[i] =
            curve.arclength[i - 1] + physical_distance(curve.vertices[i - 1], curve.vertices[i], grid);
    curve.sigma = n >= 2 ? curve.arclength[n - 1] +
                               physical_distance(curve.vertices[n - 1], curve.vertices[0], grid)
                         : 0.0;
}

ResampledRing resample_uniform(const ClosedCurve& curve, const GridSpec& grid,
                               double target_spacing, int min_vertices) {
    const std::size_t n = curve.vertices.size();
    std::vector<double> edge(n);
    double sigma = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        edge[i] = physical_distance(curve.vertices[i], curve.vertices[(i + 1) % n], grid);
        sigma += edge[i];
    }
    int count = std::max(min_vertices, static_cast<int>(std::lround(sigma / target_spacing)));
    ResampledRing out;
    out.sigma = sigma;
    out.spacing = sigma / count;
    out.pos.reserve(count);
    std::size_t seg = 0;
    double seg_start = 0.0;
    for (int k = 0; k < count; ++k) {
        const double s = out.spacing * k;
        while (seg < n - 1 && seg_start + edge[seg] < s) {
            seg_start += edge[seg];
            ++seg;
        }
        const double frac = edge[seg] > 0.0 ? (s - seg_start) / edge[seg] : 0.0;
        const Vec2& a = curve.vertices[seg];
        const Vec2& b = curve.vertices[(seg + 1) % n];
        out.pos.push_back(a + std::min(1.0, std::max(0.0, frac)) * (b - a));
    }
    return out;
}

std::vector<Vec2> convex_hull(std::vector<Vec2> points) {
    std::sort(points.begin(), points.end(), [](const Vec2& a, const Vec2& b) {
        return a.x < b.x || (a.x == b.x && a.y < b.y);
    });
    points.erase(std::unique(points.begin(), points.end(),
                             [](const Vec2& a, const Vec2& b) { return a.x == b.x && a.y == b.y; }),
                 points.end());
    const int n = static_cast<int>(points.size());
    if (n < 3) return points;
    std::vector<Vec2> hull(2 * n);
    int k = 0;
    for (int i = 0; i < n; ++i) {
        while (k >= 2 && orient(hull[k - 2], hull[k - 1], points[i]) <= 0) --k;
        hull[k++] = points[i];
    }
    const int lower = k + 1;
    for (int i = n - 2; i >= 0; --i) {
        while (k >= lower && orient(hull[k - 2], hull[k - 1], points[i]) <= 0) --k;
        hull[k++] = points[i];
    }
    hull.resize(k - 1);
    return hull;
}

} // namespace oecs
