#pragma once

#include <Eigen/Core>
#include <cmath>

// Planar orientation/incircle predicates evaluated in long double with a
// static relative-error filter. Adequate for desk-scale inputs; not a
// substitute for adaptive exact arithmetic.
namespace curvematch::detail {

using Vec2 = Eigen::Vector2d;

inline int orient2d(const Vec2& a, const Vec2& b, const Vec2& c) {
  const long double detl = (static_cast<long double>(b.x()) - a.x()) *
                           (static_cast<long double>(c.y()) - a.y());
  const long double detr = (static_cast<long double>(b.y()) - a.y()) *
                           (static_cast<long double>(c.x()) - a.x());
  const long double det = detl - detr;
  const long double mag = std::abs(detl) + std::abs(detr);
  if (std::abs(det) <= mag * 1e-17L) return 0;
  return det > 0 ? 1 : -1;
}

// c strictly inside the circumcircle of CCW triangle (a, b, p)? Positive
// determinant means inside.
inline int incircle(const Vec2& a, const Vec2& b, const Vec2& c, const Vec2& d) {
  const long double adx = static_cast<long double>(a.x()) - d.x();
  const long double ady = static_cast<long double>(a.y()) - d.y();
  const long double bdx = static_cast<long double>(b.x()) - d.x();
  const long double bdy = static_cast<long double>(b.y()) - d.y();
  const long double cdx = static_cast<long double>(c.x()) - d.x();
  const long double cdy = static_cast<long double>(c.y()) - d.y();

  const long double abdet = adx * bdy - bdx * ady;
  const long double bcdet = bdx * cdy - cdx * bdy;
  const long double cadet = cdx * ady - adx * cdy;
  const long double alift = adx * adx + ady * ady;
  const long double blift = bdx * bdx + bdy * bdy;
  const long double clift = cdx * cdx + cdy * cdy;

  const long double det = alift * bcdet + blift * cadet + clift * abdet;
  const long double mag = std::abs(alift * bcdet) + std::abs(blift * cadet) +
                          std::abs(clift * abdet);
  if (std::abs(det) <= mag * 1e-16L) return 0;
  return det > 0 ? 1 : -1;
}

// p on the closed segment [a, b] (requires orient2d(a, b, p) == 0 to mean
// collinear).
inline bool on_segment(const Vec2& a, const Vec2& b, const Vec2& p) {
  if (orient2d(a, b, p) != 0) return false;
  return p.x() >= std::min(a.x(), b.x()) && p.x() <= std::max(a.x(), b.x()) &&
         p.y() >= std::min(a.y(), b.y()) && p.y() <= std::max(a.y(), b.y());
}

// Any contact between closed segments [a,b] and [c,d].
inline bool segments_intersect(const Vec2& a, const Vec2& b, const Vec2& c, const Vec2& d) {
  const int o1 = orient2d(a, b, c);
  const int o2 = orient2d(a, b, d);
  const int o3 = orient2d(c, d, a);
  const int o4 = orient2d(c, d, b);
  if (o1 != o2 && o3 != o4 && o1 * o2 <= 0 && o3 * o4 <= 0) {
    if (o1 != 0 || o2 != 0 || o3 != 0 || o4 != 0) return true;
  }
  if (o1 == 0 && on_segment(a, b, c)) return true;
  if (o2 == 0 && on_segment(a, b, d)) return true;
  if (o3 == 0 && on_segment(c, d, a)) return true;
  if (o4 == 0 && on_segment(c, d, b)) return true;
  return false;
}

// Winding-number point-in-polygon; boundary points count as inside.
inline bool point_in_polygon(const Vec2& p, const std::vector<Vec2>& poly) {
  const int m = static_cast<int>(poly.size());
  int winding = 0;
  for (int i = 0; i < m; ++i) {
    const Vec2& a = poly[i];
    const Vec2& b = poly[(i + 1) % m];
    if (on_segment(a, b, p)) return true;
    if (a.y() <= p.y()) {
      if (b.y() > p.y() && orient2d(a, b, p) > 0) ++winding;
    } else {
      if (b.y() <= p.y() && orient2d(a, b, p) < 0) --winding;
    }
  }
  return winding != 0;
}

}  // namespace curvematch::detail
