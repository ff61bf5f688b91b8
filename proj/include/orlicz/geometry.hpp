#ifndef ORLICZ_GEOMETRY_HPP
#define ORLICZ_GEOMETRY_HPP

#include <array>
#include <cmath>
#include <cstddef>

#include "orlicz/errors.hpp"

namespace orlicz {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
};

inline Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
inline Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
inline Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
inline double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }

// Row-major 2x2 matrix [[a, b], [c, d]].
struct Mat2 {
  double a = 1.0, b = 0.0, c = 0.0, d = 1.0;

  Vec2 apply(Vec2 v) const { return {a * v.x + b * v.y, c * v.x + d * v.y}; }
  double det() const { return a * d - b * c; }
  Mat2 inverse() const {
    const double dt = det();
    if (dt == 0.0) throw construction_error("Mat2::inverse: singular matrix");
    return {d / dt, -b / dt, -c / dt, a / dt};
  }
};

inline Mat2 operator*(const Mat2& m, const Mat2& n) {
  return {m.a * n.a + m.b * n.c, m.a * n.b + m.b * n.d,
          m.c * n.a + m.d * n.c, m.c * n.b + m.d * n.d};
}

struct Svd2 {
  double sigma1 = 0.0;  // operator norm
  double sigma2 = 0.0;  // smallest stretch
};

// Closed-form singular values via the rotation-split identity; stable for
// every sign pattern.
inline Svd2 singular_values(const Mat2& m) {
  const double e = 0.5 * (m.a + m.d), f = 0.5 * (m.a - m.d);
  const double g = 0.5 * (m.c + m.b), h = 0.5 * (m.c - m.b);
  const double q = std::hypot(e, h), r = std::hypot(f, g);
  return {q + r, std::abs(q - r)};
}

// Affine map sending dom[i] -> img[i]; linear part via edge-vector solve.
inline void solve_affine(const std::array<Vec2, 3>& dom, const std::array<Vec2, 3>& img,
                         Mat2& linear, Vec2& offset) {
  const Vec2 e1 = dom[1] - dom[0], e2 = dom[2] - dom[0];
  const Vec2 f1 = img[1] - img[0], f2 = img[2] - img[0];
  const double dt = cross(e1, e2);
  if (dt == 0.0) throw construction_error("solve_affine: degenerate domain triangle");
  linear.a = (f1.x * e2.y - f2.x * e1.y) / dt;
  linear.b = (f2.x * e1.x - f1.x * e2.x) / dt;
  linear.c = (f1.y * e2.y - f2.y * e1.y) / dt;
  linear.d = (f2.y * e1.x - f1.y * e2.x) / dt;
  offset = img[0] - linear.apply(dom[0]);
}

inline double triangle_area(Vec2 p, Vec2 q, Vec2 r) {
  return 0.5 * cross(q - p, r - p);
}

struct Rect {
  double xlo = 0.0, xhi = 1.0, ylo = 0.0, yhi = 1.0;
  double area() const { return (xhi - xlo) * (yhi - ylo); }
  bool empty() const { return !(xhi > xlo) || !(yhi > ylo); }
};

// Area of polygon ∩ axis-aligned rectangle (Sutherland-Hodgman against the
// four half-planes, then the shoelace formula).  Vertices must be CCW.
double clip_polygon_rect_area(const Vec2* poly, std::size_t count, const Rect& rect);

inline double clip_triangle_rect_area(const std::array<Vec2, 3>& tri, const Rect& rect) {
  return clip_polygon_rect_area(tri.data(), 3, rect);
}

}  // namespace orlicz

#endif
