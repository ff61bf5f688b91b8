#include "orlicz/geometry.hpp"

#include <vector>

namespace orlicz {

namespace {

// Clips a convex polygon against one half-plane keep(v) >= 0, where the
// boundary crossing is located by linear interpolation on value(v).
template <typename Value>
void clip_half_plane(std::vector<Vec2>& poly, std::vector<Vec2>& scratch, Value value) {
  scratch.clear();
  const std::size_t n = poly.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2 cur = poly[i];
    const Vec2 nxt = poly[(i + 1) % n];
    const double vc = value(cur), vn = value(nxt);
    if (vc >= 0.0) scratch.push_back(cur);
    if ((vc < 0.0) != (vn < 0.0)) {
      const double t = vc / (vc - vn);
      scratch.push_back(cur + t * (nxt - cur));
    }
  }
  poly.swap(scratch);
}

}  // namespace

double clip_polygon_rect_area(const Vec2* poly, std::size_t count, const Rect& rect) {
  if (count < 3 || rect.empty()) return 0.0;
  std::vector<Vec2> work(poly, poly + count), scratch;
  work.reserve(count + 4);
  scratch.reserve(count + 4);
  clip_half_plane(work, scratch, [&](Vec2 v) { return v.x - rect.xlo; });
  if (work.size() < 3) return 0.0;
  clip_half_plane(work, scratch, [&](Vec2 v) { return rect.xhi - v.x; });
  if (work.size() < 3) return 0.0;
  clip_half_plane(work, scratch, [&](Vec2 v) { return v.y - rect.ylo; });
  if (work.size() < 3) return 0.0;
  clip_half_plane(work, scratch, [&](Vec2 v) { return rect.yhi - v.y; });
  if (work.size() < 3) return 0.0;
  double twice = 0.0;
  for (std::size_t i = 1; i + 1 < work.size(); ++i)
    twice += cross(work[i] - work[0], work[i + 1] - work[0]);
  return 0.5 * twice;
}

}  // namespace orlicz
