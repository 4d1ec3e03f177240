#include "torihull/polytope.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <utility>

#include "torihull/errors.hpp"

namespace torihull {

namespace {

using Vec = AngleVector;

double dot(const Vec& a, const Vec& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

Vec sub(const Vec& a, const Vec& b) {
  Vec out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
  return out;
}

Vec add(const Vec& a, const Vec& b) {
  Vec out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
  return out;
}

Vec scaled(const Vec& a, double s) {
  Vec out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] * s;
  return out;
}

double norm(const Vec& a) { return std::sqrt(dot(a, a)); }

Vec cross3(const Vec& a, const Vec& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

double cross2(const Vec& o, const Vec& a, const Vec& b) {
  return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
}

Vec closest_on_segment(const Vec& p, const Vec& a, const Vec& b) {
  const Vec ab = sub(b, a);
  const double len2 = dot(ab, ab);
  if (len2 == 0.0) return a;
  const double t = std::clamp(dot(sub(p, a), ab) / len2, 0.0, 1.0);
  return add(a, scaled(ab, t));
}

// Closest point on triangle abc to p, by Voronoi region of the triangle.
Vec closest_on_triangle(const Vec& p, const Vec& a, const Vec& b, const Vec& c) {
  const Vec ab = sub(b, a), ac = sub(c, a), ap = sub(p, a);
  const double d1 = dot(ab, ap), d2 = dot(ac, ap);
  if (d1 <= 0.0 && d2 <= 0.0) return a;
  const Vec bp = sub(p, b);
  const double d3 = dot(ab, bp), d4 = dot(ac, bp);
  if (d3 >= 0.0 && d4 <= d3) return b;
  const double vc = d1 * d4 - d3 * d2;
  if (vc <= 0.0 && d1 >= 0.0 && d3 <= 0.0) return add(a, scaled(ab, d1 / (d1 - d3)));
  const Vec cp = sub(p, c);
  const double d5 = dot(ab, cp), d6 = dot(ac, cp);
  if (d6 >= 0.0 && d5 <= d6) return c;
  const double vb = d5 * d2 - d1 * d6;
  if (vb <= 0.0 && d2 >= 0.0 && d6 <= 0.0) return add(a, scaled(ac, d2 / (d2 - d6)));
  const double va = d3 * d6 - d5 * d4;
  if (va <= 0.0 && (d4 - d3) >= 0.0 && (d5 - d6) >= 0.0) {
    return add(b, scaled(sub(c, b), (d4 - d3) / ((d4 - d3) + (d5 - d6))));
  }
  const double denom = 1.0 / (va + vb + vc);
  return add(a, add(scaled(ab, vb * denom), scaled(ac, vc * denom)));
}

// Returns indices of polygon vertices in counter-clockwise order starting at
// the lexicographically smallest point; collinear boundary points dropped.
std::vector<std::size_t> monotone_chain(const std::vector<Vec>& pts) {
  std::vector<std::size_t> idx(pts.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](std::size_t i, std::size_t j) {
    return pts[i] < pts[j] || (pts[i] == pts[j] && i < j);
  });
  idx.erase(std::unique(idx.begin(), idx.end(),
                        [&](std::size_t i, std::size_t j) { return pts[i] == pts[j]; }),
            idx.end());
  if (idx.size() < 3) return idx;
  std::vector<std::size_t> hull(2 * idx.size());
  std::size_t k = 0;
  for (std::size_t i : idx) {
    while (k >= 2 && cross2(pts[hull[k - 2]], pts[hull[k - 1]], pts[i]) <= 0.0) --k;
    hull[k++] = i;
  }
  for (std::size_t t = idx.size() - 1, lower = k + 1; t-- > 0;) {
    const std::size_t i = idx[t];
    while (k >= lower && cross2(pts[hull[k - 2]], pts[hull[k - 1]], pts[i]) <= 0.0) --k;
    hull[k++] = i;
  }
  hull.resize(k - 1);
  return hull;
}

struct Face {
  std::array<std::size_t, 3> v;
  Vec normal;
  double offset;
  bool alive;
};

Face make_face(const std::vector<Vec>& pts, std::size_t a, std::size_t b, std::size_t c) {
  Vec n = cross3(sub(pts[b], pts[a]), sub(pts[c], pts[a]));
  const double len = norm(n);
  if (len > 0.0) n = scaled(n, 1.0 / len);
  return Face{{a, b, c}, n, dot(n, pts[a]), true};
}

// Incremental 3-D hull. Input must be affinely 3-dimensional.
std::vector<Face> hull3(const std::vector<Vec>& pts, double eps) {
  const std::size_t n = pts.size();
  std::size_t i0 = 0;
  for (std::size_t i = 1; i < n; ++i) {
    if (pts[i] < pts[i0]) i0 = i;
  }
  auto farthest = [&](auto&& measure) {
    std::size_t best = 0;
    double best_val = -1.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double v = measure(pts[i]);
      if (v > best_val) {
        best_val = v;
        best = i;
      }
    }
    return best;
  };
  const std::size_t i1 = farthest([&](const Vec& p) { return norm(sub(p, pts[i0])); });
  const Vec e01 = sub(pts[i1], pts[i0]);
  const std::size_t i2 =
      farthest([&](const Vec& p) { return norm(cross3(e01, sub(p, pts[i0]))); });
  const Vec plane = cross3(e01, sub(pts[i2], pts[i0]));
  const std::size_t i3 =
      farthest([&](const Vec& p) { return std::abs(dot(plane, sub(p, pts[i0]))); });

  std::vector<Face> faces;
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> edge_owner;
  auto add_face = [&](std::size_t a, std::size_t b, std::size_t c) {
    faces.push_back(make_face(pts, a, b, c));
    const std::size_t id = faces.size() - 1;
    edge_owner[{a, b}] = id;
    edge_owner[{b, c}] = id;
    edge_owner[{c, a}] = id;
  };
  const bool flip = dot(plane, sub(pts[i3], pts[i0])) > 0.0;
  const std::array<std::size_t, 4> t = {i0, i1, i2, i3};
  const std::array<std::array<int, 3>, 4> tetra = {{{0, 1, 2}, {0, 3, 1}, {1, 3, 2}, {2, 3, 0}}};
  for (const auto& f : tetra) {
    if (flip) {
      add_face(t[f[0]], t[f[2]], t[f[1]]);
    } else {
      add_face(t[f[0]], t[f[1]], t[f[2]]);
    }
  }

  std::vector<bool> visible;
  for (std::size_t p = 0; p < n; ++p) {
    if (p == i0 || p == i1 || p == i2 || p == i3) continue;
    visible.assign(faces.size(), false);
    bool any = false;
    for (std::size_t f = 0; f < faces.size(); ++f) {
      if (faces[f].alive && dot(faces[f].normal, pts[p]) - faces[f].offset > eps) {
        visible[f] = true;
        any = true;
      }
    }
    if (!any) continue;
    std::vector<std::pair<std::size_t, std::size_t>> horizon;
    for (std::size_t f = 0; f < visible.size(); ++f) {
      if (!visible[f]) continue;
      const auto& v = faces[f].v;
      for (int e = 0; e < 3; ++e) {
        const std::size_t a = v[e], b = v[(e + 1) % 3];
        const auto it = edge_owner.find({b, a});
        if (it == edge_owner.end() || !visible[it->second]) horizon.emplace_back(a, b);
      }
    }
    for (std::size_t f = 0; f < visible.size(); ++f) {
      if (!visible[f]) continue;
      faces[f].alive = false;
      const auto& v = faces[f].v;
      for (int e = 0; e < 3; ++e) {
        const auto it = edge_owner.find({v[e], v[(e + 1) % 3]});
        if (it != edge_owner.end() && it->second == f) edge_owner.erase(it);
      }
    }
    for (const auto& [a, b] : horizon) add_face(a, b, p);
  }
  std::vector<Face> alive;
  for (auto& f : faces) {
    if (f.alive) alive.push_back(std::move(f));
  }
  return alive;
}

// Solves a small dense system in place by partial pivoting; false if singular.
bool solve_dense(std::vector<std::vector<double>>& a, std::vector<double>& b) {
  const std::size_t n = b.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < n; ++r) {
      if (std::abs(a[r][col]) > std::abs(a[piv][col])) piv = r;
    }
    if (std::abs(a[piv][col]) < 1e-300) return false;
    std::swap(a[piv], a[col]);
    std::swap(b[piv], b[col]);
    for (std::size_t r = col + 1; r < n; ++r) {
      const double f = a[r][col] / a[col][col];
      if (f == 0.0) continue;
      for (std::size_t c = col; c < n; ++c) a[r][c] -= f * a[col][c];
      b[r] -= f * b[col];
    }
  }
  for (std::size_t r = n; r-- > 0;) {
    double s = b[r];
    for (std::size_t c = r + 1; c < n; ++c) s -= a[r][c] * b[c];
    b[r] = s / a[r][r];
  }
  return true;
}

std::vector<Vec> sorted_lex(std::vector<Vec> v) {
  std::sort(v.begin(), v.end());
  return v;
}

}  // namespace

AngleVector min_norm_point(const std::vector<AngleVector>& points) {
  if (points.empty()) throw InputError("min_norm_point: empty input");
  const std::size_t m = points.size();
  double max_norm2 = 0.0;
  std::size_t start = 0;
  for (std::size_t i = 0; i < m; ++i) {
    const double n2 = dot(points[i], points[i]);
    max_norm2 = std::max(max_norm2, n2);
    if (n2 < dot(points[start], points[start])) start = i;
  }
  const double tol = 1e-15 * std::max(max_norm2, 1e-300);
  std::vector<std::size_t> corral = {start};
  std::vector<double> weight = {1.0};
  Vec x = points[start];

  for (int major = 0; major < 1000; ++major) {
    std::size_t j = 0;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < m; ++i) {
      const double v = dot(x, points[i]);
      if (v < best) {
        best = v;
        j = i;
      }
    }
    if (dot(x, x) - best <= tol) break;
    if (std::find(corral.begin(), corral.end(), j) != corral.end()) break;
    corral.push_back(j);
    weight.push_back(0.0);

    for (int minor = 0; minor < 1000; ++minor) {
      const std::size_t s = corral.size();
      std::vector<std::vector<double>> kkt(s + 1, std::vector<double>(s + 1, 0.0));
      std::vector<double> rhs(s + 1, 0.0);
      for (std::size_t r = 0; r < s; ++r) {
        for (std::size_t c = 0; c < s; ++c) kkt[r][c] = dot(points[corral[r]], points[corral[c]]);
        kkt[r][s] = 1.0;
        kkt[s][r] = 1.0;
      }
      rhs[s] = 1.0;
      if (!solve_dense(kkt, rhs)) {
        corral.pop_back();
        weight.pop_back();
        major = 1000;
        break;
      }
      const std::vector<double> affine(rhs.begin(), rhs.begin() + static_cast<long>(s));
      if (std::all_of(affine.begin(), affine.end(), [](double v) { return v > 1e-14; })) {
        weight = affine;
        break;
      }
      double theta = 1.0;
      for (std::size_t r = 0; r < s; ++r) {
        if (affine[r] <= 1e-14 && weight[r] - affine[r] > 0.0) {
          theta = std::min(theta, weight[r] / (weight[r] - affine[r]));
        }
      }
      for (std::size_t r = 0; r < s; ++r) weight[r] += theta * (affine[r] - weight[r]);
      std::vector<std::size_t> keep_idx;
      std::vector<double> keep_w;
      for (std::size_t r = 0; r < s; ++r) {
        if (weight[r] > 1e-14) {
          keep_idx.push_back(corral[r]);
          keep_w.push_back(weight[r]);
        }
      }
      if (keep_idx.size() == s) {
        // No weight reached zero: drop the smallest to guarantee progress.
        const auto it = std::min_element(keep_w.begin(), keep_w.end());
        const auto pos = it - keep_w.begin();
        keep_idx.erase(keep_idx.begin() + pos);
        keep_w.erase(keep_w.begin() + pos);
      }
      const double total = std::accumulate(keep_w.begin(), keep_w.end(), 0.0);
      for (double& w : keep_w) w /= total;
      corral = std::move(keep_idx);
      weight = std::move(keep_w);
    }
    x.assign(points[0].size(), 0.0);
    for (std::size_t r = 0; r < corral.size(); ++r) x = add(x, scaled(points[corral[r]], weight[r]));
  }
  return x;
}

Polytope Polytope::hull_of(const std::vector<AngleVector>& points) {
  if (points.empty()) throw InputError("hull of an empty point set");
  const std::size_t d = points.front().size();
  if (d == 0) throw InputError("hull in dimension 0");
  for (const auto& p : points) {
    if (p.size() != d) throw InputError("hull input has mixed dimensions");
    for (double v : p) {
      if (!std::isfinite(v)) throw InputError("hull input is not finite");
    }
  }

  Polytope poly;
  poly.ambient_dim_ = d;

  double scale = 1.0;
  for (const auto& p : points) {
    for (std::size_t i = 0; i < d; ++i) scale = std::max(scale, std::abs(p[i] - points[0][i]));
  }
  const double span_tol = 1e-10 * scale;

  std::vector<Vec> residual;
  residual.reserve(points.size());
  for (const auto& p : points) residual.push_back(sub(p, points[0]));
  std::vector<Vec> basis;
  while (basis.size() < d) {
    std::size_t best = 0;
    double best_norm = -1.0;
    for (std::size_t i = 0; i < residual.size(); ++i) {
      const double r = norm(residual[i]);
      if (r > best_norm) {
        best_norm = r;
        best = i;
      }
    }
    if (best_norm <= span_tol) break;
    const Vec e = scaled(residual[best], 1.0 / best_norm);
    basis.push_back(e);
    for (auto& r : residual) r = sub(r, scaled(e, dot(r, e)));
  }
  const std::size_t k = basis.size();
  poly.span_dim_ = k;

  if (k == d) {
    poly.identity_frame_ = true;
    poly.origin_.assign(d, 0.0);
    poly.basis_.assign(d, Vec(d, 0.0));
    for (std::size_t i = 0; i < d; ++i) poly.basis_[i][i] = 1.0;
  } else {
    poly.origin_ = points[0];
    poly.basis_ = basis;
  }

  std::vector<Vec> local;
  local.reserve(points.size());
  for (const auto& p : points) local.push_back(poly.to_local(p));

  std::vector<std::size_t> vertex_ids;
  if (k == 0) {
    vertex_ids = {0};
    poly.local_vertices_ = {Vec{}};
  } else if (k == 1) {
    std::size_t lo = 0, hi = 0;
    for (std::size_t i = 1; i < local.size(); ++i) {
      if (local[i][0] < local[lo][0]) lo = i;
      if (local[i][0] > local[hi][0]) hi = i;
    }
    vertex_ids = {lo, hi};
    poly.local_vertices_ = {local[lo], local[hi]};
  } else if (k == 2) {
    vertex_ids = monotone_chain(local);
    for (std::size_t i : vertex_ids) poly.local_vertices_.push_back(local[i]);
  } else if (k == 3) {
    const auto faces = hull3(local, 1e-12 * scale);
    std::map<std::size_t, std::size_t> remap;
    for (const auto& f : faces) {
      for (std::size_t v : f.v) {
        if (remap.emplace(v, poly.local_vertices_.size()).second) {
          poly.local_vertices_.push_back(local[v]);
          vertex_ids.push_back(v);
        }
      }
    }
    for (const auto& f : faces) {
      poly.triangles_.push_back({remap[f.v[0]], remap[f.v[1]], remap[f.v[2]]});
      poly.local_facets_.push_back(Halfspace{f.normal, f.offset});
    }
  } else {
    // Support-function extremes are vertices outright; every other point is
    // kept only if it lies outside the hull of the remaining candidates.
    std::vector<std::size_t> order(local.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return local[a] < local[b]; });
    order.erase(std::unique(order.begin(), order.end(),
                            [&](std::size_t a, std::size_t b) { return local[a] == local[b]; }),
                order.end());
    std::vector<bool> sure(local.size(), false);
    for (std::size_t axis = 0; axis < k; ++axis) {
      std::size_t lo = order.front(), hi = order.front();
      for (std::size_t i : order) {
        if (local[i][axis] < local[lo][axis]) lo = i;
        if (local[i][axis] > local[hi][axis]) hi = i;
      }
      sure[lo] = sure[hi] = true;
    }
    std::vector<bool> removed(local.size(), false);
    for (std::size_t i : order) {
      if (sure[i]) continue;
      std::vector<Vec> shifted;
      for (std::size_t j : order) {
        if (j != i && !removed[j]) shifted.push_back(sub(local[j], local[i]));
      }
      if (norm(min_norm_point(shifted)) <= 1e-12 * scale) removed[i] = true;
    }
    for (std::size_t i : order) {
      if (!removed[i]) {
        vertex_ids.push_back(i);
        poly.local_vertices_.push_back(local[i]);
      }
    }
  }

  std::vector<Vec> verts;
  for (std::size_t i : vertex_ids) verts.push_back(points[i]);
  if (k == 2 && poly.identity_frame_) {
    poly.vertices_ = std::move(verts);
  } else {
    poly.vertices_ = sorted_lex(std::move(verts));
  }

  if (poly.identity_frame_ && d <= 3) {
    if (d == 1) {
      poly.facets_ = {Halfspace{{-1.0}, -poly.local_vertices_[0][0]},
                      Halfspace{{1.0}, poly.local_vertices_[1][0]}};
    } else if (d == 2) {
      const auto& pv = poly.local_vertices_;
      for (std::size_t i = 0; i < pv.size(); ++i) {
        const Vec& a = pv[i];
        const Vec& b = pv[(i + 1) % pv.size()];
        Vec n = {b[1] - a[1], a[0] - b[0]};
        n = scaled(n, 1.0 / norm(n));
        poly.facets_.push_back(Halfspace{n, dot(n, a)});
      }
    } else {
      poly.facets_ = poly.local_facets_;
    }
  }

  poly.lower_ = poly.vertices_.front();
  poly.upper_ = poly.vertices_.front();
  for (const auto& v : poly.vertices_) {
    for (std::size_t i = 0; i < d; ++i) {
      poly.lower_[i] = std::min(poly.lower_[i], v[i]);
      poly.upper_[i] = std::max(poly.upper_[i], v[i]);
    }
  }
  return poly;
}

AngleVector Polytope::to_local(const AngleVector& x) const {
  if (identity_frame_) return x;
  const Vec rel = sub(x, origin_);
  Vec y(basis_.size());
  for (std::size_t i = 0; i < basis_.size(); ++i) y[i] = dot(rel, basis_[i]);
  return y;
}

AngleVector Polytope::to_ambient(const AngleVector& y) const {
  if (identity_frame_) return y;
  Vec x = origin_;
  for (std::size_t i = 0; i < basis_.size(); ++i) x = add(x, scaled(basis_[i], y[i]));
  return x;
}

AngleVector Polytope::local_closest(const AngleVector& y) const {
  switch (span_dim_) {
    case 0:
      return y;
    case 1:
      return {std::clamp(y[0], local_vertices_[0][0], local_vertices_[1][0])};
    case 2: {
      const auto& pv = local_vertices_;
      bool inside = true;
      for (std::size_t i = 0; i < pv.size() && inside; ++i) {
        if (cross2(pv[i], pv[(i + 1) % pv.size()], y) < 0.0) inside = false;
      }
      if (inside) return y;
      Vec best;
      double best_d = std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < pv.size(); ++i) {
        Vec c = closest_on_segment(y, pv[i], pv[(i + 1) % pv.size()]);
        const double dd = norm(sub(c, y));
        if (dd < best_d) {
          best_d = dd;
          best = std::move(c);
        }
      }
      return best;
    }
    case 3: {
      bool inside = true;
      for (const auto& f : local_facets_) {
        if (dot(f.normal, y) > f.offset) {
          inside = false;
          break;
        }
      }
      if (inside) return y;
      Vec best;
      double best_d = std::numeric_limits<double>::infinity();
      for (const auto& t : triangles_) {
        Vec c = closest_on_triangle(y, local_vertices_[t[0]], local_vertices_[t[1]],
                                    local_vertices_[t[2]]);
        const double dd = norm(sub(c, y));
        if (dd < best_d) {
          best_d = dd;
          best = std::move(c);
        }
      }
      return best;
    }
    default: {
      std::vector<Vec> shifted;
      shifted.reserve(local_vertices_.size());
      for (const auto& v : local_vertices_) shifted.push_back(sub(v, y));
      return add(y, min_norm_point(shifted));
    }
  }
}

AngleVector Polytope::closest_point(const AngleVector& x) const {
  if (empty()) throw InputError("closest_point on an empty polytope");
  if (x.size() != ambient_dim_) throw InputError("closest_point: dimension mismatch");
  if (span_dim_ == 0) return vertices_.front();
  return to_ambient(local_closest(to_local(x)));
}

double Polytope::distance(const AngleVector& x) const { return norm(sub(closest_point(x), x)); }

bool Polytope::contains(const AngleVector& x, double tol) const { return distance(x) <= tol; }

Polytope Polytope::translated(const AngleVector& t) const {
  std::vector<Vec> moved;
  moved.reserve(vertices_.size());
  for (const auto& v : vertices_) moved.push_back(add(v, t));
  return hull_of(moved);
}

}  // namespace torihull
