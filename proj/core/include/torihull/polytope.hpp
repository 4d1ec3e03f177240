#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "torihull/torus.hpp"

namespace torihull {

/// normal . x <= offset, with unit normal.
struct Halfspace {
  AngleVector normal;
  double offset = 0.0;
};

/// Convex hull of finitely many points of R^d.
///
/// Degenerate inputs keep their lower-dimensional hull together with an
/// orthonormal frame of the affine span. Vertices are a subset of the input
/// points, returned unmodified in canonical order: counter-clockwise from the
/// lexicographically smallest vertex for full-dimensional planar hulls,
/// lexicographic otherwise.
class Polytope {
 public:
  Polytope() = default;

  static Polytope hull_of(const std::vector<AngleVector>& points);

  bool empty() const noexcept { return vertices_.empty(); }
  std::size_t ambient_dim() const noexcept { return ambient_dim_; }
  std::size_t span_dim() const noexcept { return span_dim_; }
  const std::vector<AngleVector>& vertices() const noexcept { return vertices_; }

  /// Facet inequalities; populated only when the hull is full-dimensional
  /// and the ambient dimension is at most 3.
  const std::vector<Halfspace>& facets() const noexcept { return facets_; }

  const AngleVector& span_origin() const noexcept { return origin_; }
  const std::vector<AngleVector>& span_basis() const noexcept { return basis_; }

  const AngleVector& lower() const noexcept { return lower_; }
  const AngleVector& upper() const noexcept { return upper_; }

  AngleVector closest_point(const AngleVector& x) const;
  double distance(const AngleVector& x) const;
  bool contains(const AngleVector& x, double tol = 1e-9) const;

  Polytope translated(const AngleVector& t) const;

 private:
  AngleVector to_local(const AngleVector& x) const;
  AngleVector to_ambient(const AngleVector& y) const;
  AngleVector local_closest(const AngleVector& y) const;

  std::size_t ambient_dim_ = 0;
  std::size_t span_dim_ = 0;
  bool identity_frame_ = false;
  AngleVector origin_;
  std::vector<AngleVector> basis_;
  std::vector<AngleVector> vertices_;
  std::vector<AngleVector> local_vertices_;
  std::vector<std::array<std::size_t, 3>> triangles_;
  std::vector<Halfspace> local_facets_;
  std::vector<Halfspace> facets_;
  AngleVector lower_, upper_;
};

/// Point of conv(points) nearest to the origin (Wolfe's active-set method).
AngleVector min_norm_point(const std::vector<AngleVector>& points);

}  // namespace torihull
