#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <vector>

#include "geoeffect/geometry.hpp"

namespace geoeffect {

enum class NodeClass : std::uint8_t { Interior, Boundary, Exterior };

char class_letter(NodeClass c);

/// Uniform node-centred grid with embedded-boundary node classification.
/// Storage is row-major: index = j * nx + i, with j (y) the outer loop.
class Grid2D {
public:
  Grid2D(Vec2 origin, double h, int nx, int ny, std::vector<NodeClass> classes);

  Vec2 origin() const { return origin_; }
  double spacing() const { return h_; }
  int nx() const { return nx_; }
  int ny() const { return ny_; }
  std::size_t size() const { return classes_.size(); }

  std::size_t index(int i, int j) const { return static_cast<std::size_t>(j) * nx_ + i; }
  int i_of(std::size_t k) const { return static_cast<int>(k % nx_); }
  int j_of(std::size_t k) const { return static_cast<int>(k / nx_); }
  bool in_range(int i, int j) const { return i >= 0 && j >= 0 && i < nx_ && j < ny_; }

  Vec2 coord(int i, int j) const { return {origin_.x + i * h_, origin_.y + j * h_}; }
  Vec2 coord(std::size_t k) const { return coord(i_of(k), j_of(k)); }

  NodeClass cls(std::size_t k) const { return classes_[k]; }
  NodeClass cls(int i, int j) const {
    return in_range(i, j) ? classes_[index(i, j)] : NodeClass::Exterior;
  }
  bool active(int i, int j) const { return cls(i, j) != NodeClass::Exterior; }
  bool active(std::size_t k) const { return classes_[k] != NodeClass::Exterior; }
  const std::vector<NodeClass>& classes() const { return classes_; }

  std::size_t interior_count() const { return n_interior_; }
  std::size_t boundary_count() const { return n_boundary_; }

private:
  Vec2 origin_;
  double h_;
  int nx_;
  int ny_;
  std::vector<NodeClass> classes_;
  std::size_t n_interior_ = 0;
  std::size_t n_boundary_ = 0;
};

using GridPtr = std::shared_ptr<const Grid2D>;

struct GridOptions {
  int min_nodes_per_side = 8;
  std::size_t min_interior = 8;
};

/// Classifies the nx-by-ny lattice at `origin` + (i, j) h against `domain`:
/// inside with all four axis neighbours inside is Interior, inside with at
/// least one neighbour outside is Boundary, anything else Exterior. Only the
/// largest edge-connected active component is kept.
std::vector<NodeClass> classify_nodes(const Domain& domain, Vec2 origin, double h, int nx, int ny);

/// Grid covering the domain's bounding box padded by 2h.
GridPtr build_grid(const Domain& domain, double h, const GridOptions& opts = {});

}  // namespace geoeffect
