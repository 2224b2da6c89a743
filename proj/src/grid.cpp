#include "geoeffect/grid.hpp"

#include <cmath>
#include <string>

#include "geoeffect/error.hpp"

namespace geoeffect {

char class_letter(NodeClass c) {
  switch (c) {
    case NodeClass::Interior: return 'I';
    case NodeClass::Boundary: return 'B';
    case NodeClass::Exterior: return 'E';
  }
  return '?';
}

Grid2D::Grid2D(Vec2 origin, double h, int nx, int ny, std::vector<NodeClass> classes)
    : origin_(origin), h_(h), nx_(nx), ny_(ny), classes_(std::move(classes)) {
  if (!(h > 0.0) || nx < 1 || ny < 1 || classes_.size() != static_cast<std::size_t>(nx) * ny) {
    throw Error(ErrorCode::InvalidArgument, "inconsistent grid dimensions");
  }
  for (NodeClass c : classes_) {
    if (c == NodeClass::Interior) ++n_interior_;
    if (c == NodeClass::Boundary) ++n_boundary_;
  }
}

std::vector<NodeClass> classify_nodes(const Domain& domain, Vec2 origin, double h, int nx, int ny) {
  const std::size_t n = static_cast<std::size_t>(nx) * ny;
  std::vector<std::uint8_t> inside(n);
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      inside[static_cast<std::size_t>(j) * nx + i] =
          domain.contains({origin.x + i * h, origin.y + j * h}) ? 1 : 0;
    }
  }
  auto in = [&](int i, int j) {
    return i >= 0 && j >= 0 && i < nx && j < ny && inside[static_cast<std::size_t>(j) * nx + i];
  };

  std::vector<NodeClass> cls(n, NodeClass::Exterior);
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      if (!in(i, j)) continue;
      const bool all = in(i + 1, j) && in(i - 1, j) && in(i, j + 1) && in(i, j - 1);
      cls[static_cast<std::size_t>(j) * nx + i] = all ? NodeClass::Interior : NodeClass::Boundary;
    }
  }

  // Keep the largest edge-connected active component (first found wins ties).
  std::vector<int> label(n, -1);
  std::vector<std::size_t> stack;
  int best = -1;
  std::size_t best_size = 0;
  int next = 0;
  for (std::size_t s = 0; s < n; ++s) {
    if (cls[s] == NodeClass::Exterior || label[s] >= 0) continue;
    std::size_t size = 0;
    stack.push_back(s);
    label[s] = next;
    while (!stack.empty()) {
      const std::size_t k = stack.back();
      stack.pop_back();
      ++size;
      const int i = static_cast<int>(k % nx);
      const int j = static_cast<int>(k / nx);
      const int di[4] = {1, -1, 0, 0};
      const int dj[4] = {0, 0, 1, -1};
      for (int d = 0; d < 4; ++d) {
        const int ii = i + di[d];
        const int jj = j + dj[d];
        if (ii < 0 || jj < 0 || ii >= nx || jj >= ny) continue;
        const std::size_t q = static_cast<std::size_t>(jj) * nx + ii;
        if (cls[q] != NodeClass::Exterior && label[q] < 0) {
          label[q] = next;
          stack.push_back(q);
        }
      }
    }
    if (size > best_size) {
      best_size = size;
      best = next;
    }
    ++next;
  }
  for (std::size_t k = 0; k < n; ++k) {
    if (cls[k] != NodeClass::Exterior && label[k] != best) cls[k] = NodeClass::Exterior;
  }
  return cls;
}

GridPtr build_grid(const Domain& domain, double h, const GridOptions& opts) {
  if (!(h > 0.0)) throw Error(ErrorCode::InvalidArgument, "grid spacing must be positive");
  const Box box = domain.bounding_box();
  const double wx = box.hi.x - box.lo.x;
  const double wy = box.hi.y - box.lo.y;
  if (std::floor(wx / h) + 1 < opts.min_nodes_per_side || std::floor(wy / h) + 1 < opts.min_nodes_per_side) {
    throw Error(ErrorCode::SpacingTooCoarse,
                "bounding box spans fewer than " + std::to_string(opts.min_nodes_per_side) +
                    " nodes per side at h = " + std::to_string(h));
  }
  const Vec2 origin{box.lo.x - 2.0 * h, box.lo.y - 2.0 * h};
  const int nx = static_cast<int>(std::ceil((wx + 4.0 * h) / h - 1e-9)) + 1;
  const int ny = static_cast<int>(std::ceil((wy + 4.0 * h) / h - 1e-9)) + 1;
  auto grid = std::make_shared<const Grid2D>(origin, h, nx, ny, classify_nodes(domain, origin, h, nx, ny));
  if (grid->interior_count() < opts.min_interior) {
    throw Error(ErrorCode::SpacingTooCoarse,
                "only " + std::to_string(grid->interior_count()) + " interior nodes at h = " + std::to_string(h));
  }
  return grid;
}

}  // namespace geoeffect
