#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "geoeffect/grid.hpp"

namespace geoeffect {

enum class ScalarRole { Amplitude, Density, QuantumPotential, PoissonPotential, Source };
enum class VectorRole { FlowVelocity, CurrentDensity, QuantumForce, ExternalForce };

/// Node-sampled scalar. Exterior nodes hold 0 and are never read.
struct ScalarField {
  GridPtr grid;
  std::vector<double> values;
  ScalarRole role = ScalarRole::Amplitude;

  static ScalarField zeros(GridPtr grid, ScalarRole role);
  double operator[](std::size_t k) const { return values[k]; }
  double& operator[](std::size_t k) { return values[k]; }
};

/// Node-sampled contravariant 2-vector. `defined` marks nodes where the value
/// is meaningful; elsewhere the components are 0.
struct VectorField {
  GridPtr grid;
  std::vector<double> x, y;
  std::vector<std::uint8_t> defined;
  VectorRole role = VectorRole::FlowVelocity;

  static VectorField zeros(GridPtr grid, VectorRole role);
  double norm_at(std::size_t k) const;
  /// Largest Euclidean norm over defined nodes (0 if none).
  double max_norm() const;
  double mean_norm() const;
  std::size_t defined_count() const;
};

/// Shortest decimal string that reads back to the same double.
std::string format_number(double v);

/// `x,y,class,value`, row-major.
void write_field_csv(std::ostream& out, const ScalarField& f);
/// `x,y,class,ux,uy`, row-major.
void write_vector_csv(std::ostream& out, const VectorField& f);
/// Reads a field CSV back onto `grid`; throws MalformedInput with the line number.
ScalarField read_field_csv(std::istream& in, const GridPtr& grid, ScalarRole role);

}  // namespace geoeffect
