#include "geoeffect/fields.hpp"

#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

#include "geoeffect/error.hpp"

namespace geoeffect {

ScalarField ScalarField::zeros(GridPtr grid, ScalarRole role) {
  ScalarField f;
  f.values.assign(grid->size(), 0.0);
  f.grid = std::move(grid);
  f.role = role;
  return f;
}

VectorField VectorField::zeros(GridPtr grid, VectorRole role) {
  VectorField f;
  f.x.assign(grid->size(), 0.0);
  f.y.assign(grid->size(), 0.0);
  f.defined.assign(grid->size(), 0);
  f.grid = std::move(grid);
  f.role = role;
  return f;
}

double VectorField::norm_at(std::size_t k) const { return std::hypot(x[k], y[k]); }

double VectorField::max_norm() const {
  double m = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    if (defined[k]) m = std::max(m, norm_at(k));
  }
  return m;
}

double VectorField::mean_norm() const {
  double s = 0.0;
  std::size_t n = 0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    if (defined[k]) {
      s += norm_at(k);
      ++n;
    }
  }
  return n ? s / static_cast<double>(n) : 0.0;
}

std::size_t VectorField::defined_count() const {
  std::size_t n = 0;
  for (auto d : defined) n += d ? 1 : 0;
  return n;
}

std::string format_number(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

void write_field_csv(std::ostream& out, const ScalarField& f) {
  const Grid2D& g = *f.grid;
  out << "x,y,class,value\n";
  for (std::size_t k = 0; k < g.size(); ++k) {
    const Vec2 p = g.coord(k);
    out << format_number(p.x) << ',' << format_number(p.y) << ',' << class_letter(g.cls(k)) << ','
        << format_number(g.active(k) ? f.values[k] : 0.0) << '\n';
  }
}

void write_vector_csv(std::ostream& out, const VectorField& f) {
  const Grid2D& g = *f.grid;
  out << "x,y,class,ux,uy\n";
  for (std::size_t k = 0; k < g.size(); ++k) {
    const Vec2 p = g.coord(k);
    const bool on = g.active(k) && f.defined[k];
    out << format_number(p.x) << ',' << format_number(p.y) << ',' << class_letter(g.cls(k)) << ','
        << format_number(on ? f.x[k] : 0.0) << ',' << format_number(on ? f.y[k] : 0.0) << '\n';
  }
}

ScalarField read_field_csv(std::istream& in, const GridPtr& grid, ScalarRole role) {
  std::string line;
  if (!std::getline(in, line) || line != "x,y,class,value") {
    throw Error(ErrorCode::MalformedInput, "field CSV line 1: header must be x,y,class,value");
  }
  ScalarField f = ScalarField::zeros(grid, role);
  std::size_t k = 0;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    const auto bad = [&] { return Error(ErrorCode::MalformedInput, "field CSV line " + std::to_string(lineno)); };
    if (k >= grid->size()) throw bad();
    const auto last = line.rfind(',');
    if (last == std::string::npos) throw bad();
    const char* first = line.data() + last + 1;
    const char* end = line.data() + line.size();
    double v = 0.0;
    auto res = std::from_chars(first, end, v);
    if (res.ec != std::errc{} || res.ptr != end) throw bad();
    f.values[k++] = v;
  }
  if (k != grid->size()) throw Error(ErrorCode::MalformedInput, "field CSV row count does not match the grid");
  return f;
}

}  // namespace geoeffect
