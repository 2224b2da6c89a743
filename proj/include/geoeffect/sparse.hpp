#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <string_view>
#include <vector>

namespace geoeffect {

/// Row-compressed sparse matrix. Explicit zeros are kept so that the stored
/// pattern can be made structurally symmetric.
struct CsrMatrix {
  int rows = 0;
  std::vector<int> row_ptr{0};
  std::vector<int> col;
  std::vector<double> val;

  /// Stored value at (i, j), 0 when absent.
  double coeff(int i, int j) const;
  bool has_entry(int i, int j) const;
  void multiply(std::span<const double> x, std::span<double> y) const;
  bool structurally_symmetric() const;
  std::size_t nonzeros() const { return col.size(); }
};

struct Triplet {
  int row;
  int col;
  double value;
};

/// Sums duplicate entries; with `symmetrize_pattern` every (i, j) also
/// gets a (possibly zero) (j, i) entry.
CsrMatrix csr_from_triplets(int n, std::vector<Triplet> entries, bool symmetrize_pattern);

enum class SolveMethod { Direct, Krylov };
std::string_view to_string(SolveMethod m);

struct SolverOptions {
  double tol = 1e-12;
  /// Systems with fewer unknowns than this use the sparse LU factorization.
  std::size_t direct_limit = 200000;
  int max_iterations = 20000;
};

struct SolveReport {
  int iterations = 0;
  double relative_residual = 0.0;
  SolveMethod method = SolveMethod::Direct;
  double wall_time = 0.0;
  /// False when the residual contract was not met (diverged or stagnated);
  /// the returned iterate is then the best one found.
  bool converged = true;
  /// Set when there was nothing to solve and the data was passed through.
  bool degenerate = false;
};

/// ||A x - b||_2 / ||b||_2, or ||A x||_2 when b = 0.
double relative_residual(const CsrMatrix& a, std::span<const double> x, std::span<const double> b);

/// Factorization (direct) or preconditioner (Krylov) of one matrix, reused
/// across right-hand sides.
class SparseSolver {
public:
  SparseSolver(const CsrMatrix& a, const SolverOptions& opts);
  ~SparseSolver();
  SparseSolver(SparseSolver&&) noexcept;
  SparseSolver& operator=(SparseSolver&&) noexcept;

  SolveMethod method() const;
  SolveReport solve(std::span<const double> b, std::vector<double>& x) const;

private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

/// Solves A x = b to relative residual `opts.tol`. Deterministic for a fixed input.
SolveReport solve_sparse(const CsrMatrix& a, std::span<const double> b, std::vector<double>& x,
                         const SolverOptions& opts);

}  // namespace geoeffect
