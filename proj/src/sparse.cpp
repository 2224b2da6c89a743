#include "geoeffect/sparse.hpp"

#include <Eigen/IterativeLinearSolvers>
#include <Eigen/SparseCore>
#include <Eigen/SparseLU>
#include <algorithm>
#include <chrono>
#include <cmath>

#include "geoeffect/error.hpp"

namespace geoeffect {

std::string_view to_string(SolveMethod m) { return m == SolveMethod::Direct ? "Direct" : "Krylov"; }

double CsrMatrix::coeff(int i, int j) const {
  const auto b = col.begin() + row_ptr[i];
  const auto e = col.begin() + row_ptr[i + 1];
  const auto it = std::lower_bound(b, e, j);
  return (it != e && *it == j) ? val[it - col.begin()] : 0.0;
}

bool CsrMatrix::has_entry(int i, int j) const {
  const auto b = col.begin() + row_ptr[i];
  const auto e = col.begin() + row_ptr[i + 1];
  return std::binary_search(b, e, j);
}

void CsrMatrix::multiply(std::span<const double> x, std::span<double> y) const {
  for (int i = 0; i < rows; ++i) {
    double s = 0.0;
    for (int p = row_ptr[i]; p < row_ptr[i + 1]; ++p) s += val[p] * x[col[p]];
    y[i] = s;
  }
}

bool CsrMatrix::structurally_symmetric() const {
  for (int i = 0; i < rows; ++i) {
    for (int p = row_ptr[i]; p < row_ptr[i + 1]; ++p) {
      if (!has_entry(col[p], i)) return false;
    }
  }
  return true;
}

CsrMatrix csr_from_triplets(int n, std::vector<Triplet> t, bool symmetrize_pattern) {
  if (symmetrize_pattern) {
    const std::size_t m = t.size();
    t.reserve(2 * m);
    for (std::size_t k = 0; k < m; ++k) {
      if (t[k].row != t[k].col) t.push_back({t[k].col, t[k].row, 0.0});
    }
  }
  std::stable_sort(t.begin(), t.end(), [](const Triplet& a, const Triplet& b) {
    return a.row != b.row ? a.row < b.row : a.col < b.col;
  });
  CsrMatrix a;
  a.rows = n;
  a.row_ptr.assign(n + 1, 0);
  for (std::size_t k = 0; k < t.size();) {
    std::size_t q = k;
    double s = 0.0;
    while (q < t.size() && t[q].row == t[k].row && t[q].col == t[k].col) s += t[q++].value;
    a.col.push_back(t[k].col);
    a.val.push_back(s);
    ++a.row_ptr[t[k].row + 1];
    k = q;
  }
  for (int i = 0; i < n; ++i) a.row_ptr[i + 1] += a.row_ptr[i];
  return a;
}

double relative_residual(const CsrMatrix& a, std::span<const double> x, std::span<const double> b) {
  std::vector<double> ax(a.rows);
  a.multiply(x, ax);
  double r2 = 0.0;
  double b2 = 0.0;
  for (int i = 0; i < a.rows; ++i) {
    const double r = ax[i] - b[i];
    r2 += r * r;
    b2 += b[i] * b[i];
  }
  return b2 > 0.0 ? std::sqrt(r2 / b2) : std::sqrt(r2);
}

struct SparseSolver::Impl {
  using Mat = Eigen::SparseMatrix<double>;
  CsrMatrix owned;
  SolverOptions opts;
  SolveMethod method = SolveMethod::Direct;
  Mat m;
  Eigen::SparseLU<Mat, Eigen::COLAMDOrdering<int>> lu;
  Eigen::BiCGSTAB<Mat, Eigen::IncompleteLUT<double>> krylov;
};

SparseSolver::SparseSolver(const CsrMatrix& a, const SolverOptions& opts) : impl_(std::make_unique<Impl>()) {
  Impl& s = *impl_;
  s.owned = a;
  s.opts = opts;
  std::vector<Eigen::Triplet<double>> t;
  t.reserve(a.nonzeros());
  for (int i = 0; i < a.rows; ++i) {
    for (int p = a.row_ptr[i]; p < a.row_ptr[i + 1]; ++p) {
      if (a.val[p] != 0.0) t.emplace_back(i, a.col[p], a.val[p]);
    }
  }
  s.m.resize(a.rows, a.rows);
  s.m.setFromTriplets(t.begin(), t.end());
  s.m.makeCompressed();
  if (a.rows == 0) return;
  if (static_cast<std::size_t>(a.rows) < opts.direct_limit) {
    s.method = SolveMethod::Direct;
    s.lu.analyzePattern(s.m);
    s.lu.factorize(s.m);
    if (s.lu.info() != Eigen::Success) {
      throw Error(ErrorCode::InvalidArgument, "sparse LU factorization failed: " + s.lu.lastErrorMessage());
    }
  } else {
    s.method = SolveMethod::Krylov;
    s.krylov.preconditioner().setDroptol(1e-5);
    s.krylov.preconditioner().setFillfactor(20);
    s.krylov.setTolerance(opts.tol);
    s.krylov.setMaxIterations(opts.max_iterations);
    s.krylov.compute(s.m);
  }
}

SparseSolver::~SparseSolver() = default;
SparseSolver::SparseSolver(SparseSolver&&) noexcept = default;
SparseSolver& SparseSolver::operator=(SparseSolver&&) noexcept = default;

SolveMethod SparseSolver::method() const { return impl_->method; }

SolveReport SparseSolver::solve(std::span<const double> b, std::vector<double>& x) const {
  const auto start = std::chrono::steady_clock::now();
  Impl& s = *impl_;
  SolveReport rep;
  rep.method = s.method;
  const int n = s.owned.rows;
  x.assign(n, 0.0);
  if (n == 0) {
    rep.degenerate = true;
    return rep;
  }
  const Eigen::Map<const Eigen::VectorXd> rhs(b.data(), n);
  Eigen::VectorXd sol;
  if (s.method == SolveMethod::Direct) {
    sol = s.lu.solve(rhs);
    rep.iterations = 1;
    // Iterative refinement until the residual contract holds.
    for (int pass = 0; pass < 4; ++pass) {
      const std::vector<double> xs(sol.data(), sol.data() + n);
      if (relative_residual(s.owned, xs, b) <= s.opts.tol) break;
      const Eigen::VectorXd r = rhs - s.m * sol;
      sol += s.lu.solve(r);
      ++rep.iterations;
    }
  } else {
    sol = s.krylov.solve(rhs);
    rep.iterations = static_cast<int>(s.krylov.iterations());
    // One warm restart if BiCGSTAB broke down before reaching the tolerance.
    if (s.krylov.info() != Eigen::Success) {
      sol = s.krylov.solveWithGuess(rhs, sol);
      rep.iterations += static_cast<int>(s.krylov.iterations());
    }
  }
  x.assign(sol.data(), sol.data() + n);
  rep.relative_residual = relative_residual(s.owned, x, b);
  rep.converged = std::isfinite(rep.relative_residual) && rep.relative_residual <= s.opts.tol;
  rep.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

SolveReport solve_sparse(const CsrMatrix& a, std::span<const double> b, std::vector<double>& x,
                         const SolverOptions& opts) {
  const auto start = std::chrono::steady_clock::now();
  const SparseSolver solver(a, opts);
  SolveReport rep = solver.solve(b, x);
  rep.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

}  // namespace geoeffect
