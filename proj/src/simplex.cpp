#include "graspeq/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <vector>

namespace graspeq::lp {

namespace {

constexpr double kRoundoffCost = 1e-9;
constexpr int kReinvertInterval = 25;
constexpr double kRedundantRow = 1e-9;
constexpr double kDependentRow = 1e-10;

// Tableau layout: rows 0..m-1 are constraints, the last row holds reduced
// costs; the last column is the right-hand side.
class Tableau {
 public:
  // Columns are A, then one artificial per row (the starting basis).
  Tableau(const Eigen::MatrixXd& A, const Eigen::VectorXd& b)
      : rows_(A.rows()), cols_(A.cols() + A.rows()), t_(Eigen::MatrixXd::Zero(A.rows() + 1, cols_ + 1)) {
    t_.topLeftCorner(rows_, A.cols()) = A;
    t_.block(0, A.cols(), rows_, rows_).setIdentity();
    t_.block(0, cols_, rows_, 1) = b;
    original_ = t_.topRows(rows_);
    for (Eigen::Index r = 0; r < rows_; ++r) basis_.push_back(A.cols() + r);
  }

  Eigen::Index rows() const { return rows_; }
  Eigen::Index cols() const { return cols_; }
  double& at(Eigen::Index r, Eigen::Index c) { return t_(r, c); }
  double rhs(Eigen::Index r) const { return t_(r, cols_); }
  double cost(Eigen::Index c) const { return t_(rows_, c); }
  double objective() const { return -t_(rows_, cols_); }
  std::vector<Eigen::Index>& basis() { return basis_; }

  void set_costs(const Eigen::VectorXd& c) {
    costs_ = c;
    t_.row(rows_).setZero();
    t_.row(rows_).head(c.size()) = c.transpose();
    for (Eigen::Index r = 0; r < rows_; ++r) {
      const Eigen::Index j = basis_[static_cast<std::size_t>(r)];
      const double cj = t_(rows_, j);
      if (cj != 0.0) t_.row(rows_) -= cj * t_.row(r);
    }
  }

  void pivot(Eigen::Index r, Eigen::Index c) {
    t_.row(r) /= t_(r, c);
    for (Eigen::Index i = 0; i <= rows_; ++i) {
      if (i == r) continue;
      const double f = t_(i, c);
      if (f != 0.0) t_.row(i) -= f * t_.row(r);
    }
    t_(r, c) = 1.0;
    basis_[static_cast<std::size_t>(r)] = c;
  }

  void drop_row(Eigen::Index r) {
    remove_row(t_, r);
    remove_row(original_, r);
    basis_.erase(basis_.begin() + r);
    --rows_;
  }

  // Rebuilds the tableau from the original rows and the current basis, which
  // discards the round-off accumulated by elimination. Returns false when the
  // basis has become numerically singular.
  bool reinvert() {
    if (rows_ == 0) return true;
    Eigen::MatrixXd B(rows_, rows_);
    for (Eigen::Index j = 0; j < rows_; ++j) B.col(j) = original_.col(basis_[static_cast<std::size_t>(j)]);
    const Eigen::FullPivLU<Eigen::MatrixXd> lu(B);
    if (!lu.isInvertible()) return false;
    t_.topRows(rows_) = lu.solve(original_);
    for (Eigen::Index j = 0; j < rows_; ++j) {
      t_.col(basis_[static_cast<std::size_t>(j)]).head(rows_).setZero();
      t_(j, basis_[static_cast<std::size_t>(j)]) = 1.0;
    }
    set_costs(costs_);
    return true;
  }

  enum class Step { Optimal, Unbounded, Singular, IterationCap };

  // Runs to optimality, then confirms on a freshly rebuilt tableau; repeats
  // while the rebuilt tableau still admits an improving pivot.
  Step solve_phase(Eigen::Index limit, const SimplexOptions& opts, int& iterations, bool bounded, bool careful) {
    if (!reinvert()) return Step::Singular;
    for (;;) {
      const int before = iterations;
      const Step step = run(limit, opts, iterations, bounded, careful ? 1 : kReinvertInterval);
      if (step != Step::Optimal || iterations == before) return step;
      if (!reinvert()) return Step::Singular;
    }
  }

 private:
  // Bland's rule over columns [0, limit). A column with no pivot row is a ray
  // only if its reduced cost is clearly negative; otherwise the cost is
  // roundoff and is cleared. Phase one is bounded, so there it is always
  // roundoff.
  Step run(Eigen::Index limit, const SimplexOptions& opts, int& iterations, bool bounded, int reinvert_every) {
    while (iterations < opts.max_iterations) {
      Eigen::Index enter = -1;
      for (Eigen::Index c = 0; c < limit; ++c) {
        if (t_(rows_, c) < -opts.cost_tolerance) {
          enter = c;
          break;
        }
      }
      if (enter < 0) return Step::Optimal;

      Eigen::Index leave = -1;
      double best = 0.0;
      for (Eigen::Index r = 0; r < rows_; ++r) {
        const double a = t_(r, enter);
        if (a <= opts.pivot_tolerance) continue;
        const double ratio = t_(r, cols_) / a;
        if (leave < 0 || ratio < best - 1e-14 ||
            (ratio <= best + 1e-14 && basis_[static_cast<std::size_t>(r)] < basis_[static_cast<std::size_t>(leave)])) {
          leave = r;
          best = ratio;
        }
      }
      if (leave < 0) {
        if (!bounded && t_(rows_, enter) < -kRoundoffCost) return Step::Unbounded;
        t_(rows_, enter) = 0.0;
        continue;
      }
      pivot(leave, enter);
      if (++iterations % reinvert_every == 0 && !reinvert()) return Step::Singular;
    }
    return Step::IterationCap;
  }

  static void remove_row(Eigen::MatrixXd& m, Eigen::Index r) {
    Eigen::MatrixXd next(m.rows() - 1, m.cols());
    next.topRows(r) = m.topRows(r);
    next.bottomRows(m.rows() - r - 1) = m.bottomRows(m.rows() - r - 1);
    m = std::move(next);
  }

  Eigen::Index rows_;
  Eigen::Index cols_;
  Eigen::MatrixXd t_;
  Eigen::MatrixXd original_;  ///< constraint rows [A | I | b] as first built
  Eigen::VectorXd costs_;
  std::vector<Eigen::Index> basis_;
};

}  // namespace

namespace {

// Removes rows of A z = b that are combinations of other rows. Returns false
// when a removed row's right-hand side contradicts the rows it depends on.
bool remove_dependent_rows(Eigen::MatrixXd& A, Eigen::VectorXd& b, double tolerance) {
  if (A.rows() == 0) return true;
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(A.transpose());
  qr.setThreshold(kDependentRow);
  const Eigen::Index rank = qr.rank();
  if (rank == A.rows()) return true;

  std::vector<Eigen::Index> kept;
  for (Eigen::Index k = 0; k < rank; ++k) kept.push_back(qr.colsPermutation().indices()(k));
  std::sort(kept.begin(), kept.end());
  Eigen::MatrixXd K(static_cast<Eigen::Index>(kept.size()), A.cols());
  Eigen::VectorXd kb(K.rows());
  for (Eigen::Index k = 0; k < K.rows(); ++k) {
    K.row(k) = A.row(kept[static_cast<std::size_t>(k)]);
    kb(k) = b(kept[static_cast<std::size_t>(k)]);
  }
  const Eigen::ColPivHouseholderQR<Eigen::MatrixXd> basis(K.transpose());
  for (Eigen::Index r = 0; r < A.rows(); ++r) {
    if (std::binary_search(kept.begin(), kept.end(), r)) continue;
    const Eigen::VectorXd coeff = basis.solve(Eigen::VectorXd(A.row(r).transpose()));
    if (std::abs(coeff.dot(kb) - b(r)) > tolerance) return false;
  }
  A = std::move(K);
  b = std::move(kb);
  return true;
}

// Returns nullopt when round-off drove the basis singular or infeasible; the
// caller then repeats in careful mode, which rebuilds after every pivot.
std::optional<StandardResult> solve_standard_once(const StandardForm& lp, const SimplexOptions& opts, bool careful) {
  using Step = Tableau::Step;
  const Eigen::Index n = lp.A.cols();
  StandardResult result;
  result.z = Eigen::VectorXd::Zero(n);

  Eigen::MatrixXd A = lp.A;
  Eigen::VectorXd b = lp.b;
  const double scale = std::max(1.0, b.size() > 0 ? b.cwiseAbs().maxCoeff() : 0.0);
  if (!remove_dependent_rows(A, b, opts.feasibility_tolerance * scale)) return result;
  const Eigen::Index rows = A.rows();
  for (Eigen::Index r = 0; r < rows; ++r) {
    if (b(r) < 0.0) {
      A.row(r) *= -1.0;
      b(r) *= -1.0;
    }
  }

  Tableau tab(A, b);

  // Phase one: minimize the sum of artificials.
  Eigen::VectorXd phase_one = Eigen::VectorXd::Zero(n + rows);
  phase_one.tail(rows).setOnes();
  tab.set_costs(phase_one);
  int iterations = 0;
  const Step first = tab.solve_phase(n + rows, opts, iterations, true, careful);
  result.iterations = iterations;
  if (first == Step::Singular) return std::nullopt;
  if (first != Step::Optimal || tab.objective() > opts.feasibility_tolerance * scale) return result;

  // Drive remaining artificials out of the basis on their largest structural
  // entry; a row without one is redundant and removed.
  std::vector<Eigen::Index> kept_rows;
  for (Eigen::Index r = 0; r < rows; ++r) kept_rows.push_back(r);
  for (Eigen::Index r = 0; r < tab.rows();) {
    if (tab.basis()[static_cast<std::size_t>(r)] < n) {
      ++r;
      continue;
    }
    Eigen::Index col = -1;
    double largest = kRedundantRow;
    for (Eigen::Index c = 0; c < n; ++c) {
      if (std::abs(tab.at(r, c)) > largest) {
        col = c;
        largest = std::abs(tab.at(r, c));
      }
    }
    if (col >= 0) {
      tab.pivot(r, col);
      ++r;
    } else {
      tab.drop_row(r);
      kept_rows.erase(kept_rows.begin() + r);
    }
  }

  // Phase two over structural columns only.
  Eigen::VectorXd phase_two = Eigen::VectorXd::Zero(n + rows);
  phase_two.head(n) = lp.c;
  tab.set_costs(phase_two);
  const Step second = tab.solve_phase(n, opts, iterations, false, careful);
  result.iterations = iterations;
  if (second == Step::Singular) return std::nullopt;
  if (second != Step::Optimal) {
    result.status = Status::Unbounded;
    return result;
  }

  // Recompute the basic solution from the original rows.
  const Eigen::Index k = tab.rows();
  if (k > 0) {
    Eigen::MatrixXd B(k, k);
    Eigen::VectorXd rhs(k);
    for (Eigen::Index r = 0; r < k; ++r) {
      rhs(r) = b(kept_rows[static_cast<std::size_t>(r)]);
      for (Eigen::Index j = 0; j < k; ++j) {
        B(r, j) = A(kept_rows[static_cast<std::size_t>(r)], tab.basis()[static_cast<std::size_t>(j)]);
      }
    }
    const Eigen::VectorXd zb = B.fullPivLu().solve(rhs);
    if (!careful && zb.size() > 0 && zb.minCoeff() < -opts.feasibility_tolerance * scale) return std::nullopt;
    for (Eigen::Index j = 0; j < k; ++j) {
      result.z(tab.basis()[static_cast<std::size_t>(j)]) = std::max(0.0, zb(j));
    }
  }
  result.objective = lp.c.dot(result.z);
  result.status = Status::Optimal;
  return result;
}

}  // namespace

StandardResult solve_standard(const StandardForm& lp, const SimplexOptions& opts) {
  if (auto fast = solve_standard_once(lp, opts, false)) return *fast;
  if (auto careful = solve_standard_once(lp, opts, true)) return *careful;
  return StandardResult{};
}

Problem::Problem(Eigen::Index n)
    : eq(0, n),
      eq_rhs(0),
      ge(0, n),
      ge_rhs(0),
      lower(Eigen::VectorXd::Constant(n, -kInf)),
      upper(Eigen::VectorXd::Constant(n, kInf)),
      objective(Eigen::VectorXd::Zero(n)) {}

void Problem::add_equality(const Eigen::RowVectorXd& row, double rhs) {
  eq.conservativeResize(eq.rows() + 1, variables());
  eq.row(eq.rows() - 1) = row;
  eq_rhs.conservativeResize(eq_rhs.size() + 1);
  eq_rhs(eq_rhs.size() - 1) = rhs;
}

void Problem::add_inequality(const Eigen::RowVectorXd& row, double rhs) {
  ge.conservativeResize(ge.rows() + 1, variables());
  ge.row(ge.rows() - 1) = row;
  ge_rhs.conservativeResize(ge_rhs.size() + 1);
  ge_rhs(ge_rhs.size() - 1) = rhs;
}

Solution maximize(const Problem& p, const SimplexOptions& opts) {
  const Eigen::Index n = p.variables();

  // x = offset + T z with z >= 0. Variables whose range straddles zero are
  // split into positive and negative parts; the rest are shifted.
  struct Part {
    Eigen::Index var;
    double sign;
    double cap;  // upper bound on the part, may be infinite
  };
  std::vector<Part> parts;
  Eigen::VectorXd offset = Eigen::VectorXd::Zero(n);
  for (Eigen::Index k = 0; k < n; ++k) {
    const double lo = p.lower(k);
    const double hi = p.upper(k);
    if (lo <= 0.0 && hi >= 0.0) {
      parts.push_back({k, 1.0, hi});
      parts.push_back({k, -1.0, -lo});
    } else if (std::isfinite(lo)) {
      offset(k) = lo;
      parts.push_back({k, 1.0, hi - lo});
    } else {
      offset(k) = hi;
      parts.push_back({k, -1.0, kInf});
    }
  }
  const auto nz = static_cast<Eigen::Index>(parts.size());
  Eigen::MatrixXd T = Eigen::MatrixXd::Zero(n, nz);
  for (Eigen::Index j = 0; j < nz; ++j) T(parts[j].var, j) = parts[j].sign;

  Eigen::Index capped = 0;
  for (const auto& part : parts) capped += std::isfinite(part.cap) ? 1 : 0;

  const Eigen::Index n_eq = p.eq.rows();
  const Eigen::Index n_ge = p.ge.rows();
  const Eigen::Index rows = n_eq + n_ge + capped;
  const Eigen::Index cols = nz + n_ge + capped;

  StandardForm sf;
  sf.A = Eigen::MatrixXd::Zero(rows, cols);
  sf.b = Eigen::VectorXd::Zero(rows);
  sf.c = Eigen::VectorXd::Zero(cols);

  if (n_eq > 0) {
    sf.A.topLeftCorner(n_eq, nz) = p.eq * T;
    sf.b.head(n_eq) = p.eq_rhs - p.eq * offset;
  }
  if (n_ge > 0) {
    sf.A.block(n_eq, 0, n_ge, nz) = p.ge * T;
    sf.A.block(n_eq, nz, n_ge, n_ge) = -Eigen::MatrixXd::Identity(n_ge, n_ge);
    sf.b.segment(n_eq, n_ge) = p.ge_rhs - p.ge * offset;
  }
  Eigen::Index row = n_eq + n_ge;
  Eigen::Index slack = nz + n_ge;
  for (Eigen::Index j = 0; j < nz; ++j) {
    if (!std::isfinite(parts[j].cap)) continue;
    sf.A(row, j) = 1.0;
    sf.A(row, slack) = 1.0;
    sf.b(row) = parts[j].cap;
    ++row;
    ++slack;
  }
  sf.c.head(nz) = -(T.transpose() * p.objective);

  const StandardResult r = solve_standard(sf, opts);
  Solution out;
  out.status = r.status;
  if (r.status != Status::Optimal) return out;
  out.x = offset + T * r.z.head(nz);
  out.objective = p.objective.dot(out.x);
  return out;
}

}  // namespace graspeq::lp
