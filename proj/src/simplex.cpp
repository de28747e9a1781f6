#include "gdof/simplex.hpp"

#include <cassert>
#include <stdexcept>

namespace gdof {

namespace {

// Dense tableau over exact rationals. Constraints are stored as equalities
// T x' = rhs with x' >= 0 after free variables are split into positive and
// negative parts and slacks are added. The entering rule is largest reduced
// cost with lowest-index tie-break, degrading to Bland's rule after a stall
// so termination is guaranteed.
struct Tableau {
  int rows = 0, cols = 0;
  std::vector<std::vector<Rational>> t;
  std::vector<Rational> rhs;
  std::vector<int> basis;
  std::vector<Rational> obj;  // reduced costs
  Rational objval = 0;        // current objective value

  void pivot(int pr, int pc) {
    Rational inv = 1 / t[pr][pc];
    for (auto& v : t[pr]) v *= inv;
    rhs[pr] *= inv;
    for (int r = 0; r < rows; ++r) {
      if (r == pr || t[r][pc] == 0) continue;
      Rational f = t[r][pc];
      for (int c = 0; c < cols; ++c) t[r][c] -= f * t[pr][c];
      rhs[r] -= f * rhs[pr];
    }
    if (obj[pc] != 0) {
      Rational f = obj[pc];
      for (int c = 0; c < cols; ++c) obj[c] -= f * t[pr][c];
      objval += f * rhs[pr];
    }
    basis[pr] = pc;
  }

  // Expresses the objective row over the current basis.
  void reduce_obj() {
    for (int r = 0; r < rows; ++r) {
      int bc = basis[r];
      if (obj[bc] == 0) continue;
      Rational f = obj[bc];
      for (int c = 0; c < cols; ++c) obj[c] -= f * t[r][c];
      objval += f * rhs[r];
    }
  }

  // Maximizes; returns false when unbounded.
  bool run() {
    long iter = 0;
    const long stall = 64 + 8L * (rows + cols);
    while (true) {
      ++iter;
      int pc = -1;
      if (iter > stall) {
        for (int c = 0; c < cols; ++c)
          if (obj[c] > 0) { pc = c; break; }
      } else {
        for (int c = 0; c < cols; ++c)
          if (obj[c] > 0 && (pc < 0 || obj[c] > obj[pc])) pc = c;
      }
      if (pc < 0) return true;
      int pr = -1;
      for (int r = 0; r < rows; ++r) {
        if (t[r][pc] <= 0) continue;
        if (pr < 0) { pr = r; continue; }
        Rational cur = rhs[pr] / t[pr][pc];
        Rational cand = rhs[r] / t[r][pc];
        if (cand < cur || (cand == cur && basis[r] < basis[pr])) pr = r;
      }
      if (pr < 0) return false;
      pivot(pr, pc);
    }
  }
};

}  // namespace

LpResult lp_maximize(const std::vector<std::vector<Rational>>& A,
                     const std::vector<Rational>& b,
                     const std::vector<Rational>& c) {
  const int m = static_cast<int>(A.size());
  const int n = static_cast<int>(c.size());
  assert(static_cast<int>(b.size()) == m);

  // Columns: u(n) | v(n) | slack(m) | artificial(one per negated row).
  Tableau tb;
  tb.rows = m;
  std::vector<int> art_of_row(m, -1);
  int ncols = 2 * n + m;
  for (int r = 0; r < m; ++r)
    if (b[r] < 0) art_of_row[r] = ncols++;
  const int first_art = 2 * n + m;
  tb.cols = ncols;
  tb.t.assign(m, std::vector<Rational>(ncols, Rational(0)));
  tb.rhs.assign(m, Rational(0));
  tb.basis.assign(m, -1);
  for (int r = 0; r < m; ++r) {
    assert(static_cast<int>(A[r].size()) == n);
    bool neg = b[r] < 0;
    for (int j = 0; j < n; ++j) {
      Rational a = neg ? Rational(-A[r][j]) : A[r][j];
      tb.t[r][j] = a;
      tb.t[r][n + j] = -a;
    }
    tb.t[r][2 * n + r] = neg ? Rational(-1) : Rational(1);
    tb.rhs[r] = neg ? Rational(-b[r]) : b[r];
    if (neg) {
      tb.t[r][art_of_row[r]] = 1;
      tb.basis[r] = art_of_row[r];
    } else {
      tb.basis[r] = 2 * n + r;
    }
  }

  if (ncols > first_art) {
    // Phase 1: maximize -(sum of artificials).
    tb.obj.assign(ncols, Rational(0));
    tb.objval = 0;
    for (int cidx = first_art; cidx < ncols; ++cidx) tb.obj[cidx] = -1;
    tb.reduce_obj();
    bool ok = tb.run();
    assert(ok);
    (void)ok;
    if (tb.objval != 0) return {LpStatus::Infeasible, Rational(0), {}};
    // Drive artificials out of the basis; rows that cannot be pivoted are
    // redundant 0 = 0 rows and are dropped together with the columns.
    for (int r = 0; r < tb.rows;) {
      if (tb.basis[r] < first_art) { ++r; continue; }
      int pc = -1;
      for (int cidx = 0; cidx < first_art; ++cidx)
        if (tb.t[r][cidx] != 0) { pc = cidx; break; }
      if (pc >= 0) {
        tb.pivot(r, pc);
        ++r;
      } else {
        tb.t.erase(tb.t.begin() + r);
        tb.rhs.erase(tb.rhs.begin() + r);
        tb.basis.erase(tb.basis.begin() + r);
        --tb.rows;
      }
    }
    for (auto& row : tb.t) row.resize(first_art);
    tb.cols = first_art;
  }

  // Phase 2.
  tb.obj.assign(tb.cols, Rational(0));
  tb.objval = 0;
  for (int j = 0; j < n; ++j) {
    tb.obj[j] = c[j];
    tb.obj[n + j] = -c[j];
  }
  tb.reduce_obj();
  if (!tb.run()) return {LpStatus::Unbounded, Rational(0), {}};

  std::vector<Rational> x(n, Rational(0));
  for (int r = 0; r < tb.rows; ++r) {
    int bc = tb.basis[r];
    if (bc < n)
      x[bc] += tb.rhs[r];
    else if (bc < 2 * n)
      x[bc - n] -= tb.rhs[r];
  }
  Rational val(0);
  for (int j = 0; j < n; ++j) val += c[j] * x[j];
  return {LpStatus::Optimal, val, x};
}

std::optional<std::vector<Rational>> lp_feasible_point(
    const std::vector<std::vector<Rational>>& A, const std::vector<Rational>& b) {
  std::size_t n = A.empty() ? 0 : A[0].size();
  std::vector<Rational> zero(n, Rational(0));
  LpResult r = lp_maximize(A, b, zero);
  if (r.status != LpStatus::Optimal) return std::nullopt;
  return r.point;
}

std::optional<std::vector<Rational>> lp_lex_min(
    const std::vector<std::vector<Rational>>& A, const std::vector<Rational>& b,
    const std::vector<std::vector<Rational>>& objectives) {
  auto Acur = A;
  auto bcur = b;
  std::vector<Rational> point;
  for (const auto& obj : objectives) {
    std::vector<Rational> neg(obj.size());
    for (std::size_t j = 0; j < obj.size(); ++j) neg[j] = -obj[j];
    LpResult r = lp_maximize(Acur, bcur, neg);
    if (r.status == LpStatus::Infeasible) return std::nullopt;
    if (r.status == LpStatus::Unbounded)
      throw std::runtime_error("lp_lex_min: objective unbounded below");
    point = r.point;
    Rational value = -r.objective;
    // Pin this objective at its minimum before optimizing the next one.
    Acur.push_back(obj);
    bcur.push_back(value);
    Acur.push_back(neg);
    bcur.push_back(-value);
  }
  return point;
}

}  // namespace gdof
