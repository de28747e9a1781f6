#include "gdof/polytope.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <sstream>

#include "gdof/simplex.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace gdof {

LinearInequality::LinearInequality(std::vector<Rational> c, Rational r)
    : coeffs(std::move(c)), rhs(std::move(r)) {
  canonicalize();
}

void LinearInequality::canonicalize() {
  for (const auto& v : coeffs) {
    if (v != 0) {
      Rational scale = abs(v);
      if (scale != 1) {
        for (auto& w : coeffs) w /= scale;
        rhs /= scale;
      }
      return;
    }
  }
  // All-zero rows: normalize the contradiction marker.
  if (rhs < 0) rhs = -1;
}

bool LinearInequality::is_trivial() const {
  for (const auto& v : coeffs)
    if (v != 0) return false;
  return rhs >= 0;
}

bool LinearInequality::is_contradiction() const {
  for (const auto& v : coeffs)
    if (v != 0) return false;
  return rhs < 0;
}

Rational LinearInequality::lhs_at(const Point& x) const {
  assert(x.size() == coeffs.size());
  Rational s(0);
  for (std::size_t i = 0; i < coeffs.size(); ++i)
    if (coeffs[i] != 0) s += coeffs[i] * x[i];
  return s;
}

bool LinearInequality::holds_at(const Point& x) const { return lhs_at(x) <= rhs; }

bool operator==(const LinearInequality& a, const LinearInequality& b) {
  return a.rhs == b.rhs && a.coeffs == b.coeffs;
}

bool row_less(const LinearInequality& a, const LinearInequality& b) {
  for (std::size_t i = 0; i < a.coeffs.size(); ++i) {
    int c = cmp(a.coeffs[i], b.coeffs[i]);
    if (c != 0) return c < 0;
  }
  return a.rhs < b.rhs;
}

namespace {

// Canonical scale + sort + unique, dropping trivially true rows and rows
// dominated by an identical-coefficient row with a smaller rhs.
std::vector<LinearInequality> normalize_rows(int dim,
                                             std::vector<LinearInequality> rows) {
  for (auto& r : rows) {
    if (static_cast<int>(r.coeffs.size()) != dim)
      throw DimensionError("inequality dimension mismatch");
    r.canonicalize();
  }
  std::erase_if(rows, [](const LinearInequality& r) { return r.is_trivial(); });
  std::sort(rows.begin(), rows.end(), row_less);
  rows.erase(std::unique(rows.begin(), rows.end()), rows.end());
  // Same coefficient vector: only the tightest rhs matters. Rows are sorted,
  // so equal-coefficient runs are adjacent with ascending rhs.
  std::vector<LinearInequality> out;
  for (auto& r : rows) {
    if (!out.empty() && out.back().coeffs == r.coeffs) continue;
    out.push_back(std::move(r));
  }
  return out;
}

void rows_to_lp(const std::vector<LinearInequality>& rows,
                std::vector<std::vector<Rational>>& A, std::vector<Rational>& b) {
  A.clear();
  b.clear();
  for (const auto& r : rows) {
    A.push_back(r.coeffs);
    b.push_back(r.rhs);
  }
}

}  // namespace

Polytope::Polytope(int dim, std::vector<LinearInequality> rows) : dim_(dim) {
  rows_ = normalize_rows(dim, std::move(rows));
}

Polytope Polytope::empty_region(int dim) {
  LinearInequality row(std::vector<Rational>(dim, Rational(0)), Rational(-1));
  return Polytope(dim, {row});
}

bool Polytope::contains(const Point& x) const {
  if (static_cast<int>(x.size()) != dim_)
    throw DimensionError("point dimension " + std::to_string(x.size()) +
                         " does not match polytope dimension " +
                         std::to_string(dim_));
  for (const auto& r : rows_)
    if (!r.holds_at(x)) return false;
  return true;
}

std::string Polytope::canonical_text() const {
  std::ostringstream os;
  os << "dim " << dim_ << "\n";
  for (const auto& r : rows_) {
    for (const auto& c : r.coeffs) os << rational_str(c) << " ";
    os << "| " << rational_str(r.rhs) << "\n";
  }
  return os.str();
}

bool is_empty(const Polytope& p) {
  for (const auto& r : p.hrep())
    if (r.is_contradiction()) return true;
  std::vector<std::vector<Rational>> A;
  std::vector<Rational> b;
  rows_to_lp(p.hrep(), A, b);
  if (A.empty()) return false;
  return !lp_feasible_point(A, b).has_value();
}

bool is_bounded(const Polytope& p) {
  std::vector<std::vector<Rational>> A;
  std::vector<Rational> b;
  rows_to_lp(p.hrep(), A, b);
  for (int j = 0; j < p.dim(); ++j) {
    for (int sign : {1, -1}) {
      std::vector<Rational> c(p.dim(), Rational(0));
      c[j] = sign;
      LpResult r = lp_maximize(A, b, c);
      if (r.status == LpStatus::Infeasible) return true;
      if (r.status == LpStatus::Unbounded) return false;
    }
  }
  return true;
}

namespace {

std::vector<LinearInequality> eliminate_step(const std::vector<LinearInequality>& rows,
                                             int dim, int var) {
  std::vector<const LinearInequality*> pos, neg;
  std::vector<LinearInequality> out;
  auto strip = [&](const LinearInequality& r) {
    std::vector<Rational> c;
    c.reserve(dim - 1);
    for (int j = 0; j < dim; ++j)
      if (j != var) c.push_back(r.coeffs[j]);
    return LinearInequality(std::move(c), r.rhs);
  };
  for (const auto& r : rows) {
    int s = sgn(r.coeffs[var]);
    if (s > 0)
      pos.push_back(&r);
    else if (s < 0)
      neg.push_back(&r);
    else
      out.push_back(strip(r));
  }
  for (const auto* rp : pos) {
    for (const auto* rn : neg) {
      // a_p > 0, a_n < 0: combine with weights -a_n and a_p.
      Rational wp = -rn->coeffs[var], wn = rp->coeffs[var];
      std::vector<Rational> c;
      c.reserve(dim - 1);
      for (int j = 0; j < dim; ++j) {
        if (j == var) continue;
        c.push_back(wp * rp->coeffs[j] + wn * rn->coeffs[j]);
      }
      out.emplace_back(std::move(c), wp * rp->rhs + wn * rn->rhs);
    }
  }
  return out;
}

Polytope remove_redundant_rows(int dim, std::vector<LinearInequality> rows) {
  rows = normalize_rows(dim, std::move(rows));
  for (const auto& r : rows)
    if (r.is_contradiction()) return Polytope::empty_region(dim);

  std::vector<std::vector<Rational>> A;
  std::vector<Rational> b;
  rows_to_lp(rows, A, b);
  if (!A.empty() && !lp_feasible_point(A, b).has_value())
    return Polytope::empty_region(dim);

  // Sequentially drop every row implied by the remaining ones.
  std::vector<bool> keep(rows.size(), true);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    std::vector<std::vector<Rational>> Ao;
    std::vector<Rational> bo;
    for (std::size_t j = 0; j < rows.size(); ++j) {
      if (j == i || !keep[j]) continue;
      Ao.push_back(rows[j].coeffs);
      bo.push_back(rows[j].rhs);
    }
    LpResult r = lp_maximize(Ao, bo, rows[i].coeffs);
    bool redundant = r.status == LpStatus::Optimal && r.objective <= rows[i].rhs;
    if (r.status == LpStatus::Infeasible) redundant = true;
    if (redundant) keep[i] = false;
  }
  std::vector<LinearInequality> kept;
  for (std::size_t i = 0; i < rows.size(); ++i)
    if (keep[i]) kept.push_back(rows[i]);
  return Polytope(dim, std::move(kept));
}

}  // namespace

Polytope remove_redundant(const Polytope& p) {
  return remove_redundant_rows(p.dim(), p.hrep());
}

Polytope fm_eliminate(const Polytope& p, int var) {
  if (var < 0 || var >= p.dim()) throw DimensionError("fm_eliminate: bad index");
  auto rows = eliminate_step(p.hrep(), p.dim(), var);
  return remove_redundant_rows(p.dim() - 1, std::move(rows));
}

Polytope fm_eliminate_many(const Polytope& p, std::vector<int> vars) {
  std::sort(vars.begin(), vars.end());
  for (std::size_t i = 1; i < vars.size(); ++i)
    if (vars[i] == vars[i - 1]) throw DimensionError("fm_eliminate_many: duplicate index");
  const int target_dim = p.dim() - static_cast<int>(vars.size());
  int dim = p.dim();
  auto rows = p.hrep();
  // Back to front, so earlier indices stay valid.
  for (auto it = vars.rbegin(); it != vars.rend(); ++it) {
    int var = *it;
    if (var < 0 || var >= dim) throw DimensionError("fm_eliminate_many: bad index");
    rows = eliminate_step(rows, dim, var);
    --dim;
    rows = normalize_rows(dim, std::move(rows));
    for (const auto& r : rows)
      if (r.is_contradiction()) return Polytope::empty_region(target_dim);
    if (rows.size() > 40) {
      Polytope pruned = remove_redundant_rows(dim, rows);
      if (is_empty(pruned)) return Polytope::empty_region(target_dim);
      rows = pruned.hrep();
    }
  }
  return remove_redundant_rows(dim, std::move(rows));
}

namespace {

// Solves M y = v for square M via exact Gaussian elimination.
std::optional<Point> solve_square(std::vector<std::vector<Rational>> M,
                                  std::vector<Rational> v) {
  const int n = static_cast<int>(v.size());
  for (int col = 0; col < n; ++col) {
    int piv = -1;
    for (int r = col; r < n; ++r)
      if (M[r][col] != 0) { piv = r; break; }
    if (piv < 0) return std::nullopt;
    std::swap(M[piv], M[col]);
    std::swap(v[piv], v[col]);
    Rational inv = 1 / M[col][col];
    for (int j = col; j < n; ++j) M[col][j] *= inv;
    v[col] *= inv;
    for (int r = 0; r < n; ++r) {
      if (r == col || M[r][col] == 0) continue;
      Rational f = M[r][col];
      for (int j = col; j < n; ++j) M[r][j] -= f * M[col][j];
      v[r] -= f * v[col];
    }
  }
  return v;
}

}  // namespace

std::vector<Point> vertices(const Polytope& p, bool parallel) {
  const auto& rows = p.hrep();
  const int d = p.dim();
  const int n = static_cast<int>(rows.size());
  if (is_empty(p)) return {};
  if (n > 64)
    throw std::runtime_error("vertices: row count " + std::to_string(n) +
                             " exceeds the 64-row ceiling");
  if (!is_bounded(p)) throw UnboundedError("vertices: polytope is unbounded");
  if (d == 0) return {Point{}};

  // All d-subsets of rows, in lexicographic order.
  std::vector<std::vector<int>> subsets;
  std::vector<int> idx(d);
  for (int i = 0; i < d; ++i) idx[i] = i;
  if (n >= d) {
    while (true) {
      subsets.push_back(idx);
      int i = d - 1;
      while (i >= 0 && idx[i] == n - d + i) --i;
      if (i < 0) break;
      ++idx[i];
      for (int j = i + 1; j < d; ++j) idx[j] = idx[j - 1] + 1;
    }
  }
  if (subsets.size() > (1u << 22))
    throw std::runtime_error("vertices: too many hyperplane subsets");

  std::vector<std::optional<Point>> found(subsets.size());
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 16) if (parallel)
#endif
  for (long s = 0; s < static_cast<long>(subsets.size()); ++s) {
    std::vector<std::vector<Rational>> M(d);
    std::vector<Rational> v(d);
    for (int i = 0; i < d; ++i) {
      M[i] = rows[subsets[s][i]].coeffs;
      v[i] = rows[subsets[s][i]].rhs;
    }
    auto x = solve_square(std::move(M), std::move(v));
    if (!x) continue;
    bool feas = true;
    for (const auto& r : rows)
      if (!r.holds_at(*x)) { feas = false; break; }
    if (feas) found[s] = std::move(*x);
  }
  (void)parallel;

  std::vector<Point> pts;
  for (auto& f : found)
    if (f) pts.push_back(std::move(*f));
  std::sort(pts.begin(), pts.end(), [](const Point& a, const Point& b) {
    for (std::size_t i = 0; i < a.size(); ++i) {
      int c = cmp(a[i], b[i]);
      if (c != 0) return c < 0;
    }
    return false;
  });
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return pts;
}

bool poly_subset(const Polytope& a, const Polytope& b) {
  if (a.dim() != b.dim()) throw DimensionError("poly_subset: dimension mismatch");
  for (const auto& v : vertices(a))
    if (!b.contains(v)) return false;
  return true;
}

bool poly_equal(const Polytope& a, const Polytope& b) {
  return poly_subset(a, b) && poly_subset(b, a);
}

}  // namespace gdof
