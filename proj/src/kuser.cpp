#include "gdof/kuser.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <set>
#include <sstream>

namespace gdof {

Permutation::Permutation(std::vector<int> elems) : e(std::move(elems)) {
  if (e.empty()) throw PatternError("empty permutation");
  std::set<int> seen;
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (e[i] < 0) throw PatternError("negative element in permutation");
    if (e[i] == 0 && !(i == 0 && e.size() == 2))
      throw PatternError("0 is only allowed as the head of a length-2 permutation");
    if (!seen.insert(e[i]).second) throw PatternError("repeated element in permutation");
  }
}

std::string Permutation::str() const {
  std::string s = "(";
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(e[i]);
  }
  return s + ")";
}

MergeResult merge(const Permutation& p, const Permutation& q, int shared,
                  const std::vector<int>& u3_order, const std::vector<int>& u4_order) {
  if (p.size() <= 1 || q.size() <= 1)
    throw PatternError("merge needs permutations of length > 1");
  auto pos_of = [&](const Permutation& r) {
    for (int i = 0; i < r.size(); ++i)
      if (r.e[i] == shared) return i;
    throw PatternError("shared element " + std::to_string(shared) + " missing from " + r.str());
  };
  int kp = pos_of(p), lq = pos_of(q);
  std::set<int> p_plus(p.e.begin() + kp + 1, p.e.end());
  std::set<int> q_plus(q.e.begin() + lq + 1, q.e.end());
  std::set<int> inter, uni;
  std::set_intersection(p_plus.begin(), p_plus.end(), q_plus.begin(), q_plus.end(),
                        std::inserter(inter, inter.begin()));
  std::set_union(p_plus.begin(), p_plus.end(), q_plus.begin(), q_plus.end(),
                 std::inserter(uni, uni.begin()));
  auto check_order = [](const std::vector<int>& order, const std::set<int>& want,
                        const char* what) {
    std::set<int> got(order.begin(), order.end());
    if (got.size() != order.size() || got != want)
      throw PatternError(std::string("merge: ") + what +
                         " ordering is not a bijection onto the required set");
  };
  check_order(u3_order, inter, "u3");
  check_order(u4_order, uni, "u4");

  MergeResult r;
  r.u1 = Permutation(std::vector<int>(p.e.begin(), p.e.begin() + kp + 1));
  r.u2 = Permutation(std::vector<int>(q.e.begin(), q.e.begin() + lq + 1));
  std::vector<int> u3{shared};
  u3.insert(u3.end(), u3_order.begin(), u3_order.end());
  std::vector<int> u4{shared};
  u4.insert(u4.end(), u4_order.begin(), u4_order.end());
  r.u3 = Permutation(std::move(u3));
  r.u4 = Permutation(std::move(u4));
  return r;
}

Rational f_of_p(const Permutation& p, const DeltaSet& ds) {
  if (p.size() == 1) return Rational(0);
  if (p.e[0] == 0) {
    int x = p.e[1];
    if (x < 1 || x > static_cast<int>(ds.delta_i.size()))
      throw PatternError("f: index out of range in " + p.str());
    return ds.delta_i[x - 1];
  }
  Rational sum(0);
  for (int i = 1; i < p.size(); ++i) {
    int a = p.e[i], b = p.e[i - 1];
    int K = static_cast<int>(ds.delta_i.size());
    if (a < 1 || a > K || b < 1 || b > K)
      throw PatternError("f: index out of range in " + p.str());
    sum += ds.delta_ij[a - 1][b - 1];
  }
  return sum;
}

std::string BoundingPattern::key() const {
  std::string s;
  for (const auto& p : A) s += p.str();
  s += "|";
  for (const auto& p : B) s += p.str();
  return s;
}

std::string BoundingPattern::str() const {
  std::string s = "{";
  bool first = true;
  for (const auto& p : A) {
    if (!first) s += ",";
    s += p.str();
    first = false;
  }
  for (const auto& p : B) {
    if (!first) s += ",";
    s += p.str() + "~";
    first = false;
  }
  return s + "}";
}

BoundingPattern seed_pattern(const Permutation& p) {
  if (p.size() <= 1) throw PatternError("seed needs |p| > 1");
  for (int x : p.e)
    if (x == 0) throw PatternError("seed permutation must avoid 0");
  BoundingPattern out;
  out.A = {Permutation({0, p.e[0]})};
  out.B = {p};
  auto d = std::make_shared<Derivation>();
  d->kind = Derivation::Kind::Seed;
  d->seed = p;
  out.derivation = d;
  return out;
}

BoundingPattern combine_patterns(const BoundingPattern& x, const BoundingPattern& y) {
  BoundingPattern out;
  out.A = x.A;
  out.A.insert(out.A.end(), y.A.begin(), y.A.end());
  out.B = x.B;
  out.B.insert(out.B.end(), y.B.begin(), y.B.end());
  std::sort(out.A.begin(), out.A.end());
  std::sort(out.B.begin(), out.B.end());
  auto d = std::make_shared<Derivation>();
  d->kind = Derivation::Kind::Combine;
  d->left = x.derivation;
  d->right = y.derivation;
  out.derivation = d;
  return out;
}

BoundingPattern merge_in_pattern(const BoundingPattern& x, int b1, int b2, int shared,
                                 const std::vector<int>& u3_order,
                                 const std::vector<int>& u4_order) {
  if (b1 == b2 || b1 < 0 || b2 < 0 || b1 >= static_cast<int>(x.B.size()) ||
      b2 >= static_cast<int>(x.B.size()))
    throw PatternError("merge_in_pattern: bad B indices");
  MergeResult mr = merge(x.B[b1], x.B[b2], shared, u3_order, u4_order);
  BoundingPattern out;
  out.A = x.A;
  out.A.push_back(mr.u1);
  out.A.push_back(mr.u2);
  for (int i = 0; i < static_cast<int>(x.B.size()); ++i)
    if (i != b1 && i != b2) out.B.push_back(x.B[i]);
  out.B.push_back(mr.u3);
  out.B.push_back(mr.u4);
  std::sort(out.A.begin(), out.A.end());
  std::sort(out.B.begin(), out.B.end());
  auto d = std::make_shared<Derivation>();
  d->kind = Derivation::Kind::Merge;
  d->parent = x.derivation;
  d->b1 = b1;
  d->b2 = b2;
  d->shared = shared;
  d->u3_order = u3_order;
  d->u4_order = u4_order;
  out.derivation = d;
  return out;
}

BoundingPattern replay(const DerivationPtr& d) {
  if (!d) throw PatternError("replay: empty derivation");
  switch (d->kind) {
    case Derivation::Kind::Seed:
      return seed_pattern(d->seed);
    case Derivation::Kind::Combine:
      return combine_patterns(replay(d->left), replay(d->right));
    case Derivation::Kind::Merge:
      return merge_in_pattern(replay(d->parent), d->b1, d->b2, d->shared, d->u3_order,
                              d->u4_order);
  }
  throw PatternError("replay: corrupt derivation");
}

namespace {

void all_orderings(const std::set<int>& vals, std::vector<std::vector<int>>& out) {
  std::vector<int> v(vals.begin(), vals.end());
  // All orderings for short tails, canonical ascending order beyond.
  if (v.size() > 4) {
    out.push_back(v);
    return;
  }
  std::sort(v.begin(), v.end());
  do {
    out.push_back(v);
  } while (std::next_permutation(v.begin(), v.end()));
}

// All merge expansions of one pattern, in a fixed order.
void merges_of(const BoundingPattern& pat, int max_multiset,
               const std::function<bool(BoundingPattern&&)>& push) {
  const int nb = static_cast<int>(pat.B.size());
  if (static_cast<int>(pat.A.size()) + nb + 2 > max_multiset) return;
  for (int b1 = 0; b1 < nb; ++b1) {
    for (int b2 = b1 + 1; b2 < nb; ++b2) {
      const auto& p = pat.B[b1];
      const auto& q = pat.B[b2];
      if (p.size() <= 1 || q.size() <= 1) continue;
      if (p.e[0] == 0 || q.e[0] == 0) continue;
      std::vector<int> shared;
      for (int x : p.e)
        if (std::find(q.e.begin(), q.e.end(), x) != q.e.end()) shared.push_back(x);
      std::sort(shared.begin(), shared.end());
      for (int s : shared) {
        int kp = static_cast<int>(std::find(p.e.begin(), p.e.end(), s) - p.e.begin());
        int lq = static_cast<int>(std::find(q.e.begin(), q.e.end(), s) - q.e.begin());
        std::set<int> p_plus(p.e.begin() + kp + 1, p.e.end());
        std::set<int> q_plus(q.e.begin() + lq + 1, q.e.end());
        std::set<int> inter, uni;
        std::set_intersection(p_plus.begin(), p_plus.end(), q_plus.begin(), q_plus.end(),
                              std::inserter(inter, inter.begin()));
        std::set_union(p_plus.begin(), p_plus.end(), q_plus.begin(), q_plus.end(),
                       std::inserter(uni, uni.begin()));
        std::vector<std::vector<int>> o3, o4;
        all_orderings(inter, o3);
        all_orderings(uni, o4);
        for (const auto& a3 : o3)
          for (const auto& a4 : o4)
            if (!push(merge_in_pattern(pat, b1, b2, s, a3, a4))) return;
      }
    }
  }
}

}  // namespace

GenerationStats generate_patterns(int K, const GenerationBudget& budget,
                                  const std::function<bool(const BoundingPattern&)>& sink) {
  if (K < 2) throw PatternError("pattern generation needs K >= 2");
  GenerationStats stats;
  if (budget.max_patterns <= 0) throw PatternError("pattern budget is zero");

  std::set<std::string> seen;
  std::vector<BoundingPattern> seeds;
  std::vector<BoundingPattern> prev_level;
  bool stop = false;

  auto emit = [&](const BoundingPattern& pat, std::vector<BoundingPattern>* level) -> bool {
    if (stop) return false;
    if (!seen.insert(pat.key()).second) return true;  // duplicate, keep going
    if (stats.emitted >= budget.max_patterns) {
      stats.truncated = true;
      stop = true;
      return false;
    }
    ++stats.emitted;
    if (level) level->push_back(pat);
    if (!sink(pat)) {
      stop = true;
      return false;
    }
    return true;
  };

  // Rule 1: every permutation of every subset of [K] with at least two
  // elements, subsets by size then lexicographic, permutations in lex order.
  std::vector<int> universe(K);
  for (int i = 0; i < K; ++i) universe[i] = i + 1;
  for (int size = 2; size <= K && !stop; ++size) {
    std::vector<int> idx(size);
    for (int i = 0; i < size; ++i) idx[i] = i;
    while (!stop) {
      std::vector<int> subset(size);
      for (int i = 0; i < size; ++i) subset[i] = universe[idx[i]];
      std::sort(subset.begin(), subset.end());
      do {
        BoundingPattern s = seed_pattern(Permutation(subset));
        seeds.push_back(s);
        if (!emit(s, nullptr)) break;
      } while (std::next_permutation(subset.begin(), subset.end()) && !stop);
      int i = size - 1;
      while (i >= 0 && idx[i] == K - size + i) --i;
      if (i < 0) break;
      ++idx[i];
      for (int j = i + 1; j < size; ++j) idx[j] = idx[j - 1] + 1;
    }
  }
  prev_level = seeds;

  for (int depth = 1; depth <= budget.merge_depth && !stop; ++depth) {
    std::vector<BoundingPattern> level;
    auto push = [&](BoundingPattern&& pat) { return emit(pat, &level); };
    // Merges inside patterns from the previous level.
    for (const auto& pat : prev_level) {
      if (stop) break;
      merges_of(pat, budget.max_multiset, push);
    }
    // Merges inside rule-2 sums: previous level with seeds, then with itself.
    for (const auto& pat : prev_level) {
      if (stop) break;
      for (const auto& s : seeds) {
        if (stop) break;
        if (static_cast<int>(pat.A.size() + pat.B.size() + s.A.size() + s.B.size()) >
            budget.max_multiset)
          continue;
        merges_of(combine_patterns(pat, s), budget.max_multiset, push);
      }
    }
    for (std::size_t i = 0; i < prev_level.size() && !stop; ++i) {
      for (std::size_t j = i; j < prev_level.size() && !stop; ++j) {
        const auto& x = prev_level[i];
        const auto& y = prev_level[j];
        if (static_cast<int>(x.A.size() + x.B.size() + y.A.size() + y.B.size()) >
            budget.max_multiset)
          continue;
        merges_of(combine_patterns(x, y), budget.max_multiset, push);
      }
    }
    prev_level = std::move(level);
  }
  return stats;
}

GdofBound bound_from_pattern(const BoundingPattern& pat, const DeltaSet& ds) {
  const int K = static_cast<int>(ds.delta_i.size());
  GdofBound b;
  b.coeffs.assign(K, 0);
  b.rhs = Rational(0);
  auto absorb = [&](const Permutation& p) {
    for (int i = 1; i < p.size(); ++i) {
      int u = p.e[i];
      if (u < 1 || u > K) throw PatternError("bound: index out of range in " + p.str());
      ++b.coeffs[u - 1];
    }
    b.rhs += f_of_p(p, ds);
  };
  for (const auto& p : pat.A) absorb(p);
  for (const auto& p : pat.B) absorb(p);
  b.provenance = pat.str();
  return b;
}

namespace {

struct PatternCacheEntry {
  std::vector<BoundingPattern> patterns;
  bool truncated = false;
  long emitted = 0;
};

// Pattern generation depends only on (K, budget); bounds per channel are
// cheap, so the pattern list is cached across calls.
const PatternCacheEntry& cached_patterns(int K, const GenerationBudget& budget) {
  static std::map<std::string, PatternCacheEntry> cache;
  static std::mutex mu;
  std::ostringstream key;
  key << K << ":" << budget.merge_depth << ":" << budget.max_multiset << ":"
      << budget.max_patterns;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(key.str());
  if (it != cache.end()) return it->second;
  PatternCacheEntry entry;
  GenerationStats stats = generate_patterns(K, budget, [&](const BoundingPattern& p) {
    entry.patterns.push_back(p);
    return true;
  });
  entry.truncated = stats.truncated;
  entry.emitted = stats.emitted;
  return cache.emplace(key.str(), std::move(entry)).first->second;
}

}  // namespace

KBoundsResult enumerate_outer_bounds(const ChannelMatrix& ch, const GenerationBudget& budget) {
  if (ch.K < 2 || ch.K > 8)
    throw PatternError("enumerate_outer_bounds supports 2 <= K <= 8");
  if (budget.max_patterns <= 0) throw PatternError("pattern budget is zero");
  const DeltaSet ds = compute_deltas(ch);
  const int K = ch.K;
  const auto& entry = cached_patterns(K, budget);

  // Canonical row -> (tightest rhs, provenance). Streamed dedup keeps the
  // LP pruning set small.
  struct Best {
    Rational rhs;
    std::string provenance;
    DerivationPtr derivation;
  };
  std::map<std::vector<Rational>, Best> best;
  for (const auto& pat : entry.patterns) {
    GdofBound bd = bound_from_pattern(pat, ds);
    bool all_zero = std::all_of(bd.coeffs.begin(), bd.coeffs.end(),
                                [](long c) { return c == 0; });
    if (all_zero) continue;
    LinearInequality row(std::vector<Rational>(bd.coeffs.begin(), bd.coeffs.end()), bd.rhs);
    auto it = best.find(row.coeffs);
    if (it == best.end() || row.rhs < it->second.rhs)
      best[row.coeffs] = {row.rhs, bd.provenance, pat.derivation};
  }

  struct Tagged {
    LinearInequality row;
    std::string provenance;
    DerivationPtr derivation;
  };
  std::vector<LinearInequality> rows;
  std::vector<Tagged> tagged;
  for (const auto& [coeffs, val] : best) {
    LinearInequality r(coeffs, val.rhs);
    tagged.push_back({r, val.provenance, val.derivation});
    rows.push_back(std::move(r));
  }
  for (int i = 0; i < K; ++i) {
    std::vector<Rational> c(K, Rational(0));
    c[i] = -1;
    LinearInequality lo(std::move(c), Rational(0));
    tagged.push_back({lo, "d_" + std::to_string(i + 1) + " >= 0", nullptr});
    rows.push_back(lo);
    std::vector<Rational> c2(K, Rational(0));
    c2[i] = 1;
    LinearInequality hi(std::move(c2), ds.delta_i[i]);
    tagged.push_back({hi, "single-user bound d_" + std::to_string(i + 1), nullptr});
    rows.push_back(hi);
  }

  KBoundsResult out;
  out.truncated = entry.truncated;
  out.patterns_generated = entry.emitted;
  out.poly = remove_redundant(Polytope(K, rows));
  for (const auto& kept : out.poly.hrep()) {
    std::string prov;
    DerivationPtr deriv;
    for (const auto& t : tagged)
      if (t.row == kept) {
        prov = t.provenance;
        deriv = t.derivation;
        break;
      }
    out.row_provenance.push_back(prov);
    out.row_derivations.push_back(deriv);
  }
  return out;
}

std::string explain_derivation(const DerivationPtr& d) {
  if (!d) return "(no derivation)";
  std::ostringstream os;
  switch (d->kind) {
    case Derivation::Kind::Seed:
      os << "seed: ((0," << d->seed.e[0] << "), " << d->seed.str() << "~)";
      break;
    case Derivation::Kind::Combine:
      os << explain_derivation(d->left) << "\n" << explain_derivation(d->right) << "\n"
         << "combine the two patterns above";
      break;
    case Derivation::Kind::Merge: {
      os << explain_derivation(d->parent) << "\n";
      BoundingPattern parent = replay(d->parent);
      os << "merge " << parent.B[d->b1].str() << " and " << parent.B[d->b2].str()
         << " at " << d->shared << " (u3 tail:";
      for (int x : d->u3_order) os << " " << x;
      os << "; u4 tail:";
      for (int x : d->u4_order) os << " " << x;
      os << ")";
      break;
    }
  }
  return os.str();
}

}  // namespace gdof
