#include "gdof/channel.hpp"

#include <algorithm>
#include <numeric>

namespace gdof {

ChannelMatrix make_channel(std::vector<std::vector<Rational>> alpha) {
  if (alpha.empty() || alpha[0].empty())
    throw ChannelError("channel matrix must be nonempty");
  ChannelMatrix ch;
  ch.K = static_cast<int>(alpha.size());
  ch.M = static_cast<int>(alpha[0].size());
  if (ch.K < 2) throw ChannelError("channel needs at least 2 receivers");
  for (int k = 0; k < ch.K; ++k) {
    if (static_cast<int>(alpha[k].size()) != ch.M)
      throw ChannelError("ragged channel matrix at row " + std::to_string(k + 1));
    for (int m = 0; m < ch.M; ++m)
      if (alpha[k][m] < 0)
        throw ChannelError("negative channel strength at alpha[" +
                           std::to_string(k + 1) + "][" + std::to_string(m + 1) + "]");
  }
  ch.alpha = std::move(alpha);
  return ch;
}

DeltaSet compute_deltas(const ChannelMatrix& ch) {
  DeltaSet d;
  d.delta_i.assign(ch.K, Rational(0));
  d.delta_ij.assign(ch.K, std::vector<Rational>(ch.K, Rational(0)));
  for (int i = 0; i < ch.K; ++i) {
    Rational best = ch.alpha[i][0];
    for (int m = 1; m < ch.M; ++m) best = std::max(best, ch.alpha[i][m]);
    d.delta_i[i] = best;
  }
  for (int i = 0; i < ch.K; ++i) {
    for (int j = 0; j < ch.K; ++j) {
      if (i == j) continue;
      Rational best(0);
      for (int m = 0; m < ch.M; ++m) {
        Rational gap = ch.alpha[i][m] - ch.alpha[j][m];
        if (gap > best) best = gap;
      }
      d.delta_ij[i][j] = best;
    }
  }
  if (ch.K == 3) {
    // Minimum over all role assignments (i,j,k) of both the chain form and
    // the halved six-term form.
    std::optional<Rational> best;
    int perm[3] = {0, 1, 2};
    std::sort(perm, perm + 3);
    do {
      int i = perm[0], j = perm[1], k = perm[2];
      Rational chain = d.delta_i[i] + d.delta_ij[j][i] + d.delta_ij[k][j];
      Rational half = (d.delta_i[i] + d.delta_i[k] + d.delta_ij[i][j] +
                       d.delta_ij[j][i] + d.delta_ij[j][k] + d.delta_ij[k][i]) /
                      2;
      Rational cand = std::min(chain, half);
      if (!best || cand < *best) best = cand;
    } while (std::next_permutation(perm, perm + 3));
    d.delta3 = *best;
  }
  return d;
}

namespace {

// Checks both condition families on a column relabeling of ch, recording
// violations when asked to.
bool conditions_hold(const ChannelMatrix& ch, const std::vector<int>& perm,
                     std::vector<ConditionViolation>* out) {
  bool ok = true;
  auto a = [&](int k, int m) -> const Rational& { return ch.alpha[k][perm[m]]; };
  for (int i = 0; i < 3; ++i) {
    for (int k = 0; k < 3; ++k) {
      for (int m = 0; m < ch.M; ++m) {
        Rational lhs = std::max(a(i, m), a(k, i));
        if (lhs > a(i, i)) {
          ok = false;
          if (out) out->push_back({"max", i + 1, k + 1, m + 1, lhs, a(i, i)});
        }
        Rational sum_lhs = a(k, i) + a(i, m);
        Rational sum_rhs = a(i, i) + a(k, m);
        if (sum_lhs > sum_rhs) {
          ok = false;
          if (out) out->push_back({"sum", i + 1, k + 1, m + 1, sum_lhs, sum_rhs});
        }
        if (!ok && !out) return false;
      }
    }
  }
  return ok;
}

}  // namespace

bool sls_conditions_identity(const ChannelMatrix& ch) {
  std::vector<int> id(ch.M);
  std::iota(id.begin(), id.end(), 0);
  return conditions_hold(ch, id, nullptr);
}

bool sls_conditions_any_labeling(const ChannelMatrix& ch) {
  std::vector<int> perm(ch.M);
  std::iota(perm.begin(), perm.end(), 0);
  if (conditions_hold(ch, perm, nullptr)) return true;
  if (ch.M > 6) return false;
  while (std::next_permutation(perm.begin(), perm.end()))
    if (conditions_hold(ch, perm, nullptr)) return true;
  return false;
}

ConditionReport check_sls_conditions(const ChannelMatrix& ch) {
  if (ch.K != 3) throw ChannelError("SLS condition check requires K == 3");
  if (ch.M < 3) throw ChannelError("SLS condition check requires M >= 3");
  ConditionReport rep;
  std::vector<int> id(ch.M);
  std::iota(id.begin(), id.end(), 0);
  if (conditions_hold(ch, id, &rep.violations)) {
    rep.satisfied = true;
    rep.witness_permutation = id;
    return rep;
  }
  if (ch.M > 6) {
    rep.identity_only = true;
    return rep;
  }
  std::vector<int> perm = id;
  while (std::next_permutation(perm.begin(), perm.end())) {
    if (conditions_hold(ch, perm, nullptr)) {
      rep.satisfied = true;
      rep.witness_permutation = perm;
      return rep;
    }
  }
  return rep;
}

ChannelMatrix dual(const ChannelMatrix& ch) {
  if (ch.K != ch.M) throw ChannelError("dual requires a square channel");
  std::vector<std::vector<Rational>> t(ch.M, std::vector<Rational>(ch.K));
  for (int k = 0; k < ch.K; ++k)
    for (int m = 0; m < ch.M; ++m) t[m][k] = ch.alpha[k][m];
  return make_channel(std::move(t));
}

ChannelMatrix apply_antenna_permutation(const ChannelMatrix& ch,
                                        const std::vector<int>& perm) {
  if (static_cast<int>(perm.size()) != ch.M)
    throw ChannelError("antenna permutation size mismatch");
  std::vector<std::vector<Rational>> out(ch.K, std::vector<Rational>(ch.M));
  for (int k = 0; k < ch.K; ++k)
    for (int m = 0; m < ch.M; ++m) out[k][m] = ch.alpha[k][perm[m]];
  return make_channel(std::move(out));
}

ChannelMatrix apply_user_order(const ChannelMatrix& ch, const std::array<int, 3>& order) {
  if (ch.K != 3 || ch.M != 3)
    throw ChannelError("user reordering requires a 3x3 channel");
  std::vector<std::vector<Rational>> out(3, std::vector<Rational>(3));
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) out[a][b] = ch.alpha[order[a]][order[b]];
  return make_channel(std::move(out));
}

ChannelMatrix cyclic_channel(const Rational& a, const Rational& b) {
  if (a < 0 || b < 0) throw ChannelError("cyclic parameters must be nonnegative");
  Rational one(1);
  return make_channel({{one, a, b}, {b, one, a}, {a, b, one}});
}

bool tin_optimal_ic(const ChannelMatrix& ch) {
  if (ch.K != 3 || ch.M < 3) throw ChannelError("TIN check requires K == 3, M >= 3");
  for (int i = 0; i < 3; ++i) {
    Rational out_max(0), in_max(0);
    bool have_out = false, have_in = false;
    for (int j = 0; j < 3; ++j) {
      if (j == i) continue;
      if (!have_out || ch.alpha[i][j] > out_max) out_max = ch.alpha[i][j], have_out = true;
      if (!have_in || ch.alpha[j][i] > in_max) in_max = ch.alpha[j][i], have_in = true;
    }
    if (out_max + in_max > ch.alpha[i][i]) return false;
  }
  return true;
}

}  // namespace gdof
