#include "gdof/json_io.hpp"

namespace gdof {

namespace {

Rational rational_from_json(const Json& j, const std::string& where) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(static_cast<long>(j.get<long long>()));
  throw ParseError("expected a rational string at " + where);
}

std::vector<Rational> point_from_json(const Json& j, const std::string& where) {
  if (!j.is_array()) throw ParseError("expected an array at " + where);
  std::vector<Rational> out;
  for (std::size_t i = 0; i < j.size(); ++i)
    out.push_back(rational_from_json(j[i], where + "[" + std::to_string(i) + "]"));
  return out;
}

}  // namespace

Json polytope_to_json(const Polytope& p, bool with_vrep) {
  Json j;
  j["dim"] = p.dim();
  Json rows = Json::array();
  for (const auto& r : p.hrep()) {
    Json row;
    Json coeffs = Json::array();
    for (const auto& c : r.coeffs) coeffs.push_back(rational_str(c));
    row["coeffs"] = std::move(coeffs);
    row["rhs"] = rational_str(r.rhs);
    rows.push_back(std::move(row));
  }
  j["hrep"] = std::move(rows);
  if (with_vrep && p.vrep()) {
    Json pts = Json::array();
    for (const auto& v : *p.vrep()) {
      Json pt = Json::array();
      for (const auto& c : v) pt.push_back(rational_str(c));
      pts.push_back(std::move(pt));
    }
    j["vrep"] = std::move(pts);
  }
  return j;
}

Polytope polytope_from_json(const Json& j) {
  if (!j.contains("dim") || !j["dim"].is_number_integer())
    throw ParseError("polytope: missing integer field 'dim'");
  int dim = j["dim"].get<int>();
  if (dim < 0) throw ParseError("polytope: negative 'dim'");
  if (!j.contains("hrep") || !j["hrep"].is_array())
    throw ParseError("polytope: missing array field 'hrep'");
  std::vector<LinearInequality> rows;
  for (std::size_t i = 0; i < j["hrep"].size(); ++i) {
    const auto& row = j["hrep"][i];
    std::string where = "hrep[" + std::to_string(i) + "]";
    if (!row.contains("coeffs") || !row.contains("rhs"))
      throw ParseError("polytope: " + where + " needs 'coeffs' and 'rhs'");
    auto coeffs = point_from_json(row["coeffs"], where + ".coeffs");
    if (static_cast<int>(coeffs.size()) != dim)
      throw ParseError("polytope: " + where + " has " + std::to_string(coeffs.size()) +
                       " coefficients for dim " + std::to_string(dim));
    rows.emplace_back(std::move(coeffs), rational_from_json(row["rhs"], where + ".rhs"));
  }
  Polytope p(dim, std::move(rows));
  if (j.contains("vrep")) {
    if (!j["vrep"].is_array()) throw ParseError("polytope: 'vrep' must be an array");
    std::vector<Point> pts;
    for (std::size_t i = 0; i < j["vrep"].size(); ++i) {
      auto pt = point_from_json(j["vrep"][i], "vrep[" + std::to_string(i) + "]");
      if (static_cast<int>(pt.size()) != dim)
        throw ParseError("polytope: vrep[" + std::to_string(i) + "] dimension mismatch");
      if (!p.contains(pt))
        throw ParseError("polytope: vrep[" + std::to_string(i) +
                         "] violates the half-space representation");
      pts.push_back(std::move(pt));
    }
    p.set_vrep(std::move(pts));
  }
  return p;
}

Json channel_to_json(const ChannelMatrix& ch) {
  Json j;
  j["K"] = ch.K;
  j["M"] = ch.M;
  Json rows = Json::array();
  for (const auto& row : ch.alpha) {
    Json r = Json::array();
    for (const auto& v : row) r.push_back(rational_str(v));
    rows.push_back(std::move(r));
  }
  j["alpha"] = std::move(rows);
  return j;
}

ChannelMatrix channel_from_json(const Json& j) {
  if (!j.contains("alpha") || !j["alpha"].is_array())
    throw ParseError("channel: missing array field 'alpha'");
  std::vector<std::vector<Rational>> alpha;
  for (std::size_t k = 0; k < j["alpha"].size(); ++k)
    alpha.push_back(point_from_json(j["alpha"][k], "alpha[" + std::to_string(k) + "]"));
  ChannelMatrix ch = make_channel(std::move(alpha));
  if (j.contains("K") && j["K"].get<int>() != ch.K)
    throw ParseError("channel: field 'K' disagrees with the alpha row count");
  if (j.contains("M") && j["M"].get<int>() != ch.M)
    throw ParseError("channel: field 'M' disagrees with the alpha column count");
  return ch;
}

Json params_to_json(const SlsParams& p) {
  Json j;
  j["lambda"] = rational_str(p.lambda);
  j["lambda_p"] = rational_str(p.lambda_p);
  j["gamma"] = rational_str(p.gamma);
  j["gamma_p"] = rational_str(p.gamma_p);
  return j;
}

SlsParams params_from_json(const Json& j) {
  for (const char* key : {"lambda", "lambda_p", "gamma", "gamma_p"})
    if (!j.contains(key)) throw ParseError(std::string("params: missing field '") + key + "'");
  SlsParams p;
  p.lambda = rational_from_json(j["lambda"], "params.lambda");
  p.lambda_p = rational_from_json(j["lambda_p"], "params.lambda_p");
  p.gamma = rational_from_json(j["gamma"], "params.gamma");
  p.gamma_p = rational_from_json(j["gamma_p"], "params.gamma_p");
  return p;
}

Json split_to_json(const RateSplit& s) {
  Json j;
  Json singles = Json::array();
  for (const auto& d : s.d_single) singles.push_back(rational_str(d));
  j["d_single"] = std::move(singles);
  j["d_pair"] = rational_str(s.d_pair);
  j["d_all"] = rational_str(s.d_all);
  j["mu"] = Json::array({rational_str(s.mu[0]), rational_str(s.mu[1])});
  j["xi"] = Json::array({rational_str(s.xi[0]), rational_str(s.xi[1]), rational_str(s.xi[2])});
  return j;
}

RateSplit split_from_json(const Json& j) {
  RateSplit s;
  auto singles = point_from_json(j.at("d_single"), "split.d_single");
  if (singles.size() != 3) throw ParseError("split.d_single needs 3 entries");
  std::copy(singles.begin(), singles.end(), s.d_single.begin());
  s.d_pair = rational_from_json(j.at("d_pair"), "split.d_pair");
  s.d_all = rational_from_json(j.at("d_all"), "split.d_all");
  auto mu = point_from_json(j.at("mu"), "split.mu");
  if (mu.size() != 2) throw ParseError("split.mu needs 2 entries");
  std::copy(mu.begin(), mu.end(), s.mu.begin());
  auto xi = point_from_json(j.at("xi"), "split.xi");
  if (xi.size() != 3) throw ParseError("split.xi needs 3 entries");
  std::copy(xi.begin(), xi.end(), s.xi.begin());
  return s;
}

Json scheme_to_json(const SlsScheme& s) {
  Json j;
  j["variant"] = variant_name(s.variant);
  j["params"] = params_to_json(s.params);
  j["split"] = split_to_json(s.split);
  j["channel"] = channel_to_json(s.channel);
  return j;
}

SlsScheme scheme_from_json(const Json& j, const ChannelMatrix* fallback_channel) {
  SlsScheme s;
  if (!j.contains("variant")) throw ParseError("scheme: missing field 'variant'");
  s.variant = variant_from_name(j["variant"].get<std::string>());
  s.params = params_from_json(j.at("params"));
  s.split = split_from_json(j.at("split"));
  if (j.contains("channel"))
    s.channel = channel_from_json(j["channel"]);
  else if (fallback_channel)
    s.channel = *fallback_channel;
  else
    throw ParseError("scheme: no 'channel' field and no --channel file given");
  return s;
}

Json condition_report_to_json(const ConditionReport& rep) {
  Json j;
  j["satisfied"] = rep.satisfied;
  if (rep.witness_permutation) {
    Json p = Json::array();
    for (int m : *rep.witness_permutation) p.push_back(m);
    j["witness_permutation"] = std::move(p);
  } else {
    j["witness_permutation"] = nullptr;
  }
  j["identity_only"] = rep.identity_only;
  Json viol = Json::array();
  for (const auto& v : rep.violations) {
    Json e;
    e["rule"] = v.rule;
    e["i"] = v.i;
    e["k"] = v.k;
    e["m"] = v.m;
    e["lhs"] = rational_str(v.lhs);
    e["rhs"] = rational_str(v.rhs);
    viol.push_back(std::move(e));
  }
  j["violations"] = std::move(viol);
  return j;
}

Json verdict_to_json(const RegionVerdict& v, bool with_vrep) {
  Json j;
  j["outer"] = polytope_to_json(v.outer, with_vrep);
  Json parts;
  for (const auto& [label, part] : v.parts) {
    if (part)
      parts[label] = polytope_to_json(*part, with_vrep);
    else
      parts[label] = nullptr;
  }
  j["parts"] = std::move(parts);
  if (v.matched)
    j["matched"] = *v.matched;
  else
    j["matched"] = nullptr;
  j["equal"] = v.equal;
  return j;
}

Json sinr_report_to_json(const SinrReport& rep) {
  Json j;
  Json entries = Json::array();
  for (const auto& e : rep.entries) {
    Json row;
    row["receiver"] = e.receiver;
    row["layer"] = e.layer;
    row["exponent"] = rational_str(e.exponent);
    row["load"] = rational_str(e.load);
    Json br = Json::array();
    for (const auto& b : e.branches) br.push_back(rational_str(b));
    row["branches"] = std::move(br);
    row["ok"] = e.load <= e.exponent;
    entries.push_back(std::move(row));
  }
  j["entries"] = std::move(entries);
  j["feasible"] = rep.feasible;
  return j;
}

}  // namespace gdof
