#pragma once

// Curve records: the full verification pipeline for one family member, its
// JSON form (fixed field order, big integers as decimal strings) and the
// re-check that rebuilds a record from its parameters.

#include <chrono>
#include <sstream>
#include <string>
#include <utility>

#include <json.hpp>

#include "ecfam/descent.hpp"
#include "ecfam/family.hpp"
#include "ecfam/torsion.hpp"

namespace ecfam {

using Json = nlohmann::ordered_json;

inline constexpr int kRecordSchema = 1;

struct VerifyOptions {
  unsigned num_reduction_primes = 5;
  Integer height_bound = 10000;
};

struct StageTimings {
  double torsion_ms = 0;
  double descent_ms = 0;
  double probe_ms = 0;
};

struct CurveRecord {
  FamilyParams params;
  VerifyOptions options;
  Curve curve;
  HypothesisReport hypotheses;
  TorsionReport torsion;
  RankCertificate certificate;
  StageTimings timings;

  bool success() const { return torsion.trivial() && certificate.rank_lower_bound >= 2; }
};

inline CurveRecord compute_record(const FamilyParams& params, const VerifyOptions& options) {
  using Clock = std::chrono::steady_clock;
  const auto ms_since = [](Clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
  };
  const HypothesisReport hyp = validate_hypotheses(params);
  Curve curve = build_family_curve(params);
  StageTimings timings;

  auto t0 = Clock::now();
  TorsionReport torsion = analyze_torsion(curve, options.num_reduction_primes, &params);
  timings.torsion_ms = ms_since(t0);

  t0 = Clock::now();
  RankCertificate cert = rank_ge_2_certificate(params, torsion);
  timings.descent_ms = ms_since(t0);

  t0 = Clock::now();
  cert = rank_ge_3_probe(std::move(cert), options.height_bound);
  timings.probe_ms = ms_since(t0);

  return CurveRecord{params, options, std::move(curve), hyp, std::move(torsion), std::move(cert), timings};
}

// ---- JSON -----------------------------------------------------------------

inline Json to_json(const Point& p) {
  if (p.is_infinity()) return "O";
  return Json::array({p.x().get_str(), p.y().get_str()});
}

template <typename Range>
Json points_to_json(const Range& pts) {
  Json out = Json::array();
  for (const auto& p : pts) out.push_back(to_json(p));
  return out;
}

inline Json to_json(const ClassEvidence& ev) {
  Json j;
  j["point"] = to_json(ev.point);
  j["verdict"] = to_string(ev.verdict);
  if (ev.halving) {
    Json h;
    Json coeffs = Json::array();
    for (const auto& c : ev.halving->quartic.coefficients) coeffs.push_back(c.get_str());
    h["quartic"] = std::move(coeffs);
    Json roots = Json::array();
    for (const auto& r : ev.halving->roots) roots.push_back(r.get_str());
    h["rational_roots"] = std::move(roots);
    h["preimages"] = points_to_json(ev.halving->preimages);
    j["halving"] = std::move(h);
  } else {
    j["halving"] = nullptr;
  }
  if (ev.congruence) {
    j["congruence"] = {{"target", ev.congruence->target},
                       {"verdict", to_string(ev.congruence->verdict)},
                       {"detail", ev.congruence->detail}};
  } else {
    j["congruence"] = nullptr;
  }
  return j;
}

inline Json to_json(const FamilyParams& p) {
  Json j;
  j["m"] = p.m.get_str();
  j["p"] = p.p.get_str();
  j["q"] = p.q.get_str();
  j["r"] = p.r.get_str();
  if (auto k = p.k_witness()) {
    j["k_witness"] = *k;
  } else {
    j["k_witness"] = nullptr;  // m = 2: every k
  }
  return j;
}

inline Json to_json(const HypothesisReport& h) {
  return {{"mod3_ok", h.mod3_ok}, {"mod2k_ok", h.mod2k_ok}, {"coprime_ok", h.coprime_ok}, {"primes_ok", h.primes_ok}};
}

inline Json to_json(const TorsionReport& t) {
  Json j;
  j["order"] = t.torsion_order;
  j["structure"] = t.structure;
  j["generators"] = points_to_json(t.generators);
  j["points"] = points_to_json(t.points);
  j["bound_from_reduction"] = t.bound_from_reduction.get_str();
  Json used = Json::array();
  for (const auto& e : t.primes_used) used.push_back({{"prime", std::to_string(e.prime)}, {"count", std::to_string(e.count)}});
  j["primes_used"] = std::move(used);
  j["integral_candidates"] = points_to_json(t.integral_candidates);
  Json dp = Json::object();
  for (const auto& [n, v] : t.division_poly) {
    Json roots = Json::array();
    for (const auto& r : v.integer_roots) roots.push_back(r.get_str());
    dp[std::to_string(n)] = {{"degree", v.polynomial.degree()},
                             {"integer_roots", std::move(roots)},
                             {"rational_points", points_to_json(v.rational_points)}};
  }
  j["division_polynomials"] = std::move(dp);
  Json lo = Json::object();
  for (const auto& [n, v] : t.lemma_obstructions) lo[std::to_string(n)] = {{"verdict", to_string(v.verdict)}, {"detail", v.detail}};
  j["lemma_obstructions"] = std::move(lo);
  j["routes_trivial"] = {{"reduction", t.reduction_route_trivial()},
                         {"nagell_lutz", t.trivial()},
                         {"division_polynomials", t.division_poly_route_trivial()}};
  return j;
}

inline Json to_json(const RankCertificate& c) {
  Json j;
  j["torsion_trivial"] = c.torsion_trivial;
  j["b_infinite_order"] = c.b_infinite_order;
  j["class_A"] = to_json(c.class_a);
  j["class_B"] = to_json(c.class_b);
  j["class_AB"] = to_json(c.class_ab);
  j["classes_distinct"] = c.classes_distinct;
  Json probe;
  probe["height_bound"] = c.probe_height_bound.get_str();
  probe["points_found"] = c.probe_points_found;
  Json cands = Json::array();
  for (const auto& cand : c.extra_points) {
    Json classes = Json::array();
    for (const auto& ev : cand.classes) classes.push_back(to_json(ev));
    cands.push_back({{"point", to_json(cand.point)}, {"independent", cand.independent()}, {"classes", std::move(classes)}});
  }
  probe["candidates"] = std::move(cands);
  probe["witness"] = c.rank3_witness ? to_json(*c.rank3_witness) : Json(nullptr);
  j["probe"] = std::move(probe);
  j["rank_lower_bound"] = c.rank_lower_bound;
  return j;
}

inline Json to_json(const CurveRecord& rec) {
  Json j;
  j["schema"] = kRecordSchema;
  j["params"] = to_json(rec.params);
  j["options"] = {{"num_reduction_primes", rec.options.num_reduction_primes},
                  {"height_bound", rec.options.height_bound.get_str()}};
  j["curve"] = {{"b", rec.curve.b().get_str()}, {"c", rec.curve.c().get_str()}};
  j["discriminant"] = rec.curve.discriminant().get_str();
  j["hypotheses"] = to_json(rec.hypotheses);
  j["torsion"] = to_json(rec.torsion);
  j["certificate"] = to_json(rec.certificate);
  j["rank_lower_bound"] = rec.certificate.rank_lower_bound;
  j["success"] = rec.success();
  j["timings"] = {{"torsion_ms", rec.timings.torsion_ms},
                  {"descent_ms", rec.timings.descent_ms},
                  {"probe_ms", rec.timings.probe_ms}};
  return j;
}

/// One JSON object, no trailing newline.
inline std::string to_jsonl(const CurveRecord& rec) { return to_json(rec).dump(); }

inline std::string csv_header() { return "m,p,q,r,discriminant,torsion_order,rank_lower_bound,rank3_probe"; }

inline std::string to_csv_row(const CurveRecord& rec) {
  std::ostringstream os;
  os << rec.params.m.get_str() << ',' << rec.params.p.get_str() << ',' << rec.params.q.get_str() << ','
     << rec.params.r.get_str() << ',' << rec.curve.discriminant().get_str() << ',' << rec.torsion.torsion_order << ','
     << rec.certificate.rank_lower_bound << ',' << (rec.certificate.rank3_witness ? 1 : 0);
  return os.str();
}

// ---- re-check ---------------------------------------------------------------

class RecordParseError : public Error {
 public:
  using Error::Error;
};

struct RecheckResult {
  bool identical = false;
  std::string mismatch;  // first differing top-level field, if any
};

namespace detail {

inline const Json& require_field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw RecordParseError(std::string("record is missing field '") + key + "'");
  return j.at(key);
}

inline Integer integer_field(const Json& j, const char* key) {
  const Json& v = require_field(j, key);
  if (!v.is_string()) throw RecordParseError(std::string("field '") + key + "' must be a decimal string");
  try {
    return parse_integer(v.get<std::string>());
  } catch (const std::invalid_argument& e) {
    throw RecordParseError(e.what());
  }
}

}  // namespace detail

inline FamilyParams params_from_json(const Json& record) {
  const Json& p = detail::require_field(record, "params");
  return {detail::integer_field(p, "m"), detail::integer_field(p, "p"), detail::integer_field(p, "q"),
          detail::integer_field(p, "r")};
}

inline VerifyOptions options_from_json(const Json& record) {
  const Json& o = detail::require_field(record, "options");
  const Json& n = detail::require_field(o, "num_reduction_primes");
  if (!n.is_number_unsigned() || n.get<unsigned>() == 0) throw RecordParseError("num_reduction_primes must be a positive integer");
  return {n.get<unsigned>(), detail::integer_field(o, "height_bound")};
}

/// Rebuilds the record from its params and options and compares every
/// field except the timings.
inline RecheckResult recheck_record(const Json& record) {
  const Json& schema = detail::require_field(record, "schema");
  if (!schema.is_number_integer() || schema.get<int>() != kRecordSchema) throw RecordParseError("unsupported schema");
  const FamilyParams params = params_from_json(record);
  const VerifyOptions options = options_from_json(record);
  RecheckResult out;
  Json fresh;
  try {
    fresh = to_json(compute_record(params, options));
  } catch (const Error& e) {
    out.mismatch = std::string("params: ") + e.what();
    return out;
  }
  Json given = record;
  fresh.erase("timings");
  given.erase("timings");
  out.identical = fresh == given;
  if (!out.identical) {
    for (const auto& [key, value] : fresh.items()) {
      if (!given.contains(key) || given.at(key) != value) {
        out.mismatch = key;
        break;
      }
    }
    if (out.mismatch.empty()) out.mismatch = "<extra fields>";
  }
  return out;
}

inline RecheckResult recheck_record(const std::string& line) {
  Json j;
  try {
    j = Json::parse(line);
  } catch (const Json::parse_error& e) {
    throw RecordParseError(e.what());
  }
  return recheck_record(j);
}

}  // namespace ecfam
