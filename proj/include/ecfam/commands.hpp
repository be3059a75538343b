#pragma once

// The CLI subcommands as plain functions over streams, so they can be
// driven from tests without spawning a process.
//
// Exit codes: 0 certified / ok, 1 verification failed, 2 usage error.

#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "ecfam/finite_field.hpp"
#include "ecfam/record.hpp"
#include "ecfam/sweep.hpp"
#include "ecfam/torsion.hpp"

namespace ecfam {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailed = 1;
inline constexpr int kExitUsage = 2;

namespace detail {

inline std::string curve_equation(const Integer& b, const Integer& c) {
  std::ostringstream os;
  os << "y^2 = x^3";
  if (b != 0) os << (b < 0 ? " - " : " + ") << (abs(b) == 1 ? std::string() : abs(b).get_str()) << "x";
  if (c != 0) os << (c < 0 ? " - " : " + ") << abs(c).get_str();
  return os.str();
}

inline std::vector<std::string> hypothesis_failures(const FamilyParams& p, const HypothesisReport& h) {
  std::vector<std::string> out;
  if (!h.mod3_ok) out.push_back("m = 0 (mod 3)");
  if (!h.mod2k_ok) out.push_back("m != 2 (mod 32)");
  if (!h.coprime_ok) {
    for (const Integer* pr : {&p.p, &p.q, &p.r})
      if (mpz_divisible_p(p.m.get_mpz_t(), pr->get_mpz_t())) out.push_back(pr->get_str() + " divides m");
  }
  if (!h.primes_ok) out.push_back("p, q, r not distinct odd primes");
  return out;
}

inline std::string points_line(const std::vector<Point>& pts) {
  std::string s;
  for (const auto& p : pts) s += (s.empty() ? "" : " ") + to_string(p);
  return s.empty() ? "none" : s;
}

inline void write_summary(const CurveRecord& rec, std::ostream& out) {
  const auto& t = rec.torsion;
  const auto& c = rec.certificate;
  out << "curve        " << curve_equation(rec.curve.b(), rec.curve.c()) << "   (" << rec.params.to_string() << ")\n";
  out << "discriminant " << rec.curve.discriminant().get_str() << '\n';
  const auto fails = hypothesis_failures(rec.params, rec.hypotheses);
  if (fails.empty()) {
    out << "hypotheses   all met\n";
  } else {
    out << "hypotheses   failures:";
    for (const auto& f : fails) out << " [" << f << ']';
    out << '\n';
  }
  out << "torsion      order " << t.torsion_order << " (" << t.structure << "); reduction bound "
      << t.bound_from_reduction.get_str() << " over " << t.primes_used.size() << " primes";
  if (t.torsion_order > 1) out << "; generators " << points_line(t.generators);
  out << '\n';
  out << "routes       reduction " << (t.reduction_route_trivial() ? "trivial" : "nontrivial") << ", nagell-lutz "
      << (t.trivial() ? "trivial" : "nontrivial") << ", division polynomials "
      << (t.division_poly_route_trivial() ? "trivial" : "nontrivial") << '\n';
  const auto cls = [](const ClassEvidence& e) { return std::string(to_string(e.verdict)); };
  out << "classes      [A] " << cls(c.class_a) << "  [B] " << cls(c.class_b) << "  [A+B] " << cls(c.class_ab)
      << "   A+B = " << to_string(c.class_ab.point) << '\n';
  out << "probe        height " << c.probe_height_bound.get_str() << ": " << c.probe_points_found << " points, "
      << c.extra_points.size() << " candidates, ";
  if (c.rank3_witness) {
    out << "rank-3 witness " << to_string(*c.rank3_witness) << '\n';
  } else {
    out << "no rank-3 witness\n";
  }
  out << "rank         >= " << c.rank_lower_bound << '\n';
  out << "result       " << (rec.success() ? "CERTIFIED" : "NOT CERTIFIED") << '\n';
}

}  // namespace detail

/// Full pipeline on one curve. Summary (or the JSON record with json) to
/// out; the record is also written as one jsonl line to record_path if given.
inline int cmd_verify(const FamilyParams& params, const VerifyOptions& options, bool json,
                      const std::optional<std::filesystem::path>& record_path, std::ostream& out, std::ostream& err) {
  std::optional<CurveRecord> maybe;
  try {
    maybe = compute_record(params, options);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  const CurveRecord& rec = *maybe;
  if (json) {
    out << to_jsonl(rec) << '\n';
  } else {
    detail::write_summary(rec, out);
  }
  if (record_path) {
    std::ofstream f(*record_path, std::ios::trunc);
    f << to_jsonl(rec) << '\n';
    if (!f) {
      err << "error: cannot write " << record_path->string() << '\n';
      return kExitUsage;
    }
  }
  return rec.success() ? kExitOk : kExitFailed;
}

/// #E(F_ell) for y^2 = x^3 + bx + c. Bad reduction still prints the count
/// of affine solutions plus infinity, with a note.
inline int cmd_count(const Integer& b, const Integer& c, const Integer& modulus, bool json, std::ostream& out,
                     std::ostream& err) {
  if (modulus < 2 || !fits_u64(modulus) || to_u64(modulus) > kMaxCountingModulus) {
    err << "error: modulus must be a prime in [2, " << kMaxCountingModulus << "]\n";
    return kExitUsage;
  }
  const std::uint64_t ell = to_u64(modulus);
  ReducedCurve rc;
  try {
    rc = reduce_coefficients(b, c, ell);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  const bool good = rc.reduction_type == ReductionType::good;
  const std::uint64_t n = good ? count_points(rc) : count_points_unchecked(rc);
  if (json) {
    Json j;
    j["b"] = b.get_str();
    j["c"] = c.get_str();
    j["modulus"] = modulus.get_str();
    j["count"] = std::to_string(n);
    j["reduction"] = to_string(rc.reduction_type);
    j["hasse_ok"] = within_hasse_bound(n, ell);
    out << j.dump() << '\n';
  } else {
    out << n << '\n';
    if (!good) out << "note: bad reduction at " << ell << " (" << ell << " divides the discriminant)\n";
  }
  return kExitOk;
}

/// Torsion of y^2 = x^3 + bx + c by all three routes.
inline int cmd_torsion(const Integer& b, const Integer& c, unsigned num_reduction_primes, bool json, std::ostream& out,
                       std::ostream& err) {
  if (num_reduction_primes == 0) {
    err << "error: --reduction-primes must be positive\n";
    return kExitUsage;
  }
  TorsionReport rep;
  try {
    rep = analyze_torsion(Curve(b, c), num_reduction_primes);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  if (json) {
    Json j;
    j["curve"] = {{"b", b.get_str()}, {"c", c.get_str()}};
    j["torsion"] = to_json(rep);
    out << j.dump() << '\n';
    return kExitOk;
  }
  out << "curve      " << detail::curve_equation(b, c) << '\n';
  out << "order      " << rep.torsion_order << '\n';
  out << "structure  " << rep.structure << '\n';
  out << "generators " << detail::points_line(rep.generators) << '\n';
  out << "points     " << detail::points_line(rep.points) << '\n';
  out << "reduction  bound " << rep.bound_from_reduction.get_str() << " from";
  for (const auto& e : rep.primes_used) out << " #E(F_" << e.prime << ")=" << e.count;
  out << '\n';
  for (const auto& [n, v] : rep.division_poly) {
    out << "psi_" << n << "      degree " << v.polynomial.degree() << ", rational " << n << "-torsion x: ";
    if (v.rational_points.empty()) {
      out << "none\n";
    } else {
      out << detail::points_line(v.rational_points) << '\n';
    }
  }
  return kExitOk;
}

/// Re-derives every record in a jsonl file. 0 iff all are identical.
inline int cmd_recheck(const std::filesystem::path& path, bool json, std::ostream& out, std::ostream& err) {
  std::ifstream in(path);
  if (!in) {
    err << "error: cannot read " << path.string() << '\n';
    return kExitUsage;
  }
  std::string line;
  std::size_t count = 0;
  std::size_t bad = 0;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    RecheckResult r;
    try {
      r = recheck_record(line);
    } catch (const Error& e) {
      err << "error: line " << lineno << ": " << e.what() << '\n';
      return kExitUsage;
    }
    ++count;
    if (!r.identical) {
      ++bad;
      if (!json) out << "line " << lineno << ": MISMATCH in " << r.mismatch << '\n';
    }
  }
  if (count == 0) {
    err << "error: no records in " << path.string() << '\n';
    return kExitUsage;
  }
  if (json) {
    out << Json{{"records", count}, {"mismatches", bad}, {"identical", bad == 0}}.dump() << '\n';
  } else {
    out << (bad == 0 ? "identical" : "MISMATCH") << ": " << count - bad << '/' << count << " records re-derived\n";
  }
  return bad == 0 ? kExitOk : kExitFailed;
}

/// Runs a sweep to spec.output_path, or to out when no path is set.
/// 0 when every record written in this run is certified, 1 otherwise.
inline int cmd_sweep(const SweepSpec& spec, std::ostream& out, std::ostream& err) {
  SweepSummary s;
  try {
    if (spec.output_path.empty()) {
      if (spec.resume) throw InvalidParameter("--resume needs --out");
      if (spec.format == OutputFormat::csv) out << csv_header() << '\n';
      s = run_sweep(spec, out);
    } else {
      s = run_sweep_to_file(spec);
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  err << "sweep: " << s.total_jobs << " jobs, " << s.skipped << " resumed, " << s.written << " written, "
      << s.successes << " certified\n";
  for (const auto& p : s.rank3_hits) err << "rank-3 probe hit: " << p.to_string() << '\n';
  return s.successes == s.written ? kExitOk : kExitFailed;
}

}  // namespace ecfam
