// ecfam command line: verify, sweep, count, torsion, recheck.

#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ecfam/ecfam.hpp"

namespace {

// Accepts arbitrary-precision decimal integers in CLI arguments.
std::string integer_check(const std::string& s) {
  try {
    ecfam::parse_integer(s);
    return {};
  } catch (const std::invalid_argument&) {
    return "not an integer: " + s;
  }
}

std::vector<ecfam::Integer> parse_list(const std::vector<std::string>& items) {
  std::vector<ecfam::Integer> out;
  for (const auto& s : items)
    if (!s.empty()) out.push_back(ecfam::parse_integer(s));
  return out;
}

std::vector<std::string> split_commas(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  for (std::string item; std::getline(in, item, ',');) out.push_back(item);
  return out;
}

// "2,34,66" or "start:step:count".
std::vector<ecfam::Integer> parse_m_list(const std::vector<std::string>& items) {
  if (items.size() == 1 && items[0].find(':') != std::string::npos) {
    const std::string& s = items[0];
    const auto a = s.find(':');
    const auto b = s.find(':', a + 1);
    if (b == std::string::npos) throw CLI::ValidationError("--m-list", "progression must be start:step:count");
    const auto count = ecfam::parse_integer(s.substr(b + 1));
    if (count < 0 || !ecfam::fits_u64(count)) throw CLI::ValidationError("--m-list", "bad progression count");
    return ecfam::m_progression(ecfam::parse_integer(s.substr(0, a)), ecfam::parse_integer(s.substr(a + 1, b - a - 1)),
                                static_cast<std::size_t>(ecfam::to_u64(count)));
  }
  return parse_list(items);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact arithmetic for the curves y^2 = x^3 - m^2 x + (pqr)^2"};
  app.require_subcommand(1);
  const CLI::Validator integer(integer_check, "INT");

  std::string m = "2", p, q, r, b, c, mod;
  std::string height = "10000";
  unsigned reduction_primes = 5;
  bool json = false;
  std::string out_path;

  auto* verify = app.add_subcommand("verify", "Certify torsion and rank >= 2 for one family member");
  verify->add_option("--m", m, "m > 0")->required()->check(integer);
  verify->add_option("--p", p, "odd prime")->required()->check(integer);
  verify->add_option("--q", q, "odd prime")->required()->check(integer);
  verify->add_option("--r", r, "odd prime")->required()->check(integer);
  verify->add_option("--height-bound", height, "rank-3 probe height")->check(integer);
  verify->add_option("--reduction-primes", reduction_primes, "primes for the reduction bound")->check(CLI::PositiveNumber);
  verify->add_option("--out", out_path, "write the jsonl record here");
  verify->add_flag("--json", json, "print the record instead of the summary");

  std::vector<std::string> m_list;
  std::string pool;
  std::string format = "jsonl";
  unsigned threads = 0;
  bool hypothesis_mode = false, resume = false;
  auto* sweep = app.add_subcommand("sweep", "Verify every (m, {p<q<r}) combination");
  sweep->add_option("--m-list", m_list, "m values, comma separated, or start:step:count")->required()->delimiter(',');
  sweep->add_option("--prime-pool", pool, "odd primes, comma separated")->expected(0, 1);
  sweep->add_option("--height-bound", height, "rank-3 probe height")->check(integer);
  sweep->add_option("--reduction-primes", reduction_primes, "primes for the reduction bound")->check(CLI::PositiveNumber);
  sweep->add_option("--out", out_path, "output file (default stdout)");
  sweep->add_option("--format", format, "jsonl or csv")->check(CLI::IsMember({"jsonl", "csv"}));
  sweep->add_option("--threads", threads, "worker threads (0 = all cores)");
  sweep->add_flag("--hypothesis-mode", hypothesis_mode, "require m = 2 (mod 32)");
  sweep->add_flag("--resume", resume, "continue after the complete records already in --out");

  auto* count = app.add_subcommand("count", "#E(F_ell) for y^2 = x^3 + bx + c");
  count->add_option("--b", b)->required()->check(integer);
  count->add_option("--c", c)->required()->check(integer);
  count->add_option("--mod", mod, "prime modulus")->required()->check(integer);
  count->add_flag("--json", json);

  auto* torsion = app.add_subcommand("torsion", "Torsion subgroup of y^2 = x^3 + bx + c");
  torsion->add_option("--b", b)->required()->check(integer);
  torsion->add_option("--c", c)->required()->check(integer);
  torsion->add_option("--reduction-primes", reduction_primes)->check(CLI::PositiveNumber);
  torsion->add_flag("--json", json);

  std::string record_path;
  auto* recheck = app.add_subcommand("recheck", "Re-derive every verdict in a jsonl record file");
  recheck->add_option("record", record_path, "jsonl file")->required();
  recheck->add_flag("--json", json);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : ecfam::kExitUsage;
  }

  using ecfam::parse_integer;
  try {
    if (*verify) {
      ecfam::VerifyOptions opts{reduction_primes, parse_integer(height)};
      std::optional<std::filesystem::path> rec;
      if (!out_path.empty()) rec = out_path;
      return ecfam::cmd_verify({parse_integer(m), parse_integer(p), parse_integer(q), parse_integer(r)}, opts, json,
                               rec, std::cout, std::cerr);
    }
    if (*sweep) {
      ecfam::SweepSpec spec;
      spec.m_values = parse_m_list(m_list);
      spec.prime_pool = parse_list(split_commas(pool));
      spec.options = {reduction_primes, parse_integer(height)};
      spec.output_path = out_path;
      spec.format = format == "csv" ? ecfam::OutputFormat::csv : ecfam::OutputFormat::jsonl;
      spec.threads = threads;
      spec.hypothesis_mode = hypothesis_mode;
      spec.resume = resume;
      return ecfam::cmd_sweep(spec, std::cout, std::cerr);
    }
    if (*count) return ecfam::cmd_count(parse_integer(b), parse_integer(c), parse_integer(mod), json, std::cout, std::cerr);
    if (*torsion) return ecfam::cmd_torsion(parse_integer(b), parse_integer(c), reduction_primes, json, std::cout, std::cerr);
    if (*recheck) return ecfam::cmd_recheck(record_path, json, std::cout, std::cerr);
  } catch (const CLI::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return ecfam::kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return ecfam::kExitUsage;
  }
  return ecfam::kExitUsage;
}
