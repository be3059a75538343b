#pragma once

// Parameter sweeps: every (m, {p < q < r}) from a spec, computed by a worker
// pool and written in lexicographic order by a single writer.

#include <algorithm>
#include <atomic>
#include <condition_variable>
#include <cstddef>
#include <exception>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <ostream>
#include <string>
#include <thread>
#include <vector>

#include "ecfam/errors.hpp"
#include "ecfam/family.hpp"
#include "ecfam/integer.hpp"
#include "ecfam/record.hpp"

namespace ecfam {

enum class OutputFormat { jsonl, csv };

inline const char* to_string(OutputFormat f) { return f == OutputFormat::jsonl ? "jsonl" : "csv"; }

struct SweepSpec {
  std::vector<Integer> m_values;
  std::vector<Integer> prime_pool;
  VerifyOptions options;
  std::filesystem::path output_path;  // empty: caller supplies the stream
  OutputFormat format = OutputFormat::jsonl;
  unsigned threads = 0;          // 0: hardware concurrency
  bool hypothesis_mode = false;  // every m must be 2 (mod 32)
  bool resume = false;
};

/// start, start + step, ..., count terms.
inline std::vector<Integer> m_progression(const Integer& start, const Integer& step, std::size_t count) {
  std::vector<Integer> out;
  out.reserve(count);
  Integer m = start;
  for (std::size_t i = 0; i < count; ++i, m += step) out.push_back(m);
  return out;
}

/// Throws InvalidParameter, PrimeIsTwo or NotPrime for a bad spec.
inline void validate_spec(const SweepSpec& spec) {
  if (spec.prime_pool.empty()) throw InvalidParameter("prime pool is empty");
  if (spec.m_values.empty()) throw InvalidParameter("no m values");
  for (const auto& p : spec.prime_pool) {
    if (p == 2) throw PrimeIsTwo();
    if (!is_prime(p)) throw NotPrime(p.get_str());
  }
  for (const auto& m : spec.m_values) {
    if (m <= 0) throw InvalidParameter("m must be a positive integer, got " + m.get_str());
    if (spec.hypothesis_mode && !congruent_two_mod_power_of_two(m, kHypothesisTwoAdicExponent))
      throw InvalidParameter("hypothesis mode: m = " + m.get_str() + " is not 2 (mod 32)");
  }
  if (spec.options.num_reduction_primes == 0) throw InvalidParameter("num_reduction_primes must be positive");
}

/// Jobs in lexicographic (m, p, q, r) order; duplicates removed. Triples
/// that share a factor with m are kept and flagged in their records.
inline std::vector<FamilyParams> sweep_jobs(const SweepSpec& spec) {
  validate_spec(spec);
  auto ms = spec.m_values;
  auto pool = spec.prime_pool;
  std::sort(ms.begin(), ms.end());
  ms.erase(std::unique(ms.begin(), ms.end()), ms.end());
  std::sort(pool.begin(), pool.end());
  pool.erase(std::unique(pool.begin(), pool.end()), pool.end());
  std::vector<FamilyParams> jobs;
  for (const auto& m : ms)
    for (std::size_t i = 0; i < pool.size(); ++i)
      for (std::size_t j = i + 1; j < pool.size(); ++j)
        for (std::size_t k = j + 1; k < pool.size(); ++k) jobs.push_back({m, pool[i], pool[j], pool[k]});
  return jobs;
}

struct SweepSummary {
  std::size_t total_jobs = 0;
  std::size_t skipped = 0;  // already present when resuming
  std::size_t written = 0;
  std::size_t successes = 0;
  std::vector<FamilyParams> rank3_hits;
};

inline std::string format_record(const CurveRecord& rec, OutputFormat fmt) {
  return fmt == OutputFormat::jsonl ? to_jsonl(rec) : to_csv_row(rec);
}

/// Computes jobs[skip..] and writes one line each to out, in job order.
/// A failed write or a failed job stops the sweep after the lines already
/// written; the exception is rethrown.
inline SweepSummary run_sweep(const SweepSpec& spec, std::ostream& out, std::size_t skip = 0) {
  const auto jobs = sweep_jobs(spec);
  SweepSummary summary;
  summary.total_jobs = jobs.size();
  summary.skipped = std::min(skip, jobs.size());
  const std::size_t n = jobs.size();

  struct Done {
    std::string line;
    bool success = false;
    bool rank3 = false;
    std::exception_ptr error;
  };
  std::mutex mu;
  std::condition_variable cv;
  std::map<std::size_t, Done> done;
  std::atomic<std::size_t> next{summary.skipped};
  std::atomic<bool> stop{false};

  auto worker = [&] {
    while (!stop.load()) {
      const std::size_t i = next.fetch_add(1);
      if (i >= n) return;
      Done d;
      try {
        const CurveRecord rec = compute_record(jobs[i], spec.options);
        d.line = format_record(rec, spec.format);
        d.success = rec.success();
        d.rank3 = rec.certificate.rank3_witness.has_value();
      } catch (...) {
        d.error = std::current_exception();
      }
      {
        std::lock_guard lock(mu);
        done.emplace(i, std::move(d));
      }
      cv.notify_all();
    }
  };

  unsigned threads = spec.threads != 0 ? spec.threads : std::max(1U, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(1, n - summary.skipped)));
  std::exception_ptr failure;
  {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (std::size_t i = summary.skipped; i < n; ++i) {
      Done d;
      {
        std::unique_lock lock(mu);
        cv.wait(lock, [&] { return done.count(i) != 0; });
        d = std::move(done.at(i));
        done.erase(i);
      }
      if (d.error) {
        failure = d.error;
        break;
      }
      out << d.line << '\n';
      out.flush();
      if (!out) {
        failure = std::make_exception_ptr(Error("write failed after " + std::to_string(summary.written) + " records"));
        break;
      }
      ++summary.written;
      if (d.success) ++summary.successes;
      if (d.rank3) summary.rank3_hits.push_back(jobs[i]);
    }
    stop.store(true);
  }
  if (failure) std::rethrow_exception(failure);
  return summary;
}

namespace detail {

// Complete records already in path; a trailing partial line is cut off.
inline std::size_t checkpoint_records(const std::filesystem::path& path, OutputFormat fmt) {
  std::error_code ec;
  if (!std::filesystem::exists(path, ec)) return 0;
  std::string content;
  {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot read " + path.string());
    content.assign(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
  }
  const auto last_nl = content.rfind('\n');
  const std::size_t keep = last_nl == std::string::npos ? 0 : last_nl + 1;
  if (keep != content.size()) std::filesystem::resize_file(path, keep);
  std::size_t lines = static_cast<std::size_t>(std::count(content.begin(), content.begin() + static_cast<std::ptrdiff_t>(keep), '\n'));
  if (fmt == OutputFormat::csv && lines > 0) --lines;  // header
  return lines;
}

}  // namespace detail

/// Writes to spec.output_path. With resume, existing complete records are
/// kept and the sweep continues after them.
inline SweepSummary run_sweep_to_file(const SweepSpec& spec) {
  if (spec.output_path.empty()) throw InvalidParameter("no output path");
  validate_spec(spec);
  std::size_t skip = 0;
  bool need_header = spec.format == OutputFormat::csv;
  if (spec.resume) {
    skip = detail::checkpoint_records(spec.output_path, spec.format);
    std::error_code ec;
    if (std::filesystem::exists(spec.output_path, ec) && std::filesystem::file_size(spec.output_path, ec) > 0)
      need_header = false;
  }
  std::ofstream out(spec.output_path, spec.resume ? std::ios::app : std::ios::trunc);
  if (!out) throw Error("cannot open " + spec.output_path.string());
  if (need_header) out << csv_header() << '\n';
  return run_sweep(spec, out, skip);
}

}  // namespace ecfam
