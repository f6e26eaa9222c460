#include "hcx/cli.hpp"

#include <sstream>

namespace hcx {

namespace {

using Clock = std::chrono::steady_clock;

std::string set_string(const std::vector<int>& dims, const char* sep = ",") {
  std::string s = "{";
  for (std::size_t i = 0; i < dims.size(); ++i) s += (i ? sep : "") + std::to_string(dims[i]);
  return s + "}";
}

template <typename T>
std::string join(const std::vector<T>& values, const char* sep) {
  std::ostringstream out;
  for (std::size_t i = 0; i < values.size(); ++i) out << (i ? sep : "") << values[i];
  return out.str();
}

int floor_div(int a, int b) { return a >= 0 ? a / b : -((-a + b - 1) / b); }
int ceil_div(int a, int b) { return -floor_div(-a, b); }

// Integer solutions of (n-4)/3 <= i <= (2n-5)/3, clipped to -1..n-2.
std::string expected_range(int n) {
  const int lo = std::max(-1, ceil_div(n - 4, 3));
  const int hi = std::min(n - 2, floor_div(2 * n - 5, 3));
  if (lo > hi) return "none";
  return std::to_string(lo) + " <= i <= " + std::to_string(hi);
}

const char* mark(bool ok) { return ok ? "ok" : "FAIL"; }

Json row_json(const ConjectureRow& r) {
  return Json{{"n", r.n},
              {"expected", r.expected},
              {"observed", r.observed},
              {"method", r.method},
              {"complete", r.complete},
              {"primalMorseOk", r.primalMorseOk},
              {"dualMorseOk", r.dualMorseOk},
              {"acyclicOk", r.acyclicOk},
              {"symmetryOk", r.symmetryOk},
              {"witnessOk", r.witnessOk},
              {"verdict", r.verdict()}};
}

std::string graded_header(std::size_t count) {
  std::string s;
  for (std::size_t i = 0; i < count; ++i) s += " " + std::to_string(static_cast<int>(i) - 1) + " |";
  return s;
}

std::string graded_row(const std::vector<std::uint64_t>& v) {
  std::string s;
  for (auto x : v) s += " " + std::to_string(x) + " |";
  return s;
}

class Stopwatch {
 public:
  Stopwatch(std::ostream* log, bool enabled) : log_(log), enabled_(enabled), start_(Clock::now()) {}
  void lap(const std::string& what) {
    if (!enabled_ || !log_) return;
    const auto now = Clock::now();
    *log_ << "  " << what << ": " << std::chrono::duration<double>(now - start_).count() << " s\n";
    start_ = now;
  }

 private:
  std::ostream* log_;
  bool enabled_;
  Clock::time_point start_;
};

}  // namespace

OutputFormat parse_format(const std::string& name) {
  if (name == "json") return OutputFormat::Json;
  if (name == "csv") return OutputFormat::Csv;
  if (name == "md" || name == "markdown") return OutputFormat::Markdown;
  throw ValidationError("unsupported format \"" + name + "\" (expected json, csv or md)");
}

bool ConjectureRow::pass() const {
  return complete && observed == expected && primalMorseOk && dualMorseOk && acyclicOk && symmetryOk && witnessOk;
}

std::string ConjectureRow::verdict() const {
  if (!complete) return "INCOMPLETE";
  return pass() ? "PASS" : "FAIL";
}

bool ConjectureReport::pass() const {
  return std::all_of(rows.begin(), rows.end(), [](const ConjectureRow& r) { return r.pass(); });
}

ConjectureRow conjecture_row(int n, ResultCache& cache, const Budget& budget, const HomologyOptions& options,
                             std::ostream* log) {
  ConjectureRow row;
  row.n = n;
  budget.require_homology(n);
  Stopwatch watch(log, log != nullptr);

  const FaceTable table = cache.faces(n, budget);
  row.fVector = f_vector(table).values();
  watch.lap("n = " + std::to_string(n) + " faces");

  auto note = [&row](const CheckReport& r) {
    if (r.ok) return;
    for (const auto& v : r.violations) row.failures.push_back(r.name + ": " + v);
  };

  std::vector<MorseNumbers> numbers;
  row.acyclicOk = true;
  for (bool dual : {false, true}) {
    const MatchingMap map = cache.matching(table, dual);
    CheckReport morse(dual ? "dual matching" : "primal matching");
    morse.merge(verify_well_defined(table, map));
    morse.merge(check_critical_shape(table, map));
    const MorseDigraph g = build_digraph(table, map);
    const AcyclicityCertificate cert = cache.certificate(g, n, dual);
    const bool acyclic = cert.acyclic() && verify_certificate(g, cert);
    if (!acyclic) row.failures.push_back(std::string(dual ? "dual" : "primal") + " digraph has a cycle");
    row.acyclicOk = row.acyclicOk && acyclic;
    MorseNumbers mn = morse_numbers(table, map);
    morse.merge(check_thresholds(mn));
    note(morse);
    (dual ? row.dualMorseOk : row.primalMorseOk) = morse.ok;
    (dual ? row.dualMorse : row.primalMorse) = mn.m.values();
    numbers.push_back(std::move(mn));
    watch.lap(std::string(dual ? "dual" : "primal") + " matching");
  }

  std::vector<BettiTable> tables;
  for (const auto& coeff : coefficient_plan(n)) tables.push_back(cache.betti(table, coeff, options));
  const ConjectureCheck check = assess_conjecture(n, tables);
  row.expected = check.expected;
  row.observed = check.observed;
  row.method = check.method;
  row.complete = check.complete;
  row.tables = check.tables;
  watch.lap("homology (" + check.method + ")");

  const BettiTable& base = check.tables.front();
  for (std::size_t i = 0; i < numbers.size(); ++i) {
    const CheckReport inequalities = morse_inequalities(numbers[i], base);
    note(inequalities);
    (numbers[i].dual ? row.dualMorseOk : row.primalMorseOk) &= inequalities.ok;
  }
  const CheckReport symmetry = check_symmetry(base);
  note(symmetry);
  row.symmetryOk = symmetry.ok;

  row.witnessOk = true;
  for (int k : witness_dimensions(n)) {
    const WitnessSpec spec = free_face_family(n, k);
    CheckReport w = verify_witness(spec, cycle_witness(spec));
    w.merge(check_pairwise_cancellation(spec));
    note(w);
    row.witnessOk = row.witnessOk && w.ok;
  }
  watch.lap("witnesses");
  if (row.observed != row.expected) {
    row.failures.push_back("observed " + set_string(row.observed) + ", expected " + set_string(row.expected));
  }
  return row;
}

std::string render_report(const ConjectureReport& report, OutputFormat format) {
  std::ostringstream out;
  switch (format) {
    case OutputFormat::Json: {
      Json rows = Json::array();
      for (const auto& r : report.rows) rows.push_back(row_json(r));
      out << Json{{"rows", std::move(rows)}}.dump(2) << "\n";
      break;
    }
    case OutputFormat::Csv:
      out << "n,expected,observed,method,primalMorseOk,dualMorseOk,acyclicOk,symmetryOk,witnessOk,verdict\n";
      for (const auto& r : report.rows) {
        out << r.n << "," << set_string(r.expected, " ") << "," << set_string(r.observed, " ") << "," << r.method << ","
            << r.primalMorseOk << "," << r.dualMorseOk << "," << r.acyclicOk << "," << r.symmetryOk << ","
            << r.witnessOk << "," << r.verdict() << "\n";
      }
      break;
    case OutputFormat::Markdown:
      out << "| n | expected range (3i+5)/2 <= n <= 3i+4 | expected | observed | method | primal Morse | dual Morse | "
             "acyclic | symmetry | witnesses | verdict |\n";
      out << "|---|---|---|---|---|---|---|---|---|---|---|\n";
      for (const auto& r : report.rows) {
        out << "| " << r.n << " | " << expected_range(r.n) << " | " << set_string(r.expected, ", ") << " | "
            << set_string(r.observed, ", ") << " | " << r.method << " | " << mark(r.primalMorseOk) << " | "
            << mark(r.dualMorseOk) << " | " << mark(r.acyclicOk) << " | " << mark(r.symmetryOk) << " | "
            << mark(r.witnessOk) << " | " << r.verdict() << " |\n";
      }
      break;
  }
  return out.str();
}

std::string render_full_report(const ConjectureReport& report, OutputFormat format) {
  if (format == OutputFormat::Json) {
    Json rows = Json::array();
    for (const auto& r : report.rows) {
      Json row = row_json(r);
      row["fVector"] = r.fVector;
      row["primalMorse"] = r.primalMorse;
      row["dualMorse"] = r.dualMorse;
      Json tables = Json::array();
      for (const auto& t : r.tables) tables.push_back(betti_json(t));
      row["betti"] = std::move(tables);
      row["failures"] = r.failures;
      rows.push_back(std::move(row));
    }
    return Json{{"rows", std::move(rows)}}.dump(2) + "\n";
  }
  if (format == OutputFormat::Csv) {
    std::ostringstream out;
    out << "n,series,dim,value\n";
    for (const auto& r : report.rows) {
      auto emit = [&](const std::string& series, const std::vector<std::uint64_t>& v) {
        for (std::size_t i = 0; i < v.size(); ++i) out << r.n << "," << series << "," << static_cast<int>(i) - 1 << "," << v[i] << "\n";
      };
      emit("f", r.fVector);
      emit("m-primal", r.primalMorse);
      emit("m-dual", r.dualMorse);
      for (const auto& t : r.tables) emit("betti-" + t.coefficients.tag(), t.betti.values());
    }
    return out.str();
  }

  std::ostringstream out;
  out << "# h-complex verification report\n\n## Summary\n\n" << render_report(report, format);
  for (const auto& r : report.rows) {
    out << "\n## n = " << r.n << "\n\n";
    out << "|  |" << graded_header(r.fVector.size()) << "\n|---|";
    for (std::size_t i = 0; i < r.fVector.size(); ++i) out << "---|";
    out << "\n| faces |" << graded_row(r.fVector) << "\n";
    out << "| critical (primal) |" << graded_row(r.primalMorse) << "\n";
    out << "| critical (dual) |" << graded_row(r.dualMorse) << "\n";
    for (const auto& t : r.tables) out << "| Betti over " << t.coefficients.tag() << " |" << graded_row(t.betti.values()) << "\n";
    for (const auto& t : r.tables) {
      for (const auto& [d, factors] : t.torsion) {
        out << "\nTorsion in dimension " << d << ":";
        for (const auto& f : factors) out << " " << f;
        out << "\n";
      }
    }
    if (!r.failures.empty()) {
      out << "\nFailures:\n\n";
      for (const auto& f : r.failures) out << "- " << f << "\n";
    }
  }
  return out.str();
}

namespace {

int require(const std::optional<int>& value, const char* flag) {
  if (!value) throw ValidationError(std::string("missing required option ") + flag);
  return *value;
}

void emit_json(std::ostream& out, const Json& doc) { out << doc.dump(2) << "\n"; }

int run_build(const RunConfig& c, ResultCache& cache, OutputFormat format, std::ostream& out) {
  const FaceTable table = cache.faces(require(c.n, "--n"), c.budget);
  switch (format) {
    case OutputFormat::Json: emit_json(out, faces_json(table)); break;
    case OutputFormat::Csv:
      out << "id,perm,face,dim\n";
      for (FaceId id = 0; id < table.size(); ++id) {
        out << id << "," << table.perm(id).to_string() << "," << table.face(id).to_string() << ","
            << table.face(id).dimension() << "\n";
      }
      break;
    case OutputFormat::Markdown:
      out << "| id | perm | face | dim |\n|---|---|---|---|\n";
      for (FaceId id = 0; id < table.size(); ++id) {
        out << "| " << id << " | " << table.perm(id).to_string() << " | " << table.face(id).to_core_string() << " | "
            << table.face(id).dimension() << " |\n";
      }
      break;
  }
  return kExitPass;
}

int run_match(const RunConfig& c, ResultCache& cache, OutputFormat format, std::ostream& out, std::ostream& log) {
  const FaceTable table = cache.faces(require(c.n, "--n"), c.budget);
  const MatchingMap map = cache.matching(table, c.dual);
  CheckReport report = verify_well_defined(table, map);
  report.merge(check_critical_shape(table, map));
  for (const auto& v : report.violations) log << "violation: " << v << "\n";
  switch (format) {
    case OutputFormat::Json: {
      Json doc = matching_json(map);
      doc["wellDefined"] = report.ok;
      emit_json(out, doc);
      break;
    }
    case OutputFormat::Csv:
      out << "id,face,partner,type\n";
      for (FaceId id = 0; id < table.size(); ++id) {
        out << id << "," << table.face(id).to_string() << ",";
        if (map.matched(id)) out << map.pairs[id];
        out << "," << (map.diagnosis[id] ? to_string(map.diagnosis[id]->type) : "critical") << "\n";
      }
      break;
    case OutputFormat::Markdown: {
      const auto critical = critical_faces(table, map);
      out << "| dim | critical faces |\n|---|---|\n";
      for (int d = -1; d <= critical.max_dim(); ++d) {
        std::vector<std::string> names;
        for (FaceId id : critical[d]) names.push_back(table.face(id).to_core_string());
        out << "| " << d << " | " << join(names, ", ") << " |\n";
      }
      out << "\nmatched pairs: " << map.pair_count() << ", well-defined: " << (report.ok ? "yes" : "no") << "\n";
      break;
    }
  }
  return report.ok ? kExitPass : kExitFalsified;
}

int run_morse(const RunConfig& c, ResultCache& cache, OutputFormat format, std::ostream& out, std::ostream& log) {
  const int n = require(c.n, "--n");
  const FaceTable table = cache.faces(n, c.budget);
  const MatchingMap map = cache.matching(table, c.dual);
  const MorseDigraph g = build_digraph(table, map);
  const AcyclicityCertificate cert = cache.certificate(g, n, c.dual);
  const bool certified = verify_certificate(g, cert);
  const MorseNumbers mn = morse_numbers(table, map);
  const CheckReport thresholds = check_thresholds(mn);
  for (const auto& v : thresholds.violations) log << "violation: " << v << "\n";
  if (!cert.acyclic()) {
    std::vector<std::string> cycle;
    for (FaceId id : cert.cycleWitness) cycle.push_back(table.face(id).to_core_string());
    log << "cycle: " << join(cycle, " -> ") << "\n";
  }
  switch (format) {
    case OutputFormat::Json: {
      Json doc = morse_json(mn, cert);
      doc["thresholdsOk"] = thresholds.ok;
      emit_json(out, doc);
      break;
    }
    case OutputFormat::Csv:
      out << "dim,m\n";
      for (int d = -1; d <= mn.m.max_dim(); ++d) out << d << "," << mn.m[d] << "\n";
      break;
    case OutputFormat::Markdown:
      out << "|  |" << graded_header(mn.m.size()) << "\n|---|";
      for (std::size_t i = 0; i < mn.m.size(); ++i) out << "---|";
      out << "\n| m |" << graded_row(mn.m.values()) << "\n\nacyclic: " << (cert.acyclic() ? "yes" : "no") << "\n";
      break;
  }
  return cert.acyclic() && certified && thresholds.ok ? kExitPass : kExitFalsified;
}

int run_homology(const RunConfig& c, ResultCache& cache, OutputFormat format, std::ostream& out,
                 const HomologyOptions& options) {
  const int n = require(c.n, "--n");
  c.budget.require_homology(n);
  const FaceTable table = cache.faces(n, c.budget);
  const BettiTable t = cache.betti(table, Coefficients::parse(c.coefficients), options);
  switch (format) {
    case OutputFormat::Json: emit_json(out, betti_json(t)); break;
    case OutputFormat::Csv:
      out << "dim,betti,torsion,complete\n";
      for (int d = -1; d <= t.betti.max_dim(); ++d) {
        std::vector<BigInt> factors;
        for (const auto& [dim, f] : t.torsion)
          if (dim == d) factors = f;
        out << d << "," << t.betti[d] << "," << join(factors, " ") << "," << t.complete[d] << "\n";
      }
      break;
    case OutputFormat::Markdown:
      out << "|  |" << graded_header(t.betti.size()) << "\n|---|";
      for (std::size_t i = 0; i < t.betti.size(); ++i) out << "---|";
      out << "\n| Betti over " << t.coefficients.tag() << " |" << graded_row(t.betti.values()) << "\n";
      break;
  }
  return t.all_complete() ? kExitPass : kExitUsage;
}

int run_witness(const RunConfig& c, OutputFormat format, std::ostream& out, std::ostream& log) {
  const int n = require(c.n, "--n");
  const std::vector<int> ks = c.k ? std::vector<int>{*c.k} : witness_dimensions(n);
  bool ok = true;
  Json all = Json::array();
  std::ostringstream text;
  if (format == OutputFormat::Csv) text << "n,k,perm,face,sign\n";
  if (format == OutputFormat::Markdown) text << "| n | k | face | sign |\n|---|---|---|---|\n";
  for (int k : ks) {
    const WitnessSpec spec = free_face_family(n, k);
    const SignedChain z = cycle_witness(spec);
    CheckReport report = verify_witness(spec, z);
    report.merge(check_pairwise_cancellation(spec));
    for (const auto& v : report.violations) log << "violation: " << v << "\n";
    ok = ok && report.ok;
    Json doc = witness_json(spec, z);
    doc["verified"] = report.ok;
    for (const auto& term : doc["terms"]) {
      const auto sign = term["sign"].get<int>();
      if (format == OutputFormat::Csv) {
        text << n << "," << k << "," << term["perm"].get<std::string>() << "," << term["face"].get<std::string>() << ","
             << sign << "\n";
      } else if (format == OutputFormat::Markdown) {
        text << "| " << n << " | " << k << " | " << term["face"].get<std::string>() << " | " << (sign > 0 ? "+" : "-")
             << " |\n";
      }
    }
    all.push_back(std::move(doc));
  }
  if (format != OutputFormat::Json) {
    out << text.str();
  } else if (c.k) {
    emit_json(out, all.at(0));
  } else {
    emit_json(out, Json{{"n", n}, {"witnesses", std::move(all)}});
  }
  return ok ? kExitPass : kExitFalsified;
}

int run_conjecture(const RunConfig& c, ResultCache& cache, OutputFormat format, bool full, std::ostream& out,
                   std::ostream& log, const HomologyOptions& options) {
  int first = 1, last = 0;
  if (c.n && c.nMax) throw ValidationError("give either --n or --n-max, not both");
  if (c.n) {
    first = last = *c.n;
  } else {
    last = require(c.nMax, "--n-max");
  }
  if (last < 1) throw ValidationError("n must be positive");
  for (int n = first; n <= last; ++n) c.budget.require_homology(n);
  ConjectureReport report;
  for (int n = first; n <= last; ++n) {
    if (c.verbosity > 0) log << "n = " << n << "\n";
    report.rows.push_back(conjecture_row(n, cache, c.budget, options, c.verbosity > 0 ? &log : nullptr));
    for (const auto& f : report.rows.back().failures) log << "n = " << n << ": " << f << "\n";
  }
  out << (full ? render_full_report(report, format) : render_report(report, format));
  const bool incomplete =
      std::any_of(report.rows.begin(), report.rows.end(), [](const ConjectureRow& r) { return !r.complete; });
  if (report.pass()) return kExitPass;
  return incomplete ? kExitUsage : kExitFalsified;
}

}  // namespace

int execute(const RunConfig& config, std::ostream& out, std::ostream& log) {
  try {
    const OutputFormat format =
        config.format.value_or(config.command == "report" ? OutputFormat::Markdown : OutputFormat::Json);
    HomologyOptions options;
    options.timeBudget = config.timeBudget;
    ResultCache cache(config.cacheDir, &log);
    int status = kExitUsage;
    if (config.command == "build") {
      status = run_build(config, cache, format, out);
    } else if (config.command == "match") {
      status = run_match(config, cache, format, out, log);
    } else if (config.command == "morse") {
      status = run_morse(config, cache, format, out, log);
    } else if (config.command == "homology") {
      status = run_homology(config, cache, format, out, options);
    } else if (config.command == "witness") {
      status = run_witness(config, format, out, log);
    } else if (config.command == "conjecture") {
      status = run_conjecture(config, cache, format, false, out, log, options);
    } else if (config.command == "report") {
      status = run_conjecture(config, cache, format, true, out, log, options);
    } else {
      log << "error: unknown command \"" << config.command << "\"\n";
      return kExitUsage;
    }
    if (config.verbosity > 0 && cache.enabled()) {
      log << "cache: " << cache.stats().hits << " hits, " << cache.stats().misses << " misses, "
          << cache.stats().rejected << " rejected\n";
    }
    return status;
  } catch (const ValidationError& e) {
    log << "error: " << e.what() << "\n";
  } catch (const ResourceError& e) {
    log << "error: " << e.what() << "\n";
  }
  return kExitUsage;
}

}  // namespace hcx
