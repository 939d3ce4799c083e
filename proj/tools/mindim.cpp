// mindim: command-line front end.
//
// Exit codes: 0 success, 1 verification failure, 2 usage error,
// 3 budget exhausted (or no constructive route for `witness`).

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "mindim/certificate.hpp"

using namespace mindim;

namespace {

enum Exit { kOk = 0, kVerifyFailed = 1, kUsage = 2, kBudget = 3 };

struct Globals {
  std::string format = "text";
  std::string out;
  std::uint64_t seed = 1;
  std::uint64_t budget_elements = kDefaultEnumerationCap;
  double budget_seconds = 0;
  unsigned jobs = 1;
};

class UsageError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

void emit(const Globals &g, const std::string &text) {
  if (g.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(g.out);
  if (!f) throw UsageError("cannot write " + g.out);
  f << text;
}

/// Wraps a payload in the run record. Wall time is the only field that
/// varies between identical invocations.
json run_record(const std::string &command, const json &params, const Globals &g,
                double wall, const json &result, const std::string &validation) {
  return {{"schema_version", kSchemaVersion},
          {"command", command},
          {"parameters", params},
          {"seed", g.seed},
          {"toolkit_version", toolkit_version()},
          {"wall_seconds", wall},
          {"validation", validation},
          {"result", result}};
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string report_text(const VerifyReport &r) {
  std::ostringstream os;
  os << (r.ok ? "OK" : "FAILED") << " (" << r.checks << " checks)\n";
  for (const auto &f : r.failures) os << "  failure: " << f << "\n";
  for (const auto &n : r.notes) os << "  note: " << n << "\n";
  return os.str();
}

// classify ---------------------------------------------------------------------

int cmd_classify(const Globals &g, std::uint64_t n, const std::vector<std::uint64_t> &range,
                 std::optional<std::uint64_t> primes3) {
  auto t0 = std::chrono::steady_clock::now();
  json result, params;
  std::ostringstream text;
  if (primes3) {
    auto ps = primes_with_mindim3(*primes3);
    params = {{"primes_3", *primes3}};
    result = {{"kind", "primes_3"}, {"bound", *primes3}, {"primes", ps}};
    for (std::size_t i = 0; i < ps.size(); ++i) text << (i ? " " : "") << ps[i];
    text << "\n";
  } else {
    std::uint64_t lo = n, hi = n;
    if (!range.empty()) {
      lo = range[0];
      hi = range[1];
      params = {{"range", {lo, hi}}};
    } else {
      params = {{"n", n}};
    }
    if (lo < 4 || hi < lo) throw UsageError("need 4 <= lo <= hi");
    json rows = json::array();
    for (const auto &r : classify_range(lo, hi)) {
      rows.push_back({{"n", r.n},
                      {"value", r.value},
                      {"reason_tag", r.reason_tag},
                      {"reason", r.reason_text}});
      text << r.n << "\t" << r.value << "\t" << r.reason_tag << "\t" << r.reason_text
           << "\n";
    }
    result = {{"kind", "classify"}, {"rows", rows}};
  }
  if (g.format == "json")
    emit(g, run_record("classify", params, g, seconds_since(t0), result, "n/a").dump(2) +
                "\n");
  else
    emit(g, text.str());
  return kOk;
}

// witness ------------------------------------------------------------------------

int cmd_witness(const Globals &g, std::size_t n) {
  auto t0 = std::chrono::steady_clock::now();
  WitnessFamily w;
  try {
    w = witness_family(n, g.seed);
  } catch (const ConstructiveGap &e) {
    std::cerr << "witness: " << e.what() << "\n";
    return kBudget;
  }
  json payload = witness_to_json(w);
  auto rep = verify_certificate_json(payload);
  if (g.format == "json") {
    emit(g, run_record("witness", {{"n", n}}, g, seconds_since(t0), payload,
                       rep.ok ? "ok" : "failed")
                    .dump(2) +
                "\n");
  } else {
    std::ostringstream os;
    os << "n=" << n << " size=" << w.descriptors.size() << " provenance=" << w.provenance
       << "\n"
       << "maximality: " << w.maximality << "\n"
       << "trivial intersection: " << (w.trivial_intersection ? "yes" : "no") << "\n";
    for (std::size_t i = 0; i < w.descriptors.size(); ++i)
      os << "  M" << i + 1 << " " << w.descriptors[i].label() << " order "
         << w.descriptors[i].group.order() << "\n";
    for (std::size_t i = 0; i < w.certificate.witnesses.size(); ++i)
      os << "  w" << i + 1 << " " << format_cycles(w.certificate.witnesses[i]) << "\n";
    os << "certificate: " << report_text(rep);
    emit(g, os.str());
  }
  return rep.ok ? kOk : kVerifyFailed;
}

// bruteforce --------------------------------------------------------------------

int cmd_bruteforce(const Globals &g, std::size_t n, const std::string &log) {
  auto t0 = std::chrono::steady_clock::now();
  BruteforceConfig cfg;
  cfg.jobs = g.jobs;
  cfg.log_path = log;
  cfg.budget_seconds = g.budget_seconds;
  cfg.conjugate_cap = g.budget_elements;
  cfg.intersect.enumeration_cap = g.budget_elements;
  MinDimResult r = mindim_bruteforce(n, cfg);
  json payload = mindim_result_to_json(r);
  auto rep = verify_certificate_json(payload);
  if (g.format == "json") {
    emit(g, run_record("bruteforce", {{"n", n}, {"log", log}}, g, seconds_since(t0),
                       payload, rep.ok ? "ok" : "failed")
                    .dump(2) +
                "\n");
  } else {
    std::ostringstream os;
    os << "n=" << n << " value=" << (r.complete ? std::to_string(r.value) : "?")
       << " complete=" << (r.complete ? "yes" : "no") << "\n"
       << "note: " << r.note << "\n"
       << "classes:\n";
    for (std::size_t c = 0; c < r.class_labels.size(); ++c)
      os << "  [" << c << "] " << r.class_labels[c] << " (" << r.class_sizes[c]
         << " conjugates)\n";
    std::size_t ext = 0;
    for (const auto &p : r.pairs) ext += p.status == PairStatus::Extended;
    os << "pairs examined: " << r.pairs.size() << " of " << r.tasks_total << " ("
       << ext << " extended, " << r.tasks_resumed << " resumed from log)\n";
    if (!r.pairs.empty() && r.complete) {
      const auto &last = r.pairs.back();
      os << "last pair: class " << last.a_class << " with class " << last.b.class_index
         << " conjugate " << last.b.conjugate_index << ", "
         << pair_status_name(last.status) << "\n";
    }
    if (!r.family.empty()) {
      os << "family:";
      for (const auto &m : r.family)
        os << " [" << m.class_index << "]^" << format_cycles(m.conjugator);
      os << "\n";
    }
    os << "certificate: " << report_text(rep);
    emit(g, os.str());
  }
  if (!rep.ok) return kVerifyFailed;
  return r.complete ? kOk : kBudget;
}

// verify ------------------------------------------------------------------------

int cmd_verify(const Globals &g, const std::string &path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read " + path);
  VerifyReport rep;
  try {
    json j = json::parse(in);
    if (j.contains("result") && j.at("result").is_object()) {
      if (!j.at("result").contains("kind") ||
          j.at("result").at("kind") == "classify" ||
          j.at("result").at("kind") == "primes_3" ||
          j.at("result").at("kind") == "catalog")
        throw UsageError("record carries no certificate");
      j = j.at("result");
    }
    rep = verify_certificate_json(j);
  } catch (const json::exception &e) {
    rep.expect(false, std::string("unreadable JSON: ") + e.what());
  }
  if (g.format == "json") {
    json out = {{"schema_version", kSchemaVersion},
                {"ok", rep.ok},
                {"checks", rep.checks},
                {"failures", rep.failures},
                {"notes", rep.notes}};
    emit(g, out.dump(2) + "\n");
  } else {
    emit(g, report_text(rep));
  }
  return rep.ok ? kOk : kVerifyFailed;
}

// catalog ------------------------------------------------------------------------

int cmd_catalog(const Globals &g, std::size_t n, const std::string &ambient_s) {
  auto t0 = std::chrono::steady_clock::now();
  Ambient amb = parse_ambient(ambient_s);
  ClassList cl = maximal_classes(n, amb);
  PermGroup ambient = ambient_group(n, amb);
  json rows = json::array();
  std::ostringstream os;
  os << "maximal subgroups of " << (amb == Ambient::SymmetricN ? "S" : "A") << n
     << " (" << cl.note << ")\n";
  for (std::size_t c = 0; c < cl.classes.size(); ++c) {
    const auto &d = cl.classes[c];
    json row = {{"index", c},
                {"label", d.label()},
                {"kind", d.kind_name()},
                {"order", bigint_to_json(d.group.order())},
                {"an_index", d.an_index}};
    os << "  [" << c << "] " << d.label() << "  order " << d.group.order();
    if (n <= 12) {
      ConjugateSet cs(ambient, d, g.budget_elements);
      row["conjugates"] = cs.size();
      os << "  conjugates " << cs.size();
    }
    os << "\n";
    rows.push_back(row);
  }
  json result = {{"kind", "catalog"},
                 {"n", n},
                 {"ambient", ambient_name(amb)},
                 {"complete", cl.primitive_complete},
                 {"note", cl.note},
                 {"classes", rows}};
  if (g.format == "json")
    emit(g, run_record("catalog", {{"n", n}, {"ambient", ambient_s}}, g,
                       seconds_since(t0), result, "n/a")
                    .dump(2) +
                "\n");
  else
    emit(g, os.str());
  return kOk;
}

// third-subgroup --------------------------------------------------------------------

int cmd_third(const Globals &g, std::size_t n, const std::string &a, const std::string &b) {
  auto t0 = std::chrono::steady_clock::now();
  auto A = parse_descriptor(a, n, Ambient::SymmetricN);
  auto B = parse_descriptor(b, n, Ambient::SymmetricN);
  ConstructionCase cc = third_subgroup_2p(A, B, n);
  json payload = construction_to_json(cc);
  auto rep = verify_certificate_json(payload);
  if (g.format == "json") {
    emit(g, run_record("third-subgroup", {{"n", n}, {"a", a}, {"b", b}}, g,
                       seconds_since(t0), payload, rep.ok ? "ok" : "failed")
                    .dump(2) +
                "\n");
  } else {
    std::ostringstream os;
    os << "case " << cc.case_number << " (" << case_tag_name(cc.tag) << "), branch "
       << cc.branch << (cc.swapped ? ", inputs exchanged" : "") << "\n";
    os << "points:";
    for (const auto &[name, x] : cc.points) os << " " << name << "=" << x;
    os << "\nC = " << cc.C.label() << "\n";
    if (cc.chain) os << "chain k=" << cc.chain->k() << ", gamma formula " << cc.gamma_formula << "\n";
    for (const auto &bl : cc.bullets)
      os << "  " << bl.printed << " = " << format_cycles(bl.w) << " in " << bl.role
         << (bl.ok ? "  ok" : "  FAILED: " + bl.failure) << "\n";
    os << "certificate: " << report_text(rep);
    emit(g, os.str());
  }
  return rep.ok && cc.valid ? kOk : kVerifyFailed;
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"Minimal maximal irredundant families of maximal subgroups of A_n"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--format", g.format, "Output format")
      ->check(CLI::IsMember({"json", "text"}))
      ->capture_default_str();
  app.add_option("--out", g.out, "Write output to FILE instead of stdout");
  app.add_option("--seed", g.seed, "Seed for randomized searches")->capture_default_str();
  app.add_option("--budget-elements", g.budget_elements,
                 "Cap on enumerated group elements and conjugates")
      ->capture_default_str();
  app.add_option("--budget-seconds", g.budget_seconds,
                 "Wall-clock budget for bruteforce (0 = none)")
      ->capture_default_str();
  app.add_option("--jobs", g.jobs, "Worker threads for bruteforce")
      ->check(CLI::Range(1u, 256u))
      ->capture_default_str();
  app.fallthrough();

  std::uint64_t cn = 0, primes3 = 0;
  std::vector<std::uint64_t> range;
  auto *classify = app.add_subcommand("classify", "Value of MinDim(A_n) with its reason");
  auto *cn_opt = classify->add_option("n", cn, "Degree");
  auto *range_opt = classify->add_option("--range", range, "Degrees lo..hi")->expected(2);
  auto *p3_opt =
      classify->add_option("--primes-3", primes3, "Primes p <= P with MinDim(A_2p) = 3");
  cn_opt->excludes(range_opt)->excludes(p3_opt);
  range_opt->excludes(p3_opt);

  std::size_t wn = 0;
  auto *witness = app.add_subcommand("witness", "Maximal irredundant family of minimal size");
  witness->add_option("n", wn, "Degree")->required();

  std::size_t bn = 0;
  std::string log;
  auto *brute = app.add_subcommand("bruteforce", "Exhaustive MinDim for 4 <= n <= 12");
  brute->add_option("n", bn, "Degree")->required()->check(CLI::Range(4, 12));
  brute->add_option("--log", log, "Resumable JSON-lines log");

  std::string vpath;
  auto *verify = app.add_subcommand("verify", "Re-check a certificate file");
  verify->add_option("file", vpath, "Certificate JSON")->required();

  std::size_t kn = 0;
  std::string amb = "an";
  auto *catalog = app.add_subcommand("catalog", "Maximal subgroup classes");
  catalog->add_option("n", kn, "Degree")->required()->check(CLI::Range(4, 256));
  catalog->add_option("--ambient", amb, "an|sn")
      ->check(CLI::IsMember({"an", "sn"}))
      ->capture_default_str();

  std::size_t tn = 0;
  std::string ta, tb;
  auto *third = app.add_subcommand("third-subgroup",
                                   "Third subgroup C for a pair of maximal subgroups of S_2p");
  third->add_option("--n", tn, "Degree 2p")->required();
  third->add_option("--a", ta, "Descriptor, e.g. intransitive:{1,2,3}")->required();
  third->add_option("--b", tb, "Descriptor, e.g. imprimitive:{1,2|3,4|...}")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  try {
    if (*classify) {
      if (cn_opt->count() == 0 && range.empty() && p3_opt->count() == 0)
        throw UsageError("classify needs n, --range or --primes-3");
      return cmd_classify(g, cn, range,
                          p3_opt->count() ? std::optional(primes3) : std::nullopt);
    }
    if (*witness) return cmd_witness(g, wn);
    if (*brute) return cmd_bruteforce(g, bn, log);
    if (*verify) return cmd_verify(g, vpath);
    if (*catalog) return cmd_catalog(g, kn, amb);
    if (*third) return cmd_third(g, tn, ta, tb);
  } catch (const BudgetExceeded &e) {
    std::cerr << "budget exhausted: " << e.what() << "\n";
    return kBudget;
  } catch (const UsageError &e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
