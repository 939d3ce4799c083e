#pragma once

// Exhaustive MinDim computation for A_n, 4 <= n <= 12.
//
// Pairs {A, B} of maximal subgroups are taken with A a class representative
// and B running over representatives of the A-orbits on the conjugates of
// each class (conjugating a pair by an element of A fixes A). A pair with
// trivial intersection is maximal irredundant. Otherwise a third maximal
// subgroup C extending it is searched, first class first, then the other
// classes by ascending size. Value 2 if some pair has no extender, else 3.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <fstream>
#include <mutex>
#include <numeric>
#include <thread>

#include "irredundance.hpp"
#include "json_io.hpp"

namespace mindim {

struct BruteforceConfig {
  std::uint64_t conjugate_cap = kDefaultEnumerationCap;
  IntersectOptions intersect;
  unsigned jobs = 1;
  /// JSON-lines log; existing records are reused (resume).
  std::string log_path;
  /// Wall-clock budget for the pair scan, 0 = unlimited.
  double budget_seconds = 0;
  /// Candidate tests allowed in the size-3 family search.
  std::uint64_t triple_budget = 20'000'000;
};

enum class PairStatus { Trivial, Extended, NotExtendable };

inline const char *pair_status_name(PairStatus s) {
  switch (s) {
  case PairStatus::Trivial: return "trivial";
  case PairStatus::Extended: return "extended";
  default: return "not_extendable";
  }
}

inline PairStatus parse_pair_status(const std::string &s) {
  if (s == "trivial") return PairStatus::Trivial;
  if (s == "extended") return PairStatus::Extended;
  if (s == "not_extendable") return PairStatus::NotExtendable;
  throw std::invalid_argument("unknown pair status '" + s + "'");
}

/// A conjugate of a class representative: rep^conjugator.
struct ClassMember {
  std::size_t class_index = 0;
  std::size_t conjugate_index = 0;
  Permutation conjugator;
};

struct PairRecord {
  std::size_t a_class = 0;
  ClassMember b;
  std::uint64_t orbit_size = 0;
  BigInt intersection_order = 1;
  PairStatus status = PairStatus::Trivial;
  std::optional<ClassMember> c;
  /// For an extension: w1 in (A cap B) - C, w2 in (A cap C) - B,
  /// w3 in (B cap C) - A.
  std::vector<Permutation> witnesses;
  std::uint64_t candidates_tested = 0;
  std::vector<ClassScan> scan;
};

struct MinDimResult {
  std::size_t n = 0;
  int value = 0;
  bool complete = false;
  std::string note;
  std::vector<std::string> class_labels;
  std::vector<std::uint64_t> class_sizes;
  std::uint64_t tasks_total = 0;
  std::uint64_t tasks_resumed = 0;
  std::vector<PairRecord> pairs;
  /// Maximal irredundant family of size `value` (empty if incomplete).
  std::vector<ClassMember> family;
  std::optional<IrredundanceCertificate> family_certificate;
};

namespace detail {

inline json class_member_to_json(const ClassMember &m) {
  return {{"class", m.class_index},
          {"index", m.conjugate_index},
          {"conjugator", perm_to_json(m.conjugator)}};
}

inline ClassMember class_member_from_json(const json &j) {
  return {j.at("class").get<std::size_t>(), j.at("index").get<std::size_t>(),
          perm_from_json(j.at("conjugator"))};
}

} // namespace detail

inline json pair_record_to_json(const PairRecord &r) {
  json j = {{"a_class", r.a_class},
            {"b", detail::class_member_to_json(r.b)},
            {"orbit_size", r.orbit_size},
            {"intersection_order", bigint_to_json(r.intersection_order)},
            {"status", pair_status_name(r.status)},
            {"candidates_tested", r.candidates_tested}};
  if (r.c) j["c"] = detail::class_member_to_json(*r.c);
  if (!r.witnesses.empty()) j["witnesses"] = perms_to_json(r.witnesses);
  if (!r.scan.empty()) {
    json s = json::array();
    for (const auto &c : r.scan)
      s.push_back({{"class", c.class_index},
                   {"label", c.label},
                   {"conjugates", c.conjugates},
                   {"scanned", c.scanned},
                   {"completed", c.completed}});
    j["scan"] = s;
  }
  return j;
}

inline PairRecord pair_record_from_json(const json &j) {
  PairRecord r;
  r.a_class = j.at("a_class").get<std::size_t>();
  r.b = detail::class_member_from_json(j.at("b"));
  r.orbit_size = j.at("orbit_size").get<std::uint64_t>();
  r.intersection_order = BigInt(j.at("intersection_order").get<std::string>());
  r.status = parse_pair_status(j.at("status").get<std::string>());
  r.candidates_tested = j.value("candidates_tested", std::uint64_t{0});
  if (j.contains("c")) r.c = detail::class_member_from_json(j.at("c"));
  if (j.contains("witnesses")) r.witnesses = perms_from_json(j.at("witnesses"));
  if (j.contains("scan"))
    for (const auto &s : j.at("scan"))
      r.scan.push_back({s.at("class").get<std::size_t>(),
                        s.at("label").get<std::string>(),
                        s.at("conjugates").get<std::uint64_t>(),
                        s.at("scanned").get<std::uint64_t>(),
                        s.at("completed").get<bool>()});
  return r;
}

namespace detail {

struct PairTask {
  std::size_t a_class;
  std::size_t b_class;
  std::size_t b_index;
  std::uint64_t orbit_size;
};

/// Representatives (least index) and sizes of the orbits of `gens` acting
/// on the conjugate set.
inline std::vector<std::pair<std::size_t, std::uint64_t>>
conjugate_orbits(const ConjugateSet &cs, const std::vector<Permutation> &gens) {
  std::size_t m = cs.size();
  std::vector<std::size_t> parent(m);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t i = 0; i < m; ++i)
    for (const auto &g : gens) {
      std::size_t a = find(i), b = find(cs.act(i, g));
      if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
  std::vector<std::uint64_t> size(m, 0);
  for (std::size_t i = 0; i < m; ++i) ++size[find(i)];
  std::vector<std::pair<std::size_t, std::uint64_t>> out;
  for (std::size_t i = 0; i < m; ++i)
    if (find(i) == i) out.emplace_back(i, size[i]);
  return out;
}

class Bruteforce {
public:
  Bruteforce(std::size_t n, const BruteforceConfig &cfg)
      : n_(n), cfg_(cfg), ambient_(alternating_group(n)),
        classes_(maximal_classes(n, Ambient::AlternatingN)) {
    if (n < 4 || n > 12)
      throw std::invalid_argument("bruteforce supports 4 <= n <= 12");
    for (const auto &d : classes_.classes)
      sets_.emplace_back(ambient_, d, cfg.conjugate_cap);
    for (std::size_t c = 0; c < sets_.size(); ++c)
      self_index_.push_back(
          *sets_[c].index_of_key(sets_[c].key_of(Permutation(n))));
    scan_order_.resize(sets_.size());
    std::iota(scan_order_.begin(), scan_order_.end(), 0);
    std::stable_sort(scan_order_.begin() + 1, scan_order_.end(),
                     [&](std::size_t x, std::size_t y) {
                       return sets_[x].size() < sets_[y].size();
                     });
    for (std::size_t a = 0; a < sets_.size(); ++a) {
      const auto &gens = classes_.classes[a].group.generators();
      for (std::size_t j = 0; j < sets_.size(); ++j)
        for (auto [b, sz] : conjugate_orbits(sets_[j], gens)) {
          if (j == a && b == self_index_[a]) continue;
          tasks_.push_back({a, j, b, sz});
        }
    }
  }

  MinDimResult run() {
    MinDimResult res;
    res.n = n_;
    for (std::size_t c = 0; c < sets_.size(); ++c) {
      res.class_labels.push_back(classes_.classes[c].label());
      res.class_sizes.push_back(sets_[c].size());
    }
    res.tasks_total = tasks_.size();
    std::vector<std::optional<PairRecord>> done(tasks_.size());
    open_log(done, res);

    std::atomic<std::size_t> next{0};
    std::atomic<std::size_t> stop_at{tasks_.size()};
    std::atomic<bool> out_of_time{false};
    auto deadline = std::chrono::steady_clock::now() +
                    std::chrono::duration<double>(cfg_.budget_seconds);
    for (std::size_t t = 0; t < tasks_.size(); ++t)
      if (done[t] && done[t]->status != PairStatus::Extended) {
        stop_at = t;
        break;
      }
    std::exception_ptr error;
    auto worker = [&]() {
      try {
        for (;;) {
          std::size_t t = next.fetch_add(1);
          if (t >= tasks_.size() || t > stop_at.load()) return;
          if (done[t]) continue;
          if (cfg_.budget_seconds > 0 &&
              std::chrono::steady_clock::now() > deadline) {
            out_of_time = true;
            return;
          }
          PairRecord r = run_task(tasks_[t]);
          bool decisive = r.status != PairStatus::Extended;
          log_record(r);
          {
            std::lock_guard<std::mutex> lk(mu_);
            done[t] = std::move(r);
          }
          if (decisive) {
            std::size_t cur = stop_at.load();
            while (t < cur && !stop_at.compare_exchange_weak(cur, t)) {
            }
          }
        }
      } catch (...) {
        std::lock_guard<std::mutex> lk(mu_);
        if (!error) error = std::current_exception();
        stop_at = 0;
      }
    };
    unsigned jobs = std::max(1u, cfg_.jobs);
    if (jobs == 1) {
      worker();
    } else {
      std::vector<std::thread> pool;
      for (unsigned i = 0; i < jobs; ++i) pool.emplace_back(worker);
      for (auto &th : pool) th.join();
    }
    if (error) std::rethrow_exception(error);

    std::size_t last = std::min<std::size_t>(stop_at.load(), tasks_.size() - 1);
    bool all_done = true;
    for (std::size_t t = 0; t <= last; ++t) {
      if (done[t]) res.pairs.push_back(*done[t]);
      else all_done = false;
    }
    if (!all_done || out_of_time) {
      res.complete = false;
      res.note = "pair scan budget exhausted after " +
                 std::to_string(res.pairs.size()) + " of " +
                 std::to_string(tasks_.size()) + " pairs";
      return res;
    }
    res.complete = true;
    const PairRecord &end = res.pairs.back();
    if (end.status != PairStatus::Extended) {
      res.value = 2;
      res.family = {{end.a_class, self_index_[end.a_class], Permutation(n_)},
                    end.b};
      res.family_certificate = irredundance_certificate(family_of(res.family));
      res.note = end.status == PairStatus::Trivial
                     ? "pair with trivial intersection"
                     : "pair with no extending maximal subgroup (full scan)";
      return res;
    }
    res.value = 3;
    if (!find_triple(res)) {
      res.complete = false;
      res.note = "every pair extends, but no size-3 family with trivial "
                 "intersection was found within the triple budget";
    } else {
      res.note = "every pair extends; size-3 family with trivial intersection";
    }
    return res;
  }

  Family family_of(const std::vector<ClassMember> &ms) const {
    std::vector<FamilyMember> fm;
    for (const auto &m : ms) fm.push_back(member_of(m));
    return Family(ambient_, std::move(fm));
  }

private:
  FamilyMember member_of(const ClassMember &m) const {
    const auto &rep = classes_.classes[m.class_index];
    return {rep.group.conjugated(m.conjugator),
            rep.label() + "^" + format_cycles(m.conjugator), std::nullopt};
  }

  PermGroup group_of(std::size_t c, std::size_t i) const {
    return classes_.classes[c].group.conjugated(sets_[c].conjugator(i));
  }

  PairRecord run_task(const PairTask &task) const {
    PairRecord r;
    r.a_class = task.a_class;
    r.b = {task.b_class, task.b_index, sets_[task.b_class].conjugator(task.b_index)};
    r.orbit_size = task.orbit_size;
    const PermGroup &A = classes_.classes[task.a_class].group;
    PermGroup B = group_of(task.b_class, task.b_index);
    PermGroup I = intersect(A, B, cfg_.intersect);
    r.intersection_order = I.order();
    if (I.is_trivial()) {
      r.status = PairStatus::Trivial;
      return r;
    }
    for (std::size_t c : scan_order_) {
      ClassScan scan{c, classes_.classes[c].label(), sets_[c].size(), 0, false};
      for (std::size_t i = 0; i < sets_[c].size(); ++i) {
        ++scan.scanned;
        if ((c == task.a_class && i == self_index_[c]) ||
            (c == task.b_class && i == task.b_index))
          continue;
        ++r.candidates_tested;
        PermGroup C = group_of(c, i);
        auto w1 = generator_outside(I, C);
        if (!w1) continue;
        auto w2 = generator_outside(intersect(A, C, cfg_.intersect), B);
        if (!w2) continue;
        auto w3 = generator_outside(intersect(B, C, cfg_.intersect), A);
        if (!w3) continue;
        r.status = PairStatus::Extended;
        r.c = ClassMember{c, i, sets_[c].conjugator(i)};
        r.witnesses = {*w1, *w2, *w3};
        return r;
      }
      scan.completed = true;
      r.scan.push_back(scan);
    }
    r.status = PairStatus::NotExtendable;
    return r;
  }

  /// Size-3 family with trivial intersection extending a logged pair;
  /// pairs tried by ascending intersection order.
  bool find_triple(MinDimResult &res) const {
    std::vector<std::size_t> idx(res.pairs.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t x, std::size_t y) {
      return res.pairs[x].intersection_order < res.pairs[y].intersection_order;
    });
    std::uint64_t budget = cfg_.triple_budget;
    for (std::size_t k : idx) {
      const PairRecord &p = res.pairs[k];
      const PermGroup &A = classes_.classes[p.a_class].group;
      PermGroup B = group_of(p.b.class_index, p.b.conjugate_index);
      PermGroup I = intersect(A, B, cfg_.intersect);
      if (I.order() > 100000) continue;
      std::vector<Permutation> elts;
      I.for_each_element([&](const Permutation &x) {
        if (!x.is_identity()) elts.push_back(x);
      });
      for (std::size_t c : scan_order_)
        for (std::size_t i = 0; i < sets_[c].size(); ++i) {
          if ((c == p.a_class && i == self_index_[c]) ||
              (c == p.b.class_index && i == p.b.conjugate_index))
            continue;
          if (budget-- == 0) return false;
          PermGroup C = group_of(c, i);
          bool meets = false;
          for (const auto &x : elts)
            if (C.contains(x)) {
              meets = true;
              break;
            }
          if (meets) continue;
          std::vector<ClassMember> fam{
              {p.a_class, self_index_[p.a_class], Permutation(n_)},
              p.b,
              {c, i, sets_[c].conjugator(i)}};
          auto cert = irredundance_certificate(family_of(fam), cfg_.intersect);
          if (!cert) continue;
          res.family = std::move(fam);
          res.family_certificate = std::move(cert);
          return true;
        }
    }
    return false;
  }

  void open_log(std::vector<std::optional<PairRecord>> &done,
                MinDimResult &res) {
    if (cfg_.log_path.empty()) return;
    std::map<std::tuple<std::size_t, std::size_t, std::size_t>, std::size_t> key;
    for (std::size_t t = 0; t < tasks_.size(); ++t)
      key[{tasks_[t].a_class, tasks_[t].b_class, tasks_[t].b_index}] = t;
    bool have_header = false;
    {
      std::ifstream in(cfg_.log_path);
      std::string line;
      while (std::getline(in, line)) {
        if (line.empty()) continue;
        json j;
        try {
          j = json::parse(line);
        } catch (const json::exception &) {
          continue; // torn final line from an interrupted run
        }
        if (j.contains("kind")) {
          if (j.at("n").get<std::size_t>() != n_ ||
              j.at("tasks").get<std::uint64_t>() != tasks_.size())
            throw std::invalid_argument("log file " + cfg_.log_path +
                                        " belongs to a different run");
          have_header = true;
          continue;
        }
        PairRecord r = pair_record_from_json(j);
        auto it = key.find({r.a_class, r.b.class_index, r.b.conjugate_index});
        if (it == key.end()) continue;
        if (!done[it->second]) ++res.tasks_resumed;
        done[it->second] = std::move(r);
      }
    }
    bool torn_tail = false;
    {
      std::ifstream in(cfg_.log_path, std::ios::binary | std::ios::ate);
      if (in && in.tellg() > 0) {
        in.seekg(-1, std::ios::end);
        torn_tail = in.get() != '\n';
      }
    }
    log_.open(cfg_.log_path, std::ios::app);
    if (torn_tail) log_ << "\n";
    if (!log_) throw std::runtime_error("cannot open log " + cfg_.log_path);
    if (!have_header) {
      json h = {{"schema_version", kSchemaVersion},
                {"kind", "mindim_bruteforce_log"},
                {"n", n_},
                {"tasks", tasks_.size()}};
      log_ << h.dump() << "\n" << std::flush;
    }
  }

  void log_record(const PairRecord &r) {
    if (!log_.is_open()) return;
    std::string line = pair_record_to_json(r).dump();
    std::lock_guard<std::mutex> lk(mu_);
    log_ << line << "\n" << std::flush;
  }

  std::size_t n_;
  BruteforceConfig cfg_;
  PermGroup ambient_;
  ClassList classes_;
  std::vector<ConjugateSet> sets_;
  std::vector<std::size_t> self_index_;
  std::vector<std::size_t> scan_order_;
  std::vector<PairTask> tasks_;
  std::ofstream log_;
  std::mutex mu_;
};

} // namespace detail

inline MinDimResult mindim_bruteforce(std::size_t n,
                                      const BruteforceConfig &cfg = {}) {
  detail::Bruteforce bf(n, cfg);
  return bf.run();
}

} // namespace mindim
