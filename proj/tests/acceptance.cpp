// Runs the eight acceptance criteria and prints one PASS/FAIL line each.

#include <sys/wait.h>

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>

#include "mindim/certificate.hpp"

using namespace mindim;

namespace {

struct Check {
  bool ok = true;
  std::ostringstream why;
  void expect(bool c, const std::string &msg) {
    if (!c && ok) why << msg;
    ok = ok && c;
  }
};

int failures = 0;

void criterion(int id, const std::string &title, double limit_s,
               const std::function<void(Check &)> &body) {
  Check c;
  auto t0 = std::chrono::steady_clock::now();
  try {
    body(c);
  } catch (const std::exception &e) {
    c.expect(false, std::string("exception: ") + e.what());
  }
  double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (limit_s > 0 && s > limit_s) {
    std::ostringstream m;
    m << "runtime " << s << " s exceeds " << limit_s << " s";
    c.expect(false, m.str());
  }
  if (!c.ok) ++failures;
  std::printf("%s criterion %d: %s (%.2f s)%s%s\n", c.ok ? "PASS" : "FAIL", id, title.c_str(),
              s, c.ok ? "" : " -- ", c.ok ? "" : c.why.str().c_str());
  std::fflush(stdout);
}

bool is_prime_td(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

bool is_prime_power_td(std::uint64_t n) {
  for (std::uint64_t p = 2; p <= n; ++p)
    if (n % p == 0) {
      while (n % p == 0) n /= p;
      return n == 1;
    }
  return false;
}

Permutation random_perm(std::size_t n, std::mt19937_64 &rng) {
  std::vector<Point> v(n);
  std::iota(v.begin(), v.end(), 0);
  std::shuffle(v.begin(), v.end(), rng);
  return Permutation::from_images0(v);
}

int run_cli(const std::string &args) {
  std::string cmd = std::string(MINDIM_CLI_PATH) + " " + args + " >/dev/null 2>&1";
  int st = std::system(cmd.c_str());
  return WIFEXITED(st) ? WEXITSTATUS(st) : -1;
}

} // namespace

int main() {
  criterion(1, "classify table for n = 4..12", 1.0, [](Check &c) {
    std::vector<int> v;
    for (const auto &row : classify_range(4, 12)) v.push_back(row.value);
    c.expect(v == std::vector<int>{2, 2, 3, 3, 3, 2, 2, 3, 3}, "table differs");
  });

  criterion(2, "bruteforce equals classify for n = 4..12", 0, [](Check &c) {
    for (std::size_t n = 4; n <= 12; ++n) {
      auto t0 = std::chrono::steady_clock::now();
      auto r = mindim_bruteforce(n);
      double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      std::printf("    bruteforce %zu: value %d, %zu pair orbits, %.2f s\n", n, r.value,
                  r.pairs.size(), s);
      c.expect(r.complete, "n=" + std::to_string(n) + " incomplete; ");
      c.expect(r.value == mindim_theorem(n).value, "n=" + std::to_string(n) + " differs; ");
      if (n <= 9) c.expect(s < 300, "n=" + std::to_string(n) + " over 5 minutes; ");
      auto rep = verify_certificate_json(json::parse(mindim_result_to_json(r).dump()));
      c.expect(rep.ok, "n=" + std::to_string(n) + " certificate rejected; ");
    }
  });

  criterion(3, "witness families for even n in [6, 20]", 0, [](Check &c) {
    for (std::size_t n = 6; n <= 20; n += 2) {
      auto t0 = std::chrono::steady_clock::now();
      // The dihedral triple itself, at every even degree.
      auto d = dihedral_triple(n);
      c.expect(d.trivial_intersection && d.descriptors.size() == 3,
               "dihedral n=" + std::to_string(n) + "; ");
      c.expect(validate_certificate(d.family(), d.certificate).ok,
               "dihedral certificate n=" + std::to_string(n) + "; ");
      if (mindim_theorem(n).value == 3) {
        auto w = witness_family(n);
        c.expect(w.descriptors.size() == 3 && w.trivial_intersection,
                 "witness n=" + std::to_string(n) + "; ");
        c.expect(verify_certificate_json(json::parse(witness_to_json(w).dump())).ok,
                 "witness certificate n=" + std::to_string(n) + "; ");
        if (n <= 12) {
          auto cl = maximal_classes(n, Ambient::AlternatingN);
          for (const auto &m : w.descriptors)
            c.expect(match_maximal_class(cl, m.group).has_value(),
                     "n=" + std::to_string(n) + " member " + m.label() + " not a catalog class; ");
        }
      }
      double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      c.expect(s < 10, "n=" + std::to_string(n) + " over 10 s; ");
    }
  });

  criterion(4, "six-case construction coverage at n = 14", 60, [](Check &c) {
    std::mt19937_64 rng(14);
    std::set<std::string> hit;
    std::size_t runs = 0;
    auto input = [&](int kind) {
      std::vector<int> pts(14);
      std::iota(pts.begin(), pts.end(), 1);
      std::shuffle(pts.begin(), pts.end(), rng);
      if (kind == 2)
        return intransitive_subgroup(14, {pts.begin(), pts.begin() + 1 + rng() % 6},
                                     Ambient::SymmetricN);
      std::size_t bs = kind == 0 ? 7 : 2;
      std::vector<std::vector<int>> bl;
      for (std::size_t i = 0; i < 14; i += bs) bl.emplace_back(pts.begin() + i, pts.begin() + i + bs);
      return imprimitive_subgroup(14, bl, Ambient::SymmetricN);
    };
    auto one = [&](const MaximalSubgroupDescriptor &A, const MaximalSubgroupDescriptor &B) {
      auto cc = third_subgroup_2p(A, B, 14);
      ++runs;
      c.expect(cc.valid, "invalid construction in branch " + cc.branch + "; ");
      auto rep = verify_certificate_json(json::parse(construction_to_json(cc).dump()));
      c.expect(rep.ok, "certificate rejected in branch " + cc.branch + "; ");
      for (const auto &b : branches_of(cc)) hit.insert(b);
    };
    for (int ka = 0; ka < 3; ++ka)
      for (int kb = 0; kb < 3; ++kb)
        for (int t = 0; t < 50; ++t) {
          auto A = input(ka), B = input(kb);
          if (!A.group.same_group(B.group)) one(A, B);
        }
    auto I = [](std::vector<int> s) { return intransitive_subgroup(14, s, Ambient::SymmetricN); };
    auto half = imprimitive_subgroup(14, {{1, 2, 3, 4, 5, 6, 7}, {8, 9, 10, 11, 12, 13, 14}},
                                     Ambient::SymmetricN);
    one(half, I({1, 2}));
    one(half, I({1, 8}));
    one(I({1, 2, 3}), I({1, 2, 3, 4, 5}));
    one(I({1, 2, 3}), I({3, 4, 5}));
    std::string missing;
    for (const auto &b : third_subgroup_branches())
      if (!hit.count(b)) missing += b + " ";
    std::printf("    %zu constructions; branches reached: %zu of %zu\n", runs, hit.size(),
                third_subgroup_branches().size());
    c.expect(missing.empty(), "branches not reached: " + missing);
  });

  criterion(5, "PGL(2,13) on 14 points: odd {12,1,1} element, index-2 PSL of order 1092",
            1.0, [](Check &c) {
              auto G = pgl2_projective(13);
              auto g = projective_diagonal(13);
              c.expect(G.contains(g), "diagonal element not in group; ");
              c.expect(cycle_type(g) == std::vector<std::size_t>{12, 1, 1}, "cycle type; ");
              c.expect(!is_even(g), "element is even; ");
              auto H = intersect_with_An(G);
              c.expect(H.order() == 1092, "order of G cap A_14; ");
              c.expect(G.order() == 2 * H.order(), "index; ");
            });

  criterion(6, "primes p <= 100 with value 3 at 2p", 1.0, [](Check &c) {
    std::vector<std::uint64_t> oracle;
    for (std::uint64_t p = 7; p <= 100; ++p)
      if (is_prime_td(p) && p != 11 && !is_prime_power_td(2 * p - 1)) oracle.push_back(p);
    auto got = primes_with_mindim3(100);
    c.expect(got == oracle, "list differs from the trial-division oracle; ");
    std::set<std::uint64_t> s(got.begin(), got.end());
    for (auto p : {17, 23, 29}) c.expect(s.count(p), std::to_string(p) + " missing; ");
    for (auto p : {7, 13, 19, 41}) c.expect(!s.count(p), std::to_string(p) + " present; ");
  });

  criterion(7, "property suites", 900, [](Check &c) {
    std::mt19937_64 rng(7);
    // Parity is a homomorphism.
    for (int t = 0; t < 2000; ++t) {
      std::size_t n = 2 + rng() % 20;
      auto a = random_perm(n, rng), b = random_perm(n, rng);
      c.expect(is_even(a * b) == (is_even(a) == is_even(b)), "parity; ");
    }
    // Orders against breadth-first closure.
    for (int t = 0; t < 100; ++t) {
      std::size_t n = 3 + rng() % 6;
      std::vector<Permutation> gens{random_perm(n, rng)};
      if (rng() % 2) gens.push_back(random_perm(n, rng));
      std::set<Permutation> seen{Permutation(n)};
      std::vector<Permutation> q{Permutation(n)};
      for (std::size_t k = 0; k < q.size() && seen.size() <= 10000; ++k)
        for (const auto &g : gens)
          if (seen.insert(q[k] * g).second) q.push_back(q[k] * g);
      if (seen.size() > 10000) continue;
      c.expect(PermGroup(n, gens).order() == seen.size(), "order vs closure; ");
    }
    // Backtrack intersection against enumeration on all catalog pairs.
    for (std::size_t n = 4; n <= 8; ++n)
      for (auto amb : {Ambient::AlternatingN, Ambient::SymmetricN}) {
        auto cl = maximal_classes(n, amb);
        PermGroup G = ambient_group(n, amb);
        for (const auto &a : cl.classes)
          for (const auto &b : cl.classes)
            for (int t = 0; t < 3; ++t) {
              PermGroup B = b.group.conjugated(G.random_element(rng));
              c.expect(intersect(a.group, B).same_group(intersect_by_enumeration(a.group, B)),
                       "intersection n=" + std::to_string(n) + "; ");
            }
      }
    // Irredundance is invariant under simultaneous conjugation.
    for (std::size_t n = 5; n <= 8; ++n) {
      PermGroup An = alternating_group(n);
      auto cl = maximal_classes(n, Ambient::AlternatingN);
      for (int t = 0; t < 20; ++t) {
        std::vector<FamilyMember> ms, conj;
        auto g = An.random_element(rng);
        for (int i = 0; i < 3; ++i) {
          const auto &d = cl.classes[rng() % cl.classes.size()];
          ms.push_back({d.group.conjugated(An.random_element(rng)), d.label(), std::nullopt});
        }
        bool distinct = !ms[0].group.same_group(ms[1].group) &&
                        !ms[0].group.same_group(ms[2].group) &&
                        !ms[1].group.same_group(ms[2].group);
        if (!distinct) continue;
        for (const auto &m : ms) conj.push_back({m.group.conjugated(g), m.label, std::nullopt});
        c.expect(is_irredundant(Family(An, ms)) == is_irredundant(Family(An, conj)),
                 "conjugation invariance; ");
      }
    }
    // Certificates re-validate in a fresh process.
    auto dir = std::filesystem::temp_directory_path() /
               ("mindim_acceptance_" + std::to_string(::getpid()));
    std::filesystem::create_directories(dir);
    for (int n : {5, 7, 8, 11, 12, 14}) {
      auto f = (dir / ("w" + std::to_string(n) + ".json")).string();
      c.expect(run_cli("--format json --out " + f + " witness " + std::to_string(n)) == 0,
               "witness " + std::to_string(n) + " failed; ");
      c.expect(run_cli("verify " + f) == 0, "verify " + std::to_string(n) + " failed; ");
    }
    auto bf = (dir / "bf7.json").string();
    c.expect(run_cli("--format json --out " + bf + " bruteforce 7") == 0, "bruteforce 7; ");
    c.expect(run_cli("verify " + bf) == 0, "verify bruteforce 7; ");
    std::filesystem::remove_all(dir);
  });

  criterion(8, "no trivial-intersection conjugate for (A11, M11), exhaustive", 1800,
            [](Check &c) {
              auto H = primitive_subgroup("A11.M11.a");
              ConjugateSearchOptions opt;
              opt.random_trials = 0;
              auto r = find_trivial_intersection_conjugate(alternating_group(11), H, opt);
              std::printf("    %llu conjugates examined, exhaustive %s\n",
                          static_cast<unsigned long long>(r.conjugates_checked),
                          r.exhaustive_completed ? "completed" : "incomplete");
              c.expect(!r.conjugator, "a conjugator was found; ");
              c.expect(r.exhaustive_completed, "exhaustive phase did not complete; ");
              c.expect(r.conjugates_checked == 2520, "expected 2520 conjugates; ");
            });

  std::printf("%d of 8 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
