#pragma once

// Shared helpers for the unit and acceptance suites: fixture locations,
// store builders, synthetic record streams and brute-force reference
// implementations to compare the library against.

#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "skillgraph.hpp"

namespace testsupport {

namespace fs = std::filesystem;
using namespace skillgraph;

inline fs::path fixture_dir() { return SKILLGRAPH_FIXTURE_DIR; }
inline fs::path golden_dir() { return SKILLGRAPH_GOLDEN_DIR; }
inline fs::path cli_path() { return SKILLGRAPH_CLI; }

inline std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

/// A fresh, empty directory under the system temp dir, removed on scope exit.
class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    static int counter = 0;
    path_ = fs::temp_directory_path() /
            ("skillgraph-" + tag + "-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
    fs::remove_all(path_);
    fs::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const fs::path& path() const { return path_; }

 private:
  fs::path path_;
};

struct CommandResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

/// Runs `command` through the shell, capturing stdout and stderr.
inline CommandResult run_command(const std::string& command, const fs::path& scratch) {
  const auto out_file = scratch / "cmd.stdout";
  const auto err_file = scratch / "cmd.stderr";
  const std::string full = command + " >'" + out_file.string() + "' 2>'" + err_file.string() + "'";
  const int status = std::system(full.c_str());
  CommandResult r;
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.out = slurp(out_file);
  r.err = slurp(err_file);
  return r;
}

inline std::string quoted(const fs::path& p) { return "'" + p.string() + "'"; }

// ---------------------------------------------------------------------------
// Store builders

/// Occupation id -> essential skill ids. Every occupation gets ISCO `isco`
/// unless listed in `isco_of`.
inline ClassifierStore make_store(const std::map<std::string, std::vector<std::string>>& skills,
                                  const std::map<std::string, std::string>& isco_of = {},
                                  const std::string& isco = "8331") {
  ClassifierStore store;
  for (const auto& [occ, list] : skills) {
    auto it = isco_of.find(occ);
    store.occupations[OccupationId(occ)] = {occ, Isco4Code(it == isco_of.end() ? isco : it->second)};
    for (const auto& s : list) {
      store.skills[SkillId(s)] = s;
      store.essential[OccupationId(occ)].insert(SkillId(s));
    }
  }
  return store;
}

/// `n_occ` occupations with 0..max_skills skills drawn from a pool sized so
/// that overlaps (and ties) are common.
inline ClassifierStore random_store(std::uint64_t seed, int n_occ = 50, int max_skills = 20,
                                    int pool = 60) {
  std::mt19937_64 rng(seed);
  std::map<std::string, std::vector<std::string>> skills;
  for (int o = 0; o < n_occ; ++o) {
    char name[16];
    std::snprintf(name, sizeof name, "occ%03d", o);
    std::uniform_int_distribution<int> count(0, max_skills);
    std::uniform_int_distribution<int> pick(0, pool - 1);
    auto& list = skills[name];
    const int c = count(rng);
    for (int s = 0; s < c; ++s) list.push_back("sk" + std::to_string(pick(rng)));
  }
  return make_store(skills);
}

// ---------------------------------------------------------------------------
// Reference implementations

/// All-pairs top-k by explicit set intersection.
inline std::vector<SimilarityLink> brute_force_top_k(const ClassifierStore& store, std::size_t k,
                                                     double min_ratio = 0.0) {
  std::vector<SimilarityLink> out;
  for (const auto& [a, ia] : store.occupations) {
    const auto& sa = store.skills_of(a);
    if (sa.empty()) continue;
    std::vector<SimilarityLink> candidates;
    for (const auto& [b, ib] : store.occupations) {
      if (a == b) continue;
      std::vector<SkillId> both;
      const auto& sb = store.skills_of(b);
      std::set_intersection(sa.begin(), sa.end(), sb.begin(), sb.end(), std::back_inserter(both));
      SimilarityLink link{a, b, static_cast<std::uint32_t>(both.size()),
                          static_cast<std::uint32_t>(sa.size())};
      if (link.shared > 0 && link.ratio() > std::max(0.0, min_ratio)) candidates.push_back(link);
    }
    std::sort(candidates.begin(), candidates.end(), [](const auto& x, const auto& y) {
      // Compare shared/from_size exactly by cross-multiplication.
      const auto lx = std::uint64_t{x.shared} * y.from_size, ly = std::uint64_t{y.shared} * x.from_size;
      return lx != ly ? lx > ly : x.to < y.to;
    });
    if (candidates.size() > k) candidates.resize(k);
    out.insert(out.end(), candidates.begin(), candidates.end());
  }
  return out;
}

struct CvRow {
  std::string seeker, country, occupation, month;
};

struct VacancyRow {
  std::string id, country, isco;
  std::uint64_t n;
};

/// CV rows in which each seeker reappears in several monthly snapshots.
inline std::vector<CvRow> synthetic_cv(std::uint64_t seed, std::size_t rows, int n_seekers,
                                       const std::vector<std::string>& occupations,
                                       const std::vector<std::string>& countries) {
  std::mt19937_64 rng(seed);
  std::vector<CvRow> out;
  out.reserve(rows);
  std::uniform_int_distribution<int> seeker(0, n_seekers - 1);
  std::uniform_int_distribution<std::size_t> occ(0, occupations.size() - 1);
  std::uniform_int_distribution<std::size_t> ctry(0, countries.size() - 1);
  std::uniform_int_distribution<int> month(1, 12);
  while (out.size() < rows) {
    const auto s = seeker(rng);
    // Each seeker has a home country and a favourite occupation, with
    // occasional deviations.
    std::mt19937_64 home(static_cast<std::uint64_t>(s) * 7919u + seed);
    const auto c = rng() % 10 == 0 ? ctry(rng) : ctry(home);
    const auto o = rng() % 3 == 0 ? occ(rng) : occ(home);
    char m[8];
    std::snprintf(m, sizeof m, "2016-%02d", month(rng));
    out.push_back({"js" + std::to_string(s), countries[c], occupations[o], m});
  }
  return out;
}

inline std::vector<VacancyRow> synthetic_vacancies(std::uint64_t seed, std::size_t rows,
                                                   const std::vector<std::string>& iscos,
                                                   const std::vector<std::string>& countries) {
  std::mt19937_64 rng(seed);
  std::vector<VacancyRow> out;
  out.reserve(rows);
  std::uniform_int_distribution<std::size_t> isco(0, iscos.size() - 1);
  std::uniform_int_distribution<std::size_t> ctry(0, countries.size() - 1);
  std::uniform_int_distribution<std::uint64_t> n(1, 9);
  for (std::size_t i = 0; i < rows; ++i)
    out.push_back({"v" + std::to_string(i), countries[ctry(rng)], iscos[isco(rng)], n(rng)});
  return out;
}

inline std::string cv_csv(const std::vector<CvRow>& rows) {
  std::string s = "jobseeker_id,country,desired_occupation,snapshot_month\n";
  for (const auto& r : rows) s += r.seeker + "," + r.country + "," + r.occupation + "," + r.month + "\n";
  return s;
}

inline std::string vacancy_csv(const std::vector<VacancyRow>& rows) {
  std::string s = "vacancy_id,country,isco_code,n\n";
  for (const auto& r : rows) s += r.id + "," + r.country + "," + r.isco + "," + std::to_string(r.n) + "\n";
  return s;
}

/// Nested-loop cube: for every (occupation, country) pair, scan all rows.
inline SupplyDemandCube oracle_cube(const ClassifierStore& store, const std::vector<CvRow>& cv,
                                    const std::vector<VacancyRow>& vac,
                                    const std::vector<std::string>& countries) {
  SupplyDemandCube cube;
  std::vector<std::string> scopes = countries;
  scopes.emplace_back(kTotal);
  for (const auto& [occ, info] : store.occupations) {
    for (const auto& scope : scopes) {
      const bool total = scope == kTotal;
      std::set<std::string> seekers;
      for (const auto& r : cv)
        if (r.occupation == occ.str() && (total || r.country == scope)) seekers.insert(r.seeker);
      std::uint64_t vacancies = 0;
      bool vac_seen = false;
      for (const auto& r : vac)
        if (r.isco == info.isco.str() && (total || r.country == scope)) {
          vacancies += r.n;
          vac_seen = true;
        }
      if (total || !seekers.empty() || vac_seen)
        cube.cells[occ][scope] = {vacancies, static_cast<std::uint64_t>(seekers.size())};
    }
  }
  return cube;
}

// ---------------------------------------------------------------------------
// Layout graphs

inline double dist(const Point& a, const Point& b) { return std::hypot(a.x - b.x, a.y - b.y); }

inline std::vector<IndexEdge> random_graph(std::uint64_t seed, std::uint32_t n, std::size_t m) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::uint32_t> pick(0, n - 1);
  std::uniform_real_distribution<double> weight(0.05, 1.0);
  std::vector<IndexEdge> edges;
  // A random spanning tree keeps the graph connected; extra edges add cycles.
  for (std::uint32_t i = 1; i < n; ++i)
    edges.push_back({std::uniform_int_distribution<std::uint32_t>(0, i - 1)(rng), i, weight(rng)});
  while (edges.size() < m) {
    auto a = pick(rng), b = pick(rng);
    if (a != b) edges.push_back({a, b, weight(rng)});
  }
  return edges;
}

/// Two 10-cliques (nodes 0..9 and 10..19) joined by the bridge 9-10.
inline std::vector<IndexEdge> two_cliques() {
  std::vector<IndexEdge> edges;
  for (std::uint32_t base : {0u, 10u})
    for (std::uint32_t i = 0; i < 10; ++i)
      for (std::uint32_t j = i + 1; j < 10; ++j) edges.push_back({base + i, base + j, 1.0});
  edges.push_back({9, 10, 1.0});
  return edges;
}

}  // namespace testsupport
