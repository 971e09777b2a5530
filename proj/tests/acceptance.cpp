// Copyright 2026 The pcrank Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// End-to-end acceptance checks. Prints one PASS/FAIL line per criterion.
//
// Usage: acceptance [--known-failure N]... [--only N]...
//
// A criterion listed with --known-failure still prints FAIL, but does not
// make the exit status non-zero. If it unexpectedly passes, the run fails so
// the list cannot go stale.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iterator>
#include <limits>
#include <map>
#include <numbers>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "oracles.hpp"
#include "pcrank/evaluate.hpp"
#include "pcrank/fit.hpp"
#include "pcrank/io.hpp"
#include "pcrank/likelihood.hpp"
#include "pcrank/optimize.hpp"
#include "pcrank/peb.hpp"
#include "pcrank/simulate.hpp"
#include "pcrank/special.hpp"
#include "pcrank/types.hpp"

namespace {

using pcrank::Method;

struct Verdict {
  bool pass = false;
  std::string detail;
};

std::string Format(const char* fmt, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, fmt, args...);
  return buf;
}

int Threads() {
  return static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
}

// Mean LSS per (lambda, method) over a study.
std::map<std::pair<double, Method>, double> MeanLss(
    const pcrank::StudyConfig& config) {
  std::map<std::pair<double, Method>, double> out;
  for (const auto& s : pcrank::SummarizeStudy(pcrank::RunStudy(config))) {
    out[{s.lambda_true, s.method}] = s.mean_lss;
  }
  return out;
}

Verdict RoundTrip() {
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const double lambda = std::pow(10.0, -3.0 + 6.0 * i / 99.0);
    const double back = pcrank::TauToLambda(pcrank::LambdaToTau(lambda));
    worst = std::max(worst, std::fabs(back - lambda) / lambda);
  }
  return {worst <= 1e-10, Format("max relative error %.3g", worst)};
}

Verdict QuadrantIdentity() {
  constexpr double kInf = std::numeric_limits<double>::infinity();
  double worst = 0.0, worst_oracle = 0.0;
  for (int k = -1; k <= 6; ++k) {
    const double lambda = std::ldexp(1.0, k);
    const double rho = 1.0 / (lambda + 2.0);
    const double quadrant = pcrank::BivariateNormalRect(
        0.0, kInf, 0.0, kInf, pcrank::Correlation(rho));
    const double target = (1.0 + pcrank::LambdaToTau(lambda)) / 4.0;
    worst = std::max(worst, std::fabs(quadrant - target));
    worst_oracle = std::max(
        worst_oracle,
        std::fabs(oracle::BivariateRect(0.0, kInf, 0.0, kInf, rho) - target));
  }
  return {worst <= 1e-8 && worst_oracle <= 1e-8,
          Format("max deviation %.3g (quadrature %.3g)", worst, worst_oracle)};
}

Verdict ClosedFormVsSearch() {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> log_lambda(-1.0, 3.0);
  const pcrank::Schedule schedule = pcrank::MakeSchedule(10);
  double worst = 0.0;
  bool counts_agree = true;
  for (int trial = 0; trial < 50; ++trial) {
    const pcrank::StrengthDistribution dist{
        pcrank::StrengthDistribution::Kind::kNormal, 8.0,
        std::exp(log_lambda(rng))};
    const auto mu = pcrank::SampleStrengths(10, dist, rng);
    const pcrank::Dataset ds =
        pcrank::SimulateMatches(schedule, mu, {0.0, 0.0}, rng);
    const pcrank::PairCounts counts = pcrank::CountPairsBinary(ds);
    const oracle::PairTally tally = oracle::BruteForcePairs(ds);
    counts_agree = counts_agree && tally.concordant == counts.concordant &&
                   tally.discordant == counts.discordant;
    const double c = static_cast<double>(tally.concordant);
    const double d = static_cast<double>(tally.discordant);
    const double closed =
        std::clamp((c - d) / (c + d), pcrank::kTauMin, pcrank::kTauMax);
    const double searched = pcrank::BrentMaxScalar(
        [&](double t) {
          return pcrank::PairwiseLogLik(t, counts, {0.0, 0.0}, false);
        },
        pcrank::kTauMin, pcrank::kTauMax);
    worst = std::max(worst, std::fabs(searched - closed));
  }
  return {counts_agree && worst <= 1e-6,
          Format("max |search - closed form| %.3g, pair counts %s", worst,
                 counts_agree ? "agree" : "DISAGREE")};
}

Verdict AdjustedIdentity() {
  std::mt19937_64 rng(4);
  std::uniform_int_distribution<int> teams(4, 40);
  std::uniform_int_distribution<int> pairs(10, 2000);
  double worst = 0.0, worst_alt = 0.0;
  int used = 0;
  while (used < 100) {
    const int p = teams(rng);
    const long long c = pairs(rng), d = pairs(rng);
    const double target = static_cast<double>(c - d) / (c + d + p);
    // Keep the maximizer inside the search interval.
    if (!(target > 0.01 && target < 0.3)) continue;
    ++used;
    auto objective = [&](double t) {
      return c * std::log1p(t) + d * std::log1p(-t) + p * std::log1p(-t * t);
    };
    const double argmax =
        pcrank::BrentMaxScalar(objective, -0.999, 0.999,
                               {.scalar_tolerance = 1e-13});
    // The same objective through the library's pairwise likelihood.
    pcrank::PairCounts counts;
    counts.concordant = c;
    counts.discordant = d;
    counts.teams = p;
    const double via_library = pcrank::BrentMaxScalar(
        [&](double t) { return pcrank::PairwiseLogLik(t, counts, {0, 0}, true); },
        pcrank::kTauMin, pcrank::kTauMax, {.scalar_tolerance = 1e-13});
    worst = std::max({worst, std::fabs(argmax - target),
                      std::fabs(via_library - target)});
    const double stationary = static_cast<double>(c - d) / (c + d + 2 * p);
    worst_alt = std::max(worst_alt, std::fabs(argmax - stationary));
  }
  return {worst <= 1e-8,
          Format("max |argmax - (c-d)/(c+d+p)| %.3g; "
                 "max |argmax - (c-d)/(c+d+2p)| %.3g",
                 worst, worst_alt)};
}

Verdict GradientCheck() {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> team_count(3, 8);
  std::uniform_real_distribution<double> tie(0.1, 0.6), home(0.05, 0.4);
  std::normal_distribution<double> strength(0.0, 1.0);
  double worst = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    const int p = team_count(rng);
    const pcrank::Dataset ds = oracle::RandomRoundRobin(p, true, rng);
    const auto spec = pcrank::ModelSpec::FromCutpoints({tie(rng), home(rng)});
    std::vector<double> mu(p);
    for (double& v : mu) v = strength(rng);
    const auto grad = pcrank::LogLikGrad(ds, mu, spec);
    auto f = [&](const std::vector<double>& x) {
      return pcrank::LogLik(ds, x, spec);
    };
    double diff = 0.0, scale = 0.0;
    for (int i = 0; i < p; ++i) {
      const double fd = oracle::CentralDifference(f, mu, i, 1e-5);
      diff = std::max(diff, std::fabs(grad[i] - fd));
      scale = std::max(scale, std::fabs(fd));
    }
    worst = std::max(worst, diff / scale);
  }
  return {worst <= 1e-5, Format("max relative error %.3g", worst)};
}

Verdict NaiveReferences() {
  const double no_draws = pcrank::NaiveLogScore({{0.42, 0.0, 0.58}});
  const double league = pcrank::NaiveLogScore({{0.29, 0.25, 0.46}});
  const bool pass = std::fabs(no_draws - 0.6802) <= 5e-4 &&
                    std::fabs(league - 1.0628) <= 5e-4 &&
                    std::round(no_draws * 100) == 68 &&
                    std::round(league * 100) == 106;
  return {pass, Format("%.6f and %.6f", no_draws, league)};
}

Verdict DeskScaleStudy() {
  pcrank::StudyConfig config;
  config.teams = {20};
  config.lambdas = {4.0, 16.0};
  config.fractions = {0.2};
  config.replications = 200;
  config.cutpoints = {0.0, 0.2};
  config.methods = {Method::kPeb, Method::kPebAdjusted, Method::kMle};
  config.seed = 2026;
  config.threads = 1;
  const auto lss = MeanLss(config);
  bool pass = true;
  std::string detail;
  for (double lambda : config.lambdas) {
    const double peb = lss.at({lambda, Method::kPeb});
    const double adj = lss.at({lambda, Method::kPebAdjusted});
    const double mle = lss.at({lambda, Method::kMle});
    pass = pass && adj > 0.0 && 0.0 > mle && peb > mle;
    detail += Format("lambda %g: peb %.4f peb_adj %.4f mle %.4f; ", lambda,
                     peb, adj, mle);
  }
  detail.resize(detail.size() - 2);
  return {pass, detail};
}

Verdict PebMatchesCv() {
  pcrank::StudyConfig config;
  config.teams = {20};
  config.lambdas = {4.0};
  config.fractions = {0.2};
  config.replications = 100;
  config.cutpoints = {0.0, 0.2};
  config.methods = {Method::kPebAdjusted, Method::kCv};
  config.seed = 2027;
  config.threads = Threads();
  const auto lss = MeanLss(config);
  const double adj = lss.at({4.0, Method::kPebAdjusted});
  const double cv = lss.at({4.0, Method::kCv});
  return {std::fabs(adj - cv) <= 0.02,
          Format("peb_adj %.4f cv %.4f, gap %.4f", adj, cv,
                 std::fabs(adj - cv))};
}

Verdict HeavyTails() {
  pcrank::StudyConfig config;
  config.teams = {20};
  config.lambdas = {4.0};
  config.fractions = {0.3};
  config.replications = 200;
  config.cutpoints = {0.0, 0.2};
  config.methods = {Method::kPeb};
  config.seed = 2028;
  config.threads = Threads();
  const double normal = MeanLss(config).at({4.0, Method::kPeb});
  config.dist = pcrank::StrengthDistribution::Kind::kStudentT;
  config.nu = 8.0;
  const double t8 = MeanLss(config).at({4.0, Method::kPeb});
  return {std::fabs(t8 - normal) <= 0.03,
          Format("normal %.4f t8 %.4f, gap %.4f", normal, t8,
                 std::fabs(t8 - normal))};
}

Verdict SeparationSafety() {
  // Six teams, double round robin: the first team wins all ten of its
  // matches and the rest are decided by coin flips.
  const pcrank::Schedule schedule = pcrank::MakeSchedule(6);
  std::mt19937_64 rng(10);
  std::bernoulli_distribution coin(0.5);
  std::vector<pcrank::MatchRecord> records;
  int week = 0;
  for (const auto& fixtures : schedule.weeks) {
    ++week;
    for (const auto& f : fixtures) {
      pcrank::Outcome o;
      if (f.home == 0) {
        o = pcrank::Outcome::kHomeWin;
      } else if (f.away == 0) {
        o = pcrank::Outcome::kAwayWin;
      } else {
        o = coin(rng) ? pcrank::Outcome::kHomeWin : pcrank::Outcome::kAwayWin;
      }
      records.push_back({week, "T" + std::to_string(f.home),
                         "T" + std::to_string(f.away), o});
    }
  }
  const pcrank::Dataset ds = pcrank::ValidateDataset(records);
  int wins = 0;
  for (const auto& m : ds.matches()) {
    const int t0 = ds.TeamIndex("T0").value();
    if ((m.home == t0 && m.outcome == pcrank::Outcome::kHomeWin) ||
        (m.away == t0 && m.outcome == pcrank::Outcome::kAwayWin)) {
      ++wins;
    }
  }

  const pcrank::FitResult mle = pcrank::FitMle(ds);
  bool pass = wins == 10 && mle.diagnostics.diverged;
  double largest = 0.0;
  for (bool adjusted : {false, true}) {
    const pcrank::FitResult peb = pcrank::FitPeb(ds, adjusted);
    const auto spec = pcrank::ModelSpec::FromCutpoints(peb.cutpoints);
    for (double v : peb.strengths.values) {
      pass = pass && std::isfinite(v);
      largest = std::max(largest, std::fabs(v));
    }
    for (std::size_t i = 0; i < peb.teams.size(); ++i) {
      for (std::size_t j = 0; j < peb.teams.size(); ++j) {
        if (i == j) continue;
        const auto probs = pcrank::MatchProbs(spec, peb.strengths[i],
                                              peb.strengths[j]);
        double sum = 0.0;
        for (double q : probs) {
          pass = pass && std::isfinite(q) && q >= 0.0 && q <= 1.0;
          sum += q;
        }
        pass = pass && std::fabs(sum - 1.0) <= 1e-12;
      }
    }
  }
  pass = pass && largest <= 3.0;
  return {pass, Format("wins %d, mle diverged %d, max |peb strength| %.4f",
                       wins, mle.diagnostics.diverged ? 1 : 0, largest)};
}

Verdict ScheduleProperties() {
  std::string bad;
  for (int p = 4; p <= 40; p += 2) {
    const pcrank::Schedule s = pcrank::MakeSchedule(p);
    bool ok = s.teams == p && static_cast<int>(s.weeks.size()) == 2 * (p - 1);
    std::set<std::pair<int, int>> seen;
    for (const auto& week : s.weeks) {
      ok = ok && static_cast<int>(week.size()) == p / 2;
      std::set<int> playing;
      for (const auto& f : week) {
        ok = ok && f.home != f.away && f.home >= 0 && f.home < p &&
             f.away >= 0 && f.away < p;
        ok = ok && playing.insert(f.home).second && playing.insert(f.away).second;
        ok = ok && seen.insert({f.home, f.away}).second;
      }
    }
    ok = ok && static_cast<int>(seen.size()) == p * (p - 1);
    if (!ok) bad += " " + std::to_string(p);
  }
  return {bad.empty(), bad.empty() ? "p = 4..40 all valid" : "bad p:" + bad};
}

std::string Slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

Verdict CliDeterminism() {
  const std::filesystem::path dir =
      std::filesystem::temp_directory_path() / "pcrank_acceptance";
  std::filesystem::create_directories(dir);
  auto run = [&](const std::string& tag, int threads) {
    const auto out = dir / ("study_" + tag + ".csv");
    std::filesystem::remove(out);
    const std::string cmd =
        std::string("\"") + PCRANK_CLI +
        "\" simulate --teams 10,20 --lambda 1,4 --fraction 0.2,0.5 "
        "--reps 20 --methods peb,peb_adjusted,mle --seed 99 --threads " +
        std::to_string(threads) + " --output \"" + out.string() +
        "\" > /dev/null";
    const int status = std::system(cmd.c_str());
    return status == 0 ? Slurp(out) : std::string();
  };
  const std::string a = run("a", 1), b = run("b", 1), c = run("c", 4);
  const bool pass = !a.empty() && a == b && a == c;
  std::filesystem::remove_all(dir);
  return {pass, Format("%zu bytes; repeat %s, threads 1 vs 4 %s", a.size(),
                       a == b ? "identical" : "DIFFERENT",
                       a == c ? "identical" : "DIFFERENT")};
}

// Optional check against a user-supplied Premier League CSV.
void PremierLeague() {
  const char* path = std::getenv("PCRANK_EPL_CSV");
  if (path == nullptr) {
    std::printf("SKIP  premier-league  set PCRANK_EPL_CSV to run\n");
    return;
  }
  const char* season = std::getenv("PCRANK_EPL_SEASON");
  std::ifstream in(path);
  const pcrank::Dataset ds = pcrank::SelectMatches(
      pcrank::ReadMatchCsv(in),
      {season ? season : "2022-23", 10, std::nullopt});
  auto strength = [&](const pcrank::FitResult& fit,
                      std::initializer_list<const char*> names) {
    for (const char* n : names) {
      if (auto i = fit.TeamIndex(n)) return fit.strengths[*i];
    }
    return std::numeric_limits<double>::quiet_NaN();
  };
  const auto mle = pcrank::FitMle(ds);
  const auto peb = pcrank::FitPeb(ds, true);
  const double values[4] = {
      strength(mle, {"Arsenal"}), strength(mle, {"Man City", "Manchester City"}),
      strength(peb, {"Arsenal"}), strength(peb, {"Man City", "Manchester City"})};
  const double targets[4] = {3.22, 2.50, 0.64, 0.60};
  bool pass = true;
  for (int i = 0; i < 4; ++i) pass = pass && std::fabs(values[i] - targets[i]) <= 0.02;
  std::printf("%s  premier-league  mle %.3f/%.3f peb %.3f/%.3f\n",
              pass ? "PASS" : "FAIL", values[0], values[1], values[2],
              values[3]);
}

struct Criterion {
  int id;
  const char* name;
  std::function<Verdict()> run;
};

}  // namespace

int main(int argc, char** argv) {
  std::set<int> known, only;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if ((arg == "--known-failure" || arg == "--only") && i + 1 < argc) {
      (arg == "--only" ? only : known).insert(std::atoi(argv[++i]));
    } else {
      std::fprintf(stderr,
                   "usage: acceptance [--known-failure N]... [--only N]...\n");
      return 2;
    }
  }

  const std::vector<Criterion> criteria = {
      {1, "tau-lambda round trip", RoundTrip},
      {2, "quadrant identity", QuadrantIdentity},
      {3, "closed form vs search", ClosedFormVsSearch},
      {4, "adjusted estimator identity", AdjustedIdentity},
      {5, "gradient vs finite differences", GradientCheck},
      {6, "naive references", NaiveReferences},
      {7, "desk-scale study", DeskScaleStudy},
      {8, "peb vs cross-validation", PebMatchesCv},
      {9, "student-t robustness", HeavyTails},
      {10, "separation safety", SeparationSafety},
      {11, "schedule properties", ScheduleProperties},
      {12, "cli determinism", CliDeterminism},
  };

  int unexpected = 0;
  for (const Criterion& c : criteria) {
    if (!only.empty() && !only.contains(c.id)) continue;
    const auto start = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = c.run();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(
                            std::chrono::steady_clock::now() - start)
                            .count();
    const bool is_known = known.contains(c.id);
    std::string note;
    if (!v.pass && is_known) note = "  [known failure]";
    if (v.pass && is_known) note = "  [listed as known failure but passed]";
    std::printf("%s  %2d %-30s %8.2fs  %s%s\n", v.pass ? "PASS" : "FAIL", c.id,
                c.name, secs, v.detail.c_str(), note.c_str());
    std::fflush(stdout);
    if (v.pass == is_known) ++unexpected;
  }
  if (only.empty()) {
    try {
      PremierLeague();
    } catch (const std::exception& e) {
      std::printf("FAIL  premier-league  %s\n", e.what());
      ++unexpected;
    }
  }
  return unexpected == 0 ? 0 : 1;
}
