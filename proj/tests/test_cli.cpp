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
#include <sys/wait.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"

namespace {

struct Run {
  int status = -1;
  std::string out;
};

// Runs the tool with stdout captured and stderr merged in.
Run Tool(const std::string& args) {
  const std::string cmd = std::string(PCRANK_CLI) + " " + args + " 2>&1";
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  char buf[4096];
  size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
  const int raw = pclose(pipe);
  r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return r;
}

std::string Slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void Write(const std::string& path, const std::string& text) {
  std::ofstream(path, std::ios::binary) << text;
}

const std::string kSeason = std::string(PCRANK_DATA_DIR) + "/synthetic_season.csv";

std::vector<std::string> Lines(const std::string& text) {
  std::vector<std::string> lines;
  std::stringstream ss(text);
  std::string line;
  while (std::getline(ss, line)) lines.push_back(line);
  return lines;
}

}  // namespace

TEST_CASE("fit writes a document and a ranked table") {
  const Run r = Tool("fit --input " + kSeason + " --method peb --weeks 10 --output cli_fit.json");
  CHECK(r.status == 0);
  CHECK(r.out.find("method peb_adjusted") != std::string::npos);
  CHECK(r.out.find("rank") != std::string::npos);
  const std::string doc = Slurp("cli_fit.json");
  CHECK(doc.find("\"method\": \"peb_adjusted\"") != std::string::npos);
  CHECK(doc.find("\"format\": \"pcrank-fit\"") != std::string::npos);
  CHECK(doc.find("nan") == std::string::npos);

  const Run plain = Tool("fit --input " + kSeason + " --method peb --no-adjusted --weeks 10");
  CHECK(plain.status == 0);
  CHECK(plain.out.find("method peb ") != std::string::npos);
}

TEST_CASE("fit argument errors") {
  CHECK(Tool("fit --input " + kSeason + " --method ridge --lambda 0").status == 2);
  CHECK(Tool("fit --input " + kSeason + " --method ridge").status == 2);
  CHECK(Tool("fit --input " + kSeason + " --method bayes").status == 2);
  CHECK(Tool("fit --input " + kSeason + " --lambda 3").status == 2);
  CHECK(Tool("fit --input /nonexistent.csv").status == 2);
  CHECK(Tool("").status == 2);
  Write("cli_bad.csv", "season,week,home,away,outcome\ns,1,A,B,X\n");
  const Run bad = Tool("fit --input cli_bad.csv");
  CHECK(bad.status == 3);
  CHECK(bad.out.find("line 2") != std::string::npos);
  Write("cli_self.csv", "season,week,home,away,outcome\ns,1,A,A,H\n");
  CHECK(Tool("fit --input cli_self.csv").status == 3);
}

TEST_CASE("mle divergence warning") {
  std::string csv = "season,week,home,away,outcome\n";
  for (int w = 1; w <= 10; ++w) {
    csv += "s," + std::to_string(w) + ",Champ,T" + std::to_string(w) + ",H\n";
    csv += "s," + std::to_string(w) + ",U" + std::to_string(w) + ",V" +
           std::to_string(w) + (w % 2 ? ",H\n" : ",A\n");
  }
  Write("cli_champ.csv", csv);
  const Run r = Tool("fit --input cli_champ.csv --method mle --output cli_mle.json");
  CHECK((r.status == 0 || r.status == 4));
  CHECK(r.out.find("diverges") != std::string::npos);
  CHECK(!Slurp("cli_mle.json").empty());
  const Run peb = Tool("fit --input cli_champ.csv --method peb");
  CHECK(peb.status == 0);
  CHECK(peb.out.find("diverges") == std::string::npos);
}

TEST_CASE("predict") {
  Write("cli_sym.csv",
        "season,week,home,away,outcome\n"
        "s,1,A,B,H\ns,2,B,A,H\ns,3,A,C,A\ns,4,C,A,A\n");
  REQUIRE(Tool("fit --input cli_sym.csv --method ridge --lambda 2 --output cli_sym.json").status == 0);
  Write("cli_fx.csv", "week,home,away\n5,B,C\n5,Q,R\n");
  const Run a = Tool("predict --fit cli_sym.json --fixtures cli_fx.csv --output cli_pred1.csv");
  CHECK(a.status == 0);
  CHECK(a.out.find("absent") != std::string::npos);
  const auto lines = Lines(Slurp("cli_pred1.csv"));
  REQUIRE(lines.size() == 3);
  CHECK(lines[0] == "week,home,away,away_win,draw,home_win,unknown_team");
  CHECK(lines[2] == "5,Q,R,0.5,0,0.5,1");
  REQUIRE(Tool("predict --fit cli_sym.json --fixtures cli_fx.csv --output cli_pred2.csv").status == 0);
  CHECK(Slurp("cli_pred1.csv") == Slurp("cli_pred2.csv"));

  Write("cli_empty_fx.csv", "week,home,away\n");
  const Run e = Tool("predict --fit cli_sym.json --fixtures cli_empty_fx.csv");
  CHECK(e.status == 0);
  CHECK(e.out == "week,home,away,away_win,draw,home_win,unknown_team\n");

  Write("cli_broken.json", "{ nope");
  CHECK(Tool("predict --fit cli_broken.json --fixtures cli_fx.csv").status == 3);
}

TEST_CASE("evaluate") {
  REQUIRE(Tool("fit --input " + kSeason + " --weeks 10 --output cli_eval_fit.json").status == 0);
  const Run r = Tool("evaluate --fit cli_eval_fit.json --input " + kSeason +
                     " --from-week 11 --output cli_scores.csv");
  CHECK(r.status == 0);
  CHECK(r.out.find("ls_naive  1.06276") != std::string::npos);
  const auto lines = Lines(Slurp("cli_scores.csv"));
  REQUIRE(lines.size() == 2);
  CHECK(lines[0] == "matches,unseen,ls,ls_naive,lss");

  CHECK(Tool("evaluate --fit cli_eval_fit.json --input " + kSeason +
             " --from-week 100").status != 0);
  CHECK(Tool("evaluate --fit cli_eval_fit.json --input " + kSeason +
             " --naive 0.5,0.5").status == 2);
  CHECK(Tool("evaluate --fit cli_eval_fit.json --input " + kSeason +
             " --naive 0.3,0.3,0.3").status == 2);
}

TEST_CASE("zero-strength fit against its own naive triple scores zero skill") {
  Write("cli_zero.json",
        R"({"format":"pcrank-fit","version":1,"tool_version":"0.1.0",)"
        R"("input_digest":"","method":"ridge","lambda":1000000,)"
        R"("cutpoints":{"tie_threshold":0.0,"home_advantage":0.0},)"
        R"("teams":[{"name":"A","strength":0},{"name":"B","strength":0}],)"
        R"("diagnostics":{"iterations":0,"gradient_norm":0,"converged":true,)"
        R"("diverged":false,"no_signal":false}})");
  Write("cli_zero_test.csv",
        "season,week,home,away,outcome\ns,1,A,B,H\ns,2,B,A,A\ns,3,A,B,A\ns,4,B,A,H\n");
  const Run r = Tool("evaluate --fit cli_zero.json --input cli_zero_test.csv --naive 0.5,0,0.5");
  CHECK(r.status == 0);
  CHECK(r.out.find("lss       0.000000") != std::string::npos);
}

TEST_CASE("simulate") {
  const std::string args = "simulate --teams 6 --lambda 4 --fraction 0.3 --reps 5 --seed 42";
  const Run a = Tool(args + " --output cli_sim1.csv");
  CHECK(a.status == 0);
  CHECK(a.out.find("mean_lss") != std::string::npos);
  const auto lines = Lines(Slurp("cli_sim1.csv"));
  CHECK(lines.size() == 1 + 5 * 3);
  REQUIRE(Tool(args + " --threads 3 --output cli_sim2.csv").status == 0);
  CHECK(Slurp("cli_sim1.csv") == Slurp("cli_sim2.csv"));
  const Run t3 = Tool("simulate --teams 6 --reps 2 --dist t3 --output cli_sim3.csv");
  CHECK(t3.status == 0);
  CHECK(Slurp("cli_sim3.csv").find(",t3,") != std::string::npos);
  CHECK(Tool("simulate --reps 0").status == 2);
  CHECK(Tool("simulate --teams 7 --reps 1").status == 2);
  CHECK(Tool("simulate --dist t1 --reps 1").status == 2);

  Write("cli_study.toml", "[simulate]\nteams = [6]\nreps = 2\nseed = 7\n");
  const Run cfg = Tool("--config cli_study.toml simulate --output cli_sim4.csv");
  CHECK(cfg.status == 0);
  CHECK(Lines(Slurp("cli_sim4.csv")).size() == 1 + 2 * 3);
}
