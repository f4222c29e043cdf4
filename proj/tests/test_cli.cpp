#include <gtest/gtest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <string>

#include "json.hpp"

namespace {

std::string const cli      = FINSEMI_CLI;
std::string const data_dir = FINSEMI_DATA_DIR;

struct Run {
  std::string out;
  int         code = -1;
};

// Runs the CLI with `args`; stderr is merged into the output when asked.
Run run(std::string const& args, bool merge_stderr = false) {
  std::string cmd = "'" + cli + "' " + args
                    + (merge_stderr ? " 2>&1" : " 2>/dev/null");
  Run   r;
  FILE* p = popen(cmd.c_str(), "r");
  if (p == nullptr) {
    return r;
  }
  std::array<char, 4096> buf{};
  std::size_t            n;
  while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) {
    r.out.append(buf.data(), n);
  }
  int status = pclose(p);
  r.code     = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string file(std::string const& name) {
  return "'" + data_dir + "/" + name + "'";
}

nlohmann::json json_of(std::string const& args) {
  auto r = run(args + " --format json");
  EXPECT_EQ(r.code, 0) << args;
  return nlohmann::json::parse(r.out);
}

}  // namespace

TEST(Cli, Validate) {
  auto lz = json_of("validate " + file("left_zero2.sg"));
  EXPECT_EQ(lz["findings"]["associative"], true);
  EXPECT_EQ(lz["findings"]["idempotent_count"], 2);
  auto c4 = json_of("validate " + file("cyclic4.sg"));
  EXPECT_EQ(c4["findings"]["idempotent_count"], 1);
  EXPECT_EQ(c4["findings"]["generating_set"], "{1}");

  auto bad = run("validate " + file("bad_row.sg"), true);
  EXPECT_EQ(bad.code, 2);
  EXPECT_NE(bad.out.find("line 4"), std::string::npos) << bad.out;

  auto na = run("validate " + file("not_associative.sg") + " --format json");
  EXPECT_EQ(na.code, 1);
  auto j = nlohmann::json::parse(na.out);
  EXPECT_EQ(j["findings"]["associative"], false);
  EXPECT_EQ(j["witnesses"][0]["a"], 1);
  EXPECT_EQ(j["witnesses"][0]["b"], 0);
  EXPECT_EQ(j["witnesses"][0]["c"], 1);
}

TEST(Cli, AnalyzeLeftZero) {
  auto j = json_of("analyze " + file("left_zero3.sg"));
  auto f = j["findings"];
  EXPECT_EQ(f["congruence_count"], 5);
  EXPECT_EQ(f["endomorphisms"].size(), 27u);
  EXPECT_EQ(f["automorphisms"].size(), 6u);
  int invariant = 0;
  for (auto const& [lit, v] : f["fully_invariant"].items()) {
    if (v.get<bool>()) {
      ++invariant;
      EXPECT_TRUE(lit == "{0 1 2}" || lit == "{0}{1}{2}") << lit;
    }
  }
  EXPECT_EQ(invariant, 2);
  EXPECT_EQ(f["hopfian"]["hopfian"], true);
}

TEST(Cli, AnalyzeCyclic) {
  auto f = json_of("analyze " + file("cyclic4.sg"))["findings"];
  EXPECT_EQ(f["congruence_count"], 3);
  for (auto const& [lit, v] : f["fully_invariant"].items()) {
    EXPECT_TRUE(v.get<bool>()) << lit;
  }
  EXPECT_EQ(f["endomorphisms"].size(), 4u);
  EXPECT_EQ(f["automorphisms"].size(), 2u);
  EXPECT_FALSE(f.contains("rho"));
  // --index-bound selects the rho section on its own
  auto r = json_of("analyze " + file("cyclic4.sg") + " --index-bound 2")
      ["findings"];
  EXPECT_EQ(r["rho"]["rho_n"], "{0 2}{1 3}");
  EXPECT_FALSE(r.contains("congruences"));
}

TEST(Cli, AnalyzeSelectedSections) {
  auto f = json_of("analyze " + file("semilattice2.sg") + " --end --census")
      ["findings"];
  EXPECT_EQ(f["endomorphisms"].size(), 9u);
  EXPECT_EQ(f["census"]["extendable"], 9);
  EXPECT_EQ(f["census"]["total"], 9);
  EXPECT_FALSE(f.contains("congruences"));
  auto g = json_of("analyze " + file("left_zero3.sg")
                   + " --congruence '{0 1}{2}'")["findings"];
  EXPECT_EQ(g["fully_invariant"]["{0 1}{2}"], false);
  EXPECT_EQ(g["characteristic"]["{0 1}{2}"], false);
}

TEST(Cli, Rho) {
  auto f = json_of("rho " + file("left_zero3.sg"))["findings"];
  ASSERT_EQ(f["rho"].size(), 3u);
  EXPECT_EQ(f["rho"][1]["rho_n"], "{0}{1}{2}");
  EXPECT_EQ(f["rho"][1]["index"], 3);
  for (auto const& row : f["rho"]) {
    EXPECT_EQ(row["fully_invariant"], true);
  }
}

TEST(Cli, Theorem9) {
  auto f = json_of("theorem9 " + file("cyclic4.sg")
                   + " --family 'universal;{0 2}{1 3};equality'")["findings"];
  EXPECT_EQ(f["isomorphism"], true);
  EXPECT_EQ(f["end_size"], 4);
  EXPECT_EQ(f["thread_count"], 4);
  std::vector<int> sizes;
  for (auto const& level : f["levels"]) {
    sizes.push_back(level["image_size"]);
  }
  EXPECT_EQ(sizes, (std::vector<int>{1, 2, 4}));

  auto lz = json_of("theorem9 " + file("left_zero2.sg")
                    + " --family 'universal;equality'")["findings"];
  EXPECT_EQ(lz["isomorphism"], true);
  EXPECT_EQ(lz["end_size"], 4);

  auto missing = run("theorem9 " + file("cyclic4.sg")
                         + " --family 'universal;{0 2}{1 3}'",
                     true);
  EXPECT_EQ(missing.code, 1);
  EXPECT_NE(missing.out.find("does not separate points"), std::string::npos);

  auto w = run("theorem9 " + file("cyclic4.sg")
               + " --family 'universal;{0 2}{1 3}' --allow-nonseparating"
                 " --format json");
  EXPECT_EQ(w.code, 1);
  auto j = nlohmann::json::parse(w.out);
  EXPECT_EQ(j["findings"]["separates_points"], false);
  EXPECT_EQ(j["witnesses"][0]["f"], "[0 0 0 0]");
  EXPECT_EQ(j["witnesses"][0]["g"], "[0 2 0 2]");

  auto not_fi = run("theorem9 " + file("left_zero3.sg")
                        + " --family '{0 1}{2};equality'",
                    true);
  EXPECT_EQ(not_fi.code, 1);
}

TEST(Cli, Tower) {
  auto counts = [](nlohmann::json const& f) {
    std::vector<int> out;
    for (auto const& level : f["levels"]) {
      out.push_back(level["index2_count"]);
    }
    return out;
  };
  auto two = json_of("tower --kind left-zero --levels 2")["findings"];
  EXPECT_EQ(counts(two), (std::vector<int>{1, 7}));
  auto three = json_of("tower --kind left-zero --levels 3")["findings"];
  EXPECT_EQ(counts(three), (std::vector<int>{1, 7, 127}));
  for (auto const& s : three["shifts"]) {
    EXPECT_EQ(s["surjective"], true);
    EXPECT_EQ(s["injective"], false);
  }
  auto one = json_of("tower --kind left-zero --levels 1")["findings"];
  EXPECT_EQ(counts(one), (std::vector<int>{1}));
  EXPECT_TRUE(one["shifts"].empty());

  auto file_tower = json_of("tower --file " + file("cyclic_tower.tower"))
      ["findings"];
  EXPECT_EQ(file_tower["thread_count"], 4);
}

TEST(Cli, EndAndAut) {
  auto e = json_of("end " + file("cyclic4.sg"))["findings"];
  EXPECT_EQ(e["end_size"], 4);
  EXPECT_EQ(e["endomorphisms"][0], "[0 0 0 0]");
  auto a = json_of("aut " + file("left_zero3.sg"))["findings"];
  EXPECT_EQ(a["aut_size"], 6);
  EXPECT_EQ(a["units_are_automorphisms"], true);
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run("end " + file("left_zero3.sg") + " --cap-end 5").code, 3);
  EXPECT_EQ(run("analyze " + file("left_zero3.sg")
                + " --congruences --cap-congruences 2")
                .code,
            3);
  EXPECT_EQ(run("validate " + file("cyclic8.sg") + " --max-order 4").code, 0);
  EXPECT_EQ(run("end " + file("cyclic8.sg") + " --max-order 4").code, 3);
  EXPECT_EQ(run("").code, 2);
  EXPECT_EQ(run("validate").code, 2);
  EXPECT_EQ(run("validate " + file("cyclic4.sg") + " --format xml").code, 2);
  EXPECT_EQ(run("validate " + file("missing.sg")).code, 2);
  EXPECT_EQ(run("tower --kind left-zero").code, 2);
  EXPECT_EQ(run("analyze " + file("cyclic4.sg") + " --congruence '{0 1}{2 3}'")
                .code,
            1);
  EXPECT_EQ(run("--help").code, 0);
}

TEST(Cli, Deterministic) {
  for (std::string const& args :
       {"analyze " + file("left_zero3.sg"),
        "theorem9 " + file("cyclic4.sg") + " --family 'universal;equality'",
        std::string("tower --kind left-zero --levels 3")}) {
    for (std::string fmt : {"text", "json"}) {
      auto a = run(args + " --format " + fmt);
      auto b = run(args + " --format " + fmt);
      EXPECT_EQ(a.code, 0);
      EXPECT_EQ(a.out, b.out);
      EXPECT_FALSE(a.out.empty());
    }
  }
}
