#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "doctest.h"

namespace {

struct Run {
  int status;
  std::string out;
};

// Runs the tool with standard error discarded unless `keep_err`.
Run run(const std::string& args, bool keep_err = false) {
  const std::string cmd = std::string(LSRK_BIN) + " " + args + (keep_err ? " 2>&1" : " 2>/dev/null");
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  std::string out;
  std::array<char, 4096> buf;
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) out.append(buf.data(), n);
  const int status = pclose(p);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

bool has(const std::string& text, const std::string& what) { return text.find(what) != std::string::npos; }

std::filesystem::path scratch() {
  const auto dir = std::filesystem::temp_directory_path() / "lsrk-test-cli";
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace

TEST_CASE("check") {
  const auto ok = run("check --scheme 43-1 --order 3 --two-n");
  CHECK(ok.status == 0);
  CHECK(has(ok.out, "all residuals zero"));
  CHECK(has(ok.out, "2n:i4j2 0"));
  CHECK(run("check --scheme rk4-classic --order 4 --two-n").status == 1);
  CHECK(run("check --scheme rk4-classic --order 4").status == 0);
  for (const auto& name : {"43-b3zero", "53-b4zero", "43-1", "43-2", "43-3", "43-4", "53-1", "53-2", "53-3", "53-4"})
    CHECK_MESSAGE(run(std::string("check --two-n --order 3 --scheme ") + name).status == 0, name);
}

TEST_CASE("usage errors exit with 2") {
  CHECK(run("").status == 2);
  CHECK(run("check --scheme 43-1").status == 2);
  CHECK(run("check --scheme 43-1 --order 7").status == 2);
  CHECK(run("check --scheme nope --order 3").status == 2);
  CHECK(run("convert --scheme 43-1 --to beta").status == 2);
  CHECK(run("solve43 --c2 x --c3 1/2 --c4 1").status == 2);
  CHECK(run("bogus").status == 2);
  CHECK(run("--help").status == 0);
}

TEST_CASE("convert") {
  const auto legacy = run("convert --scheme 43-b3zero --to lowstorage --legacy-williamson", true);
  CHECK(legacy.status == 0);
  CHECK(has(legacy.out, "A3 = 38/243"));
  CHECK(has(legacy.out, "warning"));
  const auto fixed = run("convert --scheme 43-b3zero --to lowstorage");
  CHECK(has(fixed.out, "A3 = 130/81"));
  CHECK(has(run("convert --scheme 43-1 --to alpha").out, "beta = "));
  const auto file = scratch() / "ls.json";
  CHECK(run("convert --scheme 53-1 --to lowstorage --out " + file.string()).status == 0);
  CHECK(run("check --two-n --order 3 --scheme " + file.string()).status == 0);
}

TEST_CASE("solvers") {
  const auto r = run("solve43 --c2 1/4 --c3 7/12 --c4 4/5");
  CHECK(r.status == 0);
  CHECK(has(r.out, "\"1/6\""));
  const auto dir = scratch() / "s43";
  std::filesystem::remove_all(dir);
  CHECK(run("solve43 --c2 1/4 --c3 7/12 --c4 4/5 --out-dir " + dir.string()).status == 0);
  CHECK(std::distance(std::filesystem::directory_iterator(dir), std::filesystem::directory_iterator{}) == 2);
  CHECK(run("solve43-special --case b3zero --p1 1/2 --p2 3/4").status == 0);
  CHECK(run("solve43-special --case b5zero --p1 1/2 --p2 3/4").status == 2);
  CHECK(run("solve53 --c2 1/4 --c3 8/15 --c4 12/17 --c5 5/6 --b5 10/47").status == 0);
  CHECK(has(run("family-aminus1 --b 1/4,1/4,1/2").out, "\"-1\""));
  CHECK(run("derive --b 1/6,1/3,1/3,1/6 --c 0,1/2,1/2,1").status == 1);
  const auto d = run("derive --b 1/4,1/4,1/2 --c 0,1/3,2/3");
  CHECK(d.status == 0);
  CHECK(has(d.out, "\"A\""));
}

TEST_CASE("search") {
  const auto dir = scratch() / "search";
  std::filesystem::remove_all(dir);
  const auto r = run("search --family 43 --max-den 6 --filter increasing_nodes --filter rational_roots_only --jobs 2 --out-dir " +
                     dir.string());
  CHECK(r.status == 0);
  CHECK(has(r.out, "attempted "));
  CHECK(std::filesystem::exists(dir / "summary.txt"));
  CHECK(run("search --family 43 --max-den 6 --filter sideways --out-dir " + dir.string()).status == 2);
}

TEST_CASE("integrate, stability, verify, refine") {
  const auto i = run("integrate --scheme 43-1 --problem 1 --h-list 1/20,1/40,1/80");
  CHECK(i.status == 0);
  CHECK(i.out.rfind("h,d\n0.05,", 0) == 0);
  CHECK(run("integrate --scheme 43-1 --problem 1 --h-list 3/7").status == 2);
  const auto pgm = scratch() / "r.pgm";
  CHECK(run("stability --scheme 43-1 --re -4:1 --im -4:4 --nx 40 --ny 40 --format pgm --out " + pgm.string()).status == 0);
  std::ifstream in(pgm);
  std::string magic;
  in >> magic;
  CHECK(magic == "P2");
  const auto v = run("verify --scheme 64-berland --order 4 --bits 256");
  CHECK(v.status == 0);
  CHECK(has(v.out, "(256 bits)"));
  const auto rf = run("refine --scheme 64-berland --pin B6=0.27 --pin A6 --pin B5 --order 4 --bits 300");
  CHECK(rf.status == 0);
  CHECK(has(rf.out, "B6 = 2.7e-01"));
  CHECK(run("refine --scheme 64-berland --pin B6 --order 4 --bits 300").status == 1);
}

TEST_CASE("output is deterministic") {
  const std::string cmd = "solve53 --c2 1/4 --c3 1/2 --c4 3/4 --c5 1 --b5 1/9";
  CHECK(run(cmd).out == run(cmd).out);
  CHECK(has(run("registry").out, "64-berland"));
}
