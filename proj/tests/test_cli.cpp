#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#ifndef SCDE_CLI_PATH
#error "SCDE_CLI_PATH must point at the built command-line binary"
#endif

namespace {

const std::string cli = SCDE_CLI_PATH;
const std::string dir = "cli_test_tmp";

int run(const std::string& args)
{
  const int status = std::system((cli + " " + args + " >/dev/null 2>&1").c_str());
  return WEXITSTATUS(status);
}

std::string slurp(const std::string& path)
{
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string first_line(const std::string& path)
{
  std::ifstream in(path);
  std::string line;
  std::getline(in, line);
  return line;
}

struct Setup
{
  Setup() { std::system(("mkdir -p " + dir).c_str()); }
};
const Setup setup;

} // namespace

TEST_CASE("estimate happy path emits a CSV with the expected header")
{
  REQUIRE(run("sample --dist gaussian --n 200 --seed 1 --output " + dir +
              "/data.txt") == 0);
  CHECK(run("estimate --input " + dir + "/data.txt --output " + dir +
            "/est.csv --diagnostics " + dir + "/diag.csv") == 0);
  CHECK(first_line(dir + "/est.csv") == "x,f");
  CHECK(first_line(dir + "/diag.csv") == "key,value");
  const std::string diag = slurp(dir + "/diag.csv");
  CHECK(diag.find("\nt_star,") != std::string::npos);
  CHECK(diag.find("\naccepted_count,") != std::string::npos);
  CHECK(diag.find("\nnegative_mass,") != std::string::npos);
}

TEST_CASE("every estimator method runs on the same input")
{
  for (const char* m : { "kg", "kt", "apt" })
    CHECK(run("estimate --input " + dir + "/data.txt --method " + m +
              " --output " + dir + "/est_m.csv") == 0);
  CHECK(run("estimate --input " + dir +
            "/data.txt --method opt --dist gaussian --output " + dir +
            "/est_opt.csv") == 0);
  // opt without --dist is invalid input
  CHECK(run("estimate --input " + dir + "/data.txt --method opt --output " +
            dir + "/x.csv") == 2);
  // unknown method
  CHECK(run("estimate --input " + dir + "/data.txt --method foo --output " +
            dir + "/x.csv") == 2);
}

TEST_CASE("bad input files map to exit code 2")
{
  { std::ofstream(dir + "/empty.txt"); }
  CHECK(run("estimate --input " + dir + "/empty.txt --output " + dir +
            "/x.csv") == 2);
  {
    std::ofstream bad(dir + "/bad.txt");
    bad << "1.0\nnot-a-number\n";
  }
  CHECK(run("estimate --input " + dir + "/bad.txt --output " + dir +
            "/x.csv") == 2);
  CHECK(run("estimate --input " + dir + "/missing.txt --output " + dir +
            "/x.csv") == 2);
}

TEST_CASE("input files may contain comments and blank lines")
{
  {
    std::ofstream ok(dir + "/commented.txt");
    ok << "# a comment\n\n0.25\n  1.5 \n#trailing\n-0.5\n2.5\n";
  }
  CHECK(run("estimate --input " + dir + "/commented.txt --output " + dir +
            "/c.csv") == 0);
}

TEST_CASE("missing required flags and unknown subcommands exit 2")
{
  CHECK(run("estimate --output " + dir + "/x.csv") == 2);
  CHECK(run("frobnicate") == 2);
  CHECK(run("sample --dist gaussian --n 10 --output " + dir + "/x.txt") == 2);
  CHECK(run("benchmark --dist gaussian --output " + dir + "/x.csv") == 2);
}

TEST_CASE("ecf subcommand dumps the spectral table")
{
  CHECK(run("ecf --input " + dir + "/data.txt --output " + dir + "/ecf.csv") ==
        0);
  CHECK(first_line(dir + "/ecf.csv") == "t,re,im,abs2");
}

TEST_CASE("theory subcommand prints reference curves")
{
  CHECK(run("theory --dist gaussian --bound opt --n-list 100,1000 --output " +
            dir + "/th.csv") == 0);
  CHECK(first_line(dir + "/th.csv") == "n,value");
  CHECK(run("theory --dist cauchy --bound kg --n-list 100 --output " + dir +
            "/th2.csv") == 0);
  // ml is only defined for the Gaussian reference
  CHECK(run("theory --dist cauchy --bound ml --n-list 100 --output " + dir +
            "/th3.csv") == 2);
  CHECK(run("theory --dist gaussian --bound bogus --n-list 100 --output " +
            dir + "/th4.csv") == 2);
}

TEST_CASE("benchmark runs are byte-identical across repeats and thread counts")
{
  const std::string args = "benchmark --dist gaussian --estimators sc,kg "
                           "--n-list 100,316 --reps 5 --seed 7 --output ";
  REQUIRE(std::system(("SCD_THREADS=1 " + cli + " " + args + dir +
                       "/b1.csv >/dev/null 2>&1").c_str()) == 0);
  REQUIRE(std::system(("SCD_THREADS=4 " + cli + " " + args + dir +
                       "/b2.csv >/dev/null 2>&1").c_str()) == 0);
  const std::string b1 = slurp(dir + "/b1.csv");
  CHECK(!b1.empty());
  CHECK(b1 == slurp(dir + "/b2.csv"));
  CHECK(first_line(dir + "/b1.csv") ==
        "dist,estimator,n,mise_mean,mise_stderr,reps,seed");
}

TEST_CASE("benchmark --theory appends reference rows")
{
  CHECK(run("benchmark --dist gaussian --estimators kg --n-list 100 --reps 3 "
            "--seed 9 --theory --output " + dir + "/bt.csv") == 0);
  const std::string out = slurp(dir + "/bt.csv");
  CHECK(out.find("theory_opt") != std::string::npos);
  CHECK(out.find("theory_kg") != std::string::npos);
  CHECK(out.find("theory_ml") != std::string::npos);
}

TEST_CASE("sample output is one float per line and seed-deterministic")
{
  REQUIRE(run("sample --dist cauchy --n 50 --seed 3 --output " + dir +
              "/s1.txt") == 0);
  REQUIRE(run("sample --dist cauchy --n 50 --seed 3 --output " + dir +
              "/s2.txt") == 0);
  CHECK(slurp(dir + "/s1.txt") == slurp(dir + "/s2.txt"));
  REQUIRE(run("sample --dist cauchy --n 50 --seed 4 --output " + dir +
              "/s3.txt") == 0);
  CHECK(slurp(dir + "/s1.txt") != slurp(dir + "/s3.txt"));
  std::ifstream in(dir + "/s1.txt");
  std::string line;
  std::size_t count = 0;
  while (std::getline(in, line)) {
    ++count;
    CHECK(line.find(',') == std::string::npos);
  }
  CHECK(count == 50);
}

TEST_CASE("sensitivity subcommand emits its table")
{
  CHECK(run("sensitivity --dist gaussian --n 200 --reps 3 --factors 0.5,1.5 "
            "--seed 2 --output " + dir + "/sv.csv") == 0);
  CHECK(first_line(dir + "/sv.csv") == "factor,mean_rel_change,failures");
}

TEST_CASE("line endings are plain newlines")
{
  const std::string est = slurp(dir + "/est.csv");
  CHECK(est.find('\r') == std::string::npos);
  CHECK(!est.empty());
  CHECK(est.back() == '\n');
}
