#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include <sys/wait.h>
#include <unistd.h>

#include "glt/table.hpp"

using namespace glt;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("glt_cli_test_" + std::to_string(::getpid()) + "_" +
                                        ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string operator/(const std::string& name) const { return (path / name).string(); }
};

int run(const std::string& args) {
  const std::string cmd = std::string(GLT_CLI_PATH) + " " + args + " 2>/dev/null";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::string> data_lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line))
    if (!line.empty() && line[0] != '#') out.push_back(line);
  return out;
}

}  // namespace

TEST(Table, FormatDoubleRoundTrips) {
  for (double x : {0.1, 1.0 / 3.0, 2.275444806811463, 1e-300, 123456789.0}) {
    const auto s = format_double(x);
    EXPECT_EQ(std::stod(s), x);
  }
  EXPECT_EQ(format_double(2.0), "2");
}

TEST(Table, WriteReadRoundTrip) {
  std::vector<TableRow> rows{{GeneratingVector(55, {1, 21}), 2.0, 0.038148140248704054},
                             {GeneratingVector(89, {1, 34}), 2.0, 0.016033197373541253}};
  std::stringstream ss;
  write_table(ss, rows, {"glt test"});
  EXPECT_EQ(ss.str().substr(0, 11), "# glt test\n");
  const auto back = read_table(ss);
  ASSERT_EQ(back.size(), 2u);
  EXPECT_EQ(back[1].gv, rows[1].gv);
  EXPECT_EQ(back[1].p_alpha, rows[1].p_alpha);
}

TEST(Table, RejectsMalformed) {
  std::stringstream bad1("s,n,z1,z2,alpha,p_alpha\n2,55,1,21,2\n");
  EXPECT_THROW(read_table(bad1), std::invalid_argument);
  std::stringstream bad2("2,55,1,x,2,0.1\n");
  EXPECT_THROW(read_table(bad2), std::invalid_argument);
  std::stringstream bad3("2,55,1,55,2,0.1\n");
  EXPECT_THROW(read_table(bad3), std::invalid_argument);
}

TEST(Table, MergeKeepsFirstAndSorts) {
  std::vector<TableRow> table{{GeneratingVector(89, {1, 34}), 2.0, 0.5}};
  const std::vector<TableRow> add{{GeneratingVector(55, {1, 21}), 2.0, 0.1}, {GeneratingVector(89, {1, 55}), 2.0, 0.9}};
  EXPECT_EQ(merge_table_rows(table, add), 1u);
  ASSERT_EQ(table.size(), 2u);
  EXPECT_EQ(table[0].gv.n(), 55);
  EXPECT_EQ(table[1].gv.z(1), 34);
}

TEST(Cli, PointsCount) {
  TempDir dir;
  ASSERT_EQ(run("points --kind glt --n 144 --s 2 --seed 7 --out " + (dir / "p.csv")), 0);
  const auto text = slurp(dir / "p.csv");
  EXPECT_EQ(text.rfind("# glt ", 0), 0u);
  EXPECT_NE(text.find("kind=glt n=144 s=2 seed=7"), std::string::npos);
  const auto lines = data_lines(text);
  ASSERT_EQ(lines.size(), 145u);
  EXPECT_EQ(lines[0], "x1,x2");
}

TEST(Cli, PointsAllKinds) {
  TempDir dir;
  EXPECT_EQ(run("points --kind sobol --n 4 --s 2 --out " + (dir / "s.csv")), 0);
  const auto lines = data_lines(slurp(dir / "s.csv"));
  ASSERT_EQ(lines.size(), 5u);
  EXPECT_EQ(lines[3], "0.75,0.25");
  EXPECT_EQ(run("points --kind grid --n 9 --s 2 --no-shift --out " + (dir / "g.csv")), 0);
  EXPECT_EQ(data_lines(slurp(dir / "g.csv"))[2], "0,0.3333333333333333");
  EXPECT_EQ(run("points --kind lhs --n 10 --s 3 --out " + (dir / "l.csv")), 0);
  EXPECT_EQ(run("points --kind mc --n 10 --s 3 --out " + (dir / "m.csv")), 0);
  EXPECT_EQ(data_lines(slurp(dir / "m.csv")).size(), 11u);
}

TEST(Cli, MeritRows) {
  TempDir dir;
  ASSERT_EQ(run("merit --n 89 --z 1,55 --out " + (dir / "m.csv")), 0);
  const auto lines = data_lines(slurp(dir / "m.csv"));
  ASSERT_EQ(lines.size(), 2u);
  EXPECT_EQ(lines[0], "n,z1,z2,alpha,p_alpha");
  EXPECT_EQ(lines[1].rfind("89,1,55,2,0.0160331973735", 0), 0u);
}

TEST(Cli, SearchAscendingAndIdempotent) {
  TempDir dir;
  const auto out = dir / "t.csv";
  ASSERT_EQ(run("search --n 89,55 --s 2 --alpha 2 --out " + out), 0);
  const auto first = slurp(out);
  auto lines = data_lines(first);
  ASSERT_EQ(lines.size(), 3u);
  EXPECT_EQ(lines[0], "s,n,z1,z2,alpha,p_alpha");
  EXPECT_EQ(lines[1].rfind("2,55,", 0), 0u);
  EXPECT_EQ(lines[2].rfind("2,89,", 0), 0u);
  ASSERT_EQ(run("search --n 89,55 --s 2 --alpha 2 --out " + out), 0);
  EXPECT_EQ(slurp(out), first);
  ASSERT_EQ(run("search --n 987 --s 2 --alpha 2 --out " + out), 0);
  lines = data_lines(slurp(out));
  ASSERT_EQ(lines.size(), 4u);
  EXPECT_EQ(lines[3].rfind("2,987,1,", 0), 0u);
  std::ifstream in(out);
  const auto table = read_table(in);
  EXPECT_EQ(table.back().gv.n(), 987);
}

TEST(Cli, BenchCardinality) {
  TempDir dir;
  ASSERT_EQ(run("bench --integrand korobov2 --kinds mc,glt --trials 10 --seed 1 --out " + (dir / "b.csv") +
                " --summary " + (dir / "s.csv")),
            0);
  const auto lines = data_lines(slurp(dir / "b.csv"));
  EXPECT_EQ(lines[0], "integrand,kind,n,trial,seed,abs_error");
  EXPECT_EQ(lines.size(), 1u + 2u * 10u * 10u);
  const auto summary = data_lines(slurp(dir / "s.csv"));
  EXPECT_EQ(summary[0], "integrand,kind,n,mean,std,max");
  EXPECT_EQ(summary.size(), 1u + 2u * 10u);
  EXPECT_NE(slurp(dir / "s.csv").find("# fit kind=glt slope="), std::string::npos);
}

TEST(Cli, BenchPerKindScheduleAndTransforms) {
  TempDir dir;
  ASSERT_EQ(run("bench --integrand prod_linear --kinds glt,sobol --schedule 'glt=55,89;sobol=64' --trials 3 "
                "--transforms poly3,poly3 --out " + (dir / "b.csv")),
            0);
  EXPECT_EQ(data_lines(slurp(dir / "b.csv")).size(), 1u + 3u * 3u);
  EXPECT_NE(run("bench --kinds sobol --schedule 100 --trials 2 --out " + (dir / "x.csv")), 0);
  EXPECT_FALSE(fs::exists(dir / "x.csv"));
}

TEST(Cli, PinnStreams) {
  TempDir dir;
  ASSERT_EQ(run("pinn --s 2 --kind glt --n 89 --iters 1000 --seeds 1,2,3 --eval-grid 51 --out " + (dir / "p.csv")), 0);
  const auto lines = data_lines(slurp(dir / "p.csv"));
  EXPECT_EQ(lines[0], "seed,kind,n,iter,loss,rel_error");
  std::map<std::string, int> per_seed;
  for (std::size_t i = 1; i < lines.size(); ++i) ++per_seed[lines[i].substr(0, lines[i].find(','))];
  EXPECT_EQ(per_seed.size(), 3u);
  for (const auto& [seed, count] : per_seed) EXPECT_EQ(count, 2);
}

TEST(Cli, ErrorsExitNonzero) {
  TempDir dir;
  EXPECT_NE(run("points --kind glt --n 144 --bogus 1"), 0);
  EXPECT_NE(run("frobnicate"), 0);
  EXPECT_NE(run(""), 0);
  EXPECT_NE(run("search --n 55 --alpha 3 --out " + (dir / "a.csv")), 0);
  EXPECT_FALSE(fs::exists(dir / "a.csv"));
  EXPECT_NE(run("points --kind sobol --n 6 --s 2"), 0);
  EXPECT_NE(run("points --kind halton --n 8"), 0);
  EXPECT_NE(run("merit --n 5 --z 1,7"), 0);
  EXPECT_NE(run("points --kind glt --n 10 --s 2 --out /nonexistent_dir/x.csv"), 0);
  EXPECT_NE(run("pinn --iters 5 --lr 1e308 --eval-grid 11 --out " + (dir / "d.csv")), 0);
  EXPECT_NE(slurp(dir / "d.csv").find("# diverged"), std::string::npos);
}

TEST(Cli, SeedControlsRandomness) {
  TempDir dir;
  ASSERT_EQ(run("points --kind mc --n 5 --seed 1 --out " + (dir / "a.csv")), 0);
  ASSERT_EQ(run("points --kind mc --n 5 --seed 2 --out " + (dir / "b.csv")), 0);
  ASSERT_EQ(run("points --kind mc --n 5 --seed 1 --workers 3 --out " + (dir / "c.csv")), 0);
  EXPECT_NE(data_lines(slurp(dir / "a.csv")), data_lines(slurp(dir / "b.csv")));
  EXPECT_EQ(data_lines(slurp(dir / "a.csv")), data_lines(slurp(dir / "c.csv")));
}
