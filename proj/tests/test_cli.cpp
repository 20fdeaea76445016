#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "fsr/metrics.hpp"
#include "fsr/pnm.hpp"

namespace fs = std::filesystem;

namespace {

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("fsr_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  // Runs the CLI with stdout captured to a file; returns the exit status.
  int run(const std::string& args, std::string* output = nullptr) const {
    const std::string log = path("stdout.txt");
    const std::string cmd = std::string(FSR_CLI_PATH) + " " + args + " > " + log + " 2>&1";
    const int status = std::system(cmd.c_str());
    if (output) {
      std::ifstream in(log);
      std::stringstream ss;
      ss << in.rdbuf();
      *output = ss.str();
    }
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  }

  std::string slurp(const std::string& name) const {
    std::ifstream in(path(name), std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }

  fs::path dir_;
};

}  // namespace

TEST_F(Cli, SampleReconstructMetricsPipeline) {
  ASSERT_EQ(run("zoneplate --size 48 --out " + path("z.pgm")), 0);
  ASSERT_EQ(run("sample --in " + path("z.pgm") + " --density 0.5 --seed 3 --out-img " + path("s.pgm") +
                " --out-mask " + path("m.pbm")),
            0);
  std::string out;
  ASSERT_EQ(run("reconstruct --in " + path("s.pgm") + " --mask " + path("m.pbm") + " --out " + path("r.pgm"), &out), 0);
  // Default parameter set is echoed.
  for (const char* line : {"block_size=4", "border_width=14", "transform_size=32x32", "iterations=100", "rho=0.7",
                           "gamma=0.5", "delta=0.5", "frequency_weighting=on", "order=density"}) {
    EXPECT_NE(out.find(line), std::string::npos) << line;
  }

  const auto mask = fsr::pnm::read_pbm(path("m.pbm"));
  const auto orig = fsr::pnm::read_pgm(path("z.pgm"));
  const auto rec = fsr::pnm::read_pgm(path("r.pgm"));
  for (std::size_t i = 0; i < mask.size(); ++i) {
    if (mask[i]) {
      EXPECT_EQ(rec[i], orig[i]);
    }
  }

  ASSERT_EQ(run("metrics --ref " + path("z.pgm") + " --test " + path("r.pgm") + " --out csv", &out), 0);
  EXPECT_EQ(out.rfind("psnr_db,ssim\n", 0), 0u);

  // Two runs give identical bytes.
  ASSERT_EQ(run("reconstruct --in " + path("s.pgm") + " --mask " + path("m.pbm") + " --out " + path("r2.pgm")), 0);
  EXPECT_EQ(slurp("r.pgm"), slurp("r2.pgm"));
}

TEST_F(Cli, BaselinesAndSpectrum) {
  ASSERT_EQ(run("zoneplate --size 32 --out " + path("z.pgm")), 0);
  ASSERT_EQ(run("sample --in " + path("z.pgm") + " --density 0.3 --seed 1 --ascii --out-img " + path("s.pgm") +
                " --out-mask " + path("m.pbm")),
            0);
  EXPECT_EQ(slurp("m.pbm").substr(0, 2), "P1");
  for (const char* m : {"nearest", "linear", "bandlimited"}) {
    EXPECT_EQ(run(std::string("baseline --method ") + m + " --in " + path("s.pgm") + " --mask " + path("m.pbm") +
                  " --out " + path(std::string(m) + ".pgm")),
              0)
        << m;
  }
  ASSERT_EQ(run("spectrum --mask " + path("m.pbm") + " --out " + path("q.pgm")), 0);
  const auto q = fsr::pnm::read_pgm(path("q.pgm"));
  EXPECT_EQ(q(16, 16), 255.0);  // DC dominates and sits in the centre
}

TEST_F(Cli, SweepCsvContract) {
  ASSERT_EQ(run("zoneplate --size 32 --out " + path("z.pgm")), 0);
  ASSERT_EQ(run("sweep --in " + path("z.pgm") + " --densities 0.5,0.25 --methods linear,nearest --seed 2 --out " +
                path("a.csv")),
            0);
  const std::string csv = slurp("a.csv");
  EXPECT_EQ(csv.find('\r'), std::string::npos);
  std::stringstream ss(csv);
  std::string line;
  std::getline(ss, line);
  EXPECT_EQ(line, "density,method,psnr_db,ssim,seconds");
  std::vector<std::string> keys;
  while (std::getline(ss, line)) keys.push_back(line.substr(0, line.find(',', line.find(',') + 1)));
  EXPECT_EQ(keys, (std::vector<std::string>{"0.2500,linear", "0.2500,nearest", "0.5000,linear", "0.5000,nearest"}));

  // Quality columns do not depend on the thread count.
  ASSERT_EQ(run("sweep --in " + path("z.pgm") + " --densities 0.5,0.25 --methods linear,nearest --seed 2 --threads 1 "
                "--out " + path("b.csv")),
            0);
  auto strip_time = [](const std::string& text) {
    std::stringstream in(text);
    std::string row, kept;
    while (std::getline(in, row)) kept += row.substr(0, row.rfind(',')) + "\n";
    return kept;
  };
  EXPECT_EQ(strip_time(csv), strip_time(slurp("b.csv")));
}

TEST_F(Cli, ConfigFilePrecedence) {
  ASSERT_EQ(run("zoneplate --size 32 --out " + path("z.pgm")), 0);
  ASSERT_EQ(run("sample --in " + path("z.pgm") + " --density 0.5 --out-img " + path("s.pgm") + " --out-mask " +
                path("m.pbm")),
            0);
  std::ofstream(path("c.ini")) << "# experiment\ngamma=0.3\niters=40\norder=line-scan\n";
  std::string out;
  ASSERT_EQ(run("reconstruct --in " + path("s.pgm") + " --mask " + path("m.pbm") + " --out " + path("r.pgm") +
                    " --config " + path("c.ini") + " --iters 10",
                &out),
            0);
  EXPECT_NE(out.find("gamma=0.3"), std::string::npos);
  EXPECT_NE(out.find("iterations=10"), std::string::npos);
  EXPECT_NE(out.find("order=line-scan"), std::string::npos);
  EXPECT_NE(out.find("rho=0.7"), std::string::npos);
}

TEST_F(Cli, ExitCodes) {
  ASSERT_EQ(run("zoneplate --size 32 --out " + path("z.pgm")), 0);
  ASSERT_EQ(run("sample --in " + path("z.pgm") + " --density 0.5 --out-img " + path("s.pgm") + " --out-mask " +
                path("m.pbm")),
            0);
  const std::string io = " --in " + path("s.pgm") + " --mask " + path("m.pbm") + " --out " + path("r.pgm");
  std::string out;
  EXPECT_EQ(run("reconstruct" + io + " --gamma 2.5", &out), 1);
  EXPECT_NE(out.find("(0,2)"), std::string::npos) << out;
  EXPECT_EQ(run("reconstruct" + io + " --block 8"), 1);  // 8 + 2*14 > 32
  EXPECT_EQ(run("reconstruct" + io + " --unknown-flag"), 1);
  EXPECT_EQ(run(""), 1);
  EXPECT_EQ(run("sample --in " + path("z.pgm") + " --density 0 --out-img x --out-mask y"), 1);
  EXPECT_EQ(run("reconstruct --in " + path("missing.pgm") + " --mask " + path("m.pbm") + " --out " + path("r.pgm")), 2);
  std::ofstream(path("bad.pgm")) << "P5\n4 4\n65535\n";
  EXPECT_EQ(run("metrics --ref " + path("bad.pgm") + " --test " + path("z.pgm"), &out), 2);
  EXPECT_NE(out.find("unsupported maxval"), std::string::npos);
  std::ofstream(path("empty.pbm")) << "P1\n32 32\n" << std::string(1024, '0');
  EXPECT_EQ(run("reconstruct --in " + path("s.pgm") + " --mask " + path("empty.pbm") + " --out " + path("r.pgm")), 2);
  EXPECT_EQ(run("metrics --ref " + path("z.pgm") + " --test " + path("z.pgm")), 0);
}
