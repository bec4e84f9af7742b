#include <doctest.h>

#include <unistd.h>

#include <string>

#include "cli_runner.hpp"
#include "hdsign/rng.hpp"

namespace {

Eigen::MatrixXd gaussian(int n, int p, std::uint64_t seed, double shift = 0.0) {
  hdsign::RngStream rng(seed, 0);
  Eigen::MatrixXd x(n, p);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < p; ++j) x(i, j) = rng.normal() + shift;
  }
  return x;
}

}  // namespace

TEST_CASE("too few rows is a clean error") {
  Eigen::MatrixXd x(2, 3);
  x << 1, 2, 3, 4, 5, 6;
  const auto path = cli::write_matrix("two_rows.csv", x);
  const auto r = cli::run("test --input " + path);
  CHECK(r.exit_code == 1);
  CHECK(r.output.find("n must be at least 3") != std::string::npos);
}

TEST_CASE("malformed input reports position") {
  const auto path = cli::scratch_dir() / "bad.csv";
  std::ofstream(path) << "1,2\n3,4\n5,oops\n";
  const auto r = cli::run("test --input " + path.string());
  CHECK(r.exit_code == 1);
  CHECK(r.output.find("line 3, column 2") != std::string::npos);
}

TEST_CASE("scalar-invariant test ignores coordinate rescaling") {
  Eigen::MatrixXd x = gaussian(30, 20, 3);
  const auto a = cli::write_matrix("x.csv", x);
  const auto b = cli::write_matrix("x_scaled.csv", 7.3 * x);
  const auto ra = cli::run("test --input " + a + " --test scalar-invariant-os --format csv");
  const auto rb = cli::run("test --input " + b + " --test scalar-invariant-os --format csv");
  REQUIRE(ra.exit_code != 1);
  REQUIRE(rb.exit_code != 1);
  const double za = std::stod(cli::csv_field(ra.output, "z"));
  const double zb = std::stod(cli::csv_field(rb.output, "z"));
  CHECK(za == doctest::Approx(zb).epsilon(1e-10));
  for (const char* kind : {"os", "ss", "cq"}) {
    const auto ka = cli::run(std::string("test --format csv --test ") + kind + " --input " + a);
    const auto kb = cli::run(std::string("test --format csv --test ") + kind + " --input " + b);
    CHECK(std::stod(cli::csv_field(ka.output, "z")) ==
          doctest::Approx(std::stod(cli::csv_field(kb.output, "z"))).epsilon(1e-10));
  }
}

TEST_CASE("exit code reflects the decision") {
  const auto shifted = cli::write_matrix("shifted.csv", gaussian(40, 50, 9, 1.0));
  const auto r = cli::run("test --input " + shifted);
  CHECK(r.exit_code == 2);
  CHECK(r.output.find("reject      yes") != std::string::npos);

  const auto custom = cli::run("test --test custom --weight 'r^(-1)' --format csv --input " + shifted);
  CHECK(custom.exit_code == 2);
  CHECK(cli::csv_field(custom.output, "test") == "custom:r^(-1)");
  CHECK(cli::run("test --test custom --input " + shifted).exit_code == 1);
}

TEST_CASE("null p-values are mostly above alpha") {
  int above = 0;
  const int trials = 40;
  for (int s = 0; s < trials; ++s) {
    const auto path = cli::write_matrix("null.csv", gaussian(30, 40, 100 + s));
    const auto r = cli::run("test --format csv --input " + path);
    REQUIRE(r.exit_code != 1);
    if (std::stod(cli::csv_field(r.output, "p_value")) > 0.05) ++above;
  }
  CHECK(above >= 33);
}

TEST_CASE("theta0 recenters the data") {
  const auto x = cli::write_matrix("loc.csv", gaussian(40, 30, 17, 2.0));
  const auto t0 = cli::write_matrix("theta0.csv", Eigen::MatrixXd::Constant(1, 30, 2.0));
  const auto r = cli::run("test --format csv --input " + x + " --theta0 " + t0);
  CHECK(r.exit_code == 0);
}

TEST_CASE("are subcommand") {
  const auto r = cli::run("are");
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("ARE(OS,CQ)") != std::string::npos);
  CHECK(r.output.find("16.68") != std::string::npos);
  const auto c = cli::run("are --format csv");
  CHECK(c.output.find("\"MN(0.2,3)\"") != std::string::npos);
  CHECK(c.output.find("\"ARE(OS,CQ)\",3,") != std::string::npos);
}

TEST_CASE("validate subcommand") {
  const auto r = cli::run("validate --p 50 --samples 100000");
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("E(u'Mu)^2") != std::string::npos);
  CHECK(r.output.find("E(u'Mu)^4 exact") != std::string::npos);
}

TEST_CASE("simulate subcommand") {
  const auto r = cli::run("simulate --scenario II --pattern dense --n 20 --p 40 --reps 50 --format csv --threads 1");
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("(II),") != std::string::npos);
  const auto bad = cli::run("simulate --scenario IX");
  CHECK(bad.exit_code == 1);
}
