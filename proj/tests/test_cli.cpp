#include <doctest.h>

#include <json.hpp>
#include <sstream>
#include <string>
#include <vector>

#include "bsfs/cli.hpp"

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run call(std::vector<std::string> args) {
  args.insert(args.begin(), "bsfs");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = bsfs::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream is(s);
  std::string l;
  while (std::getline(is, l)) out.push_back(l);
  return out;
}

}  // namespace

TEST_CASE("expected-sfs at n = 3") {
  const auto r = call({"expected-sfs", "--n", "3"});
  REQUIRE(r.code == 0);
  const auto l = lines(r.out);
  REQUIRE(l.size() == 3);
  CHECK(l[0] == "b,exact,basic_approx,refined_approx,rel_err_basic,rel_err_refined");
  CHECK(l[1].rfind("1,", 0) == 0);
  CHECK(l[1].substr(l[1].size() - 4) == ",,,,");
  CHECK(l[2].rfind("2,", 0) == 0);
}

TEST_CASE("expected-sfs as json") {
  const auto r = call({"expected-sfs", "--n", "4", "--theta", "2", "--b", "2", "--format", "json"});
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j.dump().find("exact") != std::string::npos);
}

TEST_CASE("covariance at n = 2") {
  const auto r = call({"cov", "--n", "2", "--b1", "1", "--b2", "1"});
  REQUIRE(r.code == 0);
  const auto l = lines(r.out);
  REQUIRE(l.size() == 2);
  const double cov = std::stod(l[1].substr(l[1].rfind(',') + 1));
  // Var(SFS) = theta^2 Var(l) + theta E[l] = 4 + 2
  CHECK(cov == doctest::Approx(6.0).epsilon(1e-9));
}

TEST_CASE("dist grid") {
  const auto r = call({"dist", "--n", "3", "--b", "2", "--s-grid", "0:1:0.5"});
  REQUIRE(r.code == 0);
  const auto l = lines(r.out);
  REQUIRE(l.size() == 4);
  CHECK(l[0] == "s,surv");
  CHECK(std::stod(l[1].substr(2)) == doctest::Approx(0.75).epsilon(1e-12));
  CHECK(l[3].rfind("1,", 0) == 0);
}

TEST_CASE("joint probability") {
  const auto r = call({"joint", "--n", "3", "--chain", "2", "--format", "json"});
  REQUIRE(r.code == 0);
  CHECK(nlohmann::json::parse(r.out).dump().find("probability") != std::string::npos);
}

TEST_CASE("figure1 rows") {
  const auto r = call({"figure1", "--n", "5,8"});
  REQUIRE(r.code == 0);
  CHECK(lines(r.out).size() == 1 + 3 + 6);
}

TEST_CASE("simulate is reproducible") {
  const auto a = call({"simulate", "--n", "6", "--reps", "2000", "--seed", "3", "--threads", "1"});
  const auto b = call({"simulate", "--n", "6", "--reps", "2000", "--seed", "3", "--threads", "2"});
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(lines(a.out).size() == 6);
}

TEST_CASE("bad input exits with 2") {
  CHECK(call({"dist", "--n", "4", "--b", "2"}).code == 2);
  CHECK(call({"dist", "--n", "5", "--b", "3", "--s-grid", "1:0:1"}).code == 2);
  CHECK(call({"expected-sfs", "--n", "1"}).code == 2);
  CHECK(call({"cov", "--n", "5", "--b1", "1", "--b2", "2", "--mode", "other"}).code == 2);
  CHECK(call({"joint", "--n", "9", "--chain", "6,x"}).code == 2);
  CHECK(call({"nonsense"}).code == 2);
  CHECK(call({}).code == 2);
  const auto r = call({"dist", "--n", "4", "--b", "2"});
  CHECK(r.err.rfind("error: ", 0) == 0);
  CHECK(r.out.empty());
}

TEST_CASE("help exits with 0") {
  CHECK(call({"--help"}).code == 0);
  CHECK(call({"dist", "--help"}).code == 0);
}
