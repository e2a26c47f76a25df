#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

#include "cli.hpp"

namespace fs = std::filesystem;
using qrom::cli::run;

namespace {

const std::string kData = QROM_TEST_DATA_DIR;

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result qromctl(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch() {
  static fs::path dir = [] {
    fs::path d = fs::temp_directory_path() /
                 ("qromctl_test_" + std::to_string(::getpid()));
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

bool has(const std::string& text, const std::string& needle) {
  return text.find(needle) != std::string::npos;
}

}  // namespace

TEST_CASE("build prints the resource summary") {
  std::string out = (scratch() / "n64.circ").string();
  Result r = qromctl({"build", "--table", kData + "/n64_b8.tbl", "--lambda", "4",
                      "--mu", "2", "--out", out});
  CHECK(r.code == 0);
  CHECK(has(r.out, "toffoli=115\n"));
  CHECK(has(r.out, "qubits_dirty=6\n"));
  CHECK(has(r.out, "qubits_work=4\n"));
  CHECK(fs::exists(out));
}

TEST_CASE("build error exits") {
  std::string out = (scratch() / "bad.circ").string();
  Result r = qromctl({"build", "--table", kData + "/n64_b8.tbl", "--lambda", "3",
                      "--out", out});
  CHECK(r.code == 2);
  CHECK(has(r.err, "power of 2"));

  r = qromctl({"build", "--table", kData + "/n64_b8.tbl", "--lambda", "4", "--mu", "9",
               "--out", out});
  CHECK(r.code == 2);

  r = qromctl({"build", "--table", kData + "/missing.tbl", "--lambda", "4", "--out", out});
  CHECK(r.code == 1);

  r = qromctl({"build", "--table", kData + "/bad_range.tbl", "--lambda", "2", "--out", out});
  CHECK(r.code == 1);
  CHECK(has(r.err, "line 4"));

  CHECK(qromctl({}).code == 2);
  CHECK(qromctl({"frobnicate"}).code == 2);
  CHECK(qromctl({"--help"}).code == 0);
}

TEST_CASE("build then verify the written circuit") {
  for (auto [table, lambda, mu] : std::vector<std::tuple<std::string, std::string, std::string>>{
           {"n64_b8.tbl", "4", "2"}, {"n100_b5.tbl", "4", "2"}, {"n16_b3_hex.tbl", "2", "3"},
           {"n33_b12.tbl", "8", "5"}, {"n32_b4_const.tbl", "4", "1"}}) {
    CAPTURE(table);
    std::string path = (scratch() / (table + ".circ")).string();
    Result b = qromctl({"build", "--table", kData + "/" + table, "--lambda", lambda,
                        "--mu", mu, "--out", path});
    REQUIRE(b.code == 0);
    Result v = qromctl({"verify", "--table", kData + "/" + table, "--circuit", path,
                        "--trials", "10", "--seed", "0"});
    CHECK(v.code == 0);
    CHECK(has(v.out, "status=verified"));
  }
}

TEST_CASE("verify builds, baselines and injected faults") {
  const std::string t = kData + "/n64_b8.tbl";
  Result r = qromctl({"verify", "--table", t, "--lambda", "4", "--mu", "2"});
  CHECK(r.code == 0);
  CHECK(has(r.out, "cases_run=640\n"));

  CHECK(qromctl({"verify", "--table", t, "--lambda", "4", "--baseline", "selectswap"}).code == 0);
  CHECK(qromctl({"verify", "--table", t, "--baseline", "plain"}).code == 0);
  CHECK(qromctl({"verify", "--table", t, "--baseline", "other"}).code == 2);

  std::string good = (scratch() / "fault.circ").string();
  REQUIRE(qromctl({"build", "--table", t, "--lambda", "4", "--out", good}).code == 0);
  std::string bad = (scratch() / "fault_injected.circ").string();
  std::ofstream(bad, std::ios::binary) << slurp(good) << "X out 0\n";
  r = qromctl({"verify", "--table", t, "--circuit", bad});
  CHECK(r.code == 3);
  CHECK(has(r.out, "first_failure=x=0"));

  std::ofstream(bad, std::ios::binary) << "REGISTER q 3 address_q\nX q 9\n";
  CHECK(qromctl({"verify", "--table", t, "--circuit", bad}).code == 1);

  // A circuit that does not fit the table is a parameter error.
  r = qromctl({"verify", "--table", kData + "/n100_b5.tbl", "--circuit", good});
  CHECK(r.code == 2);
}

TEST_CASE("estimate tables") {
  Result r = qromctl({"estimate", "--n", "64", "--b", "8", "--lambda", "4", "--mu", "8"});
  CHECK(r.code == 0);
  CHECK(has(r.out, "bit_packet"));
  CHECK(has(r.out, " 82 "));
  CHECK(has(r.out, "berry"));
  CHECK(has(r.out, " 128 "));

  r = qromctl({"estimate", "--n", "64", "--b", "8", "--lambda", "4", "--mu", "8",
               "--all-methods"});
  for (const char* m : {"select_copy", "low_dirty", "low_clean", "plain",
                        "uncompute_prior", "uncompute_select_copy"}) {
    CHECK(has(r.out, m));
  }

  r = qromctl({"estimate", "--n", "1048576", "--b", "8", "--budget", "31"});
  CHECK(r.code == 0);
  CHECK(has(r.out, "lambda=32\nmu=1\ntoffoli=295452\n"));

  r = qromctl({"estimate", "--n", "64", "--b", "8", "--budget", "0"});
  CHECK(r.code == 0);
  CHECK(has(r.out, "feasible=0\nfallback=plain\ntoffoli=63\n"));

  CHECK(qromctl({"estimate", "--n", "64", "--b", "8"}).code == 2);
  CHECK(qromctl({"estimate", "--n", "64", "--b", "8", "--lambda", "3", "--mu", "1"}).code == 2);
}

TEST_CASE("sweep csv") {
  Result r = qromctl({"sweep", "--b", "8", "--budget", "31", "--n-min", "1048576",
                      "--n-max", "1048576", "--points", "1"});
  CHECK(r.code == 0);
  CHECK(r.out == "N,berry,alpha1,alphab,best,lambda,mu,improvement\n"
                 "1048576,524384,524338,295452,295452,32,1,1.774853\n");

  std::string path = (scratch() / "sweep.csv").string();
  r = qromctl({"sweep", "--b", "64", "--budget", "255", "--n-min", "1073741824",
               "--n-max", "1073741824", "--points", "1", "--out", path});
  CHECK(r.code == 0);
  CHECK(has(slurp(path), ",272662780,256,1,1.968995\n"));

  CHECK(qromctl({"sweep", "--b", "8", "--budget", "31", "--n-min", "16", "--n-max",
                 "1024", "--points", "0"}).code == 2);
}

TEST_CASE("reruns are byte identical") {
  std::string a = (scratch() / "a.circ").string();
  std::string b = (scratch() / "b.circ").string();
  auto build = [&](const std::string& out) {
    return qromctl({"build", "--table", kData + "/n100_b5.tbl", "--lambda", "4", "--mu", "2",
                    "--out", out});
  };
  Result ra = build(a), rb = build(b);
  CHECK(ra.out == rb.out);
  CHECK(slurp(a) == slurp(b));

  std::vector<std::string> sweep = {"sweep", "--b", "8", "--budget", "31", "--n-min", "16",
                                    "--n-max", "1000000", "--points", "25"};
  CHECK(qromctl(sweep).out == qromctl(sweep).out);

  std::string faulty = (scratch() / "rerun_fault.circ").string();
  std::ofstream(faulty, std::ios::binary) << slurp(a) << "X out 1\n";
  std::vector<std::string> verify = {"verify", "--table", kData + "/n100_b5.tbl",
                                     "--circuit", faulty, "--seed", "5"};
  Result va = qromctl(verify);
  CHECK(va.code == 3);
  CHECK(va.out == qromctl(verify).out);
}
