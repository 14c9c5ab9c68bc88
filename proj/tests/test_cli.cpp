#include <cstdlib>
#include <fstream>

#include <nlohmann/json.hpp>

#include "brute.hpp"
#include "cli.hpp"

using degen::cli::run;
using nlohmann::json;

TEST_CASE("component-group") {
  auto r = run({"component-group", "--matrix", "[[-3,3],[3,-3]]", "--json"});
  CHECK(r.code == 0);
  auto j = json::parse(r.out);
  CHECK(j["phi"] == json::array({3}));
  CHECK(j["order"] == 3);

  auto text = run({"component-group", "--matrix", "[[-3,3],[3,-3]]"});
  CHECK(text.out == "component group: Z/3 (order 3)\n");

  CHECK(run({"component-group", "--matrix", "[[-3,3],[3"}).code == 2);
  CHECK(run({"component-group", "--matrix", "[[1,2],[3,4]]"}).code == 2);
}

TEST_CASE("torus") {
  auto r = run({"torus", "--q", "5", "--frobenius", "[[1,0],[0,1]]", "--enumerate", "--json"});
  CHECK(r.code == 0);
  auto j = json::parse(r.out);
  CHECK(j["order"] == 16);
  CHECK(j["enumerated"]["size"] == 16);
  CHECK(j["enumerated"]["invariants"] == json::array({4, 4}));

  auto c = run({"torus", "--q", "2", "--frobenius", "[[0,-1],[1,-1]]", "--components", "[[1,0]]", "--json"});
  CHECK(c.code == 0);
  auto jc = json::parse(c.out);
  CHECK(jc["order"] == 7);
  CHECK(jc["decomposition"]["principal"] == true);

  CHECK(run({"torus", "--q", "6", "--frobenius", "[[1]]"}).code == 2);
}

TEST_CASE("hyperelliptic exit codes") {
  auto ok = run({"hyperelliptic", "--p", "23", "--g", "x^3-x", "--h", "x+2", "--json"});
  CHECK(ok.code == 0);
  auto j = json::parse(ok.out);
  CHECK(j["verdicts"]["theta"]["value"] == "true");
  CHECK(j["torsion"]["invariants"] == json::array({22, 66}));

  auto violated = run({"hyperelliptic", "--q", "7", "--g", "x^3-x", "--h", "x"});
  CHECK(violated.code == 3);

  auto undetermined = run({"hyperelliptic", "--q", "7", "--g", "x^5+x^3-2*x^2-2", "--h", "x+1"});
  CHECK(undetermined.code == 4);

  CHECK(run({"hyperelliptic", "--q", "7", "--g", "x**3", "--h", "1"}).code == 2);
  CHECK(run({"hyperelliptic", "--p", "9", "--g", "x^3-x", "--h", "1"}).code == 2);
  CHECK(run({"hyperelliptic", "--p", "7", "--q", "7", "--g", "x^3-x", "--h", "1"}).code == 2);
  CHECK(run({"hyperelliptic", "--q", "7", "--g", "x^3-x"}).code == 2);
}

TEST_CASE("genus4") {
  auto r = run({"genus4", "--q", "13", "--eps", "X^3+Y^3+W*Z^2", "--r", "3", "--json"});
  CHECK(r.code == 0);
  auto j = json::parse(r.out);
  CHECK(j["verdicts"]["cube_root"]["value"] == "false");
  CHECK(run({"genus4", "--q", "7", "--eps", "X^3"}).code == 3);
}

TEST_CASE("oracle") {
  auto r = run({"oracle", "--q", "7", "--g", "x^3-x", "--h", "x+2", "--json"});
  CHECK(r.code == 0);
  auto j = json::parse(r.out);
  CHECK(j["agree"] == true);
  CHECK(j["oracle"]["divisible"] == false);
  CHECK(j["torus"]["enumerated"] == 36);
  CHECK(run({"oracle", "--q", "7"}).code == 2);
}

TEST_CASE("batch mode") {
  {
    std::ofstream f("cli_batch.txt");
    f << "# comment\n\n";
    f << "component-group --matrix \"[[-2,2],[2,-2]]\"\n";
    f << "hyperelliptic --q 7 --g 'x^3-x' --h x\n";
  }
  auto r = run({"--batch", "cli_batch.txt", "--json"});
  CHECK(r.code == 3);
  std::istringstream lines(r.out);
  std::string line;
  std::vector<json> entries;
  while (std::getline(lines, line)) entries.push_back(json::parse(line));
  REQUIRE(entries.size() == 2);
  CHECK(entries[0]["exit_code"] == 0);
  CHECK(entries[0]["report"]["phi"] == json::array({2}));
  CHECK(entries[1]["exit_code"] == 3);

  CHECK(run({"--batch", "no_such_file.txt"}).code == 2);
}

TEST_CASE("split_line") {
  using degen::cli::split_line;
  CHECK(split_line("a  b\tc") == std::vector<std::string>{"a", "b", "c"});
  CHECK(split_line("--g \"x^3 - x\" --h 'x+2'") == std::vector<std::string>{"--g", "x^3 - x", "--h", "x+2"});
  CHECK(split_line("\"\"") == std::vector<std::string>{""});
  CHECK_ERROR_CODE(split_line("--g \"x^3"), degen::ErrorCode::SyntaxError);
}

TEST_CASE("field limit from the environment") {
  ::unsetenv("DEGEN_FIELD_LIMIT");
  CHECK(degen::cli::field_limit_from_env() == degen::kDefaultFieldLimit);
  ::setenv("DEGEN_FIELD_LIMIT", "1000", 1);
  CHECK(degen::cli::field_limit_from_env() == 1000);
  ::setenv("DEGEN_FIELD_LIMIT", "abc", 1);
  CHECK_ERROR_CODE(degen::cli::field_limit_from_env(), degen::ErrorCode::InvalidInput);
  CHECK(run({"component-group", "--matrix", "[[-3,3],[3,-3]]"}).code == 2);
  ::unsetenv("DEGEN_FIELD_LIMIT");
}

TEST_CASE("help and unknown flags") {
  auto help = run({"--help"});
  CHECK(help.code == 0);
  CHECK(help.out.find("hyperelliptic") != std::string::npos);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({}).code == 2);
}
