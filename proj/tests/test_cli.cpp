#include <doctest.h>

#include <json.hpp>

#include <array>
#include <cstdio>
#include <cstdlib>

#include "omlkit/cli.hpp"
#include "support.hpp"

using namespace omlkit;

namespace {

RunResult cli(std::vector<std::string> args) {
  for (auto& a : args)
    if (a.find('.') != std::string::npos && a[0] != '-' && a.find('/') == std::string::npos) a = testing::corpus_path(a);
  return run_command_line(args);
}

struct Process {
  int status;
  std::string out;
};

Process spawn(const std::string& args) {
  const std::string cmd = std::string(OMLKIT_CLI) + " " + args + " 2>/dev/null";
  Process p{0, {}};
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::array<char, 4096> buf;
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) p.out.append(buf.data(), n);
  const int raw = pclose(pipe);
  p.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return p;
}

}  // namespace

TEST_CASE("solve verdicts") {
  auto cab = cli({"solve", "cabello18.ksv"});
  CHECK(cab.exit_code == 0);
  CHECK(cab.out.rfind("UNSAT\n", 0) == 0);
  auto mo2 = cli({"solve", "mo2.gd", "--enumerate-all", "100"});
  CHECK(mo2.exit_code == 0);
  CHECK(mo2.out.find("sections: 4\n") != std::string::npos);
  auto blocks = cli({"solve", "mo2.gd", "--mode", "blocks"});
  CHECK(blocks.out.rfind("SAT\n", 0) == 0);
  auto hyper = cli({"solve", "pentagon.gd", "--as-hypergraph"});
  CHECK(hyper.out.rfind("SAT\n", 0) == 0);
  auto flat = cli({"solve", "two_triads.ksv"});
  CHECK(flat.out.rfind("SAT\n", 0) == 0);
}

TEST_CASE("center and blocks") {
  CHECK(cli({"center", "mo2.gd"}).out == "0, 1\n");
  CHECK(cli({"center", "mo2.oml"}).out == "0, 1\n");
  auto b = cli({"blocks", "two_blocks.gd"});
  CHECK(b.out == "blocks: 2\n<a,b,c>\n<c,d,e>\n");
  auto ctx = cli({"blocks", "cabello18.ksv"});
  CHECK(ctx.out.rfind("contexts: 9\n", 0) == 0);
}

TEST_CASE("check") {
  auto ok = cli({"check", "pentagon.gd"});
  CHECK(ok.exit_code == 0);
  CHECK(ok.out == "ok: orthomodular lattice, 22 elements, 10 atoms, 5 blocks\n");
  auto bad = cli({"check", "hexagon.oml"});
  CHECK(bad.exit_code == 3);
  CHECK(bad.err.find("NotOrthomodular") != std::string::npos);
  CHECK(bad.err.find("witness:") != std::string::npos);
  auto loop = cli({"check", "triangle_loop.gd"});
  CHECK(loop.exit_code == 3);
  CHECK(loop.err.find("LoopViolation") != std::string::npos);
  auto flat = cli({"check", "two_triads.ksv"});
  CHECK(flat.exit_code == 0);
}

TEST_CASE("modal and actualize") {
  auto m = cli({"modal", "mo2.gd"});
  CHECK(m.exit_code == 0);
  for (const char* ax : {"S1 holds", "S2 holds", "S6 holds", "S8 holds"}) CHECK(m.out.find(ax) != std::string::npos);
  CHECK(m.out.find("possibility space: 0, 1\n") != std::string::npos);
  auto d = cli({"modal", "mo2.gd", "--extend", "diagonal:2"});
  CHECK(d.out.find("possibility space: (0,0), (1,1)\n") != std::string::npos);

  auto a = cli({"actualize", "mo2.gd", "--context", "<a,b>", "--prop", "a"});
  CHECK(a.exit_code == 0);
  CHECK(a.out == "context: <a,b>\nF_q: generated by a\nF_M: generated by a\n0: 0\na: 1\nb: 0\n1: 1\n");
  auto by_index = cli({"actualize", "mo2.gd", "--context", "0", "--prop", "a"});
  CHECK(by_index.out == a.out);
  auto zero = cli({"actualize", "mo2.gd", "--context", "0", "--prop", "0"});
  CHECK(zero.exit_code == 3);
  CHECK(zero.err.find("PreconditionPossibility") != std::string::npos);
  auto outside = cli({"actualize", "mo2.gd", "--context", "0", "--prop", "c"});
  CHECK(outside.exit_code == 3);
  CHECK(cli({"actualize", "mo2.gd", "--context", "9", "--prop", "a"}).exit_code == 2);
  CHECK(cli({"actualize", "mo2.gd", "--context", "0", "--prop", "a", "--nu", "5"}).exit_code == 2);
}

TEST_CASE("export") {
  auto dot = cli({"export", "mo2.gd"});
  CHECK(dot.out.rfind("graph greechie {", 0) == 0);
  CHECK(cli({"export", "cabello18.ksv"}).out.rfind("graph contexts {", 0) == 0);
  auto oml = cli({"export", "mo2.gd", "--to", "oml"});
  CHECK(oml.out.rfind("format oml-lattice 1\n", 0) == 0);
  CHECK(cli({"export", "two_blocks.gd", "--to", "gd"}).out == "a b c\nc d e\n");
  CHECK(cli({"export", "mo2.oml", "--to", "gd"}).exit_code == 2);
}

TEST_CASE("exit codes") {
  CHECK(cli({"solve", "cabello18.ksv", "--seedless"}).exit_code == 2);
  CHECK(cli({"solve", "cabello18.ksv", "--mode", "all"}).exit_code == 2);
  CHECK(cli({"solve", "mo2.gd", "--context", "0"}).exit_code == 2);
  CHECK(cli({"frobnicate", "mo2.gd"}).exit_code == 2);
  CHECK(cli({"solve", "mo2.gd", "--bogus"}).exit_code == 2);
  CHECK(cli({"solve", "/nonexistent/file.gd"}).exit_code == 2);
  CHECK(cli({"center", "cabello18.ksv"}).exit_code == 2);
  CHECK(cli({"check", "mo2.gd", "--input-format", "ksv"}).exit_code == 2);

  RunConfig c = parse_args({"check", "boolean4.gd"});
  c.limits.element_cap = 8;
  auto capped = run(c, testing::corpus("boolean4.gd"));
  CHECK(capped.exit_code == 4);
  CHECK(capped.err.find("SizeCap") != std::string::npos);

  RunConfig p = parse_args({"check", "x.oml"});
  auto parse = run(p, "format oml-lattice 1\nelements 0 1\nbogus\n");
  CHECK(parse.exit_code == 2);
  CHECK(parse.err.find("line 3, column 1") != std::string::npos);

  CHECK(cli({"--help"}).exit_code == 0);
}

TEST_CASE("element cap from the environment") {
  setenv("OMLKIT_ELEMENT_CAP", "8", 1);
  CHECK(cli({"check", "boolean4.gd"}).exit_code == 4);
  setenv("OMLKIT_ELEMENT_CAP", "banana", 1);
  CHECK(cli({"check", "boolean4.gd"}).exit_code == 2);
  setenv("OMLKIT_ELEMENT_CAP", "70000", 1);
  CHECK(cli({"check", "boolean4.gd"}).exit_code == 2);
  unsetenv("OMLKIT_ELEMENT_CAP");
  CHECK(cli({"check", "boolean4.gd"}).exit_code == 0);
}

TEST_CASE("structured output") {
  auto s = cli({"solve", "mo2.gd", "--enumerate-all", "10", "--format", "structured"});
  auto doc = nlohmann::json::parse(s.out);
  CHECK(doc["command"] == "solve");
  CHECK(doc["verdict"] == "SAT");
  CHECK(doc["sections"].size() == 4);
  CHECK(doc["exit_code"] == 0);

  auto u = nlohmann::json::parse(cli({"solve", "cabello18.ksv", "--format", "structured"}).out);
  CHECK(u["verdict"] == "UNSAT");
  CHECK(u["certificate"].size() == 9);

  auto e = cli({"check", "hexagon.oml", "--format", "structured"});
  CHECK(e.exit_code == 3);
  auto err = nlohmann::json::parse(e.out);
  CHECK(err["error"]["code"] == "NotOrthomodular");
  CHECK(err["error"]["witness"].size() == 2);

  auto m = nlohmann::json::parse(cli({"modal", "mo2.gd", "--format", "structured"}).out);
  CHECK(m["axioms"].size() == 8);
  CHECK(m["table"].size() == 6);
}

TEST_CASE("the binary is byte-for-byte repeatable") {
  const std::string cab = testing::corpus_path("cabello18.ksv");
  const std::string mo2 = testing::corpus_path("mo2.gd");
  auto a = spawn("solve " + cab);
  auto b = spawn("solve " + cab + " --jobs 4");
  CHECK(a.status == 0);
  CHECK(a.out == b.out);
  CHECK(a.out.rfind("UNSAT", 0) == 0);
  auto c = spawn("solve " + mo2 + " --enumerate-all 10");
  auto d = spawn("solve " + mo2 + " --enumerate-all 10 --jobs 3");
  CHECK(c.out == d.out);
  CHECK(spawn("check " + testing::corpus_path("hexagon.oml")).status == 3);
}
