#include <doctest.h>

#include <string>

#include "test_util.hpp"

using namespace testutil;

namespace {

const std::string kCli = EMBOLIC_CLI_PATH;

std::string sp(const std::string& name) { return scratch_path(name); }

}  // namespace

TEST_CASE("cli: generate writes the space and its metadata sidecar") {
  const std::string space = sp("gen_circle.space");
  const CommandResult r =
      run_command(kCli + " generate circle --m 600 -o " + space);
  CHECK(r.exit_code == 0);
  CHECK(contains(r.output, "wrote " + space));
  CHECK(contains(r.output, "betti = 1 1"));

  const std::string meta = read_file(sp("gen_circle.meta"));
  CHECK(contains(meta, "\"generator\": \"circle:600\""));
  CHECK(contains(meta, "\"m\": 600"));
  CHECK(contains(meta, "\"inj\": 3.141592653589793"));
}

TEST_CASE("cli: full run against the sidecar truth") {
  const std::string space = sp("run_circle.space");
  run_command(kCli + " generate circle --m 600 -o " + space);
  const CommandResult r = run_command(
      kCli + " run --in " + space + " --truth " + sp("run_circle.meta") +
      " --r0 0.39269908169872414 --out " + sp("run1.json") + " --complex-out " +
      sp("run1.complex"));
  CHECK(r.exit_code == 0);
  CHECK(contains(r.output, "mandatory checks: PASS"));
  CHECK(contains(r.output, "(match)"));
  CHECK(contains(read_file(sp("run1.json")), "\"mandatory_ok\": true"));
}

TEST_CASE("cli: run separates validation, check, and resource failures") {
  const std::string corrupt = sp("corrupt.space");
  write_file(corrupt, "garbage file\n");
  const CommandResult bad = run_command(kCli + " run --in " + corrupt + " --out " + sp("x.json"));
  CHECK(bad.exit_code == 2);
  CHECK(contains(bad.output, "error at stage validate"));
  CHECK(contains(bad.output, "corrupt.space:1"));

  // At the default R0 = inj/2 a single doubled ball swallows the circle, so
  // the loop is invisible and the truth comparison honestly fails.
  const CommandResult miss = run_command(kCli + " run --gen circle:500 --out " + sp("m.json") +
                                         " --complex-out " + sp("m.complex"));
  CHECK(miss.exit_code == 3);
  CHECK(contains(miss.output, "MISMATCH"));
  CHECK(contains(miss.output, "mandatory checks: FAIL (betti_match)"));
  CHECK(contains(read_file(sp("m.json")), "\"mandatory_ok\": false"));

  const CommandResult capped =
      run_command(kCli + " run --gen circle:1000 --r0 0.39269908169872414 --cap 1 --out " +
                  sp("c.json"));
  CHECK(capped.exit_code == 4);
  CHECK(contains(capped.output, "error at stage nerve"));
  CHECK(contains(capped.output, "multiplicity cap exceeded"));

  const CommandResult tiny =
      run_command(kCli + " run --gen circle:100 --r0 0.001 --out " + sp("t.json"));
  CHECK(tiny.exit_code == 4);
  CHECK(contains(tiny.output, "error at stage croke"));
  CHECK(contains(tiny.output, "resolution insufficient"));

  const CommandResult neither = run_command(kCli + " run --out " + sp("n.json"));
  CHECK(neither.exit_code == 2);
  CHECK(contains(neither.output, "exactly one of --in and --gen"));

  const CommandResult both = run_command(kCli + " run --in " + corrupt +
                                         " --gen circle:100 --out " + sp("b.json"));
  CHECK(both.exit_code == 2);
}

TEST_CASE("cli: homology of stored complexes") {
  const std::string tri = sp("tri.complex");
  write_file(tri, "1 3 3\n0\n1\n2\n0 1\n0 2\n1 2\n");
  CHECK(run_command(kCli + " homology --in " + tri).output == "1 1\n");
  CHECK(run_command(kCli + " homology --in " + tri + " --p 3").output == "1 1\n");

  const std::string tetra = sp("tetra.complex");
  write_file(tetra,
             "2 4 6 4\n0\n1\n2\n3\n0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n"
             "0 1 2\n0 1 3\n0 2 3\n1 2 3\n");
  CHECK(run_command(kCli + " homology --in " + tetra).output == "1 0 1\n");
  CHECK(run_command(kCli + " homology --in " + tetra + " --p 7").output == "1 0 1\n");

  const std::string open_face = sp("open.complex");
  write_file(open_face, "2 3 2 1\n0\n1\n2\n0 1\n0 2\n0 1 2\n");
  const CommandResult bad = run_command(kCli + " homology --in " + open_face);
  CHECK(bad.exit_code == 2);
  CHECK(contains(bad.output, "not downward closed"));

  const CommandResult nonprime = run_command(kCli + " homology --in " + tri + " --p 9");
  CHECK(nonprime.exit_code == 2);
  CHECK(contains(nonprime.output, "is not prime"));
}

TEST_CASE("cli: report pretty printer") {
  run_command(kCli + " run --gen circle:400 --r0 0.5 --out " + sp("pp.json") +
              " --complex-out " + sp("pp.complex"));
  const CommandResult r = run_command(kCli + " report --in " + sp("pp.json"));
  CHECK(r.exit_code == 0);
  CHECK(r.output.substr(0, 2) == "{\n");
  CHECK(contains(r.output, "\"input\": \"circle:400\""));
  CHECK(contains(r.output, "\"mandatory_ok\": true"));

  const std::string broken = sp("broken.json");
  write_file(broken, "not json");
  const CommandResult bad = run_command(kCli + " report --in " + broken);
  CHECK(bad.exit_code == 2);
  CHECK(contains(bad.output, "not valid JSON"));
}

TEST_CASE("cli: config file supplies defaults, flags override") {
  const std::string cfg = sp("run.cfg");
  write_file(cfg, "[run]\nr0=0.2\np=3\n");

  const CommandResult a =
      run_command(kCli + " --config " + cfg + " run --gen circle:500 --out " + sp("cfg1.json") +
                  " --complex-out " + sp("cfg1.complex"));
  CHECK(a.exit_code == 0);
  const std::string rep1 = read_file(sp("cfg1.json"));
  CHECK(contains(rep1, "\"R0\": 0.20000000000000001"));
  CHECK(contains(rep1, "\"r0_policy\": \"user\""));
  CHECK(contains(rep1, "\"p\": 3"));

  const CommandResult b =
      run_command(kCli + " --config " + cfg + " run --gen circle:500 --r0 0.3 --out " +
                  sp("cfg2.json") + " --complex-out " + sp("cfg2.complex"));
  CHECK(b.exit_code == 0);
  const std::string rep2 = read_file(sp("cfg2.json"));
  CHECK(contains(rep2, "\"R0\": 0.29999999999999999"));
  CHECK(contains(rep2, "\"p\": 3"));
}

TEST_CASE("cli: union generator scales the truth componentwise") {
  const std::string space = sp("five.space");
  const CommandResult r = run_command(
      kCli + " generate union --of sphere2:60 --copies 5 --sep 100 -o " + space);
  CHECK(r.exit_code == 0);
  CHECK(contains(r.output, "betti = 5 0 5"));
  const std::string meta = read_file(sp("five.meta"));
  CHECK(contains(meta, "\"generator\": \"union:5,100,sphere2:60\""));
  CHECK(contains(meta, "\"m\": 300"));
  CHECK(contains(meta, "\"betti\": [\n    5,\n    0,\n    5\n  ]"));
}

TEST_CASE("cli: binary space format and inline truth lists") {
  const std::string space = sp("bin_circle.space");
  run_command(kCli + " generate circle --m 200 --binary -o " + space);
  const CommandResult r =
      run_command(kCli + " run --in " + space + " --truth 1,1 --r0 0.5 --out " +
                  sp("bin.json") + " --complex-out " + sp("bin.complex"));
  CHECK(r.exit_code == 0);
  CHECK(contains(r.output, "mandatory checks: PASS"));
  CHECK(contains(read_file(sp("bin.json")), "\"t\": [6, 6, 0]"));
}

TEST_CASE("cli: generator argument validation") {
  const CommandResult no_m = run_command(kCli + " generate circle -o " + sp("nm.space"));
  CHECK(no_m.exit_code == 2);
  CHECK(contains(no_m.output, "circle requires --m"));

  const CommandResult unknown = run_command(kCli + " generate blob -o " + sp("ub.space"));
  CHECK(unknown.exit_code != 0);

  const CommandResult bad_gen =
      run_command(kCli + " run --gen circle:two --out " + sp("bg.json"));
  CHECK(bad_gen.exit_code == 2);
}
