#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include "support/fixtures.hpp"
#include "tripal/cli.hpp"

using namespace tripal;

namespace {

struct Capture {
  int exit = -1;
  std::string out;
  std::string err;
};

template <typename F>
Capture run(F&& f) {
  std::ostringstream out, err;
  Capture c;
  c.exit = f(out, err);
  c.out = out.str();
  c.err = err.str();
  return c;
}

struct TempFile {
  std::string path;
  explicit TempFile(std::string p) : path(std::move(p)) {}
  ~TempFile() { std::remove(path.c_str()); }
};

std::string save_to_temp(const EdgeColoring& coloring, PaletteMode mode,
                         const std::string& path) {
  save_document(ColoringDocument{coloring, mode, ""}, path);
  return path;
}

// Runs the installed binary; stdout and stderr are merged.
Capture run_binary(const std::string& args) {
  const std::string cmd = std::string(TRIPAL_CLI_PATH) + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  Capture c;
  char buf[4096];
  std::size_t got = 0;
  while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) c.out.append(buf, got);
  const int status = pclose(pipe);
  c.exit = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return c;
}

}  // namespace

TEST_CASE("construct writes a document and a summary") {
  auto c = run([](std::ostream& out, std::ostream& err) {
    return cmd_construct({"modular", 5, ""}, out, err);
  });
  CHECK(c.exit == kExitSuccess);
  std::istringstream doc_in(c.out);
  auto doc = load_document(doc_in);
  CHECK(doc.coloring.colors == std::vector<Color>{1, 2, 3, 3, 4, 0, 4, 0, 1, 2});
  CHECK(doc.mode == PaletteMode::RainbowProper);
  CHECK(c.err.find("proper=yes") != std::string::npos);
  CHECK(c.err.find("distinguishing=yes") != std::string::npos);
  CHECK(c.err.find("palettes=10/10") != std::string::npos);
}

TEST_CASE("construct even uses n+1 colors") {
  auto c = run([](std::ostream& out, std::ostream& err) {
    return cmd_construct({"even", 4, ""}, out, err);
  });
  CHECK(c.exit == kExitSuccess);
  std::istringstream doc_in(c.out);
  auto doc = load_document(doc_in);
  CHECK(doc.coloring.k == 5);
  CHECK(c.err.find("palettes=4/4") != std::string::npos);
}

TEST_CASE("construct rejects bad parity and unknown kinds") {
  auto even_n = run([](std::ostream& out, std::ostream& err) {
    return cmd_construct({"modular", 4, ""}, out, err);
  });
  CHECK(even_n.exit == kExitUsage);
  CHECK(even_n.err.find("odd") != std::string::npos);

  auto odd_n = run([](std::ostream& out, std::ostream& err) {
    return cmd_construct({"even", 5, ""}, out, err);
  });
  CHECK(odd_n.exit == kExitUsage);

  auto bogus = run([](std::ostream& out, std::ostream& err) {
    return cmd_construct({"spiral", 5, ""}, out, err);
  });
  CHECK(bogus.exit == kExitUsage);
  CHECK(bogus.err.find("spiral") != std::string::npos);
}

TEST_CASE("construct -o writes the file and summarizes on stdout") {
  TempFile tmp("cli_construct_out.json");
  auto c = run([&](std::ostream& out, std::ostream& err) {
    return cmd_construct({"modular", 7, tmp.path}, out, err);
  });
  CHECK(c.exit == kExitSuccess);
  CHECK(c.out.find("palettes=35/35") != std::string::npos);
  auto doc = load_document(tmp.path);
  CHECK(doc.coloring == modular_coloring(7));
}

TEST_CASE("verify reports a distinguishing coloring") {
  TempFile tmp("cli_verify_fig.json");
  save_to_temp(fixtures::k4_general_witness(), PaletteMode::Multiset, tmp.path);
  auto c = run([&](std::ostream& out, std::ostream& err) {
    return cmd_verify({tmp.path, {}}, out, err);
  });
  CHECK(c.exit == kExitSuccess);
  CHECK(c.out.find("n=4 k=4 mode=multiset") != std::string::npos);
  CHECK(c.out.find("proper: no") != std::string::npos);
  CHECK(c.out.find("palettes realized: 4/4") != std::string::npos);
  CHECK(c.out.find("color 1: edges=4") != std::string::npos);
  CHECK(c.out.find("DISTINGUISHING\n") != std::string::npos);
  CHECK(c.out.find("NOT DISTINGUISHING") == std::string::npos);

  // The same coloring also distinguishes by color sets.
  auto set_check = run([&](std::ostream& out, std::ostream& err) {
    return cmd_verify({tmp.path, PaletteMode::Set}, out, err);
  });
  CHECK(set_check.exit == kExitSuccess);
}

TEST_CASE("verify pinpoints the first collision") {
  TempFile tmp("cli_verify_mono.json");
  save_to_temp(fixtures::monochromatic(4), PaletteMode::Set, tmp.path);
  auto c = run([&](std::ostream& out, std::ostream& err) {
    return cmd_verify({tmp.path, {}}, out, err);
  });
  CHECK(c.exit == kExitNegative);
  CHECK(c.out.find("NOT DISTINGUISHING: triangles 0-1-2 and 0-1-3 share palette [0]") !=
        std::string::npos);
}

TEST_CASE("verify counts rainbow palettes of the modular coloring") {
  TempFile tmp("cli_verify_k7.json");
  save_to_temp(modular_coloring(7), PaletteMode::RainbowProper, tmp.path);
  auto c = run([&](std::ostream& out, std::ostream& err) {
    return cmd_verify({tmp.path, {}}, out, err);
  });
  CHECK(c.exit == kExitSuccess);
  CHECK(c.out.find("palettes realized: 35/35") != std::string::npos);
  CHECK(c.out.find("capacity: 35 triangles vs 35 palettes (admits)") != std::string::npos);
}

TEST_CASE("verify fails closed on rainbow mode without properness") {
  TempFile tmp("cli_verify_improper.json");
  save_to_temp(fixtures::k4_general_witness(), PaletteMode::RainbowProper, tmp.path);
  auto c = run([&](std::ostream& out, std::ostream& err) {
    return cmd_verify({tmp.path, {}}, out, err);
  });
  CHECK(c.exit == kExitNegative);
  CHECK(c.out.find("NOT DISTINGUISHING (rainbow palettes require a proper coloring)") !=
        std::string::npos);
}

TEST_CASE("verify reports unreadable documents as usage errors") {
  auto c = run([](std::ostream& out, std::ostream& err) {
    return cmd_verify({"cli_no_such_doc.json", {}}, out, err);
  });
  CHECK(c.exit == kExitUsage);
  CHECK(c.err.find("verify:") != std::string::npos);
}

TEST_CASE("search decides and prints stats") {
  SearchArgs args;
  args.n = 4;
  args.k = 3;
  auto c = run([&](std::ostream& out, std::ostream& err) {
    return cmd_search(args, out, err);
  });
  CHECK(c.exit == kExitSuccess);
  CHECK(c.out.find("K_4 multiset k=3: SAT") != std::string::npos);
  CHECK(c.out.find("nodes=") != std::string::npos);
  CHECK(c.out.find("witness colors: ") != std::string::npos);
}

TEST_CASE("search reports UNSAT with exit 1") {
  SearchArgs args;
  args.n = 4;
  args.k = 4;
  args.mode = PaletteMode::RainbowProper;
  args.proper = true;
  auto c = run([&](std::ostream& out, std::ostream& err) {
    return cmd_search(args, out, err);
  });
  CHECK(c.exit == kExitNegative);
  CHECK(c.out.find("K_4 rainbow k=4 proper: UNSAT") != std::string::npos);
}

TEST_CASE("search usage errors") {
  SearchArgs rainbow_improper;
  rainbow_improper.n = 4;
  rainbow_improper.k = 4;
  rainbow_improper.mode = PaletteMode::RainbowProper;
  CHECK(run([&](std::ostream& out, std::ostream& err) {
          return cmd_search(rainbow_improper, out, err);
        }).exit == kExitUsage);

  SearchArgs no_k;
  no_k.n = 4;
  CHECK(run([&](std::ostream& out, std::ostream& err) {
          return cmd_search(no_k, out, err);
        }).exit == kExitUsage);

  SearchArgs tiny;
  tiny.n = 2;
  tiny.k = 1;
  CHECK(run([&](std::ostream& out, std::ostream& err) {
          return cmd_search(tiny, out, err);
        }).exit == kExitUsage);

  SearchArgs zero_k;
  zero_k.n = 4;
  zero_k.k = 0;
  CHECK(run([&](std::ostream& out, std::ostream& err) {
          return cmd_search(zero_k, out, err);
        }).exit == kExitUsage);
}

TEST_CASE("search --minimize sweeps to the threshold") {
  SearchArgs args;
  args.n = 4;
  args.minimize = true;
  auto c = run([&](std::ostream& out, std::ostream& err) {
    return cmd_search(args, out, err);
  });
  CHECK(c.exit == kExitSuccess);
  CHECK(c.out.find("K_4 multiset minimize: tau=3") != std::string::npos);
  CHECK(c.out.find("sat: k=3") != std::string::npos);
  CHECK(c.out.find("below: k=2 status=UNSAT") != std::string::npos);
}

TEST_CASE("search exits 3 when a limit interrupts") {
  SearchArgs capped;
  capped.n = 9;
  capped.k = 7;
  capped.node_limit = 2000;
  auto c = run([&](std::ostream& out, std::ostream& err) {
    return cmd_search(capped, out, err);
  });
  CHECK(c.exit == kExitLimit);
  CHECK(c.out.find("INCONCLUSIVE") != std::string::npos);

  SearchArgs sweep;
  sweep.n = 9;
  sweep.minimize = true;
  sweep.node_limit = 30;
  auto m = run([&](std::ostream& out, std::ostream& err) {
    return cmd_search(sweep, out, err);
  });
  CHECK(m.exit == kExitLimit);
  CHECK(m.out.find("minimize: INCONCLUSIVE at k=8") != std::string::npos);
  CHECK(m.out.find("stopped: k=8") != std::string::npos);
}

TEST_CASE("search --emit-witness writes a loadable document") {
  TempFile tmp("cli_witness.json");
  SearchArgs args;
  args.n = 5;
  args.k = 4;
  args.emit_witness = tmp.path;
  auto c = run([&](std::ostream& out, std::ostream& err) {
    return cmd_search(args, out, err);
  });
  CHECK(c.exit == kExitSuccess);
  auto doc = load_document(tmp.path);
  CHECK(doc.mode == PaletteMode::Multiset);
  CHECK(doc.coloring.n == 5);
  CHECK(distinguishes(doc.coloring, PaletteMode::Multiset).distinguishing);
  CHECK(doc.note.find("search n=5 k=4 mode=multiset") != std::string::npos);
}

TEST_CASE("search --progress reports on stderr") {
  SearchArgs args;
  args.n = 4;
  args.k = 2;
  args.progress = true;
  auto c = run([&](std::ostream& out, std::ostream& err) {
    return cmd_search(args, out, err);
  });
  CHECK(c.exit == kExitNegative);  // UNSAT
  CHECK(c.err.find("progress nodes=") != std::string::npos);
}

TEST_CASE("capacity prints one line per mode") {
  auto c = run([](std::ostream& out, std::ostream& err) {
    return cmd_capacity(5, out, err);
  });
  CHECK(c.exit == kExitSuccess);
  CHECK(c.out == "k=5 capacities: rainbow=10 set=25 multiset=35\n");
  CHECK(run([](std::ostream& out, std::ostream& err) {
          return cmd_capacity(0, out, err);
        }).exit == kExitUsage);
}

TEST_CASE("bounds prints thresholds and floors") {
  auto six = run([](std::ostream& out, std::ostream& err) {
    return cmd_bounds(6, out, err);
  });
  CHECK(six.exit == kExitSuccess);
  CHECK(six.out.find("K_6 (20 triangles)") != std::string::npos);
  CHECK(six.out.find("rainbow: tau=7 (exact)") != std::string::npos);
  CHECK(six.out.find("set: tau>=5") != std::string::npos);
  CHECK(six.out.find("multiset: tau>=5") != std::string::npos);

  auto three = run([](std::ostream& out, std::ostream& err) {
    return cmd_bounds(3, out, err);
  });
  CHECK(three.out.find("rainbow: tau=3 (exact)") != std::string::npos);
  CHECK(three.out.find("set: tau=1 (exact)") != std::string::npos);
  CHECK(three.out.find("multiset: tau=1 (exact)") != std::string::npos);

  CHECK(run([](std::ostream& out, std::ostream& err) {
          return cmd_bounds(2, out, err);
        }).exit == kExitUsage);
}

TEST_CASE("bounds floors agree with minimize on small graphs") {
  for (int n = 3; n <= 5; ++n) {
    if (n % 2 == 1) CHECK(minimize(n, PaletteMode::RainbowProper, true).tau == rainbow_tau(n));
    auto multiset = minimize(n, PaletteMode::Multiset, false);
    CHECK(multiset.tau >= (n == 3 ? 1 : multiset_lower_bound(n)));
    CHECK(multiset.tau >= sweep_floor(n, PaletteMode::Multiset));
  }
  CHECK(minimize(4, PaletteMode::RainbowProper, true).tau == rainbow_tau(4));
}

TEST_CASE("export dot labels every edge") {
  TempFile tmp("cli_export_dot.json");
  save_to_temp(fixtures::k4_general_witness(), PaletteMode::Multiset, tmp.path);
  ExportArgs args;
  args.file = tmp.path;
  args.format = "dot";
  auto c = run([&](std::ostream& out, std::ostream& err) {
    return cmd_export(args, out, err);
  });
  CHECK(c.exit == kExitSuccess);
  CHECK(c.out.find("graph K4 {") != std::string::npos);
  std::size_t edges = 0;
  for (std::size_t pos = 0; (pos = c.out.find(" -- ", pos)) != std::string::npos; ++pos)
    ++edges;
  CHECK(edges == 6);
  CHECK(c.out.find("0 -- 3 [label=\"2\"];") != std::string::npos);
}

TEST_CASE("export csv emits the census") {
  TempFile tmp("cli_export_csv.json");
  save_to_temp(fixtures::k4_general_witness(), PaletteMode::Multiset, tmp.path);
  ExportArgs args;
  args.file = tmp.path;
  args.format = "csv";
  auto c = run([&](std::ostream& out, std::ostream& err) {
    return cmd_export(args, out, err);
  });
  CHECK(c.exit == kExitSuccess);
  CHECK(c.out.substr(0, 24) == "palette;count;triangles\n");
  CHECK(std::count(c.out.begin(), c.out.end(), '\n') == 5);

  // Overriding the mode re-runs the census; rainbow on an improper
  // coloring is a usage error.
  args.mode = PaletteMode::RainbowProper;
  auto bad = run([&](std::ostream& out, std::ostream& err) {
    return cmd_export(args, out, err);
  });
  CHECK(bad.exit == kExitUsage);
}

TEST_CASE("export dimacs needs the full instance spelled out") {
  ExportArgs args;
  args.format = "dimacs";
  args.n = 4;
  args.k = 3;
  args.mode = PaletteMode::Multiset;
  auto c = run([&](std::ostream& out, std::ostream& err) {
    return cmd_export(args, out, err);
  });
  CHECK(c.exit == kExitSuccess);
  CHECK(c.out.find("p cnf 58 420") != std::string::npos);
  CHECK(c.out.find("c n 4 k 3 mode multiset proper 0") != std::string::npos);

  ExportArgs missing;
  missing.format = "dimacs";
  missing.n = 4;
  CHECK(run([&](std::ostream& out, std::ostream& err) {
          return cmd_export(missing, out, err);
        }).exit == kExitUsage);

  ExportArgs rainbow;
  rainbow.format = "dimacs";
  rainbow.n = 4;
  rainbow.k = 4;
  rainbow.mode = PaletteMode::RainbowProper;
  CHECK(run([&](std::ostream& out, std::ostream& err) {
          return cmd_export(rainbow, out, err);
        }).exit == kExitUsage);
}

TEST_CASE("export rejects unknown formats and missing inputs") {
  ExportArgs unknown;
  unknown.format = "yaml";
  auto c = run([&](std::ostream& out, std::ostream& err) {
    return cmd_export(unknown, out, err);
  });
  CHECK(c.exit == kExitUsage);
  CHECK(c.err.find("yaml") != std::string::npos);

  ExportArgs no_file;
  no_file.format = "dot";
  CHECK(run([&](std::ostream& out, std::ostream& err) {
          return cmd_export(no_file, out, err);
        }).exit == kExitUsage);
}

TEST_CASE("export -o writes the file") {
  TempFile doc("cli_export_src.json");
  TempFile sink("cli_export_sink.dot");
  save_to_temp(modular_coloring(5), PaletteMode::RainbowProper, doc.path);
  ExportArgs args;
  args.file = doc.path;
  args.format = "dot";
  args.output_path = sink.path;
  auto c = run([&](std::ostream& out, std::ostream& err) {
    return cmd_export(args, out, err);
  });
  CHECK(c.exit == kExitSuccess);
  CHECK(c.out.empty());
  std::ifstream in(sink.path);
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  CHECK(text.find("graph K5 {") != std::string::npos);
}

TEST_CASE("construct then verify round-trips bit-exact") {
  TempFile tmp("cli_roundtrip.json");
  auto made = run([&](std::ostream& out, std::ostream& err) {
    return cmd_construct({"modular", 9, tmp.path}, out, err);
  });
  REQUIRE(made.exit == kExitSuccess);
  auto doc = load_document(tmp.path);
  CHECK(doc.coloring == modular_coloring(9));
  auto verified = run([&](std::ostream& out, std::ostream& err) {
    return cmd_verify({tmp.path, {}}, out, err);
  });
  CHECK(verified.exit == kExitSuccess);
  CHECK(verified.out.find("DISTINGUISHING") != std::string::npos);
}

TEST_CASE("binary: exit codes surface through the executable") {
  CHECK(run_binary("search 4 3 --mode multiset").exit == 0);
  CHECK(run_binary("search 4 4 --mode rainbow --proper").exit == 1);
  CHECK(run_binary("search 9 7 --mode multiset --node-limit 2000").exit == 3);
  CHECK(run_binary("search 4 3 --mode plaid").exit == 2);
  CHECK(run_binary("construct modular 4").exit == 2);
  CHECK(run_binary("verify cli_no_such_doc.json").exit == 2);
  CHECK(run_binary("").exit == 2);  // a subcommand is required
}

TEST_CASE("binary: output matches the in-process commands") {
  auto cap = run_binary("capacity 5");
  CHECK(cap.exit == 0);
  CHECK(cap.out.find("multiset=35") != std::string::npos);

  auto help = run_binary("--help");
  CHECK(help.exit == 0);
  CHECK(help.out.find("construct") != std::string::npos);
  CHECK(help.out.find("search") != std::string::npos);

  auto search = run_binary("search 4 4 --mode rainbow --proper");
  CHECK(search.out.find("K_4 rainbow k=4 proper: UNSAT") != std::string::npos);

  auto dimacs = run_binary("export --format dimacs -n 4 -k 3 --mode multiset");
  CHECK(dimacs.exit == 0);
  CHECK(dimacs.out.find("p cnf 58 420") != std::string::npos);
}

TEST_CASE("binary: construct, search and verify chain together") {
  TempFile made("cli_bin_made.json");
  auto c1 = run_binary("construct modular 5 -o " + made.path);
  CHECK(c1.exit == 0);
  auto c2 = run_binary("verify " + made.path);
  CHECK(c2.exit == 0);
  CHECK(c2.out.find("DISTINGUISHING") != std::string::npos);

  TempFile witness("cli_bin_witness.json");
  auto c3 = run_binary("search 5 --minimize --mode multiset --emit-witness " +
                       witness.path);
  CHECK(c3.exit == 0);
  CHECK(c3.out.find("minimize: tau=4") != std::string::npos);
  auto c4 = run_binary("verify " + witness.path);
  CHECK(c4.exit == 0);
}
