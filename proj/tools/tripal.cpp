// Command-line front end: constructions, verification, exact search,
// capacity tables and exports for triangle-distinguishing colorings.

#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "tripal/tripal.hpp"

namespace {

const std::vector<std::string> kModeLabels{"rainbow", "set", "multiset"};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"triangle-distinguishing edge colorings of complete graphs"};
  app.require_subcommand(1);

  std::string construct_kind;
  int construct_n = 0;
  std::string construct_out;
  auto* construct =
      app.add_subcommand("construct", "build a coloring by closed formula");
  construct->add_option("kind", construct_kind, "modular|even")->required();
  construct->add_option("n", construct_n, "vertex count")->required();
  construct->add_option("-o,--output", construct_out, "write the document to a file");

  std::string verify_file;
  std::string verify_mode;
  auto* verify = app.add_subcommand("verify", "check a coloring document");
  verify->add_option("file", verify_file, "coloring document")->required();
  verify->add_option("--mode", verify_mode, "rainbow|set|multiset (default: document's)")
      ->check(CLI::IsMember(kModeLabels));

  int search_n = 0;
  std::optional<int> search_k;
  std::string search_mode = "multiset";
  bool search_proper = false;
  bool search_minimize = false;
  int search_jobs = 1;
  std::optional<std::uint64_t> search_node_limit;
  std::optional<double> search_time_limit;
  std::string search_witness;
  bool search_progress = false;
  auto* search = app.add_subcommand("search", "exact decision / minimization");
  search->add_option("n", search_n, "vertex count")->required();
  search->add_option("k", search_k, "color budget (omit with --minimize)");
  search->add_option("--mode", search_mode, "rainbow|set|multiset")
      ->check(CLI::IsMember(kModeLabels));
  search->add_flag("--proper", search_proper, "require a proper coloring");
  search->add_flag("--minimize", search_minimize, "sweep k upward to the minimum");
  search->add_option("--jobs", search_jobs, "worker threads");
  search->add_option("--node-limit", search_node_limit, "stop after this many nodes");
  search->add_option("--time-limit", search_time_limit, "stop after this many seconds");
  search->add_option("--emit-witness", search_witness, "write the witness document here");
  search->add_flag("--progress", search_progress, "report progress on stderr");

  int capacity_k = 0;
  auto* capacity = app.add_subcommand("capacity", "palette capacities for k colors");
  capacity->add_option("k", capacity_k, "color count")->required();

  int bounds_n = 0;
  auto* bounds = app.add_subcommand("bounds", "known thresholds and floors for K_n");
  bounds->add_option("n", bounds_n, "vertex count")->required();

  std::string export_file;
  std::string export_format;
  std::optional<int> export_n, export_k;
  std::string export_mode;
  bool export_proper = false;
  std::string export_out;
  auto* exp = app.add_subcommand("export", "dot / csv / dimacs output");
  exp->add_option("file", export_file, "coloring document (dot and csv)");
  exp->add_option("--format", export_format, "dot|csv|dimacs")->required();
  exp->add_option("-n", export_n, "vertex count (dimacs)");
  exp->add_option("-k", export_k, "color budget (dimacs)");
  exp->add_option("--mode", export_mode, "rainbow|set|multiset")
      ->check(CLI::IsMember(kModeLabels));
  exp->add_flag("--proper", export_proper, "require a proper coloring (dimacs)");
  exp->add_option("-o,--output", export_out, "write to a file instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return tripal::kExitUsage;
  }

  try {
    if (construct->parsed())
      return tripal::cmd_construct({construct_kind, construct_n, construct_out},
                                   std::cout, std::cerr);
    if (verify->parsed()) {
      tripal::VerifyArgs args{verify_file, {}};
      if (!verify_mode.empty()) args.mode = tripal::parse_mode(verify_mode);
      return tripal::cmd_verify(args, std::cout, std::cerr);
    }
    if (search->parsed()) {
      tripal::SearchArgs args;
      args.n = search_n;
      args.k = search_k;
      args.mode = *tripal::parse_mode(search_mode);
      args.proper = search_proper;
      args.minimize = search_minimize;
      args.jobs = search_jobs;
      args.node_limit = search_node_limit;
      args.time_limit = search_time_limit;
      args.emit_witness = search_witness;
      args.progress = search_progress;
      return tripal::cmd_search(args, std::cout, std::cerr);
    }
    if (capacity->parsed()) return tripal::cmd_capacity(capacity_k, std::cout, std::cerr);
    if (bounds->parsed()) return tripal::cmd_bounds(bounds_n, std::cout, std::cerr);
    if (exp->parsed()) {
      tripal::ExportArgs args;
      args.file = export_file;
      args.format = export_format;
      args.n = export_n;
      args.k = export_k;
      if (!export_mode.empty()) args.mode = tripal::parse_mode(export_mode);
      args.proper = export_proper;
      args.output_path = export_out;
      return tripal::cmd_export(args, std::cout, std::cerr);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return tripal::kExitUsage;
  }
  return tripal::kExitUsage;
}
