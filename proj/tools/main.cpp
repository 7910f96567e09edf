#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "ruledkit/cli.hpp"

int main(int argc, char** argv) {
  using namespace ruledkit::cli;
  CLI::App app{"ruledkit: dual-number geometry and singularities of ruled surfaces"};
  app.require_subcommand(1);

  AnalyzeOptions an;
  auto* analyze = app.add_subcommand("analyze", "invariants, singular locus and classification");
  analyze->add_option("spec", an.spec_path, "surface spec file")->required();
  analyze->add_option("--json", an.json_path, "write the report here instead of stdout");
  analyze->add_option("--tol", an.tol, "classification tolerance");
  analyze->add_option("--order", an.order, "invariant jet order used for classification");

  MeshOptions me;
  std::string grid = "64x16", range = "-1:1";
  auto* mesh = app.add_subcommand("mesh", "sample F(s, t) and write an OBJ mesh");
  mesh->add_option("spec", me.spec_path, "surface spec file")->required();
  mesh->add_option("--grid", grid, "NSxNT")->capture_default_str();
  mesh->add_option("--t-range", range, "a:b")->capture_default_str();
  mesh->add_option("-o,--output", me.out_path, "OBJ file")->required();
  mesh->add_option("--lambda", me.lambda, "shift of kappa1 (versal parameter)");

  ReconstructOptions re;
  auto* reconstruct = app.add_subcommand("reconstruct", "integrate the dual Frenet system");
  reconstruct->add_option("spec", re.spec_path, "prescription or surface spec")->required();
  reconstruct->add_option("--init", re.init, "identity or a file with 18 numbers")->capture_default_str();
  reconstruct->add_option("--step", re.step, "RK4 step")->capture_default_str();
  reconstruct->add_option("-o,--output", re.prefix, "output prefix for .csv and .obj")->required();

  GalleryOptions ga;
  auto* gallery = app.add_subcommand("gallery", "write a prescription realizing a label");
  gallery->add_option("--label", ga.label, "classification label")->required();
  gallery->add_option("-o,--output", ga.out_path, "spec file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInputError;
  }

  if (*analyze) return cmd_analyze(an, std::cout, std::cerr);
  if (*mesh) {
    const int rc = guarded(
        [&] {
          std::tie(me.ns, me.nt) = parse_grid(grid);
          std::tie(me.t_lo, me.t_hi) = parse_range(range);
          return int{kOk};
        },
        std::cerr);
    if (rc != kOk) return rc;
    return cmd_mesh(me, std::cout, std::cerr);
  }
  if (*reconstruct) return cmd_reconstruct(re, std::cout, std::cerr);
  return cmd_gallery(ga, std::cout, std::cerr);
}
