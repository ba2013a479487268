#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "commands.hpp"
#include "stqft/errors.hpp"

using namespace stqft::cli;

int main(int argc, char** argv) {
  CLI::App app{"shaped-triangulation partition functions"};
  app.require_subcommand(1);
  std::string out_path;
  app.add_option("--out", out_path, "write the JSON report here instead of stdout");

  SpecialArgs sp;
  auto* special = app.add_subcommand("special", "evaluate a special function");
  special->add_option("function", sp.function, "phi_b | gamma2 | B | psi | elliptic_gamma | lobachevsky")->required();
  special->add_option("--z", sp.z, "complex argument as re or re,im");
  special->add_option("--x", sp.x);
  special->add_option("--y", sp.y);
  special->add_option("--u", sp.u);
  special->add_option("--v", sp.v);
  special->add_option("--w", sp.w);
  special->add_option("--b", sp.b)->check(CLI::PositiveNumber);
  special->add_option("--p", sp.p);
  special->add_option("--q", sp.q);
  special->add_option("--tol", sp.tol);
  special->add_flag("--check-inversion", sp.check_inversion);

  PartitionArgs pa;
  auto* partition = app.add_subcommand("partition", "gauge-fixed partition function of a triangulation file");
  partition->add_option("input", pa.input)->required();
  partition->add_option("--b", pa.b)->check(CLI::PositiveNumber);
  partition->add_option("--gauge", pa.gauge)->check(CLI::IsMember({"auto", "spec"}));
  partition->add_option("--tol", pa.tol)->check(CLI::PositiveNumber);
  partition->add_option("--renormalize", pa.renormalize)->check(CLI::IsMember({"knot-edge"}));

  VerifyArgs va;
  auto* verify = app.add_subcommand("verify", "run an identity suite");
  verify->add_option("suite", va.suite)
      ->required()
      ->check(CLI::IsMember({"pentagon", "elliptic", "orthogonality", "bailey", "octahedron", "entropy", "pachner", "gauge"}));
  verify->add_option("--trials", va.trials);
  verify->add_option("--input", va.input, "triangulation file for the pachner and gauge suites");
  verify->add_option("--seed", va.seed);
  verify->add_option("--b", va.b)->check(CLI::PositiveNumber);
  verify->add_option("--tol", va.tol)->check(CLI::PositiveNumber);
  verify->add_option("--max-residual", va.max_residual);

  AnglesArgs aa;
  auto* angles = app.add_subcommand("angles", "maximize the volume in the gauge class of the file's angles");
  angles->add_option("input", aa.input)->required();
  angles->add_option("--tol", aa.tol)->check(CLI::PositiveNumber);

  PachnerArgs pc;
  auto* pachner = app.add_subcommand("pachner", "3-2 move invariance at a degree-3 edge");
  pachner->add_option("input", pc.input)->required();
  pachner->add_option("--edge", pc.edge, "edge class index");
  pachner->add_option("--edge-ref", pc.edge_ref, "tet,u,v");
  pachner->add_option("--b", pc.b)->check(CLI::PositiveNumber);
  pachner->add_option("--tol", pc.tol)->check(CLI::PositiveNumber);
  pachner->add_option("--max-residual", pc.max_residual);
  pachner->add_option("--seed", pc.seed, "seed for the boundary state");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  nlohmann::json out;
  int code = kOk;
  try {
    if (*special) code = cmd_special(sp, out);
    else if (*partition) code = cmd_partition(pa, out);
    else if (*verify) code = cmd_verify(va, out);
    else if (*angles) code = cmd_angles(aa, out);
    else code = cmd_pachner(pc, out);
  } catch (const UsageError& e) {
    std::cerr << "usage: " << e.what() << "\n";
    return kUsage;
  } catch (const stqft::Error& e) {
    std::cerr << e.what() << "\n";
    return e.kind() == stqft::ErrorKind::Schema ? kSchema : kResidual;
  }

  const std::string text = out.dump(2) + "\n";
  if (out_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream f(out_path);
    if (!f) {
      std::cerr << "cannot write " << out_path << "\n";
      return kUsage;
    }
    f << text;
  }
  return code;
}
