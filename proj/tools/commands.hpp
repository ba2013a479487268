#pragma once

#include <string>

#include "json.hpp"
#include "stqft/quadrature_config.hpp"

namespace stqft::cli {

enum Exit { kOk = 0, kResidual = 1, kUsage = 2, kSchema = 3 };

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SpecialArgs {
  std::string function;
  std::string z = "0", x = "0.4", y = "0.3", u = "0", v = "0", w = "0";
  double b = 1.0, p = 0.3, q = 0.3, tol = 1e-12;
  bool check_inversion = false;
};

struct PartitionArgs {
  std::string input;
  double b = 1.0, tol = 1e-6;
  std::string gauge = "auto";
  std::string renormalize;
};

struct VerifyArgs {
  std::string suite;
  std::string input;
  int trials = 0;
  unsigned long long seed = 1;
  double b = 1.0, tol = 1e-8;
  double max_residual = -1.0;
};

struct AnglesArgs {
  std::string input;
  double tol = 1e-10;
};

struct PachnerArgs {
  std::string input;
  int edge = -1;
  std::string edge_ref;
  double b = 1.0, tol = 1e-9, max_residual = 1e-5;
  unsigned long long seed = 1;
};

QuadratureConfig quadrature(double tol);
// 64-bit FNV-1a over the canonical dump, as 16 hex digits
std::string config_hash(const nlohmann::json& config);
std::string read_file(const std::string& path);

int cmd_special(const SpecialArgs& a, nlohmann::json& out);
int cmd_partition(const PartitionArgs& a, nlohmann::json& out);
int cmd_verify(const VerifyArgs& a, nlohmann::json& out);
int cmd_angles(const AnglesArgs& a, nlohmann::json& out);
int cmd_pachner(const PachnerArgs& a, nlohmann::json& out);

}  // namespace stqft::cli
