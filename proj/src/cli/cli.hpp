#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace fisher_modes::cli {

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kToleranceFailed = 1;
inline constexpr int kInvalidInput = 2;
inline constexpr int kNumericalFailure = 3;

struct RunConfig {
  std::string command;

  // metric
  double r_s = 0.0;

  // mode
  std::string family = "free";
  double eta = 0.0;
  int ell = 0;
  int m = 0;
  int n = 1;
  double beta = 1.0;
  std::optional<double> alpha_sq;
  std::optional<double> mu;
  std::optional<double> sigma_r;
  std::string closure = "alpha";
  double a = 1.0;
  std::vector<int> hydrogen;

  // domain
  double rbox = 1.0;
  std::optional<double> rmax;
  std::optional<int> nodes_r;
  std::optional<int> nodes_theta;
  std::optional<int> nodes_phi;
  int samples = 101;

  double tol = 1e-6;

  // radial
  double r_start = 1.0;
  double r_end = 10.0;
  double init_value = 1.0;
  double init_slope = 0.0;
  double rtol = 1e-10;
  std::optional<double> horizon_delta;

  // distance
  std::vector<double> rho_a;
  std::vector<double> rho_b;

  std::string out;
  std::optional<std::string> format;
};

// Runs one command. `args` excludes the program name. Data go to `out` when
// no --out path is given; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace fisher_modes::cli
