// mot: command-line front end for the martingale transport structure library.
//
//   mot example discrete_k|continuous_grid|mixed_k|gaussian_grid [--k K] [--grid N] [--out F] [--mu F] [--nu F]
//   mot check-order|couple|polar|pave|potential --mu F --nu F [--out F] [--tol X]
//   mot affine-component --phi F --point x1,..,xd --box lo1,hi1,..,lod,hid [--out F]
//
// Exit codes: 0 success, 2 not in convex order, 3 parse/validation error.

#include <CLI11.hpp>
#include <cstdlib>
#include <iostream>
#include <sstream>

#include "mot/coupling.hpp"
#include "mot/errors.hpp"
#include "mot/fixtures.hpp"
#include "mot/io.hpp"
#include "mot/measures.hpp"
#include "mot/paving.hpp"
#include "mot/pwl.hpp"

namespace {

using mot::io::json;

constexpr int kExitOk = 0;
constexpr int kExitNotInOrder = 2;
constexpr int kExitInvalid = 3;

struct Options {
  std::string mu_file;
  std::string nu_file;
  std::string out_file;
  std::string phi_file;
  std::string point;
  std::string box;
  std::string example;
  int k = 2;
  int grid = 10;
  double tol = mot::kPolarTol;
};

void emit(const Options& opt, const json& j) {
  if (opt.out_file.empty()) {
    std::cout << j.dump(2) << '\n';
  } else {
    mot::io::write_file(opt.out_file, j);
  }
}

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw mot::Error(mot::ErrorCode::ParseError, "not a number: '" + item + "'");
    }
  }
  if (out.empty()) throw mot::Error(mot::ErrorCode::ParseError, "empty number list");
  return out;
}

std::pair<mot::DiscreteMeasure, mot::DiscreteMeasure> load_pair(const Options& opt) {
  if (opt.mu_file.empty() || opt.nu_file.empty()) {
    throw mot::Error(mot::ErrorCode::InvalidInput, "--mu and --nu are required");
  }
  return {mot::io::measure_from_json(mot::io::read_file(opt.mu_file)),
          mot::io::measure_from_json(mot::io::read_file(opt.nu_file))};
}

int cmd_example(const Options& opt) {
  mot::fixtures::MeasurePair pair = [&] {
    if (opt.example == "discrete_k") return mot::fixtures::discrete_k(opt.k);
    if (opt.example == "continuous_grid") return mot::fixtures::continuous_grid(opt.grid);
    if (opt.example == "mixed_k") return mot::fixtures::mixed_k(opt.k);
    if (opt.example == "gaussian_grid") return mot::fixtures::gaussian_grid(opt.grid);
    throw mot::Error(mot::ErrorCode::InvalidParameter, "unknown example '" + opt.example + "'");
  }();
  const json mu = mot::io::to_json(pair.mu);
  const json nu = mot::io::to_json(pair.nu);
  if (!opt.mu_file.empty()) mot::io::write_file(opt.mu_file, mu);
  if (!opt.nu_file.empty()) mot::io::write_file(opt.nu_file, nu);
  emit(opt, {{"mu", mu}, {"nu", nu}});
  return kExitOk;
}

int cmd_check_order(const Options& opt) {
  const auto [mu, nu] = load_pair(opt);
  const bool ok = mot::check_convex_order(mu, nu);
  emit(opt, {{"convex_order", ok}});
  return ok ? kExitOk : kExitNotInOrder;
}

int cmd_couple(const Options& opt) {
  const auto [mu, nu] = load_pair(opt);
  emit(opt, mot::io::to_json(mot::find_coupling(mu, nu)));
  return kExitOk;
}

int cmd_polar(const Options& opt) {
  const auto [mu, nu] = load_pair(opt);
  const Eigen::MatrixXd m = mot::polar_matrix(mu, nu);
  json values = json::array();
  json polar = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json vrow = json::array();
    json prow = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      vrow.push_back(m(i, j));
      prow.push_back(m(i, j) <= opt.tol);
    }
    values.push_back(std::move(vrow));
    polar.push_back(std::move(prow));
  }
  emit(opt, {{"matrix", values}, {"polar", polar}, {"polar_tol", opt.tol}});
  return kExitOk;
}

int cmd_pave(const Options& opt) {
  const auto [mu, nu] = load_pair(opt);
  emit(opt, mot::io::to_json(mot::compute_paving(mu, nu, opt.tol)));
  return kExitOk;
}

int cmd_potential(const Options& opt) {
  const auto [mu, nu] = load_pair(opt);
  const auto domain = mot::potential_domain(mu, nu);
  json breakpoints = json::array();
  for (const auto& [x, v] : mot::potential_difference(mu, nu)) breakpoints.push_back({x, v});
  json intervals = json::array();
  for (const mot::OpenInterval& iv : domain) intervals.push_back({iv.lower, iv.upper});
  emit(opt, {{"breakpoints", breakpoints}, {"domain", intervals}});
  return kExitOk;
}

int cmd_affine_component(const Options& opt) {
  const mot::PwlConvex phi = mot::io::pwl_from_json(mot::io::read_file(opt.phi_file));
  const std::vector<double> coords = parse_list(opt.point);
  const std::vector<double> bounds = parse_list(opt.box);
  if (bounds.size() != 2 * coords.size()) {
    throw mot::Error(mot::ErrorCode::DimensionMismatch, "--box needs lo,hi per coordinate of --point");
  }
  const auto d = static_cast<Eigen::Index>(coords.size());
  mot::Vector x(d), lo(d), hi(d);
  for (Eigen::Index i = 0; i < d; ++i) {
    const auto iu = static_cast<std::size_t>(i);
    x(i) = coords[iu];
    lo(i) = bounds[2 * iu];
    hi(i) = bounds[2 * iu + 1];
  }
  emit(opt, mot::io::to_json(mot::affine_component(phi, x, mot::box(lo, hi))));
  return kExitOk;
}

void report(const std::string& code, const std::string& message) {
  std::cerr << json{{"error", code}, {"message", message}}.dump() << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Structure of martingale transports between finitely supported measures"};
  app.require_subcommand(1);
  Options opt;
  if (const char* env = std::getenv("MOT_TOL")) {
    try {
      opt.tol = std::stod(env);
    } catch (const std::exception&) {
      report("ParseError", "MOT_TOL is not a number");
      return kExitInvalid;
    }
  }

  auto add_pair_options = [&](CLI::App* sub) {
    sub->add_option("--mu", opt.mu_file, "mu measure JSON")->required();
    sub->add_option("--nu", opt.nu_file, "nu measure JSON")->required();
    sub->add_option("--out", opt.out_file, "output file (default stdout)");
    sub->add_option("--tol", opt.tol, "polar threshold (default 1e-8 or MOT_TOL)");
  };

  auto* example = app.add_subcommand("example", "emit a reference mu/nu pair");
  example->add_option("name", opt.example, "discrete_k | continuous_grid | mixed_k | gaussian_grid")->required();
  example->add_option("--k", opt.k, "k for discrete_k / mixed_k");
  example->add_option("--grid", opt.grid, "columns for continuous_grid, side for gaussian_grid");
  example->add_option("--out", opt.out_file, "output file for {mu, nu} (default stdout)");
  example->add_option("--mu", opt.mu_file, "also write mu here");
  example->add_option("--nu", opt.nu_file, "also write nu here");

  auto* check = app.add_subcommand("check-order", "decide mu <=_c nu");
  auto* couple = app.add_subcommand("couple", "find a martingale coupling");
  auto* polar = app.add_subcommand("polar", "max mass of every (mu, nu) atom pair");
  auto* pave = app.add_subcommand("pave", "convex paving of supp(mu)");
  auto* pot = app.add_subcommand("potential", "potential difference and domain (1-D)");
  for (auto* sub : {check, couple, polar, pave, pot}) add_pair_options(sub);

  auto* affine = app.add_subcommand("affine-component", "flat face of a piecewise-linear convex function");
  affine->add_option("--phi", opt.phi_file, "pwl JSON")->required();
  affine->add_option("--point", opt.point, "comma-separated coordinates")->required();
  affine->add_option("--box", opt.box, "lo1,hi1,lo2,hi2,...")->required();
  affine->add_option("--out", opt.out_file, "output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    report("ParseError", e.what());
    return kExitInvalid;
  }

  try {
    if (*example) return cmd_example(opt);
    if (*check) return cmd_check_order(opt);
    if (*couple) return cmd_couple(opt);
    if (*polar) return cmd_polar(opt);
    if (*pave) return cmd_pave(opt);
    if (*pot) return cmd_potential(opt);
    if (*affine) return cmd_affine_component(opt);
  } catch (const mot::Error& e) {
    report(std::string(mot::to_string(e.code())), e.what());
    return e.code() == mot::ErrorCode::NotInConvexOrder ? kExitNotInOrder : kExitInvalid;
  } catch (const std::exception& e) {
    report("InternalError", e.what());
    return 1;
  }
  return kExitInvalid;
}
