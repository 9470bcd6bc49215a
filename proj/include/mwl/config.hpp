#pragma once

// Run configuration: built-in fixtures, JSON loading with line-numbered
// errors, and the effective configuration echoed into outputs.

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "mwl/random.hpp"
#include "mwl/synthesis.hpp"
#include "mwl/thermo.hpp"

namespace mwl {

struct PotentialSpec {
  std::string family = "zero";  // zero | constant | bernoulli | table
  double p = 0.5;               // bernoulli
  double c = 0.0;               // constant
  int range = 1;                // table
  std::vector<double> values;   // table

  Potential build() const;
};

struct Tolerances {
  double h = 0.1;
  double xi_star = 0.15;
  double graph = 0.15;
  double range = 0.1;
  double energy = 0.15;
  double theorem_a = 0.1;
};

struct RunConfig {
  std::string fixture = "monofractal";
  PotentialSpec potential;
  std::string wavelet = "gauss2";
  double s0 = 0.5;
  double p0 = 4.0;
  int k = 8;                          // zero-avoidance depth
  std::array<int, 2> k_sweep{3, 8};   // depths tabulated by `pressure`
  int J = 14;                         // tree depth
  int G = 14;                         // grid depth
  std::uint64_t seed = 1;
  std::string sign_rule = "rademacherFromSeed";
  std::string perturbation = "uniformHalfToThreeHalves";
  double perturbation_sigma = 0.25;
  double perturbation_clip = 3.0;
  double amplitude = 1.0;             // multiplies every coefficient
  std::array<double, 3> q_grid{-2.0, 4.0, 0.5};  // min, max, step
  std::vector<double> verify_q{0.0};
  double legendre_qmax = 20.0;
  double legendre_step = 0.01;
  double eps = 0.1;
  double tol = 0.05;                  // iso-Holder cover half-width
  std::array<int, 2> leader_scales{0, 0};  // 0 = [J/2, J]
  std::array<int, 2> box_scales{4, 12};
  std::array<int, 2> cover_levels{6, 10};
  int point_level = 10;               // level of the midpoints used for exponent medians
  int energy_level = 10;
  int clearance_level = 14;
  Tolerances tolerances;

  std::vector<double> q_values() const;
  std::vector<double> legendre_grid() const;
  int leader_lo() const { return leader_scales[0] > 0 ? leader_scales[0] : J / 2; }
  int leader_hi() const { return leader_scales[1] > 0 ? leader_scales[1] : J; }
  SignRule sign() const { return parse_sign_rule(sign_rule); }
  PerturbationLaw law() const {
    return PerturbationLaw::parse(perturbation, perturbation_sigma, perturbation_clip);
  }
};

/// Preset for a built-in fixture id: monofractal, bernoulli, smoke.
RunConfig fixture_preset(const std::string& id);
std::vector<std::string> fixture_ids();

nlohmann::ordered_json to_json(const RunConfig& c);

/// Overlay the JSON text onto the preset named by its "fixture" field (or
/// `base` when absent). Errors carry the line number of the offending key.
RunConfig parse_config(const std::string& text, const RunConfig& base);
RunConfig load_config(const std::string& path, const RunConfig& base);

/// Throws with a descriptive message when the invariants do not hold.
void validate(const RunConfig& c);

}  // namespace mwl
