#pragma once

// End-to-end drivers behind the command line: each stage takes the run
// configuration, computes its results and can render them as JSON / CSV.

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "mwl/config.hpp"
#include "mwl/geometry.hpp"
#include "mwl/leaders.hpp"
#include "mwl/synthesis.hpp"
#include "mwl/thermo.hpp"
#include "mwl/wavelet.hpp"

namespace mwl {

struct Model {
  RunConfig config;
  Potential phi;
  Sft full;
  MotherWavelet psi;
  ZeroSet zeros;
  Sft avoid;  // transitive component of the depth-k zero-avoiding subshift
};

Model build_model(const RunConfig& c);

struct PressureRow {
  int k = 0;
  double q = 0.0;
  double p_full = 0.0;
  double p_avoid = 0.0;
  double gap = 0.0;
  double dim = 0.0;  // D_q of the restricted measure
};

struct PressureResult {
  SpectrumCurve pressure;  // P_Sigma(q phi) in nats
  SpectrumCurve tau;
  std::vector<PressureRow> sweep;
};

PressureResult run_pressure(const Model& m);

struct SynthResult {
  CoefficientTree tree;
  SampledSeries series;
  std::optional<double> clearance;
  std::string clearance_note;
};

SynthResult run_synth(const Model& m, Backend backend = Backend::kParallel);

struct SpectrumResult {
  ScalingEstimate estimate;
  SpectrumCurve predicted;  // xi(q) from the measure
  SpectrumCurve xi_star;    // Legendre transform of the estimate
};

SpectrumResult run_spectrum(const Model& m, const SynthResult& s);

struct DimsResult {
  DimEstimate graph;
  DimEstimate range;
  EnergyScan graph_energy;
  EnergyScan range_energy;
  double h_min = 0.0;
};

DimsResult run_dims(const Model& m, const SynthResult& s, Backend backend = Backend::kParallel);

struct VerifyRecord {
  double q = 0.0;
  bool skipped = false;
  std::string note;
  RestrictedExponents restricted;
  // predictions from the unrestricted measure
  double h = 0.0;
  double xi_star = 0.0;
  double d_graph = 0.0;
  double d_range = 0.0;
  // estimates
  double h_est = 0.0;
  double cover_growth = 0.0;      // clamped to [0, 1]
  double cover_growth_raw = 0.0;  // slope of log2 count against level
  std::vector<double> cover_counts;
  DimEstimate graph;
  DimEstimate range;
  double energy_graph = 0.0;
  double energy_range = 0.0;
  bool energy_graph_bracketed = false;
  bool energy_range_bracketed = false;
  // upper bound audit on the iso-Holder cover, with dim E from the cover growth
  double graph_bound = 0.0;
  double range_bound = 0.0;
  bool pass = false;
  std::vector<std::string> failures;
};

struct VerifyReport {
  std::vector<VerifyRecord> records;
  DimEstimate full_graph;
  DimEstimate full_range;
  double h_min = 0.0;
  double full_graph_bound = 0.0;
  bool full_cover_pass = false;
  bool pass = false;
};

VerifyReport run_verify(const Model& m, const SynthResult& s, Backend backend = Backend::kParallel);

/// Graph bound ((e/h) ^ (e + 1 - h)) v e and range bound (e/h) ^ 1 for a set
/// of dimension e on which the exponent is at least h.
double holder_graph_bound(double dim_e, double h);
double holder_range_bound(double dim_e, double h);

nlohmann::ordered_json to_json(const PressureResult& r);
nlohmann::ordered_json to_json(const SpectrumResult& r);
nlohmann::ordered_json to_json(const DimsResult& r);
nlohmann::ordered_json to_json(const VerifyReport& r);
nlohmann::ordered_json to_json(const DimEstimate& d);

std::string curve_csv(const std::vector<SpectrumCurve>& curves);
std::string sweep_csv(const std::vector<PressureRow>& rows);
std::string scaling_csv(const ScalingEstimate& e);
std::string spectrum_csv(const SpectrumCurve& c);
std::string verify_csv(const VerifyReport& r);

/// Write through a temporary file in the same directory, then rename.
void write_file_atomic(const std::string& path, const std::string& content);

}  // namespace mwl
