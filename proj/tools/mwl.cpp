#include <omp.h>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include <CLI11.hpp>
#include <cstdlib>
#include <exception>
#include <filesystem>
#include <optional>
#include <sstream>
#include <string>

#include "mwl/config.hpp"
#include "mwl/pipeline.hpp"

namespace {

using nlohmann::ordered_json;

struct StageError : std::runtime_error {
  StageError(const std::string& stage, const std::string& what)
      : std::runtime_error(what), stage(stage) {}
  std::string stage;
};

template <class F>
auto stage(const std::string& name, F&& f) {
  try {
    return f();
  } catch (const StageError&) {
    throw;
  } catch (const std::exception& e) {
    throw StageError(name, e.what());
  }
}

struct Options {
  std::string config_path;
  std::string fixture;
  std::optional<std::uint64_t> seed;
  std::string out = "out";
  int threads = 0;
  bool serial = false;
};

std::string path_in(const Options& o, const std::string& name) {
  return (std::filesystem::path(o.out) / name).string();
}

ordered_json envelope(const std::string& command, const mwl::RunConfig& c) {
  ordered_json j;
  j["schema"] = 1;
  j["command"] = command;
  j["config"] = mwl::to_json(c);
  return j;
}

void write_json(const Options& o, const std::string& name, const ordered_json& j) {
  mwl::write_file_atomic(path_in(o, name), j.dump(2) + "\n");
}

mwl::RunConfig resolve_config(const Options& o) {
  return stage("config", [&] {
    mwl::RunConfig base = mwl::fixture_preset(o.fixture.empty() ? "monofractal" : o.fixture);
    mwl::RunConfig c = o.config_path.empty() ? base : mwl::load_config(o.config_path, base);
    if (!o.fixture.empty() && !o.config_path.empty() && c.fixture != o.fixture)
      spdlog::warn("config file selects fixture '{}', overriding --fixture {}", c.fixture, o.fixture);
    if (o.seed) c.seed = *o.seed;
    mwl::validate(c);
    return c;
  });
}

mwl::Model model_for(const Options& o, const mwl::RunConfig& c) {
  mwl::write_file_atomic(path_in(o, "effective_config.json"), mwl::to_json(c).dump(2) + "\n");
  return stage("model", [&] { return mwl::build_model(c); });
}

mwl::Backend backend(const Options& o) { return o.serial ? mwl::Backend::kSerial : mwl::Backend::kParallel; }

mwl::SynthResult synth_stage(const Options& o, const mwl::Model& m) {
  return stage("synth", [&] { return mwl::run_synth(m, backend(o)); });
}

void write_series(const Options& o, const mwl::SynthResult& s) {
  std::ostringstream bin;
  mwl::write_series_binary(bin, s.series);
  mwl::write_file_atomic(path_in(o, "series.mwl1"), bin.str());
  std::ostringstream csv;
  const std::size_t stride = s.series.samples.size() > 4097 ? (s.series.samples.size() - 1) / 4096 : 1;
  mwl::write_series_csv(csv, s.series, stride);
  mwl::write_file_atomic(path_in(o, "series_preview.csv"), csv.str());
}

int cmd_pressure(const Options& o) {
  const auto c = resolve_config(o);
  const auto m = model_for(o, c);
  const auto r = stage("pressure", [&] { return mwl::run_pressure(m); });
  mwl::write_file_atomic(path_in(o, "curves.csv"), mwl::curve_csv({r.pressure, r.tau}));
  mwl::write_file_atomic(path_in(o, "sweep.csv"), mwl::sweep_csv(r.sweep));
  auto j = envelope("pressure", c);
  j["result"] = mwl::to_json(r);
  write_json(o, "pressure.json", j);
  return 0;
}

int cmd_synth(const Options& o) {
  const auto c = resolve_config(o);
  const auto m = model_for(o, c);
  const auto s = synth_stage(o, m);
  write_series(o, s);
  auto j = envelope("synth", c);
  j["result"] = {{"samples", s.series.samples.size()},
                 {"gridDepth", s.series.grid_depth},
                 {"truncationDepth", s.series.truncation_depth},
                 {"tailBound", s.series.tail_bound},
                 {"clearance", s.clearance ? ordered_json(*s.clearance) : ordered_json(nullptr)}};
  if (!s.clearance_note.empty()) j["result"]["clearanceNote"] = s.clearance_note;
  write_json(o, "synth.json", j);
  return 0;
}

int cmd_spectrum(const Options& o) {
  const auto c = resolve_config(o);
  const auto m = model_for(o, c);
  const auto s = synth_stage(o, m);
  const auto r = stage("spectrum", [&] { return mwl::run_spectrum(m, s); });
  mwl::write_file_atomic(path_in(o, "scaling.csv"), mwl::scaling_csv(r.estimate));
  mwl::write_file_atomic(path_in(o, "spectrum.csv"), mwl::spectrum_csv(r.xi_star));
  mwl::write_file_atomic(path_in(o, "predicted.csv"), mwl::curve_csv({r.predicted}));
  auto j = envelope("spectrum", c);
  j["result"] = mwl::to_json(r);
  write_json(o, "spectrum.json", j);
  return 0;
}

int cmd_dims(const Options& o) {
  const auto c = resolve_config(o);
  const auto m = model_for(o, c);
  const auto s = synth_stage(o, m);
  const auto r = stage("dims", [&] { return mwl::run_dims(m, s, backend(o)); });
  std::ostringstream csv;
  csv.precision(17);
  csv << "estimator,value\n"
      << "graph_box," << r.graph.value << "\n"
      << "range_box," << r.range.value << "\n"
      << "graph_energy," << r.graph_energy.threshold << "\n"
      << "range_energy," << r.range_energy.threshold << "\n"
      << "h_min," << r.h_min << "\n";
  mwl::write_file_atomic(path_in(o, "dims.csv"), csv.str());
  auto j = envelope("dims", c);
  j["result"] = mwl::to_json(r);
  write_json(o, "dims.json", j);
  return 0;
}

int cmd_verify(const Options& o) {
  const auto c = resolve_config(o);
  const auto m = model_for(o, c);
  const auto s = synth_stage(o, m);
  write_series(o, s);
  const auto r = stage("verify", [&] { return mwl::run_verify(m, s, backend(o)); });
  mwl::write_file_atomic(path_in(o, "verify.csv"), mwl::verify_csv(r));
  auto j = envelope("verify", c);
  j["result"] = mwl::to_json(r);
  write_json(o, "verify.json", j);
  for (const auto& v : r.records) {
    if (v.skipped) {
      spdlog::info("q={}: {}", v.q, v.note);
      continue;
    }
    for (const auto& f : v.failures) spdlog::error("q={}: {}", v.q, f);
  }
  if (!r.full_cover_pass)
    spdlog::error("full cover: graph {} range {} against bound {}", r.full_graph.value, r.full_range.value,
                  r.full_graph_bound);
  spdlog::info("verify {}", r.pass ? "passed" : "failed");
  return r.pass ? 0 : 1;
}

void configure_logging() {
  spdlog::set_default_logger(spdlog::stderr_color_mt("mwl"));
  spdlog::set_pattern("[%l] %v");
  if (const char* lvl = std::getenv("MWL_LOG"))
    spdlog::set_level(spdlog::level::from_str(lvl));
  else
    spdlog::set_level(spdlog::level::warn);
}

}  // namespace

int main(int argc, char** argv) {
  configure_logging();
  CLI::App app{"Random wavelet series over Gibbs measures on binary subshifts"};
  app.require_subcommand(1);
  Options o;
  app.add_option("--config", o.config_path, "JSON run configuration")->check(CLI::ExistingFile);
  app.add_option("--fixture", o.fixture, "built-in fixture used as the base configuration");
  app.add_option("--seed", o.seed, "override the configured seed");
  app.add_option("--out", o.out, "output directory");
  app.add_option("--threads", o.threads, "thread cap (0 = runtime default)")->check(CLI::NonNegativeNumber);
  app.add_flag("--serial", o.serial, "use the serial reference kernels");

  const std::pair<const char*, const char*> subs[] = {
      {"pressure", "pressure and tau curves, zero-avoidance sweep"},
      {"synth", "synthesize the perturbed series"},
      {"spectrum", "wavelet-leader scaling function and its Legendre transform"},
      {"dims", "box-counting and energy dimension estimates"},
      {"verify", "end-to-end check of the predicted dimensions"},
  };
  for (const auto& [name, help] : subs) app.add_subcommand(name, help)->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }
  if (o.threads > 0) omp_set_num_threads(o.threads);

  const std::string cmd = app.get_subcommands().front()->get_name();
  try {
    if (cmd == "pressure") return cmd_pressure(o);
    if (cmd == "synth") return cmd_synth(o);
    if (cmd == "spectrum") return cmd_spectrum(o);
    if (cmd == "dims") return cmd_dims(o);
    return cmd_verify(o);
  } catch (const StageError& e) {
    spdlog::critical("stage {} failed: {}", e.stage, e.what());
    return 2;
  } catch (const std::exception& e) {
    spdlog::critical("output: {}", e.what());
    return 2;
  }
}
