#pragma once

#include <map>
#include <string>

#include "mwl/config.hpp"
#include "mwl/pipeline.hpp"

namespace fixture {

struct Run {
  mwl::Model model;
  mwl::SynthResult synth;
};

inline const Run& get(const std::string& id) {
  static std::map<std::string, Run> cache;
  auto it = cache.find(id);
  if (it == cache.end()) {
    mwl::Model m = mwl::build_model(mwl::fixture_preset(id));
    mwl::SynthResult s = mwl::run_synth(m);
    it = cache.emplace(id, Run{std::move(m), std::move(s)}).first;
  }
  return it->second;
}

inline mwl::SampledSeries from_function(int grid_depth, double (*f)(double)) {
  mwl::SampledSeries s;
  s.grid_depth = grid_depth;
  s.samples.resize((std::size_t{1} << grid_depth) + 1);
  for (std::size_t i = 0; i < s.samples.size(); ++i) s.samples[i] = f(s.x(i));
  return s;
}

}  // namespace fixture
