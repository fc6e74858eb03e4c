#pragma once

#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "bioblend/config.hpp"
#include "bioblend/dataset_io.hpp"

namespace bioblend {

/// Return every constraint violation in `config`, empty when valid.
std::vector<std::string> validate_config(const GeneratorConfig& config);

using ProgressFn = std::function<void(std::string_view)>;

/// Execute the full generation pipeline:
/// usefulness -> locations -> hidden sampling -> column normalization ->
/// polynomial expansion -> blend weights -> blending -> noise.
/// Each stage draws from its own stream forked off the seed, so outputs are
/// reproducible stage by stage. Throws ConfigError when validation fails.
DatasetBundle run_pipeline(const GeneratorConfig& config, const ProgressFn& progress = {});

}  // namespace bioblend
