#pragma once

#include <json.hpp>

#include <iosfwd>
#include <string>

#include "nuforge/errors.hpp"
#include "nuforge/pipeline.hpp"

namespace nuforge::report {

std::string render_text(const pipeline::PipelineResult& result);
nlohmann::json render_json(const pipeline::PipelineResult& result);
void render_error(std::ostream& out, const pipeline::RunConfig& config,
                  const Error& e);

// Tag column as printed: suppressed for the bare endpoints 0 and 1.
std::string display_tag(const qfield::ExtReal& x);

}  // namespace nuforge::report
