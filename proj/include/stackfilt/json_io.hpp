#ifndef STACKFILT_JSON_IO_HPP
#define STACKFILT_JSON_IO_HPP

#include <string>
#include <vector>

#include "stackfilt/experiments.hpp"
#include "stackfilt/image.hpp"
#include "stackfilt/speckle.hpp"
#include "stackfilt/stack_filter.hpp"

namespace stackfilt {

/// Training regions from a JSON document of the form
///   [{"x":..,"y":..,"w":..,"h":..,"stat":"mean"}, ...]
/// or with several rectangles per region:
///   [{"rects":[{...},{...}], "stat":"median"}, ...]
/// "stat" is optional and falls back to `default_spec`; "value" supplies
/// the constant when stat == "constant".
std::vector<TrainingRegion> parse_training_regions(const std::string& json_text,
                                                   const DesiredSpec& default_spec);

PhantomSpec parse_phantom_spec(const std::string& json_text);
QualityMcConfig parse_quality_mc_config(const std::string& json_text);
ClassifExpConfig parse_classif_exp_config(const std::string& json_text);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

}  // namespace stackfilt

#endif
