#pragma once

#include <string>

#include <json.hpp>

#include "dyncorr/channel.hpp"

namespace dyncorr {

// JSON channel file: {"kind": "unitary"|"kraus", "dims": [d_A, d_B],
// "matrix": ...} or {"operators": [...]}, matrices as nested arrays of
// [re, im] pairs, row-major.
struct ChannelFile {
  Channel channel;
  int d_A = 0;
  int d_B = 0;
};

// Schema errors raise FormatError; CPT violations raise NotUnitary /
// InvariantViolation from channel validation.
ChannelFile parse_channel_json(const nlohmann::json& doc,
                               const Tolerances& tol = Tolerances::active());
ChannelFile load_channel_file(const std::string& path,
                              const Tolerances& tol = Tolerances::active());

nlohmann::json channel_to_json(const Channel& ch, int d_A, int d_B);
void save_channel_file(const Channel& ch, int d_A, int d_B, const std::string& path);

}  // namespace dyncorr
