// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>

#include "wgsr/models.hpp"

namespace wgsr {

// Flat binary parameter file. Layout (all integers little-endian):
//   magic   "WGSRCKPT"          8 bytes
//   version uint32              currently 1
//   count   uint32              number of tensor records
// then per tensor, in Params order:
//   name_len uint32, name bytes (no terminator)
//   dtype    uint32             0 = float32 (the only defined code)
//   rank     uint32             always 4
//   dims     uint32 x rank      n, c, h, w
//   payload  float32 x numel    little-endian row-major values
void save_checkpoint(const Params& params, const std::string& path);

// Loads into an existing Params list; names, order, and shapes must match.
void load_checkpoint(Params& params, const std::string& path);

}  // namespace wgsr
