// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vector>

namespace wgsr::coeffs {

extern const std::vector<double> db7_dec_lo;
extern const std::vector<double> db19_dec_lo;
extern const std::vector<double> sym7_dec_lo;
extern const std::vector<double> sym19_dec_lo;
extern const std::vector<double> bior2_6_dec_lo;
extern const std::vector<double> bior2_6_rec_lo;
extern const std::vector<double> bior4_4_dec_lo;
extern const std::vector<double> bior4_4_rec_lo;

}  // namespace wgsr::coeffs
