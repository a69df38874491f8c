// SPDX-License-Identifier: Apache-2.0
// Embedded wavelet filter coefficient table. Orthogonal entries store
// dec_lo only (the rest follow from QMF relations); biorthogonal entries
// store the dec_lo / rec_lo pair. Values were generated offline at
// 60-digit precision by spectral factorization (db, sym) and the exact
// B-spline halfband construction (bior), then validated against
// orthogonality, vanishing-moment, and halfband PR identities.

#include "wavelet_coeffs.hpp"

namespace wgsr::coeffs {

const std::vector<double> db7_dec_lo = {
    0.07785205408500917902, 0.39653931948191730654, 0.72913209084623511992,
    0.46978228740519312247, -0.14390600392856497541, -0.22403618499387498264,
    0.071309219266830264751, 0.080612609151083071913, -0.03802993693501441358,
    -0.016574541630666880654, 0.012550998556099840613, 0.00042957797292136652113,
    -0.0018016407040474909153, 0.00035371379997452024845,
};

const std::vector<double> db19_dec_lo = {
    0.0011086697631817105711, 0.014281098450764397374, 0.081278113265459550653,
    0.26438843174089678467, 0.52443637746465491534, 0.60170454912753789489,
    0.26089495265103882929, -0.22809139421548264637, -0.28583863175582624185,
    0.074652269708103266368, 0.21234974330627848881, -0.033518541902302878682,
    -0.14278569503873657498, 0.02758435062562866875, 0.086906755555812232488,
    -0.026501236250123040899, -0.045674226277230908056, 0.02162376740958504713,
    0.019375549889176127646, -0.013988388678535141633, -0.0058669222810121747266,
    0.007040747367105243153, 0.00076895435925754835597, -0.002687551800701582004,
    0.00034180865345859577657, 0.00073580252050543520703, -0.00026067613567862800573,
    -0.00012460079173415877534, 0.000087112704672199229654, 5.105950487073886053e-6,
    -0.000016640176297154944546, 3.0109643162965263397e-6, 1.5319314766911930639e-6,
    -6.8627556577691427019e-7, 1.4470882987978445421e-8, 4.6369377757826042234e-8,
    -1.1164020670358258164e-8, 8.6668488389976193503e-10,
};

const std::vector<double> sym7_dec_lo = {
    0.010268176708464816231, 0.0040102448715223951678, -0.10780823770328971255,
    -0.14004724044293365414, 0.2886296317506478747, 0.76776431700488293117,
    0.53610191709056923066, 0.017441255086835706851, -0.049552834937042832301,
    0.067892693501220564905, 0.030515513165877885745, -0.012636303403240566583,
    -0.0010473848886797380865, 0.0026818145682601470291,
};

const std::vector<double> sym19_dec_lo = {
    1.8626509142614588062e-6, 2.8545100367819932577e-6, -0.000026654121257404010984,
    -0.000017745806832946561774, 0.00027753133547093991192, 0.00016949633697465291609,
    -0.0016072797768088410231, -0.00056519563046003146264, 0.0082913337426829644631,
    0.0049897313509010644564, -0.025663050885956495745, -0.014254565757115802967,
    0.086238240575423922111, 0.098477273117500580144, -0.10141045299577056223,
    -0.15000710007470324946, 0.28501077735446095054, 0.72903538038190386725,
    0.56375171211308504277, 0.080955519172152913709, -0.093364528676060620366,
    -0.0066628699539766491299, 0.00013916918586315751875, -0.048702080695884335328,
    -0.022279717449167648309, 0.017016039487952383369, 0.0087986066308166409282,
    -0.0049072484551931857214, -0.0011548501279503265428, 0.0021321423390726130024,
    0.00015084082072056786564, -0.00066142637319217123378, -0.000057323326969762628819,
    0.00011764550918019295826, 0.000011354691995909785927, -0.000011584131889603045132,
    -7.9055494517209039465e-7, 5.1586012044951607836e-7,
};

const std::vector<double> bior2_6_dec_lo = {
    -0.006905339660024878168, 0.013810679320049756336, 0.046956309688169171542,
    -0.10772329869638809942, -0.16987135563661200293, 0.44746600996961210528,
    0.96674755240348294352, 0.44746600996961210528, -0.16987135563661200293,
    -0.10772329869638809942, 0.046956309688169171542, 0.013810679320049756336,
    -0.006905339660024878168,
};

const std::vector<double> bior2_6_rec_lo = {
    0.3535533905932737622, 0.7071067811865475244, 0.3535533905932737622,
};

const std::vector<double> bior4_4_dec_lo = {
    -0.027621358640099512672, 0.11048543456039805069, -0.0055242717280199025344,
    -0.5303300858899106433, 0.38669902096139317741, 1.5467960838455727096,
    0.38669902096139317741, -0.5303300858899106433, -0.0055242717280199025344,
    0.11048543456039805069, -0.027621358640099512672,
};

const std::vector<double> bior4_4_rec_lo = {
    0.08838834764831844055, 0.3535533905932737622, 0.5303300858899106433,
    0.3535533905932737622, 0.08838834764831844055,
};

}  // namespace wgsr::coeffs
