#pragma once

// Frozen coefficient tables for the numerics module.
//
// Kronrod-15 / Gauss-7 pair: nodes of the Stieltjes extension of the 7-point
// Gauss-Legendre rule; degree-22 exactness of the 15-point rule verified at
// 50-digit precision during generation.
//
// Bessel asymptotic tables: Chebyshev expansions on u = (8/x)^2 in [0,1] of the
// modulus/phase functions P_nu(u) and Qhat_nu(u) = Q_nu(u)/sqrt(u), where
//   J_nu(x) = sqrt(2/(pi x)) [ P_nu cos(chi) - (8/x) Qhat_nu sin(chi) ],
//   chi = x - (2 nu + 1) pi / 4,
// fitted at 50-digit precision; max fit error ~1e-21 (double rounding dominates).

namespace spincoh::detail {

inline constexpr double kKronrodNodes[15] = {
    -0.9914553711208126392069,
    -0.9491079123427585245262,
    -0.8648644233597690727897,
    -0.7415311855993944398639,
    -0.5860872354676911302941,
    -0.4058451513773971669066,
    -0.2077849550078984676007,
    0.0,
    0.2077849550078984676007,
    0.4058451513773971669066,
    0.5860872354676911302941,
    0.7415311855993944398639,
    0.8648644233597690727897,
    0.9491079123427585245262,
    0.9914553711208126392069};

inline constexpr double kKronrodWeights[15] = {
    0.02293532201052922496373,
    0.06309209262997855329070,
    0.1047900103222501838399,
    0.1406532597155259187452,
    0.1690047266392679028266,
    0.1903505780647854099133,
    0.2044329400752988924142,
    0.2094821410847278280130,
    0.2044329400752988924142,
    0.1903505780647854099133,
    0.1690047266392679028266,
    0.1406532597155259187452,
    0.1047900103222501838399,
    0.06309209262997855329070,
    0.02293532201052922496373};

// Gauss-7 subset lives at the odd Kronrod node indices 1,3,...,13.
inline constexpr double kGaussWeights[7] = {
    0.1294849661688696932706,
    0.2797053914892766679015,
    0.3818300505051189449504,
    0.4179591836734693877551,
    0.3818300505051189449504,
    0.2797053914892766679015,
    0.1294849661688696932706};

inline constexpr double kP0Cheb[19] = {
    0.9994603493475186653713,
    -0.0005365220468132117424718,
    0.000003075184787519474621935,
    -5.170594537606097701043e-8,
    1.630646463515138309468e-9,
    -7.864091377237069996853e-11,
    5.168262387349192401593e-12,
    -4.304578869925389486248e-13,
    4.326595743154889919043e-14,
    -5.069034095933730160695e-15,
    6.748072215688183904143e-16,
    -1.001151372205170145745e-16,
    1.630591918885358303748e-17,
    -2.880866023729707533302e-18,
    5.468077928812562899537e-19,
    -1.106187036374575792837e-19,
    2.368910482209881157006e-20,
    -5.322941659913038060484e-21,
    1.183221372158720655320e-21};

inline constexpr double kQ0Cheb[19] = {
    -0.01555585460533700909959,
    0.00006838519942611649599395,
    -7.414498411060647264542e-7,
    1.797245724796899178445e-8,
    -7.271915936866319979262e-10,
    4.220121904668738439739e-11,
    -3.206747420996634631739e-12,
    3.006145125351703135504e-13,
    -3.336328185322336073519e-14,
    4.255225040242809543353e-15,
    -6.099930131561208426741e-16,
    9.662128967910506521658e-17,
    -1.668606514017106796365e-17,
    3.108243813187922120276e-18,
    -6.191108129979281066509e-19,
    1.309119316344304401224e-19,
    -2.920285835055906848638e-20,
    6.812230860375799330975e-21,
    -1.562641731938369534789e-21};

inline constexpr double kP1Cheb[19] = {
    1.000903040860013699896,
    0.0008989898330859408555703,
    -0.000003987284300488908522835,
    6.177633960644298534916e-8,
    -1.871890749106306608655e-9,
    8.816898659582338896235e-11,
    -5.704863640395644639213e-12,
    4.699195515230540579639e-13,
    -4.684223783990436808904e-14,
    5.452674896043157656071e-15,
    -7.221180842226668618661e-16,
    1.066768911286679350018e-16,
    -1.731231316952315479810e-17,
    3.049298968356269307200e-18,
    -5.772416607512746431879e-19,
    1.165039884688596886273e-19,
    -2.489816975261139957065e-20,
    5.584462622763164974814e-21,
    -1.239515004820709926160e-21};

inline constexpr double kQ1Cheb[19] = {
    0.04677778706953532524064,
    -0.00009627723549157079324250,
    9.138615257955454124447e-7,
    -2.095978138408342246054e-8,
    8.229193327650554128799e-10,
    -4.686363688176945226255e-11,
    3.515218794968607968470e-12,
    -3.264315674327896643571e-13,
    3.596776582916435156704e-14,
    -4.561252395074553085762e-15,
    6.508282957701735974892e-16,
    -1.026914752934354373393e-16,
    1.767635541080243233001e-17,
    -3.283451742869894120238e-18,
    6.524073194504964995112e-19,
    -1.376550574746712763221e-19,
    3.064828799419444309544e-20,
    -7.137294238311858846594e-21,
    1.634949215076859460709e-21};

} // namespace spincoh::detail
