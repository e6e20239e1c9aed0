#pragma once
// Generated by tests/oracles/generate.py; do not edit by hand.

namespace oracle {
inline constexpr double kGaussSubdominant32 = 0.30366300289873305;
inline constexpr double kGaussSubdominant48 = 0.3036630028987336;
inline constexpr double kT1 = 3.44450272407701;
inline constexpr double kT2 = -2.1122258596130665;
inline constexpr double kT3 = -1.7922168998843386;
inline constexpr double kT4 = 1.1626609524679794;
inline constexpr double kC20 = 1.0206763858500179;
inline constexpr double kLeq2 = 0.5312805062772054;
inline constexpr double kLeq20 = 0.9653932635252165;
inline constexpr double kLeq160 = 0.9960874650713702;
inline constexpr double kSet123 = 0.7056609080287388;
inline constexpr double kSet56 = 0.20019852665735827;
inline constexpr double kSet1_100 = 0.2008599969433339;
inline constexpr double kGeq20 = 0.6758491210070035;
inline constexpr double kGeq100 = 0.6390782508656259;
inline constexpr double kFibGeq20 = 0.12390532254262787;
inline constexpr double kHurwitzTail_s06_N50_x037 = 2.287706913268966;
inline constexpr double kHurwitzTail_s1_N1_x0 = 1.6449340668482264;
inline constexpr double kZeta2_at_1_3 = 1.1342534349966193;
}  // namespace oracle
