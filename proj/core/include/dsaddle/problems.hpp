#pragma once

#include "dsaddle/spectral.hpp"
#include "dsaddle/system_model.hpp"

#include <cstdint>
#include <vector>

namespace dsaddle {

/// Parameters of the 5x5 system (n = m = 2, p = 1) whose spectrum contains
/// the upper end of the negative interval.
struct TightNegativeParams {
  double mu_max_a = 1.0;
  double sigma_min_b = 1.0;
  double mu_d = 1.0;
  double sigma_c = 1.0;
  double mu_e = 1.0;
};

/// Parameters of the 6x6 system (n = m = p = 2) whose spectrum contains the
/// lower end of the positive interval.
struct TightPositiveParams {
  double mu_min_a = 1.0;
  double sigma_max_b = 1.0;
  double mu_max_d = 1.0;
  double sigma_min_c = 1.0;
  double mu_e = 1.0;
};

/// Throws ParameterError unless every parameter is positive.
DoubleSaddleSystem tightness_upper_negative(const TightNegativeParams& params);
DoubleSaddleSystem tightness_lower_positive(const TightPositiveParams& params);

/// The endpoint each fixture attains.
double tightness_upper_negative_endpoint(const TightNegativeParams& params);
double tightness_lower_positive_endpoint(const TightPositiveParams& params);

/// Symmetric permutation turning the assembled fixture block diagonal:
/// out[i] = in[perm[i]]. Blocks are 2+3 and 3+3.
std::vector<Index> tightness_upper_negative_permutation();
std::vector<Index> tightness_lower_positive_permutation();

/// Random system with blocks whose extremal eigen- or singular values are
/// exactly the requested ones. Interior values are log-uniform between the
/// extremes (uniform when the minimum is 0); orthogonal factors are Haar
/// draws from a QR of Gaussian matrices seeded with `seed`. Throws
/// ParameterError for inconsistent extremes or dimensions.
DoubleSaddleSystem random_system(Dims dims, std::uint64_t seed, const BlockExtremes& extremes);

}  // namespace dsaddle
