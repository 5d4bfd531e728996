#pragma once

namespace qtamm {

/// Parameters of the deformed number {n} = n (mu q^(alpha n + beta) + eta q^(gamma n + delta)).
///
/// eta is kept independent of mu; `normalized` asserts mu + eta = 1, the
/// condition under which q -> 1 recovers {n} = n.
struct DeformationParams {
  double q = 1.0;
  double mu = 1.0;
  double eta = 0.0;
  double alpha = -1.0;
  double beta = 1.0;
  double gamma = 1.0;
  double delta = -1.0;
  bool normalized = false;

  /// The symmetric two-term family (alpha, beta, gamma, delta) = (-1, 1, 1, -1),
  /// eta = 1 - mu. This is the infinite-dimensional worked example.
  static DeformationParams symmetric(double q, double mu);

  /// Normalized (eta = 1 - mu) parameters with free exponents.
  static DeformationParams normalized_with(double q, double mu, double alpha, double beta,
                                           double gamma, double delta);

  bool classical() const { return q == 1.0; }

  /// Same exponents and q, weights swapped to (1 - mu, mu). Used for the
  /// mu -> 1 - mu reflections in the moment identities.
  DeformationParams reflected() const;

  /// Throws Error(InvalidParams) for q <= 0, non-finite fields or a broken
  /// normalization; Error(DegenerateExponents) for alpha == gamma.
  void validate() const;
};

}  // namespace qtamm
