#pragma once

// Standard-normal helpers shared by the Thurston model, the original Elo
// expected score, and the synthetic outcome sampler.

namespace ratekit {

double norm_pdf(double z);
double norm_cdf(double z);
double log_norm_cdf(double z);

// Scaled complementary error function exp(x^2) * erfc(x), x >= 0.
double erfcx_pos(double x);

// Inverse Mills ratio V(z) = pdf(z) / cdf(z); evaluated through erfcx_pos in
// the left tail so the 0/0 underflow of the naive ratio never occurs.
double mills_v(double z);

// W(z) = -V'(z) = V(z) * (z + V(z)); stays in (0, 1).
double mills_w(double z);

}  // namespace ratekit
