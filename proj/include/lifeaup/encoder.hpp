#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "lifeaup/curriculum.hpp"
#include "lifeaup/features.hpp"

namespace lifeaup {

enum class EncoderKind : std::uint8_t { IdentityDownsample, LinearWhitened };

std::string_view encoder_kind_name(EncoderKind kind);
EncoderKind parse_encoder_kind(std::string_view name);

/// Maps downsampled observations to a normalized latent vector.
///
/// LinearWhitened projects the centered features onto the top principal
/// directions, scales each by 1/sqrt(eigenvalue), and min-max normalizes
/// with the range seen on the training buffer. IdentityDownsample passes the
/// 25 pooled intensities through unchanged.
class Encoder {
 public:
  static Encoder identity();

  EncoderKind kind() const { return kind_; }
  int input_dim() const { return input_dim_; }
  int latent_dim() const { return latent_dim_; }
  // Directions filled in by orthonormal completion because the buffer
  // covariance had rank below the latent dimension.
  int padded_dims() const { return padded_dims_; }

  FeatureVector project(std::span<const double> features) const;
  FeatureVector encode(std::span<const double> features) const;
  FeatureVector encode(const Observation& obs) const { return encode(downsample(obs)); }

  std::string serialize() const;
  static Encoder parse(std::string_view text);

  friend bool operator==(const Encoder&, const Encoder&) = default;

 private:
  friend Encoder train_encoder(std::span<const FeatureVector>, int, EncoderKind, int);

  EncoderKind kind_ = EncoderKind::IdentityDownsample;
  int input_dim_ = kDownsampledDim;
  int latent_dim_ = kDownsampledDim;
  int padded_dims_ = 0;
  std::vector<double> mean_;
  std::vector<double> components_;  // latent_dim x input_dim, row-major
  std::vector<double> scale_;
  std::vector<double> low_;
  std::vector<double> high_;
};

// Fits an encoder on downsampled features. `epochs` is accepted for
// interface parity; the linear encoder is solved in closed form.
Encoder train_encoder(std::span<const FeatureVector> buffer, int latent_dim, EncoderKind kind,
                      int epochs = 1);
Encoder train_encoder(std::span<const Observation> buffer, int latent_dim, EncoderKind kind,
                      int epochs = 1);

/// Uniform-random-action observations: floor(total_steps / slots) per
/// curriculum slot, resetting on episode end. In fresh mode every reset
/// draws a new level.
std::vector<Observation> collect_exploration_buffer(const Curriculum& curriculum, int total_steps,
                                                    RngStream& rng);

/// R_i = phi . E(obs) with phi drawn from (0, 1)^Z.
class AuxReward {
 public:
  AuxReward(Encoder encoder, std::vector<double> functional);

  double operator()(const Observation& obs) const;
  double from_features(std::span<const double> downsampled) const;

  const Encoder& encoder() const { return encoder_; }
  const std::vector<double>& functional() const { return functional_; }

 private:
  Encoder encoder_;
  std::vector<double> functional_;
};

// Draws `count` functionals uniformly from (0, 1)^Z.
std::vector<std::vector<double>> draw_functionals(int count, int latent_dim, RngStream& rng);

}  // namespace lifeaup
