#include "lifeaup/encoder.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <sstream>

#include "lifeaup/errors.hpp"
#include "lifeaup/format.hpp"
#include "lifeaup/log.hpp"

namespace lifeaup {

std::string_view encoder_kind_name(EncoderKind kind) {
  return kind == EncoderKind::LinearWhitened ? "linear-whitened" : "identity-downsample";
}

EncoderKind parse_encoder_kind(std::string_view name) {
  if (name == "linear-whitened") return EncoderKind::LinearWhitened;
  if (name == "identity-downsample") return EncoderKind::IdentityDownsample;
  throw ContractError("unknown encoder kind '" + std::string(name) + "'");
}

Encoder Encoder::identity() {
  Encoder e;
  e.low_.assign(kDownsampledDim, 0.0);
  e.high_.assign(kDownsampledDim, 1.0);
  return e;
}

FeatureVector Encoder::project(std::span<const double> x) const {
  if (static_cast<int>(x.size()) != input_dim_) throw ContractError("encoder: input dimension mismatch");
  if (kind_ == EncoderKind::IdentityDownsample) return FeatureVector(x.begin(), x.end());
  FeatureVector out(latent_dim_, 0.0);
  for (int k = 0; k < latent_dim_; ++k) {
    const double* row = &components_[static_cast<std::size_t>(k) * input_dim_];
    double s = 0.0;
    for (int i = 0; i < input_dim_; ++i) s += row[i] * (x[i] - mean_[i]);
    out[k] = s * scale_[k];
  }
  return out;
}

FeatureVector Encoder::encode(std::span<const double> x) const {
  FeatureVector z = project(x);
  for (int k = 0; k < latent_dim_; ++k) {
    const double range = high_[k] - low_[k];
    z[k] = range > 0.0 ? (z[k] - low_[k]) / range : 0.0;
  }
  return z;
}

Encoder train_encoder(std::span<const FeatureVector> buffer, int latent_dim, EncoderKind kind,
                      int epochs) {
  if (buffer.empty()) throw ContractError("train_encoder: empty buffer");
  if (epochs < 0) throw ContractError("train_encoder: negative epochs");
  const int dim = static_cast<int>(buffer.front().size());
  for (const auto& f : buffer) {
    if (static_cast<int>(f.size()) != dim) throw ContractError("train_encoder: ragged buffer");
  }
  if (kind == EncoderKind::IdentityDownsample) {
    if (dim != kDownsampledDim) throw ContractError("identity encoder expects downsampled features");
    return Encoder::identity();
  }
  if (latent_dim < 1 || latent_dim > dim) {
    throw ContractError("latent dimension " + std::to_string(latent_dim) + " outside 1.." +
                        std::to_string(dim));
  }

  const auto n = static_cast<Eigen::Index>(buffer.size());
  Eigen::MatrixXd x(n, dim);
  for (Eigen::Index r = 0; r < n; ++r) {
    for (int c = 0; c < dim; ++c) x(r, c) = buffer[static_cast<std::size_t>(r)][c];
  }
  const Eigen::RowVectorXd mean = x.colwise().mean();
  const Eigen::MatrixXd centered = x.rowwise() - mean;
  const Eigen::MatrixXd cov = (centered.transpose() * centered) / static_cast<double>(n);
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(cov);
  if (solver.info() != Eigen::Success) throw std::runtime_error("train_encoder: eigensolver failed");

  const Eigen::VectorXd& values = solver.eigenvalues();  // ascending
  const Eigen::MatrixXd& vectors = solver.eigenvectors();
  const double tolerance = 1e-12 * std::max(1.0, cov.trace());

  Encoder e;
  e.kind_ = EncoderKind::LinearWhitened;
  e.input_dim_ = dim;
  e.latent_dim_ = latent_dim;
  e.mean_.assign(mean.data(), mean.data() + dim);
  e.components_.resize(static_cast<std::size_t>(latent_dim) * dim);
  e.scale_.resize(latent_dim);
  for (int k = 0; k < latent_dim; ++k) {
    const int col = dim - 1 - k;
    Eigen::VectorXd v = vectors.col(col);
    // Sign convention: the largest-magnitude coefficient is positive.
    Eigen::Index arg = 0;
    v.cwiseAbs().maxCoeff(&arg);
    if (v(arg) < 0) v = -v;
    for (int i = 0; i < dim; ++i) e.components_[static_cast<std::size_t>(k) * dim + i] = v(i);
    const double ev = values(col);
    if (ev > tolerance) {
      e.scale_[k] = 1.0 / std::sqrt(ev);
    } else {
      e.scale_[k] = 1.0;
      ++e.padded_dims_;
    }
  }
  if (e.padded_dims_ > 0) {
    warn("train_encoder: covariance rank below latent dimension; " + std::to_string(e.padded_dims_) +
         " direction(s) padded by orthonormal completion");
  }

  e.low_.assign(latent_dim, 0.0);
  e.high_.assign(latent_dim, 0.0);
  bool first = true;
  for (const auto& f : buffer) {
    const FeatureVector z = e.project(f);
    for (int k = 0; k < latent_dim; ++k) {
      if (first || z[k] < e.low_[k]) e.low_[k] = z[k];
      if (first || z[k] > e.high_[k]) e.high_[k] = z[k];
    }
    first = false;
  }
  return e;
}

Encoder train_encoder(std::span<const Observation> buffer, int latent_dim, EncoderKind kind,
                      int epochs) {
  std::vector<FeatureVector> features;
  features.reserve(buffer.size());
  for (const auto& obs : buffer) features.push_back(downsample(obs));
  return train_encoder(std::span<const FeatureVector>(features), latent_dim, kind, epochs);
}

std::string Encoder::serialize() const {
  std::ostringstream out;
  out << "lifeaup-encoder 1\n";
  out << "kind " << encoder_kind_name(kind_) << '\n';
  out << "input_dim " << input_dim_ << '\n';
  out << "latent_dim " << latent_dim_ << '\n';
  out << "padded_dims " << padded_dims_ << '\n';
  if (kind_ == EncoderKind::LinearWhitened) {
    out << "mean " << join_reals(mean_) << '\n';
    for (int k = 0; k < latent_dim_; ++k) {
      out << "component "
          << join_reals(std::span<const double>(components_).subspan(
                 static_cast<std::size_t>(k) * input_dim_, input_dim_))
          << '\n';
    }
    out << "scale " << join_reals(scale_) << '\n';
  }
  out << "low " << join_reals(low_) << '\n';
  out << "high " << join_reals(high_) << '\n';
  return out.str();
}

Encoder Encoder::parse(std::string_view text) {
  Encoder e;
  e.low_.clear();
  e.high_.clear();
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  bool header = false;
  auto fail = [&](const std::string& what) { throw ParseError(line_no, 1, "encoder: " + what); };
  while (std::getline(in, line)) {
    ++line_no;
    const auto tokens = split_whitespace(line);
    if (tokens.empty()) continue;
    const std::string key(tokens.front());
    const std::string_view rest = trim(std::string_view(line).substr(line.find(key) + key.size()));
    try {
      if (!header) {
        if (key != "lifeaup-encoder" || rest != "1") fail("missing 'lifeaup-encoder 1' header");
        header = true;
      } else if (key == "kind") {
        e.kind_ = parse_encoder_kind(rest);
      } else if (key == "input_dim") {
        e.input_dim_ = static_cast<int>(parse_integer(rest, key));
      } else if (key == "latent_dim") {
        e.latent_dim_ = static_cast<int>(parse_integer(rest, key));
      } else if (key == "padded_dims") {
        e.padded_dims_ = static_cast<int>(parse_integer(rest, key));
      } else if (key == "mean") {
        e.mean_ = parse_reals(rest, key);
      } else if (key == "component") {
        const auto row = parse_reals(rest, key);
        e.components_.insert(e.components_.end(), row.begin(), row.end());
      } else if (key == "scale") {
        e.scale_ = parse_reals(rest, key);
      } else if (key == "low") {
        e.low_ = parse_reals(rest, key);
      } else if (key == "high") {
        e.high_ = parse_reals(rest, key);
      } else {
        fail("unknown key '" + key + "'");
      }
    } catch (const std::invalid_argument& ex) {
      fail(ex.what());
    } catch (const ContractError& ex) {
      fail(ex.what());
    }
  }
  if (!header) throw ParseError(1, 1, "encoder: empty input");
  const auto z = static_cast<std::size_t>(e.latent_dim_);
  const auto d = static_cast<std::size_t>(e.input_dim_);
  bool ok = e.latent_dim_ >= 1 && e.input_dim_ >= 1 && e.low_.size() == z && e.high_.size() == z;
  if (e.kind_ == EncoderKind::LinearWhitened) {
    ok = ok && e.mean_.size() == d && e.components_.size() == z * d && e.scale_.size() == z;
  } else {
    ok = ok && e.input_dim_ == kDownsampledDim && e.latent_dim_ == kDownsampledDim;
  }
  if (!ok) throw ParseError(line_no, 1, "encoder: inconsistent dimensions");
  return e;
}

std::vector<Observation> collect_exploration_buffer(const Curriculum& curriculum, int total_steps,
                                                    RngStream& rng) {
  const auto slots = static_cast<int>(curriculum.slots());
  if (total_steps < slots) throw ContractError("exploration budget smaller than the curriculum");
  const int per_slot = total_steps / slots;
  std::vector<Observation> buffer;
  buffer.reserve(static_cast<std::size_t>(per_slot) * slots);
  for (int slot = 0; slot < slots; ++slot) {
    std::uint64_t episode = static_cast<std::uint64_t>(slot);
    EnvState state = curriculum.initial_state(episode);
    for (int t = 0; t < per_slot; ++t) {
      const Action a = action_from_index(static_cast<int>(rng.uniform_int(kNumActions)));
      StepResult r = apply_action(state, a);
      buffer.push_back(observe(r.state));
      if (r.done) {
        episode += static_cast<std::uint64_t>(slots);
        state = curriculum.initial_state(episode);
      } else {
        state = std::move(r.state);
      }
    }
  }
  return buffer;
}

AuxReward::AuxReward(Encoder encoder, std::vector<double> functional)
    : encoder_(std::move(encoder)), functional_(std::move(functional)) {
  if (static_cast<int>(functional_.size()) != encoder_.latent_dim()) {
    throw ContractError("functional length must equal the latent dimension");
  }
}

double AuxReward::operator()(const Observation& obs) const { return from_features(downsample(obs)); }

double AuxReward::from_features(std::span<const double> downsampled) const {
  return dot(functional_, encoder_.encode(downsampled));
}

std::vector<std::vector<double>> draw_functionals(int count, int latent_dim, RngStream& rng) {
  if (count < 1 || latent_dim < 1) throw ContractError("need at least one functional of positive dimension");
  std::vector<std::vector<double>> out(static_cast<std::size_t>(count));
  for (auto& phi : out) {
    phi.resize(static_cast<std::size_t>(latent_dim));
    for (double& v : phi) v = rng.uniform_open();
  }
  return out;
}

}  // namespace lifeaup
