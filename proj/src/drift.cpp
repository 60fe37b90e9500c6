#include "scenopt/drift.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "scenopt/config.hpp"
#include "scenopt/error.hpp"
#include "scenopt/rng.hpp"

namespace scenopt {

DriftSpec DriftSpec::model_a(double rho) {
  if (!(rho >= 0.0) || !std::isfinite(rho)) throw DomainError("model A requires finite rho >= 0");
  DriftSpec s;
  s.model_ = DriftModel::A;
  s.rho_ = rho;
  return s;
}

DriftSpec DriftSpec::model_b(RhoFn rho_fn) {
  if (!rho_fn) throw DomainError("model B requires a rho function");
  DriftSpec s;
  s.model_ = DriftModel::B;
  s.rho_fn_ = std::move(rho_fn);
  return s;
}

DriftSpec DriftSpec::none() {
  return model_b([](std::size_t, std::size_t) { return 0.0; });
}

double DriftSpec::rho(std::size_t i, std::size_t j) const {
  if (i == j) return 0.0;
  if (model_ == DriftModel::A) return rho_;
  const double v = rho_fn_(i, j);
  if (!(v >= 0.0) || !std::isfinite(v)) {
    throw DomainError("model B rho(" + std::to_string(i) + ", " + std::to_string(j) +
                      ") must be finite and >= 0");
  }
  return v;
}

DriftSpec DriftSpec::as_model_b() const {
  if (model_ == DriftModel::B) return *this;
  const double r = rho_;
  return model_b([r](std::size_t i, std::size_t j) { return i == j ? 0.0 : r; });
}

// --- GaussianDrift1D -------------------------------------------------------

GaussianDrift1D::GaussianDrift1D(std::vector<double> means, std::vector<double> stddevs)
    : means_(std::move(means)), stddevs_(std::move(stddevs)) {
  if (means_.size() < 2 || means_.size() != stddevs_.size()) {
    throw DomainError("drift family needs n_steps >= 1 and matching mean/std tables");
  }
  for (std::size_t k = 0; k < means_.size(); ++k) {
    if (!std::isfinite(means_[k]) || !(stddevs_[k] > 0.0) || !std::isfinite(stddevs_[k])) {
      throw DomainError("step " + std::to_string(k + 1) + ": need finite mean and std > 0");
    }
  }
}

GaussianDrift1D::GaussianDrift1D(std::size_t n_steps, const ParamFn& mean_at,
                                 const ParamFn& std_at) {
  if (n_steps == 0) throw DomainError("n_steps must be positive");
  std::vector<double> m;
  std::vector<double> s;
  for (std::size_t i = 1; i <= n_steps + 1; ++i) {
    m.push_back(mean_at(i));
    s.push_back(std_at(i));
  }
  *this = GaussianDrift1D(std::move(m), std::move(s));
}

GaussianDrift1D GaussianDrift1D::from_table(std::vector<double> means,
                                            std::vector<double> stddevs) {
  return GaussianDrift1D(std::move(means), std::move(stddevs));
}

GaussianDrift1D GaussianDrift1D::linear(std::size_t n_steps, double mean0, double mean_slope,
                                        double std0, double std_slope) {
  const double n = static_cast<double>(n_steps);
  return GaussianDrift1D(
      n_steps, [=](std::size_t i) { return mean0 + mean_slope * static_cast<double>(i) / n; },
      [=](std::size_t i) { return std0 + std_slope * static_cast<double>(i) / n; });
}

GaussianDrift1D GaussianDrift1D::paper_rules(std::size_t n_steps) {
  return linear(n_steps, 0.0, 0.2, 1.0, 0.2);
}

GaussianDrift1D GaussianDrift1D::stationary(std::size_t n_steps, double mean, double stddev) {
  return GaussianDrift1D(
      n_steps, [=](std::size_t) { return mean; }, [=](std::size_t) { return stddev; });
}

double GaussianDrift1D::mean_at(std::size_t i) const {
  if (i == 0 || i > horizon()) {
    throw HorizonError("step " + std::to_string(i) + " outside 1.." + std::to_string(horizon()));
  }
  return means_[i - 1];
}

double GaussianDrift1D::std_at(std::size_t i) const {
  if (i == 0 || i > horizon()) {
    throw HorizonError("step " + std::to_string(i) + " outside 1.." + std::to_string(horizon()));
  }
  return stddevs_[i - 1];
}

// --- MatrixGaussianDrift ----------------------------------------------------

MatrixGaussianDrift::MatrixGaussianDrift(std::size_t n_steps, const MeanFn& mean_matrix_at,
                                         double entry_std)
    : entry_std_(entry_std) {
  if (n_steps == 0) throw DomainError("n_steps must be positive");
  if (!(entry_std >= 0.0) || !std::isfinite(entry_std)) {
    throw DomainError("entry std must be finite and >= 0");
  }
  for (std::size_t i = 1; i <= n_steps + 1; ++i) {
    means_.push_back(mean_matrix_at(i));
    if (!means_.back().allFinite()) throw DomainError("mean matrix must be finite");
  }
}

MatrixGaussianDrift MatrixGaussianDrift::stationary(std::size_t n_steps, const Mat2& mean,
                                                    double entry_std) {
  return MatrixGaussianDrift(n_steps, [mean](std::size_t) { return mean; }, entry_std);
}

MatrixGaussianDrift MatrixGaussianDrift::linear(std::size_t n_steps, const Mat2& start,
                                                const Mat2& direction, double rho,
                                                double entry_std) {
  if (direction.cwiseAbs().maxCoeff() > 1.0) {
    throw DomainError("drift direction entries must lie in [-1, 1]");
  }
  if (!(rho >= 0.0)) throw DomainError("rho must be >= 0");
  const double n = static_cast<double>(n_steps);
  return MatrixGaussianDrift(
      n_steps,
      [=](std::size_t i) -> Mat2 {
        return start + (rho * static_cast<double>(i - 1) / n) * direction;
      },
      entry_std);
}

const Mat2& MatrixGaussianDrift::mean_matrix_at(std::size_t i) const {
  if (i == 0 || i > horizon()) {
    throw HorizonError("step " + std::to_string(i) + " outside 1.." + std::to_string(horizon()));
  }
  return means_[i - 1];
}

double MatrixGaussianDrift::max_entry_drift() const {
  // The max pairwise gap of each entry is its range over all steps.
  Mat2 lo = means_.front();
  Mat2 hi = means_.front();
  for (const auto& m : means_) {
    lo = lo.cwiseMin(m);
    hi = hi.cwiseMax(m);
  }
  return (hi - lo).maxCoeff();
}

DriftSpec MatrixGaussianDrift::drift_spec() const { return DriftSpec::model_a(max_entry_drift()); }

Mat2 control_mean_matrix() {
  Mat2 a;
  a << 0.8, -1.0, 0.0, -0.9;
  return a;
}

// --- sampling ---------------------------------------------------------------

std::vector<double> sample_sequence(const GaussianDrift1D& family, std::size_t count,
                                    std::uint64_t seed) {
  if (count > family.horizon()) {
    throw HorizonError("requested " + std::to_string(count) + " scenarios but the family is "
                       "defined on 1.." + std::to_string(family.horizon()));
  }
  const SeedSequence seq(seed);
  std::vector<double> out;
  out.reserve(count);
  for (std::size_t i = 1; i <= count; ++i) {
    auto engine = seq.stream(i);
    out.push_back(family.mean_at(i) + family.std_at(i) * standard_normal(engine));
  }
  return out;
}

DriftSpec drift_spec_of(const GaussianDrift1D& family) {
  auto shared = std::make_shared<const GaussianDrift1D>(family);
  return DriftSpec::model_b([shared](std::size_t i, std::size_t j) {
    return i == j ? 0.0 : w1_gaussian(shared->at(i), shared->at(j));
  });
}

std::vector<Mat2> sample_control_scenarios(const MatrixGaussianDrift& family, std::size_t count,
                                           std::uint64_t seed) {
  if (count > family.horizon()) {
    throw HorizonError("requested " + std::to_string(count) + " scenarios but the family is "
                       "defined on 1.." + std::to_string(family.horizon()));
  }
  const SeedSequence seq(seed);
  std::vector<Mat2> out;
  out.reserve(count);
  for (std::size_t i = 1; i <= count; ++i) {
    auto engine = seq.stream(i);
    std::normal_distribution<double> z(0.0, 1.0);
    Mat2 a = family.mean_matrix_at(i);
    if (family.entry_std() > 0.0) {
      // Row-major draw order: a11, a12, a21, a22.
      for (int r = 0; r < 2; ++r) {
        for (int c = 0; c < 2; ++c) a(r, c) += family.entry_std() * z(engine);
      }
    }
    out.push_back(a);
  }
  return out;
}

// --- presets ----------------------------------------------------------------

namespace {

DriftSpec spec_for(const GaussianDrift1D& family, const KeyValueConfig& cfg) {
  const std::string model = cfg.get_string("model", "B");
  if (model == "B") return drift_spec_of(family);
  if (model != "A") throw ConfigError("model must be A or B, got '" + model + "'");
  if (cfg.has("rho")) return DriftSpec::model_a(cfg.get_double("rho", 0.0));
  double rho = 0.0;
  for (std::size_t i = 1; i <= family.horizon(); ++i) {
    for (std::size_t j = i + 1; j <= family.horizon(); ++j) {
      rho = std::max(rho, w1_gaussian(family.at(i), family.at(j)));
    }
  }
  return DriftSpec::model_a(rho);
}

GaussianDrift1D family_from(const KeyValueConfig& cfg) {
  const std::string kind = cfg.require_string("family");
  const auto n_raw = cfg.get_int("n_steps", 0);
  if (n_raw <= 0) throw ConfigError("n_steps must be a positive integer");
  const auto n = static_cast<std::size_t>(n_raw);
  const auto p = cfg.get_doubles("params", {});
  auto need = [&](std::size_t count) {
    if (p.size() != count) {
      throw ConfigError("family '" + kind + "' expects " + std::to_string(count) +
                        " params, got " + std::to_string(p.size()));
    }
  };
  try {
    if (kind == "paper_rules") return GaussianDrift1D::paper_rules(n);
    if (kind == "mean_shift") return GaussianDrift1D::linear(n, 0.0, 0.2, 1.0, 0.0);
    if (kind == "linear") {
      need(4);
      return GaussianDrift1D::linear(n, p[0], p[1], p[2], p[3]);
    }
    if (kind == "stationary" || kind == "static") {
      need(2);
      return GaussianDrift1D::stationary(n, p[0], p[1]);
    }
    if (kind == "table") {
      need(2 * (n + 1));
      std::vector<double> m;
      std::vector<double> s;
      for (std::size_t k = 0; k <= n; ++k) {
        m.push_back(p[2 * k]);
        s.push_back(p[2 * k + 1]);
      }
      return GaussianDrift1D::from_table(std::move(m), std::move(s));
    }
  } catch (const DomainError& e) {
    throw ConfigError(std::string("invalid drift family: ") + e.what());
  }
  throw ConfigError("unknown drift family '" + kind + "'");
}

}  // namespace

DriftPreset drift_preset_from_text(const std::string& text) {
  const auto cfg = KeyValueConfig::parse(text, "<drift preset>");
  auto family = family_from(cfg);
  auto spec = spec_for(family, cfg);
  return {std::move(family), std::move(spec)};
}

DriftPreset load_drift_preset(const std::string& path) {
  const auto cfg = KeyValueConfig::load(path);
  auto family = family_from(cfg);
  auto spec = spec_for(family, cfg);
  return {std::move(family), std::move(spec)};
}

DriftPreset named_drift_preset(const std::string& name, std::size_t n_steps) {
  if (n_steps == 0) throw ConfigError("n_steps must be positive");
  if (name == "paper_rules") {
    auto f = GaussianDrift1D::paper_rules(n_steps);
    auto s = drift_spec_of(f);
    return {std::move(f), std::move(s)};
  }
  if (name == "mean_shift") {
    auto f = GaussianDrift1D::linear(n_steps, 0.0, 0.2, 1.0, 0.0);
    auto s = drift_spec_of(f);
    return {std::move(f), std::move(s)};
  }
  if (name == "static") {
    return {GaussianDrift1D::stationary(n_steps, 0.0, 1.0), DriftSpec::none()};
  }
  throw ConfigError("unknown drift preset '" + name + "' (expected paper_rules, mean_shift, static)");
}

}  // namespace scenopt
