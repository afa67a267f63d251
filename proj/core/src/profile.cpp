#include "wittenlab/profile.hpp"

#include <algorithm>
#include <cmath>

#include "wittenlab/error.hpp"

namespace wittenlab {

std::string to_string(ProfileKind k) {
  switch (k) {
    case ProfileKind::logistic:
      return "logistic";
    case ProfileKind::tanh_rescaled:
      return "tanh_rescaled";
    case ProfileKind::custom_sampled:
      return "custom-sampled";
  }
  return "unknown";
}

ProfileKind parse_profile_kind(const std::string& name) {
  if (name == "logistic") return ProfileKind::logistic;
  if (name == "tanh_rescaled") return ProfileKind::tanh_rescaled;
  if (name == "custom-sampled" || name == "custom_sampled") return ProfileKind::custom_sampled;
  throw PreconditionError("unknown profile '" + name + "'");
}

Profile Profile::logistic() { return Profile(ProfileKind::logistic); }

Profile Profile::tanh_rescaled() { return Profile(ProfileKind::tanh_rescaled); }

Profile Profile::custom_sampled(std::vector<double> t, std::vector<double> s) {
  if (t.size() != s.size() || t.size() < 2) {
    throw PreconditionError("custom profile: need at least two (t, s) samples of equal length");
  }
  for (std::size_t i = 1; i < t.size(); ++i) {
    if (!(t[i] > t[i - 1])) throw PreconditionError("custom profile: t samples must increase");
    if (s[i] < s[i - 1]) throw PreconditionError("custom profile: s samples must be non-decreasing");
  }
  Profile p(ProfileKind::custom_sampled);
  const std::size_t m = t.size();
  std::vector<double> delta(m - 1);
  for (std::size_t i = 0; i + 1 < m; ++i) delta[i] = (s[i + 1] - s[i]) / (t[i + 1] - t[i]);

  // Fritsch-Carlson slopes; the interpolant is clamped outside, so the end
  // slopes are zero to keep s' continuous there.
  std::vector<double> d(m, 0.0);
  for (std::size_t i = 1; i + 1 < m; ++i) {
    if (delta[i - 1] * delta[i] <= 0.0) continue;
    const double h0 = t[i] - t[i - 1];
    const double h1 = t[i + 1] - t[i];
    const double w1 = 2.0 * h1 + h0;
    const double w2 = h1 + 2.0 * h0;
    d[i] = (w1 + w2) / (w1 / delta[i - 1] + w2 / delta[i]);
  }
  p.t_ = std::move(t);
  p.s_ = std::move(s);
  p.slope_ = std::move(d);
  return p;
}

double Profile::value(double t) const {
  switch (kind_) {
    case ProfileKind::logistic:
      return t >= 0.0 ? 1.0 / (1.0 + std::exp(-t)) : std::exp(t) / (1.0 + std::exp(t));
    case ProfileKind::tanh_rescaled:
      return 0.5 * (1.0 + std::tanh(t));
    case ProfileKind::custom_sampled: {
      if (t <= t_.front()) return s_.front();
      if (t >= t_.back()) return s_.back();
      const auto it = std::upper_bound(t_.begin(), t_.end(), t);
      const std::size_t i = static_cast<std::size_t>(it - t_.begin()) - 1;
      const double h = t_[i + 1] - t_[i];
      const double x = (t - t_[i]) / h;
      const double h00 = (1.0 + 2.0 * x) * (1.0 - x) * (1.0 - x);
      const double h10 = x * (1.0 - x) * (1.0 - x);
      const double h01 = x * x * (3.0 - 2.0 * x);
      const double h11 = x * x * (x - 1.0);
      return h00 * s_[i] + h10 * h * slope_[i] + h01 * s_[i + 1] + h11 * h * slope_[i + 1];
    }
  }
  return 0.0;
}

double Profile::derivative(double t) const {
  switch (kind_) {
    case ProfileKind::logistic: {
      const double s = value(t);
      return s * (1.0 - s);
    }
    case ProfileKind::tanh_rescaled: {
      const double c = std::cosh(t);
      return std::isfinite(c) ? 0.5 / (c * c) : 0.0;
    }
    case ProfileKind::custom_sampled: {
      if (t <= t_.front() || t >= t_.back()) return 0.0;
      const auto it = std::upper_bound(t_.begin(), t_.end(), t);
      const std::size_t i = static_cast<std::size_t>(it - t_.begin()) - 1;
      const double h = t_[i + 1] - t_[i];
      const double x = (t - t_[i]) / h;
      const double dh00 = 6.0 * x * (x - 1.0);
      const double dh10 = 3.0 * x * x - 4.0 * x + 1.0;
      const double dh01 = -dh00;
      const double dh11 = 3.0 * x * x - 2.0 * x;
      return (dh00 * s_[i] + dh01 * s_[i + 1]) / h + dh10 * slope_[i] + dh11 * slope_[i + 1];
    }
  }
  return 0.0;
}

}  // namespace wittenlab
