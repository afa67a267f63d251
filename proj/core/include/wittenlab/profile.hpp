#pragma once

// Switching profiles s(t) with s(-inf) = 0, s(+inf) = 1.

#include <string>
#include <vector>

namespace wittenlab {

enum class ProfileKind { logistic, tanh_rescaled, custom_sampled };

[[nodiscard]] std::string to_string(ProfileKind k);
/// Accepts "logistic", "tanh_rescaled" and "custom-sampled" (or "custom_sampled").
[[nodiscard]] ProfileKind parse_profile_kind(const std::string& name);

class Profile {
 public:
  /// s(t) = e^t / (e^t + 1).
  static Profile logistic();
  /// s(t) = (1 + tanh t) / 2.
  static Profile tanh_rescaled();
  /// Monotone cubic (Fritsch-Carlson) interpolant of the samples, clamped to
  /// the end values outside the sampled range.
  static Profile custom_sampled(std::vector<double> t, std::vector<double> s);

  [[nodiscard]] ProfileKind kind() const { return kind_; }
  [[nodiscard]] double value(double t) const;
  [[nodiscard]] double derivative(double t) const;

  [[nodiscard]] const std::vector<double>& sample_t() const { return t_; }
  [[nodiscard]] const std::vector<double>& sample_s() const { return s_; }

 private:
  explicit Profile(ProfileKind k) : kind_(k) {}

  ProfileKind kind_;
  std::vector<double> t_;
  std::vector<double> s_;
  std::vector<double> slope_;
};

}  // namespace wittenlab
