#pragma once

#include <string>
#include <variant>

namespace photometrix {

/// Squeezing split of a two-mode squeezed probe. beta_x = sinh^2(x) / N for
/// the vacuum-squeezed (r) and coherent-squeezed (s) modes; the remaining
/// fraction is coherent amplitude, alpha^2 = N (1 - beta_r - beta_s).
struct SqueezedParams {
  double n_mean = 0.0;
  double beta_r = 0.25;
  double beta_s = 0.25;

  /// Throws InvalidFractions unless 0 < beta < 1 and beta_r + beta_s <= 1.
  void validate() const;
  double alpha_squared() const { return n_mean * (1.0 - beta_r - beta_s); }
};

namespace probe {
struct Coherent {
  double n_mean;
};
struct TwinFock {
  int n;  // photons per mode
};
struct Noon {
  int n;
};
struct FockPair {
  int m;
  int l;
};
struct Squeezed {
  SqueezedParams params;
};
}  // namespace probe

using ProbeSpec =
    std::variant<probe::Coherent, probe::TwinFock, probe::Noon, probe::FockPair, probe::Squeezed>;

/// Mean total photon number of the probe.
double total_photons(const ProbeSpec& p);
std::string describe(const ProbeSpec& p);

}  // namespace photometrix
