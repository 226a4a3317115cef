#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace kcf::selftest {

/// One oracle-equivalence check. `error` is the worst error observed, in
/// the units of `tolerance` (relative or absolute depending on the check).
struct CheckResult {
  std::string name;
  bool passed = false;
  std::size_t cases = 0;
  double error = 0.0;
  double tolerance = 0.0;
  double seconds = 0.0;
  std::string detail;
};

struct CheckOptions {
  std::size_t cases = 20;  // random cases on top of the fixed ones
  std::uint64_t seed = 1;
  double tolerance = 1e-8;
};

/// linear_ridge_fft vs linear_ridge_dense on the explicit shift matrix,
/// 1-D n in {4,8,16,32} and 2-D grids up to 8x8. Relative error.
CheckResult linear_filter(const CheckOptions& opt);

/// train vs (K + lambda I)^{-1} y, K from direct kernel evaluation, all
/// three kernels, up to 8x8x3, lambda in {1e-4, 1e-2}. Relative error.
CheckResult krr_train(const CheckOptions& opt);

/// detect vs (K^z)^T alpha. Relative error.
CheckResult krr_detect(const CheckOptions& opt);

/// kernel_correlation vs kernel_correlation_naive. Absolute error.
CheckResult kernel_correlation(const CheckOptions& opt);

/// Dense kernel matrix over all shifts of integer 1-D signals (n <= 16)
/// satisfies K_ij == k((j - i) mod n) bit for bit.
CheckResult circulance(const CheckOptions& opt);

/// mosse_multi_sample vs the stacked dense ridge; one sample is bit-equal
/// to linear_ridge_fft. Relative error.
CheckResult mosse(const CheckOptions& opt);

/// Single-channel linear-kernel detection vs the primal filter response.
/// Relative error.
CheckResult dcf_mosse(const CheckOptions& opt);

/// kcf-raw on the synthetic translating square. `tolerance` is the per-frame
/// center error limit in pixels; precision@20 must also be 1.
CheckResult synthetic_tracking(const CheckOptions& opt);

/// After init, detect on the training frame peaks at (0,0); with
/// lambda = 1e-9 the response matches the target. Absolute error.
CheckResult self_detection(const CheckOptions& opt);

/// Every check above at `budget` random cases per suite (0 keeps only the
/// fixed cases).
std::vector<CheckResult> run_all(std::size_t budget, std::uint64_t seed);

std::string format(const CheckResult& r);

}  // namespace kcf::selftest
