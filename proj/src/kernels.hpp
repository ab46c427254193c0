#pragma once

#include <string>
#include <string_view>

namespace meshfree {

enum class KernelKind {
    Gaussian,
    Multiquadric,
    InverseMultiquadric,
    ThinPlateSpline,
};

// phi(r) for the selected kernel. epsilon must be positive and finite; it is
// ignored for ThinPlateSpline. TPS returns its limit value 0 at r = 0.
double evaluate_kernel(KernelKind kind, double epsilon, double r);

// CLI spellings: gaussian | multiquadric | inverse-multiquadric | thin-plate-spline
KernelKind parse_kernel(std::string_view name);
std::string_view kernel_name(KernelKind kind);

} // namespace meshfree
