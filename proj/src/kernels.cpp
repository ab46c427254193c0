#include "kernels.hpp"

#include <cmath>
#include <stdexcept>

namespace meshfree {

double evaluate_kernel(KernelKind kind, double epsilon, double r) {
    if (!(r >= 0.0)) throw std::invalid_argument("kernel radius must be >= 0");
    if (kind != KernelKind::ThinPlateSpline && !(epsilon > 0.0 && std::isfinite(epsilon)))
        throw std::invalid_argument("shape parameter must be positive and finite");
    switch (kind) {
    case KernelKind::Gaussian:
        return std::exp(-epsilon * r * r);
    case KernelKind::Multiquadric:
        return std::sqrt(1.0 + (epsilon * r) * (epsilon * r));
    case KernelKind::InverseMultiquadric:
        return 1.0 / std::sqrt(1.0 + (epsilon * r) * (epsilon * r));
    case KernelKind::ThinPlateSpline:
        return r == 0.0 ? 0.0 : r * r * std::log(r);
    }
    throw std::invalid_argument("unknown kernel kind");
}

KernelKind parse_kernel(std::string_view name) {
    if (name == "gaussian") return KernelKind::Gaussian;
    if (name == "multiquadric") return KernelKind::Multiquadric;
    if (name == "inverse-multiquadric") return KernelKind::InverseMultiquadric;
    if (name == "thin-plate-spline") return KernelKind::ThinPlateSpline;
    throw std::invalid_argument(
        "unknown kernel `" + std::string(name) +
        "`; valid: gaussian, multiquadric, inverse-multiquadric, thin-plate-spline");
}

std::string_view kernel_name(KernelKind kind) {
    switch (kind) {
    case KernelKind::Gaussian: return "gaussian";
    case KernelKind::Multiquadric: return "multiquadric";
    case KernelKind::InverseMultiquadric: return "inverse-multiquadric";
    case KernelKind::ThinPlateSpline: return "thin-plate-spline";
    }
    return "?";
}

} // namespace meshfree
