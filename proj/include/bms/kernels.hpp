#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace bms {

// Radially symmetric kernels K(v) = k(||v||^2 / 2) given by their profile k.
// Profiles are unnormalized with k(0) = 1.
enum class KernelId {
    epanechnikov,
    cosine,
    quadweight,
    triweight,
    biweight,
    three_halves,
    gaussian,
    logistic,
    cauchy,
    tricube,  // violates convexity; kept for validation only
    custom,
};

enum class TruncationClass { non_truncated, smoothly_truncated, non_smoothly_truncated };

std::string_view to_string(KernelId id);
std::string_view to_string(TruncationClass c);

// Throws ConfigError for unknown names.
KernelId parse_kernel_id(std::string_view name);
TruncationClass parse_truncation_class(std::string_view name);

// The built-in kernels that satisfy the convex, non-increasing profile
// assumption the convergence results rely on (tricube excluded).
std::span<const KernelId> assumption1_kernels();

// Tabulated profile for custom kernels: k is piecewise linear through
// (u_m, k_m); g is the negative left derivative of that interpolant.
struct ProfileSamples {
    std::vector<double> u;
    std::vector<double> k;
};

// Immutable kernel description. Cheap to copy; safe to share across threads.
class Kernel {
public:
    // Built-in kernel by id. Throws ConfigError for KernelId::custom.
    static Kernel builtin(KernelId id);

    // Built-in by name ("epanechnikov", "gaussian", ...).
    static Kernel from_name(std::string_view name);

    // Custom kernel backed by a built-in closed form with a declared
    // truncation point and class.
    static Kernel custom_closed_form(KernelId base, double beta, TruncationClass cls);

    // Custom kernel from tabulated samples. u must start at 0 and be strictly
    // increasing; k(0) must be positive. beta may be +infinity.
    static Kernel custom_sampled(ProfileSamples samples, double beta, TruncationClass cls);

    // Custom kernel from a JSON descriptor:
    //   {"closed_form": "<id>", "beta": b, "class": "..."}   or
    //   {"samples": {"u": [...], "k": [...]}, "beta": b, "class": "..."}
    // beta may be the string "inf". Missing beta or class -> ConfigError.
    static Kernel from_json(std::string_view json_text);

    KernelId id() const noexcept { return id_; }
    std::string name() const;

    // Profile k(u); throws DomainError for u < 0.
    double k(double u) const;
    // Selection g(u) from -dk(u): g(0) = -k'(0+), -k'(u-) for u > 0.
    double g(double u) const;

    // Unchecked versions for inner loops (u >= 0 assumed).
    double k_unchecked(double u) const noexcept;
    double g_unchecked(double u) const noexcept;
    // g(u) evaluated in extended precision; zero exactly where g_unchecked is.
    long double g_extended(double u) const noexcept;

    // Truncation point beta (radial), +inf for non-truncated kernels.
    double beta() const noexcept { return beta_; }
    bool truncated() const noexcept { return std::isfinite(beta_); }
    // beta^2 / 2, the profile argument at the truncation radius.
    double support_u() const noexcept { return support_u_; }
    TruncationClass truncation_class() const noexcept { return class_; }
    double g0() const noexcept { return g0_; }
    // inf{g(u)/g(0) : g(u) != 0}, present for non-smoothly truncated kernels.
    std::optional<double> alpha() const noexcept { return alpha_; }

private:
    Kernel() = default;
    void finish_construction();

    KernelId id_ = KernelId::gaussian;
    KernelId base_ = KernelId::gaussian;  // closed form used for evaluation
    double beta_ = std::numeric_limits<double>::infinity();
    double support_u_ = std::numeric_limits<double>::infinity();
    TruncationClass class_ = TruncationClass::non_truncated;
    double g0_ = 1.0;
    std::optional<double> alpha_;
    std::shared_ptr<const ProfileSamples> samples_;
};

// (beta, class) for a kernel. Custom kernels report their declared values.
struct Truncation {
    double beta;
    TruncationClass cls;
};
Truncation classify_truncation(const Kernel& kernel);

// Profile argument ||v||^2 / (2 h^2). Every module computes pair weights
// through this so that edge membership at the truncation radius agrees.
inline double profile_arg(double squared_norm, double h) noexcept {
    return squared_norm / (2.0 * h * h);
}

// K(v/h) = k(||v/h||^2/2). Throws ParameterError for h <= 0.
double kernel_value(const Kernel& kernel, std::span<const double> v, double h);
// G(v/h) = g(||v/h||^2/2). Throws ParameterError for h <= 0.
double g_value(const Kernel& kernel, std::span<const double> v, double h);

// Quadratic minorizer of K at v' (h = 1):
//   H(v|v') = G(v')/2 (||v'||^2 - ||v||^2) + K(v').
double quadratic_minorizer(const Kernel& kernel, std::span<const double> v,
                           std::span<const double> v_ref);

struct Assumption1Report {
    bool non_negative = true;
    bool non_increasing = true;
    bool convex = true;
    bool bounded = true;
    bool g0_positive = true;
    bool g_non_negative = true;
    bool g_non_increasing = true;
    bool truncation_consistent = true;
    bool g_zero_implies_k_zero = true;
    std::size_t grid_size = 0;
    double grid_max = 0.0;
    std::vector<std::string> violations;

    bool passed() const noexcept { return violations.empty(); }
};

// Grid check of the profile assumptions on [0, max(4, 1.5 * beta^2/2)].
// Throws ParameterError if grid_size < 3.
Assumption1Report validate_assumption1(const Kernel& kernel, std::size_t grid_size = 10000);

}  // namespace bms
