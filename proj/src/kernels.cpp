#include "bms/kernels.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

#include <nlohmann/json.hpp>

#include "bms/error.hpp"

namespace bms {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kPi = std::numbers::pi;

constexpr std::array<KernelId, 9> kAssumption1Kernels = {
    KernelId::epanechnikov, KernelId::cosine,   KernelId::quadweight,
    KernelId::triweight,    KernelId::biweight, KernelId::three_halves,
    KernelId::gaussian,     KernelId::logistic, KernelId::cauchy,
};

struct NamedKernel {
    KernelId id;
    std::string_view name;
};

constexpr std::array<NamedKernel, 11> kKernelNames = {{
    {KernelId::epanechnikov, "epanechnikov"},
    {KernelId::cosine, "cosine"},
    {KernelId::quadweight, "quadweight"},
    {KernelId::triweight, "triweight"},
    {KernelId::biweight, "biweight"},
    {KernelId::three_halves, "three_halves"},
    {KernelId::gaussian, "gaussian"},
    {KernelId::logistic, "logistic"},
    {KernelId::cauchy, "cauchy"},
    {KernelId::tricube, "tricube"},
    {KernelId::custom, "custom"},
}};

// sin(x)/x and tanh(x)/x without the 0/0 at the origin.
template <typename T>
T sinc(T x) noexcept {
    if (std::abs(x) < T(1e-4)) return 1 - x * x / 6;
    return std::sin(x) / x;
}

template <typename T>
T tanhc(T x) noexcept {
    if (std::abs(x) < T(1e-4)) return 1 - x * x / 3;
    return std::tanh(x) / x;
}

template <typename T>
T sech2(T x) noexcept {
    const T c = std::cosh(x);
    return 1 / (c * c);
}

double builtin_k(KernelId id, double u) noexcept {
    switch (id) {
    case KernelId::epanechnikov:
        return u < 1.0 ? 1.0 - u : 0.0;
    case KernelId::cosine:
        return u < 1.0 ? std::cos(kPi * std::sqrt(u) / 2.0) : 0.0;
    case KernelId::quadweight: {
        const double w = u < 1.0 ? 1.0 - u : 0.0;
        return (w * w) * (w * w);
    }
    case KernelId::triweight: {
        const double w = u < 1.0 ? 1.0 - u : 0.0;
        return w * w * w;
    }
    case KernelId::biweight: {
        const double w = u < 1.0 ? 1.0 - u : 0.0;
        return w * w;
    }
    case KernelId::three_halves: {
        const double w = u < 1.0 ? 1.0 - u : 0.0;
        return w * std::sqrt(w);
    }
    case KernelId::gaussian:
        return std::exp(-u);
    case KernelId::logistic:
        // 4 / (e^s + 2 + e^-s) = sech^2(s/2), s = sqrt(u)
        return sech2(std::sqrt(u) / 2.0);
    case KernelId::cauchy:
        return 1.0 / (1.0 + u);
    case KernelId::tricube: {
        const double w = u < 1.0 ? 1.0 - u * std::sqrt(u) : 0.0;
        return w * w * w;
    }
    case KernelId::custom:
        break;
    }
    return 0.0;
}

// Left derivative convention: at the truncation point u = 1 the value is the
// limit from below, so Epanechnikov and cosine keep g(1) > 0.
template <typename T>
T builtin_g(KernelId id, double u_in) noexcept {
    const T u = u_in;
    const T pi = std::numbers::pi_v<T>;
    switch (id) {
    case KernelId::epanechnikov:
        return u_in <= 1.0 ? 1 : 0;
    case KernelId::cosine:
        return u_in <= 1.0 ? (pi * pi / 8) * sinc(pi * std::sqrt(u) / 2) : 0;
    case KernelId::quadweight: {
        const T w = u_in < 1.0 ? 1 - u : 0;
        return 4 * w * w * w;
    }
    case KernelId::triweight: {
        const T w = u_in < 1.0 ? 1 - u : 0;
        return 3 * w * w;
    }
    case KernelId::biweight:
        return u_in < 1.0 ? 2 * (1 - u) : 0;
    case KernelId::three_halves:
        return u_in < 1.0 ? T(1.5) * std::sqrt(1 - u) : 0;
    case KernelId::gaussian:
        return std::exp(-u);
    case KernelId::logistic: {
        const T x = std::sqrt(u) / 2;
        return sech2(x) * tanhc(x) / 4;
    }
    case KernelId::cauchy: {
        const T w = 1 + u;
        return 1 / (w * w);
    }
    case KernelId::tricube: {
        if (u_in >= 1.0) return 0;
        const T s = std::sqrt(u);
        const T w = 1 - u * s;
        return T(4.5) * s * w * w;
    }
    case KernelId::custom:
        break;
    }
    return 0;
}

struct BuiltinTruncation {
    double beta;
    TruncationClass cls;
};

BuiltinTruncation builtin_truncation(KernelId id) {
    switch (id) {
    case KernelId::epanechnikov:
    case KernelId::cosine:
        return {std::numbers::sqrt2, TruncationClass::non_smoothly_truncated};
    case KernelId::quadweight:
    case KernelId::triweight:
    case KernelId::biweight:
    case KernelId::three_halves:
    case KernelId::tricube:
        return {std::numbers::sqrt2, TruncationClass::smoothly_truncated};
    case KernelId::gaussian:
    case KernelId::logistic:
    case KernelId::cauchy:
        return {kInf, TruncationClass::non_truncated};
    case KernelId::custom:
        break;
    }
    throw ConfigError("custom kernels must declare their truncation point");
}

void check_truncation_declaration(double beta, TruncationClass cls) {
    if (!(beta > 0.0)) throw ConfigError("kernel truncation point must be positive");
    if (std::isinf(beta) != (cls == TruncationClass::non_truncated))
        throw ConfigError("kernel truncation class is inconsistent with beta");
}

double json_beta(const nlohmann::json& j) {
    if (!j.contains("beta")) throw ConfigError("kernel descriptor is missing \"beta\"");
    const auto& b = j.at("beta");
    if (b.is_string()) {
        const auto s = b.get<std::string>();
        if (s == "inf" || s == "infinity") return kInf;
        throw ConfigError("kernel descriptor has non-numeric beta: " + s);
    }
    if (!b.is_number()) throw ConfigError("kernel descriptor has non-numeric beta");
    return b.get<double>();
}

// Slope of the segment (u_{m-1}, u_m] containing u; u = 0 uses the first
// segment.
template <typename T>
T sampled_g(const ProfileSamples& s, double u) noexcept {
    if (u > s.u.back()) return 0;
    auto it = std::lower_bound(s.u.begin(), s.u.end(), u);
    auto m = static_cast<std::size_t>(it - s.u.begin());
    if (m == 0) m = 1;
    return -(T(s.k[m]) - T(s.k[m - 1])) / (T(s.u[m]) - T(s.u[m - 1]));
}

}  // namespace

std::string_view to_string(KernelId id) {
    for (const auto& entry : kKernelNames)
        if (entry.id == id) return entry.name;
    return "unknown";
}

std::string_view to_string(TruncationClass c) {
    switch (c) {
    case TruncationClass::non_truncated:
        return "non_truncated";
    case TruncationClass::smoothly_truncated:
        return "smoothly_truncated";
    case TruncationClass::non_smoothly_truncated:
        return "non_smoothly_truncated";
    }
    return "unknown";
}

KernelId parse_kernel_id(std::string_view name) {
    for (const auto& entry : kKernelNames)
        if (entry.name == name) return entry.id;
    throw ConfigError("unknown kernel: " + std::string(name));
}

TruncationClass parse_truncation_class(std::string_view name) {
    for (auto c : {TruncationClass::non_truncated, TruncationClass::smoothly_truncated,
                   TruncationClass::non_smoothly_truncated})
        if (to_string(c) == name) return c;
    throw ConfigError("unknown truncation class: " + std::string(name));
}

std::span<const KernelId> assumption1_kernels() { return kAssumption1Kernels; }

Kernel Kernel::builtin(KernelId id) {
    if (id == KernelId::custom) throw ConfigError("custom kernels need a descriptor");
    Kernel kernel;
    kernel.id_ = id;
    kernel.base_ = id;
    const auto trunc = builtin_truncation(id);
    kernel.beta_ = trunc.beta;
    kernel.class_ = trunc.cls;
    kernel.finish_construction();
    // Closed forms for the non-smoothly truncated built-ins.
    if (id == KernelId::epanechnikov) kernel.alpha_ = 1.0;
    if (id == KernelId::cosine) kernel.alpha_ = 2.0 / kPi;
    return kernel;
}

Kernel Kernel::from_name(std::string_view name) { return builtin(parse_kernel_id(name)); }

Kernel Kernel::custom_closed_form(KernelId base, double beta, TruncationClass cls) {
    if (base == KernelId::custom) throw ConfigError("custom closed form needs a built-in base");
    check_truncation_declaration(beta, cls);
    const auto trunc = builtin_truncation(base);
    if (beta != trunc.beta || cls != trunc.cls)
        throw ConfigError(std::string("closed form ") + std::string(to_string(base)) +
                          " has a fixed truncation point and class");
    Kernel kernel;
    kernel.id_ = KernelId::custom;
    kernel.base_ = base;
    kernel.beta_ = beta;
    kernel.class_ = cls;
    kernel.finish_construction();
    return kernel;
}

Kernel Kernel::custom_sampled(ProfileSamples samples, double beta, TruncationClass cls) {
    check_truncation_declaration(beta, cls);
    if (samples.u.size() < 2 || samples.u.size() != samples.k.size())
        throw ConfigError("sampled profile needs at least two (u, k) pairs of equal length");
    if (samples.u.front() != 0.0) throw ConfigError("sampled profile must start at u = 0");
    for (std::size_t m = 1; m < samples.u.size(); ++m)
        if (!(samples.u[m] > samples.u[m - 1]))
            throw ConfigError("sampled profile u values must be strictly increasing");
    for (double v : samples.k)
        if (!std::isfinite(v)) throw ConfigError("sampled profile has non-finite k");
    if (!(samples.k.front() > 0.0)) throw ConfigError("sampled profile needs k(0) > 0");
    Kernel kernel;
    kernel.id_ = KernelId::custom;
    kernel.base_ = KernelId::custom;
    kernel.beta_ = beta;
    kernel.class_ = cls;
    kernel.samples_ = std::make_shared<const ProfileSamples>(std::move(samples));
    kernel.finish_construction();
    return kernel;
}

Kernel Kernel::from_json(std::string_view json_text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError(std::string("invalid kernel descriptor: ") + e.what());
    }
    if (!j.is_object()) throw ConfigError("kernel descriptor must be a JSON object");
    const double beta = json_beta(j);
    if (!j.contains("class")) throw ConfigError("kernel descriptor is missing \"class\"");
    const auto cls = parse_truncation_class(j.at("class").get<std::string>());
    try {
        if (j.contains("closed_form"))
            return custom_closed_form(parse_kernel_id(j.at("closed_form").get<std::string>()),
                                      beta, cls);
        if (j.contains("samples")) {
            const auto& s = j.at("samples");
            ProfileSamples samples{s.at("u").get<std::vector<double>>(),
                                   s.at("k").get<std::vector<double>>()};
            return custom_sampled(std::move(samples), beta, cls);
        }
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("invalid kernel descriptor: ") + e.what());
    }
    throw ConfigError("kernel descriptor needs \"closed_form\" or \"samples\"");
}

void Kernel::finish_construction() {
    support_u_ = std::isinf(beta_) ? kInf : beta_ * beta_ / 2.0;
    // The closed forms vanish past u = 1; beta^2 / 2 rounds above it.
    if (base_ != KernelId::custom && !std::isinf(beta_)) support_u_ = 1.0;
    g0_ = g_unchecked(0.0);
    if (id_ == KernelId::custom && class_ == TruncationClass::non_smoothly_truncated &&
        g0_ > 0.0) {
        // Dense sample of (0, beta^2/2], endpoint included.
        constexpr int kSamples = 100000;
        double lowest = 1.0;
        for (int m = 1; m <= kSamples; ++m) {
            const double gu = g_unchecked(support_u_ * m / kSamples);
            if (gu != 0.0) lowest = std::min(lowest, gu / g0_);
        }
        alpha_ = lowest;
    }
}

std::string Kernel::name() const { return std::string(to_string(id_)); }

double Kernel::k_unchecked(double u) const noexcept {
    if (!samples_) return builtin_k(base_, u);
    const auto& s = *samples_;
    if (u >= s.u.back()) return s.k.back();
    const auto it = std::upper_bound(s.u.begin(), s.u.end(), u);
    const auto m = static_cast<std::size_t>(it - s.u.begin());
    const double w = (u - s.u[m - 1]) / (s.u[m] - s.u[m - 1]);
    return s.k[m - 1] + w * (s.k[m] - s.k[m - 1]);
}

double Kernel::g_unchecked(double u) const noexcept {
    if (!samples_) return builtin_g<double>(base_, u);
    return static_cast<double>(sampled_g<double>(*samples_, u));
}

long double Kernel::g_extended(double u) const noexcept {
    if (!samples_) return builtin_g<long double>(base_, u);
    return sampled_g<long double>(*samples_, u);
}

double Kernel::k(double u) const {
    if (!(u >= 0.0)) throw DomainError("profile argument must be non-negative");
    return k_unchecked(u);
}

double Kernel::g(double u) const {
    if (!(u >= 0.0)) throw DomainError("profile argument must be non-negative");
    return g_unchecked(u);
}

Truncation classify_truncation(const Kernel& kernel) {
    return {kernel.beta(), kernel.truncation_class()};
}

double kernel_value(const Kernel& kernel, std::span<const double> v, double h) {
    if (!(h > 0.0)) throw ParameterError("bandwidth must be positive");
    double sq = 0.0;
    for (double x : v) sq += x * x;
    return kernel.k_unchecked(profile_arg(sq, h));
}

double g_value(const Kernel& kernel, std::span<const double> v, double h) {
    if (!(h > 0.0)) throw ParameterError("bandwidth must be positive");
    double sq = 0.0;
    for (double x : v) sq += x * x;
    return kernel.g_unchecked(profile_arg(sq, h));
}

double quadratic_minorizer(const Kernel& kernel, std::span<const double> v,
                           std::span<const double> v_ref) {
    if (v.size() != v_ref.size()) throw DataError("minorizer arguments differ in dimension");
    double sq = 0.0, sq_ref = 0.0;
    for (double x : v) sq += x * x;
    for (double x : v_ref) sq_ref += x * x;
    const double u_ref = sq_ref / 2.0;
    return kernel.g_unchecked(u_ref) / 2.0 * (sq_ref - sq) + kernel.k_unchecked(u_ref);
}

Assumption1Report validate_assumption1(const Kernel& kernel, std::size_t grid_size) {
    if (grid_size < 3) throw ParameterError("validation grid needs at least 3 points");
    Assumption1Report report;
    report.grid_size = grid_size;
    report.grid_max = std::isinf(kernel.support_u()) ? 4.0 : std::max(4.0, 1.5 * kernel.support_u());

    std::vector<double> u(grid_size), k(grid_size), g(grid_size);
    for (std::size_t m = 0; m < grid_size; ++m) {
        u[m] = report.grid_max * static_cast<double>(m) / static_cast<double>(grid_size - 1);
        k[m] = kernel.k_unchecked(u[m]);
        g[m] = kernel.g_unchecked(u[m]);
    }
    const double scale = std::max(1.0, std::abs(k[0]));
    const double tol = 1e-12 * scale;

    for (std::size_t m = 0; m < grid_size; ++m) {
        if (!std::isfinite(k[m]) || k[m] > k[0] + tol) report.bounded = false;
        if (k[m] < 0.0) report.non_negative = false;
        if (g[m] < 0.0) report.g_non_negative = false;
        if (g[m] == 0.0 && k[m] != 0.0) report.g_zero_implies_k_zero = false;
        if (m > 0) {
            if (k[m] > k[m - 1] + tol) report.non_increasing = false;
            if (g[m] > g[m - 1] + 1e-12 * std::max(1.0, std::abs(g[0])))
                report.g_non_increasing = false;
        }
        if (m > 0 && m + 1 < grid_size) {
            // Uniform grid: midpoint convexity.
            if (k[m] > 0.5 * (k[m - 1] + k[m + 1]) + tol) report.convex = false;
        }
        if (kernel.truncated()) {
            const bool inside = u[m] < kernel.support_u();
            if (inside != (k[m] > 0.0)) report.truncation_consistent = false;
        }
    }
    report.g0_positive = kernel.g0() > 0.0 && std::isfinite(kernel.g0());

    auto note = [&](bool ok, const char* what) {
        if (!ok) report.violations.emplace_back(what);
    };
    note(report.non_negative, "non_negative");
    note(report.non_increasing, "non_increasing");
    note(report.convex, "convex");
    note(report.bounded, "bounded");
    note(report.g0_positive, "g0_positive");
    note(report.g_non_negative, "g_non_negative");
    note(report.g_non_increasing, "g_non_increasing");
    note(report.truncation_consistent, "truncation_consistent");
    note(report.g_zero_implies_k_zero, "g_zero_implies_k_zero");
    return report;
}

}  // namespace bms
