#include "nmrenv/transform.hpp"

#include <cmath>
#include <cstdint>
#include <numbers>
#include <string>

#include "nmrenv/error.hpp"
#include "nmrenv/fft.hpp"
#include "nmrenv/quadrature.hpp"

namespace nmrenv {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// exp(j 2 pi turns), with the integer part of `turns` dropped first so the
// trigonometric argument stays in [0, 2 pi).
Complex unit_phasor(double turns) {
    const double frac = turns - std::floor(turns);
    return {std::cos(kTwoPi * frac), std::sin(kTwoPi * frac)};
}

// Neumaier-compensated complex accumulator.
class CompensatedSum {
public:
    void add(Complex v) {
        add_part(re_, re_c_, v.real());
        add_part(im_, im_c_, v.imag());
    }
    Complex value() const { return {re_ + re_c_, im_ + im_c_}; }

private:
    static void add_part(double& sum, double& comp, double v) {
        const double t = sum + v;
        if (std::abs(sum) >= std::abs(v))
            comp += (sum - t) + v;
        else
            comp += (v - t) + sum;
        sum = t;
    }
    double re_ = 0.0, re_c_ = 0.0, im_ = 0.0, im_c_ = 0.0;
};

// out[k] = sum_n in[n] exp(sign * j 2 pi r n k / N), evaluated term by term.
std::vector<Complex> kernel_sum_direct(std::span<const Complex> in, double ratio, int sign) {
    const std::size_t n_total = in.size();
    const double scale = ratio / static_cast<double>(n_total);
    const bool compensated = n_total > kCompensatedThreshold;
    std::vector<Complex> out(n_total);

    for (std::size_t k = 0; k < n_total; ++k) {
        CompensatedSum csum;
        Complex plain{0.0, 0.0};
        for (std::size_t n = 0; n < n_total; ++n) {
            const auto nk = static_cast<double>(static_cast<std::uint64_t>(n) * k);
            Complex w = unit_phasor(scale * nk);
            if (sign < 0) w = std::conj(w);
            const Complex term = in[n] * w;
            if (compensated)
                csum.add(term);
            else
                plain += term;
        }
        out[k] = compensated ? csum.value() : plain;
    }
    return out;
}

// Same sum via Bluestein: nk = (n^2 + k^2 - (k - n)^2) / 2 turns the kernel
// into a chirp-weighted convolution evaluated with power-of-two FFTs.
std::vector<Complex> kernel_sum_chirp_z(std::span<const Complex> in, double ratio, int sign) {
    const std::size_t n_total = in.size();
    const std::size_t len = fft::next_pow2(2 * n_total - 1);
    const double half_scale = ratio / (2.0 * static_cast<double>(n_total));

    std::vector<Complex> chirp(n_total);
    for (std::size_t m = 0; m < n_total; ++m) {
        const auto m2 = static_cast<double>(static_cast<std::uint64_t>(m) * m);
        Complex w = unit_phasor(half_scale * m2);
        chirp[m] = sign < 0 ? std::conj(w) : w;
    }

    std::vector<Complex> a(len, Complex{0.0, 0.0});
    std::vector<Complex> b(len, Complex{0.0, 0.0});
    for (std::size_t n = 0; n < n_total; ++n) a[n] = in[n] * chirp[n];
    b[0] = std::conj(chirp[0]);
    for (std::size_t m = 1; m < n_total; ++m) {
        b[m] = std::conj(chirp[m]);
        b[len - m] = std::conj(chirp[m]);
    }

    fft::transform(a, fft::Direction::forward);
    fft::transform(b, fft::Direction::forward);
    for (std::size_t i = 0; i < len; ++i) a[i] *= b[i];
    fft::transform(a, fft::Direction::backward);

    const double inv_len = 1.0 / static_cast<double>(len);
    std::vector<Complex> out(n_total);
    for (std::size_t k = 0; k < n_total; ++k) out[k] = chirp[k] * a[k] * inv_len;
    return out;
}

std::vector<Complex> kernel_sum(std::span<const Complex> in, double ratio, int sign,
                                Evaluation eval) {
    if (eval == Evaluation::automatic)
        eval = in.size() > kChirpZThreshold ? Evaluation::chirp_z : Evaluation::direct;
    return eval == Evaluation::direct ? kernel_sum_direct(in, ratio, sign)
                                      : kernel_sum_chirp_z(in, ratio, sign);
}

}  // namespace

TransformConfig::TransformConfig(double transfer_freq, double sampling_freq, std::size_t n)
    : f_o_(transfer_freq), f_s_(sampling_freq), n_(n) {
    if (!(f_s_ > 0.0) || !std::isfinite(f_s_))
        throw ArgumentError("TransformConfig: sampling frequency must be positive");
    if (!(f_o_ > 0.0)) throw ArgumentError("TransformConfig: transfer frequency must be positive");
    if (f_o_ > f_s_)
        throw ArgumentError("TransformConfig: transfer frequency " + std::to_string(f_o_) +
                            " Hz exceeds sampling frequency " + std::to_string(f_s_) + " Hz");
    if (n_ == 0) throw ArgumentError("TransformConfig: sample count must be >= 1");
}

double TransformConfig::delta_psi() const { return kTwoPi * ratio(); }

Spectrum forward_discrete(std::span<const Complex> x, const TransformConfig& cfg,
                          Evaluation eval) {
    if (x.size() != cfg.size())
        throw ArgumentError("forward_discrete: signal length " + std::to_string(x.size()) +
                            " != configured N " + std::to_string(cfg.size()));
    return {kernel_sum(x, cfg.ratio(), -1, eval), cfg};
}

Spectrum forward_discrete(const RealSignal& x, const TransformConfig& cfg, Evaluation eval) {
    const ComplexSignal z = to_complex(x);
    return forward_discrete(std::span<const Complex>(z.samples), cfg, eval);
}

Spectrum forward_discrete(const ComplexSignal& x, const TransformConfig& cfg, Evaluation eval) {
    return forward_discrete(std::span<const Complex>(x.samples), cfg, eval);
}

ComplexSignal inverse_discrete(const Spectrum& spec, Evaluation eval) {
    const auto& cfg = spec.config;
    if (spec.coeffs.size() != cfg.size())
        throw ArgumentError("inverse_discrete: spectrum length does not match its config");
    ComplexSignal out{kernel_sum(spec.coeffs, cfg.ratio(), +1, eval), cfg.sampling_freq(), 0.0};
    const double norm = 1.0 / (kTwoPi * static_cast<double>(cfg.size()));
    for (auto& v : out.samples) v *= norm;
    return out;
}

ComplexSignal si_analytic(const RealSignal& x, const TransformConfig& cfg, Evaluation eval) {
    validate(x, "si_analytic");
    ComplexSignal out = inverse_discrete(forward_discrete(x, cfg, eval), eval);
    out.t0 = x.t0;
    return out;
}

ComplexSignal si_analytic(const ComplexSignal& x, const TransformConfig& cfg, Evaluation eval) {
    validate(x, "si_analytic");
    ComplexSignal out = inverse_discrete(forward_discrete(x, cfg, eval), eval);
    out.t0 = x.t0;
    return out;
}

RealSignal envelope_abs(const ComplexSignal& x) { return x.amplitude(); }

Complex continuous_closed_form(TransformDirection dir, double arg, double f_o, double f_s,
                               double alpha) {
    if (!(alpha > 0.0)) throw ArgumentError("continuous_closed_form: alpha must be > 0");
    if (!(f_o > 0.0)) throw ArgumentError("continuous_closed_form: f_o must be > 0");
    const double c = f_s / f_o;
    if (dir == TransformDirection::forward) {
        const Complex s{c * alpha, kTwoPi * arg};
        const double b = c * kTwoPi * f_o;
        return c * s / (s * s + b * b);
    }
    return {c * std::cos(c * kTwoPi * f_o * arg) * std::exp(-c * alpha * arg), 0.0};
}

QuadratureOracleResult continuous_quadrature_oracle(double f, double f_o, double f_s,
                                                    double alpha) {
    if (!(alpha > 0.0)) throw ArgumentError("continuous_quadrature_oracle: alpha must be > 0");
    if (!(f_o > 0.0) || !(f_s > 0.0))
        throw ArgumentError("continuous_quadrature_oracle: frequencies must be > 0");

    // |integrand| <= exp(-alpha t), so the tail beyond T is at most exp(-alpha T)/alpha.
    constexpr double kTail = 1e-14;
    const double upper = std::max(0.0, std::log(1.0 / (alpha * kTail))) / alpha;
    if (upper == 0.0) return {};

    const double carrier = kTwoPi * f_o;
    const double kernel = kTwoPi * f * (f_o / f_s);
    const double cycles = (carrier + std::abs(kernel)) * upper / kTwoPi;

    quad::Options opts;
    opts.abs_tol = 1e-15;
    opts.rel_tol = 1e-12;
    opts.max_intervals = 50000 + static_cast<std::size_t>(64.0 * cycles);

    auto re = [&](double t) { return std::cos(carrier * t) * std::exp(-alpha * t) * std::cos(kernel * t); };
    auto im = [&](double t) { return -std::cos(carrier * t) * std::exp(-alpha * t) * std::sin(kernel * t); };

    const auto r = quad::integrate(re, 0.0, upper, opts);
    const auto i = quad::integrate(im, 0.0, upper, opts);
    return {{r.value, i.value}, std::hypot(r.error, i.error), upper};
}

}  // namespace nmrenv
