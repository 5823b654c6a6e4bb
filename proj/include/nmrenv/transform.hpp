#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "nmrenv/signal.hpp"

namespace nmrenv {

/// Parameters of the scale-invariant transform kernel
/// exp(-j 2 pi (f_o / f_s) n k / N).
class TransformConfig {
public:
    /// Requires 0 < f_o <= f_s and n >= 1.
    TransformConfig(double transfer_freq, double sampling_freq, std::size_t n);

    double transfer_freq() const { return f_o_; }
    double sampling_freq() const { return f_s_; }
    std::size_t size() const { return n_; }
    /// r = f_o / f_s, in (0, 1].
    double ratio() const { return f_o_ / f_s_; }
    /// Per-sample phase increment 2 pi f_o / f_s.
    double delta_psi() const;

    bool operator==(const TransformConfig&) const = default;

private:
    double f_o_;
    double f_s_;
    std::size_t n_;
};

struct Spectrum {
    std::vector<Complex> coeffs;
    TransformConfig config;
};

/// How the O(N^2) kernel sum is evaluated. `direct` is the reference; `chirp_z`
/// is a Bluestein evaluation that matches it to ~1e-13 of the largest
/// coefficient; `automatic` picks direct up to kChirpZThreshold samples.
enum class Evaluation { automatic, direct, chirp_z };

inline constexpr std::size_t kChirpZThreshold = 4096;
/// Above this length the direct sums use compensated (Neumaier) accumulation.
inline constexpr std::size_t kCompensatedThreshold = 10000;

/// X[k] = sum_n x[n] exp(-j 2 pi f_o n k / (N f_s)), k in [0, N).
Spectrum forward_discrete(std::span<const Complex> x, const TransformConfig& cfg,
                          Evaluation eval = Evaluation::automatic);
Spectrum forward_discrete(const RealSignal& x, const TransformConfig& cfg,
                          Evaluation eval = Evaluation::automatic);
Spectrum forward_discrete(const ComplexSignal& x, const TransformConfig& cfg,
                          Evaluation eval = Evaluation::automatic);

/// x[n] = 1/(2 pi N) sum_k X[k] exp(+j 2 pi f_o n k / (N f_s)), n in [0, N).
/// The output is sampled at cfg.sampling_freq() and starts at t = 0.
ComplexSignal inverse_discrete(const Spectrum& spec, Evaluation eval = Evaluation::automatic);

/// inverse_discrete(forward_discrete(x)); keeps x's time origin.
ComplexSignal si_analytic(const RealSignal& x, const TransformConfig& cfg,
                          Evaluation eval = Evaluation::automatic);
ComplexSignal si_analytic(const ComplexSignal& x, const TransformConfig& cfg,
                          Evaluation eval = Evaluation::automatic);

/// |x[n]|.
RealSignal envelope_abs(const ComplexSignal& x);

/// Closed forms of the continuous transform of cos(2 pi f_o t) exp(-alpha t), t >= 0.
enum class TransformDirection { forward, inverse };

/// forward: (f_s/f_o)(j2pi f + (f_s/f_o)alpha) / [(j2pi f + (f_s/f_o)alpha)^2 + ((f_s/f_o) 2pi f_o)^2]
/// inverse: (f_s/f_o) cos((f_s/f_o) 2pi f_o t) exp(-(f_s/f_o) alpha t), with `arg` = t.
Complex continuous_closed_form(TransformDirection dir, double arg, double f_o, double f_s, double alpha);

struct QuadratureOracleResult {
    Complex value;
    double error_estimate = 0.0;
    double upper_limit = 0.0;  ///< T_max of the truncated integral
};

/// Integrates cos(2 pi f_o t) exp(-alpha t) exp(-j 2 pi f (f_o/f_s) t) over
/// [0, T_max] with adaptive Gauss-Kronrod; T_max bounds the tail by 1e-14.
/// Throws NumericalError (with the achieved tolerance) on non-convergence.
QuadratureOracleResult continuous_quadrature_oracle(double f, double f_o, double f_s,
                                                    double alpha);

}  // namespace nmrenv
