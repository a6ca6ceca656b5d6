#include "sqg/reference.hpp"

#include <complex>

#include "sqg/operators.hpp"

namespace sqg {

SpectralField nonlinear_term_reference(const SpectralField& theta)
{
    const int n = theta.resolution();
    const int km = theta.max_mode();
    const VelocityField u = riesz_velocity(theta);

    SpectralField out(n);
    // Product coefficient in the orthonormal basis:
    //   (fg)_k = (2 pi)^{-1} sum_{p+q=k} f_p g_q.
    const double scale = 1.0 / kTwoPi;
    for (int p1 = -km; p1 <= km; ++p1) {
        for (int p2 = -km; p2 <= km; ++p2) {
            const auto u1 = u.u1.coeff(p1, p2);
            const auto u2 = u.u2.coeff(p1, p2);
            if (u1 == std::complex<double>(0.0, 0.0)
                && u2 == std::complex<double>(0.0, 0.0))
                continue;
            for (int q1 = -km; q1 <= km; ++q1) {
                const int k1 = p1 + q1;
                if (k1 < -km || k1 > km)
                    continue;
                for (int q2 = -km; q2 <= km; ++q2) {
                    const int k2 = p2 + q2;
                    if (k2 < -km || k2 > km || (k1 == 0 && k2 == 0))
                        continue;
                    const auto t = theta.coeff(q1, q2);
                    // grad theta at q: (i q1 t, i q2 t)
                    const std::complex<double> g1(-double(q1) * t.imag(),
                                                  double(q1) * t.real());
                    const std::complex<double> g2(-double(q2) * t.imag(),
                                                  double(q2) * t.real());
                    out.data()[out.index(k1, k2)] += scale * (u1 * g1 + u2 * g2);
                }
            }
        }
    }
    return out;
}

} // namespace sqg
