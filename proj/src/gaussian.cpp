#include "pgvario/gaussian.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace pgv {

namespace {

constexpr double pi = 3.141592653589793238462643383279502884;
constexpr double inv_sqrt2 = 0.7071067811865475244008443621048490393;

// Gauss-Legendre abscissae/weights for the positive half of [-1, 1];
// rule picked by |r| as in Genz's BVND.
constexpr std::array<double, 3> gl6_x = {
    0.9324695142031521, 0.6612093864662645, 0.2386191860831969};
constexpr std::array<double, 3> gl6_w = {
    0.1713244923791704, 0.3607615730481386, 0.4679139345726910};
constexpr std::array<double, 6> gl12_x = {
    0.9815606342467192, 0.9041172563704749, 0.7699026741943047,
    0.5873179542866175, 0.3678314989981802, 0.1252334085114689};
constexpr std::array<double, 6> gl12_w = {
    0.04717533638651183, 0.10693932599531843, 0.16007832854334622,
    0.20316742672306592, 0.23349253653835481, 0.24914704581340277};
constexpr std::array<double, 10> gl20_x = {
    0.9931285991850949, 0.9639719272779138, 0.9122344282513259,
    0.8391169718222188, 0.7463319064601508, 0.6360536807265150,
    0.5108670019508271, 0.3737060887154195, 0.2277858511416451,
    0.07652652113349734};
constexpr std::array<double, 10> gl20_w = {
    0.01761400713915212, 0.04060142980038694, 0.06267204833410907,
    0.08327674157670475, 0.10193011981724044, 0.11819453196151841,
    0.13168863844917663, 0.14209610931838205, 0.14917298647260375,
    0.15275338713072585};

// Upper-right probability P(X > dh, Y > dk); transcription of Genz's BVND
// (the Drezner-Wesolowsky hybrid with a tail transform for |r| >= 0.925).
double bvnu(double dh, double dk, double r) {
    if (std::isinf(dh) && dh > 0) return 0.0;
    if (std::isinf(dk) && dk > 0) return 0.0;
    if (std::isinf(dh)) // dh = -inf
        return (std::isinf(dk) && dk < 0) ? 1.0 : std_normal_cdf(-dk);
    if (std::isinf(dk)) // dk = -inf
        return std_normal_cdf(-dh);

    const double* gx;
    const double* gw;
    int ng;
    if (std::fabs(r) < 0.3) {
        gx = gl6_x.data(); gw = gl6_w.data(); ng = 3;
    } else if (std::fabs(r) < 0.75) {
        gx = gl12_x.data(); gw = gl12_w.data(); ng = 6;
    } else {
        gx = gl20_x.data(); gw = gl20_w.data(); ng = 10;
    }

    double h = dh;
    double k = dk;
    double hk = h * k;
    double bvn = 0.0;

    if (std::fabs(r) < 0.925) {
        if (std::fabs(r) > 0.0) {
            const double hs = (h * h + k * k) / 2.0;
            const double asr = std::asin(r);
            for (int i = 0; i < ng; ++i) {
                for (double s : {-1.0, 1.0}) {
                    const double sn = std::sin(asr * (s * gx[i] + 1.0) / 2.0);
                    bvn += gw[i] * std::exp((sn * hk - hs) / (1.0 - sn * sn));
                }
            }
            bvn = bvn * asr / (4.0 * pi);
        }
        bvn += std_normal_cdf(-h) * std_normal_cdf(-k);
    } else {
        if (r < 0.0) {
            k = -k;
            hk = -hk;
        }
        if (std::fabs(r) < 1.0) {
            const double as = (1.0 - r) * (1.0 + r);
            double a = std::sqrt(as);
            const double bs = (h - k) * (h - k);
            const double c = (4.0 - hk) / 8.0;
            const double d = (12.0 - hk) / 16.0;
            double asr = -(bs / as + hk) / 2.0;
            if (asr > -100.0)
                bvn = a * std::exp(asr) *
                      (1.0 - c * (bs - as) * (1.0 - d * bs / 5.0) / 3.0 +
                       c * d * as * as / 5.0);
            if (-hk < 100.0) {
                const double b = std::sqrt(bs);
                bvn -= std::exp(-hk / 2.0) * std::sqrt(2.0 * pi) *
                       std_normal_cdf(-b / a) * b *
                       (1.0 - c * bs * (1.0 - d * bs / 5.0) / 3.0);
            }
            a /= 2.0;
            for (int i = 0; i < ng; ++i) {
                for (double s : {-1.0, 1.0}) {
                    const double xs0 = a * (s * gx[i] + 1.0);
                    const double xs = xs0 * xs0;
                    const double rs = std::sqrt(1.0 - xs);
                    asr = -(bs / xs + hk) / 2.0;
                    if (asr > -100.0)
                        bvn += a * gw[i] * std::exp(asr) *
                               (std::exp(-hk * (1.0 - rs) / (2.0 * (1.0 + rs))) / rs -
                                (1.0 + c * xs * (1.0 + d * xs)));
                }
            }
            bvn = -bvn / (2.0 * pi);
        }
        if (r > 0.0) {
            bvn += std_normal_cdf(-std::max(h, k));
        } else {
            bvn = -bvn;
            if (k > h) bvn += std_normal_cdf(k) - std_normal_cdf(h);
        }
    }
    return bvn;
}

// Joint CDF F(x, y) = P(X <= x, Y <= y) with exact handling of infinities.
double bvn_cdf(double x, double y, double r) {
    if (std::isinf(x) && x < 0) return 0.0;
    if (std::isinf(y) && y < 0) return 0.0;
    if (std::isinf(x) && x > 0)
        return (std::isinf(y) && y > 0) ? 1.0 : std_normal_cdf(y);
    if (std::isinf(y) && y > 0) return std_normal_cdf(x);
    return bvnu(-x, -y, r);
}

} // namespace

double std_normal_cdf(double x) {
    if (std::isinf(x)) return x > 0 ? 1.0 : 0.0;
    return 0.5 * std::erfc(-x * inv_sqrt2);
}

// Wichura's AS 241 (PPND16), accurate to ~1e-16 over (0, 1).
double std_normal_quantile(double p) {
    if (std::isnan(p) || p <= 0.0 || p >= 1.0)
        throw std::domain_error("std_normal_quantile requires p in (0, 1)");

    const double q = p - 0.5;
    if (std::fabs(q) <= 0.425) {
        const double r = 0.180625 - q * q;
        const double num =
            q * (((((((2.5090809287301226727e+3 * r + 3.3430575583588128105e+4) * r +
                      6.7265770927008700853e+4) * r + 4.5921953931549871457e+4) * r +
                    1.3731693765509461125e+4) * r + 1.9715909503065514427e+3) * r +
                  1.3314166789178437745e+2) * r + 3.3871328727963666080e+0);
        const double den =
            (((((((5.2264952788528545610e+3 * r + 2.8729085735721942674e+4) * r +
                  3.9307895800092710610e+4) * r + 2.1213794301586595867e+4) * r +
                5.3941960214247511077e+3) * r + 6.8718700749205790830e+2) * r +
              4.2313330701600911252e+1) * r + 1.0);
        return num / den;
    }

    double r = q < 0.0 ? p : 1.0 - p;
    r = std::sqrt(-std::log(r));
    double val;
    if (r <= 5.0) {
        r -= 1.6;
        const double num =
            (((((((7.74545014278341407640e-4 * r + 2.27238449892691845833e-2) * r +
                  2.41780725177450611770e-1) * r + 1.27045825245236838258e+0) * r +
                3.64784832476320460504e+0) * r + 5.76949722146069140550e+0) * r +
              4.63033784615654529590e+0) * r + 1.42343711074968357734e+0);
        const double den =
            (((((((1.05075007164441684324e-9 * r + 5.47593808499534494600e-4) * r +
                  1.51986665636164571966e-2) * r + 1.48103976427480074590e-1) * r +
                6.89767334985100004550e-1) * r + 1.67638483018380384940e+0) * r +
              2.05319162663775882187e+0) * r + 1.0);
        val = num / den;
    } else {
        r -= 5.0;
        const double num =
            (((((((2.01033439929228813265e-7 * r + 2.71155556874348757815e-5) * r +
                  1.24266094738807843860e-3) * r + 2.65321895265761230930e-2) * r +
                2.96560571828504891230e-1) * r + 1.78482653991729133580e+0) * r +
              5.46378491116411436990e+0) * r + 6.65790464350110377720e+0);
        const double den =
            (((((((2.04426310338993978564e-15 * r + 1.42151175831644588870e-7) * r +
                  1.84631831751005468180e-5) * r + 7.86869131145613259100e-4) * r +
                1.48753612908506148525e-2) * r + 1.36929880922735805310e-1) * r +
              5.99832206555887937690e-1) * r + 1.0);
        val = num / den;
    }
    return q < 0.0 ? -val : val;
}

double bivariate_rect_prob(const Interval& i1, const Interval& i2, Correlation rho) {
    // Canonical argument order makes the swap symmetry exact in floating point.
    const Interval* a = &i1;
    const Interval* b = &i2;
    if (b->lower < a->lower || (b->lower == a->lower && b->upper < a->upper))
        std::swap(a, b);

    const double r = rho.value();
    double p = bvn_cdf(a->upper, b->upper, r) - bvn_cdf(a->lower, b->upper, r) -
               bvn_cdf(a->upper, b->lower, r) + bvn_cdf(a->lower, b->lower, r);
    return std::clamp(p, 0.0, 1.0);
}

double log_bivariate_rect_prob(const Interval& i1, const Interval& i2, Correlation rho) {
    if (i1.is_whole_line() && i2.is_whole_line()) return 0.0;
    const double p = bivariate_rect_prob(i1, i2, rho);
    if (p <= 0.0) return log_floor;
    return std::max(std::log(p), log_floor);
}

} // namespace pgv
