#include "msf/gamma_ext.hpp"

#include <cmath>
#include <cstdint>

namespace msf {

namespace {

// Stirling series coefficients B_{2k} / (2k (2k-1)), k = 1..28.
const TwoFloat<long double> kStirling[] = {
    {0.08333333333333333333559209L, -2.25875452601146757084886e-21L},
    {-0.00277777777777777777769778L, -7.999755612957280980089713e-23L},
    {0.0007936507936507936507934827L, 1.680620927091865752119688e-25L},
    {-0.0005952380952380952381083469L, 1.310884323131655286653356e-23L},
    {0.0008417508417508417508175092L, 2.424168367562812418209004e-23L},
    {-0.001917526917526917526948403L, 3.087641468290734058719471e-23L},
    {0.006410256410256410256355959L, 5.429698379835258583771298e-23L},
    {-0.02955065359477124183004454L, -2.081597308285077957448949e-23L},
    {0.1796443723688305731681298L, -3.191271935860715153663803e-21L},
    {-1.392432216905901116435137L, 7.705270941938449374700494e-21L},
    {13.40286404416839199406353L, 4.154237723698771992829108e-19L},
    {-156.8482846260020173029259L, -3.43920417499811259887827e-18L},
    {2193.103333333333333277082L, 5.625129991434126471479734e-17L},
    {-36108.77125372498935718113L, 7.864670553325927983247863e-18L},
    {691472.2688513130671026374L, 5.757817794390994942860439e-15L},
    {-15238221.53940741619226173L, -2.162998152224041856142028e-14L},
    {382900751.3914141414279584L, -1.381697001481297040226484e-11L},
    {-10882266035.78439108934253L, 3.273853765586348596455651e-10L},
    {347320283765.0022522509098L, 1.342446954400689752252252e-9L},
    {-12369602142269.27445411682L, -0.0000001348890602088248810809786L},
    {488788064793079.3350830078L, -0.000007192649981977097891529461L},
    {-21320333960919373.89648438L, -0.0004906839821368385574654533L},
    {1021775296525700077.5625L, 0.002787628053585500394011032L},
    {-53575472173300203612.0L, 1.172290808030795515150959L},
    {3061578263704883415040.0L, 3.151051329622758194186766L},
    {-189999174263992040505344.0L, 2406.857069305709705265754L},
    {1.276337403382883414966272e+25L, -427768.6223021740234583664L},
    {-9.252847176120416307133809e+26L, -9643370.834762277951933124L},
};

const XD kHalfLog2Pi{0.9189385332046727418030437L, -2.271391431563230653895109e-20L};
const XD kLn2{0.6931471805599453094286905L, -1.14583527267987328109353e-20L};
const XD kPi{3.141592653589793238512809L, -5.016557612668332023557327e-20L};

// exp overflows long double past ~11356.
constexpr long double kExpOverflow = 11356.0L;

// 1/n! for n = 0..27.
const XD kInvFactorial[] = {
    {1.0L, 0.0L},
    {1.0L, 0.0L},
    {0.5L, 0.0L},
    {0.1666666666666666666711842L, -4.51750905202293514169772e-21L},
    {0.04166666666666666666779604L, -1.12937726300573378542443e-21L},
    {0.008333333333333333333728615L, -3.952820420520068248985505e-22L},
    {0.00138888888888888888884889L, 3.999877806478640490044856e-23L},
    {0.0001984126984126984126983707L, 4.201552317729664380299219e-26L},
    {0.00002480158730158730158729634L, 5.251940397162080475374023e-27L},
    {0.000002755731922398589065186217L, 6.951526664577031518099228e-26L},
    {0.0000002755731922398589065134518L, 1.212140549303345448604553e-26L},
    {2.505210838544171877468452e-8L, 3.675881657791175998754029e-28L},
    {2.087675698786809897890377e-9L, 3.063234714825979998961691e-29L},
    {1.605904383682161459925383e-10L, 1.385428666517200854079173e-30L},
    {1.147074559772972471397813e-11L, -1.264296395976318833976958e-31L},
    {7.647163731819816476018288e-13L, -1.171556307826300808239525e-32L},
    {4.77947733238738529751143e-14L, -7.322226923914380051497034e-34L},
    {2.811457254345520763162715e-15L, 3.623107462821335835232242e-35L},
    {1.561920696858622646281755e-16L, -6.011870622268296145937551e-36L},
    {8.220635246624329716718057e-18L, 2.379241453210210487085436e-37L},
    {4.110317623312164858406048e-19L, 7.194229862761902403552233e-39L},
    {1.957294106339126123015514e-20L, 6.924318835905333013503255e-40L},
    {8.896791392450573287185537e-22L, -4.366395669333220485139592e-41L},
    {3.868170170630684037757023e-23L, -4.01115027568934805059754e-43L},
    {1.611737571096118349035532e-24L, 1.318124109022381396888315e-44L},
    {6.446950284384473396119707e-26L, 7.514573979009232901031227e-46L},
    {2.479596263224797459992145e-27L, 8.279830239329770619334047e-47L},
    {9.18368986379554614826097e-29L, 1.647464722570962570750731e-48L},
    {3.279889237069837910190951e-30L, -3.890879787726592038918493e-50L},
    {1.13099628864477169316192e-31L, -6.043682826389088006917463e-52L},
    {3.769987628815905643739429e-33L, 1.134926260833128222839686e-52L},
    {1.216125041553517949623675e-34L, 6.299432820688409386883993e-55L},
    {3.800390754854743592573985e-36L, 1.968572756465127933401248e-56L},
    {1.151633562077195028083619e-37L, -2.493095598418959587752602e-57L},
    {3.387157535521161847304762e-39L, -7.332634112996939963978241e-59L},
    {9.677592958631890992470009e-41L, -3.801922508498181715096155e-60L},
};

XD stirling_series(XD w) {
    XD w2 = w * w;
    XD inv = XD(1.0L) / w2;
    XD s = kStirling[27];
    for (int k = 26; k >= 0; --k) {
        s = s * inv + kStirling[k];
    }
    return s / w;
}

// ln Gamma(w) for w >= 25 via Stirling.
XD lgamma_big(XD w) {
    return (w - XD(0.5L)) * log_xd(w) - w + kHalfLog2Pi + stirling_series(w);
}

// Gamma on [0.5, inf). Returns +inf when Gamma overflows long double.
XD gamma_pos(XD x) {
    XD shift(1.0L);
    XD w = x;
    while (w.hi < 25.0L) {
        shift = shift * w;
        w = w + XD(1.0L);
    }
    XD lg = lgamma_big(w);
    if (lg.hi > kExpOverflow) {
        return XD(std::numeric_limits<long double>::infinity());
    }
    return exp_xd(lg) / shift;
}

} // namespace

XD exp_xd(XD x) {
    if (x.hi > kExpOverflow) return XD(std::numeric_limits<long double>::infinity());
    if (x.hi < -kExpOverflow - 100.0L) return XD(0.0L);
    long double kf = std::round(x.hi / 0.6931471805599453094L);
    XD r = x - kLn2 * kf;
    // |r| <= ~0.35: 27-term Taylor reaches ~1e-41
    XD s = kInvFactorial[27];
    for (int n = 26; n >= 0; --n) {
        s = s * r + kInvFactorial[n];
    }
    int k = static_cast<int>(kf);
    return {std::ldexp(s.hi, k), std::ldexp(s.lo, k)};
}

XD log_xd(XD x) {
    long double y0 = std::log(x.hi);
    // one Newton step: y = y0 + x * exp(-y0) - 1
    XD e = exp_xd(XD(-y0));
    return XD(y0) + x * e - XD(1.0L);
}

namespace {

// sin(t) for |t| <= pi/4 + eps.
XD sin_small(XD t) {
    XD t2 = t * t;
    XD s(0.0L);
    for (int j = 16; j >= 0; --j) {
        XD c = kInvFactorial[2 * j + 1];
        if (j % 2 == 1) c = -c;
        s = s * t2 + c;
    }
    return s * t;
}

// cos(t) for |t| <= pi/4 + eps.
XD cos_small(XD t) {
    XD t2 = t * t;
    XD s(0.0L);
    for (int j = 17; j >= 0; --j) {
        XD c = kInvFactorial[2 * j];
        if (j % 2 == 1) c = -c;
        s = s * t2 + c;
    }
    return s;
}

} // namespace

XD sinpi_xd(XD x) {
    long double m = std::round(2.0L * x.hi);
    XD u = x - XD(m * 0.5L);  // |u| <= 0.25 (+ tiny lo spill)
    XD t = kPi * u;
    long long q = static_cast<long long>(std::fmod(m, 4.0L));
    if (q < 0) q += 4;
    switch (q) {
        case 0: return sin_small(t);
        case 1: return cos_small(t);
        case 2: return -sin_small(t);
        default: return -cos_small(t);
    }
}

XD gamma_xd(XD x) {
    if (x.hi >= 0.5L) return gamma_pos(x);
    // reflection: Gamma(x) = pi / (sin(pi x) Gamma(1 - x))
    XD s = sinpi_xd(x);
    if (s.hi == 0.0L && s.lo == 0.0L) {
        return XD(std::numeric_limits<long double>::infinity());
    }
    return kPi / (s * gamma_pos(XD(1.0L) - x));
}

XD rgamma_xd(XD x) {
    if (x.hi >= 0.5L) {
        XD g = gamma_pos(x);
        if (std::isinf(g.hi)) return XD(0.0L);
        return XD(1.0L) / g;
    }
    return sinpi_xd(x) * gamma_pos(XD(1.0L) - x) / kPi;
}

namespace {

// e^L as mant * 2^e2 with mant near [0.7, 2.8); avoids exp range limits.
ScaledXD exp_scaled(XD L) {
    long double kf = std::floor(L.hi / 0.6931471805599453094L);
    XD r = L - kLn2 * kf;
    return {exp_xd(r), static_cast<long>(kf)};
}

} // namespace

ScaledXD rgamma_scaled_xd(XD x) {
    if (x.hi >= 0.5L) {
        if (x.hi <= 400.0L) return {rgamma_xd(x), 0};
        return exp_scaled(-lgamma_big(x));
    }
    XD y = XD(1.0L) - x;
    if (y.hi <= 400.0L) return {rgamma_xd(x), 0};
    ScaledXD s = exp_scaled(lgamma_big(y));
    s.mant = s.mant * sinpi_xd(x) / kPi;
    return s;
}

} // namespace msf
