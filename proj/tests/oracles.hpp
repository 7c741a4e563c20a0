#pragma once

// Frozen high-precision reference values (see oracles/gen_oracles.py).

#include <complex>
#include <cstddef>

namespace oracle {

using cplx = std::complex<double>;

struct BesselCase {
    cplx nu;
    double u;
    cplx value;
};
inline const BesselCase bessel_grid[] = {
#include "oracles/bessel_grid.inc"
};

struct LogGammaCase {
    cplx s;
    cplx value;
};
inline const LogGammaCase log_gamma[] = {
#include "oracles/loggamma.inc"
};

struct CesaroCase {
    std::size_t n;
    double k;
    double value;
};
inline const CesaroCase cesaro[] = {
#include "oracles/cesaro.inc"
};

struct ProbeCase {
    double k;
    double partial[3];
};
inline const ProbeCase probe[] = {
#include "oracles/probe.inc"
};

#include "oracles/formula.inc"

struct M1Case {
    std::size_t n;
    double k;
    double value;
};
inline const M1Case m1[] = {LINNIK_M1_ORACLE};

struct MainTermsCase {
    std::size_t n;
    double k;
    std::size_t z, l, m;
    double m2, m3, m4;
    double m4_blocks[4];
};
inline const MainTermsCase main_terms[] = {LINNIK_MAIN_TERMS_ORACLE};

}  // namespace oracle
