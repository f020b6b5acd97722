#pragma once
#include <vector>

#include "rkp/rng.hpp"
#include "rkp/types.hpp"

namespace rkp {

// a1 = r1'(t), a2 = r2'(s), a3 = r2(s) - r1(t)
struct ConfigTriple {
    Vec a1, a2, a3;
};

// unprimed and primed triples entering the Lk^2 kernel
struct ConfigPair {
    ConfigTriple first, second;
};

// sqrt(det(A^T A)) / |a3|^3, the inter-crossing-number kernel.
double icn_kernel(const ConfigTriple& c);

// sqrt(|r'|^2 |r''|^2 - (r'.r'')^2) / |r'|^2, the curvature kernel.
double curvature_kernel(const Vec& d1, const Vec& d2);

// Closed-form Lk^2 kernel in Gram form, valid in any ambient dim >= 4:
//   I = (2/pi) [ D det(A^T A') + (a3.a3') G4 ] / (|a3|^2 |a3'|^2 D^{3/2})
// where D = |a3|^2 |a3'|^2 - (a3.a3')^2, det(A^T A') is the 3x3 cross-Gram
// determinant and G4 the 4x4 inner-product determinant of the two appended
// 4-column matrices. Throws NearSingular when D/(|a3|^2 |a3'|^2) <= guard.
double lk2_kernel(const ConfigPair& p, double guard = 1e-12);

// Brute-force oracle for lk2_kernel in R^4: plain Gaussian Monte Carlo of
//   E_V[ Det([A vhat]) Det([A' vhat]) / (|proj_{V^perp} a3|^3 |...a3'|^3) ]
// with V ~ N(0, I_4). Throws NearSingular if > 1% of samples underflow.
MCEstimate lk2_oracle(const ConfigPair& p, long long n_samples,
                      std::uint64_t seed);

// Literal transcription of the piecewise I_ijkl(a,b) coefficient table
// (indices 1..6). Its branches overlap on some tuples; quarantined behind
// ijkl_consistency_report rather than silently reinterpreted.
double ijkl_table(int i, int j, int k, int l, double a, double b);

// Closed-form I_{3,3}(a,b) coefficients for m+n in {2,4,6,8}.
// Throws Unsupported otherwise (odd m+n is open).
double i33_coeff(int mn, double a, double b);

// C_<ICN>(n): Monte Carlo calibration of the ICN expectation constant at the
// standard configuration (e1,e2,e3); exactly 1 for n = 4.
MCEstimate icn_calibration(int n, long long n_frames, std::uint64_t seed);

struct HigherKernelResult {
    double value = 0.0;
    double stderr_ = 0.0; // 0 for m+n = 2 (fully closed form)
    MCEstimate i11, i22;  // populated for m+n > 2
};

// Higher-dimensional kernel assembly: m+n+1 vectors (and primed) in
// R^{m+n+2}. For m+n = 2 the I11/I22 terms cancel and the value equals
// lk2_kernel; for m+n > 2 they are estimated by Gaussian Monte Carlo of the
// defining I_{i,j} integrals.
HigherKernelResult higher_kernel(const std::vector<Vec>& a,
                                 const std::vector<Vec>& ap, int mn,
                                 long long mc_samples, std::uint64_t seed,
                                 double guard = 1e-12);

// Gaussian MC of the defining I_{i,j} integral (1-based indices):
//   E_v[ |v|^{2(m+n)} v_i v_j / (k-^{N/2} k+^{N/2}) ],  v ~ N(0, I_{m+n+2}),
//   k-+ = (b v1 -+ a v2)^2 + v3^2 + ... + v_{N'}^2.
MCEstimate iij_oracle(int i, int j, int mn, double a, double b,
                      long long n_samples, std::uint64_t seed);

// Brute-force Gaussian MC oracle of the full higher-dimensional kernel:
//   E_v[ Det([a.. vhat]) Det([a'.. vhat]) / (|proj a_N|^N |proj a'_N|^N) ].
MCEstimate higher_oracle(const std::vector<Vec>& a, const std::vector<Vec>& ap,
                         int mn, long long n_samples, std::uint64_t seed);

struct IjklReport {
    long long tuples_checked = 0;
    long long overlapping_branches = 0; // tuples matching > 1 table branch
    long long kernel_mismatches = 0;    // table vs closed-form kernel > tol
};

// Compares the literal table against the oracle-validated closed form on the
// defining configurations ([e_i,e_j,a e1+b e2], [e_k,e_l,a e1-b e2]).
IjklReport ijkl_consistency_report(double a, double b, double tol = 1e-9);

} // namespace rkp
