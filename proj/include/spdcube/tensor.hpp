#pragma once

#include <array>

#include "spdcube/linalg.hpp"

namespace spdcube::nlo {

// Contracted (3x6, Voigt) form of the second-order nonlinear susceptibility,
// entries in pm/V. Column convention: 1<->(1,1), 2<->(2,2), 3<->(3,3),
// 4<->(2,3), 5<->(1,3), 6<->(1,2).
struct ContractedDMatrix {
    std::array<std::array<double, 6>, 3> d{};
};

// Full rank-3 form, d[i][j][k] in pm/V, symmetric in (j,k).
struct Rank3Tensor {
    std::array<std::array<std::array<double, 3>, 3>, 3> d{};
};

// Proper rotation matrix (lab <- crystal). Construct through the factories,
// which validate orthonormality and det = +1 to 1e-12.
struct Rotation {
    Mat3 R = mat_identity();

    static Rotation identity();
    static Rotation about_axis(const Vec3& axis, double angle_deg);
    // Minimal rotation taking crystal z to the given lab direction.
    static Rotation z_to(const Vec3& direction);
    // Crystal z onto a cube body diagonal whose projection on the lab xy
    // plane sits at the given azimuth.
    static Rotation optic_axis_on_diagonal(double azimuth_deg);
    static Rotation from_matrix(const Mat3& m);

    Rotation compose(const Rotation& inner) const;  // this * inner
    Vec3 apply(const Vec3& v) const { return mat_apply(R, v); }
};

// Unit polarization vector (linear basis); constructor normalizes and rejects
// near-zero input.
struct PolarizationVector {
    Vec3 e{0, 0, 1};

    PolarizationVector() = default;
    explicit PolarizationVector(const Vec3& v);
};

// The lithium niobate d-matrix with the C3v (3m) sign pattern:
//   [    0     0    0    0   d15  -d22 ]
//   [ -d22   d22    0  d15     0     0 ]
//   [  d31   d31  d33    0     0     0 ]
// d15 = d31 = -4.88, d22 = 2.58, d33 = -34 pm/V.
ContractedDMatrix lithium_niobate_d();

// True when the matrix has the zero pattern and equalities of the 3m class
// (within tol, absolute, pm/V scale).
bool is_c3v_structured(const ContractedDMatrix& c, double tol = 1e-9);

Rank3Tensor expand(const ContractedDMatrix& c);

// Inverse of expand; requires symmetry in the last two indices within
// rel_tol, else throws SymmetryViolation.
ContractedDMatrix contract(const Rank3Tensor& t, double rel_tol = 1e-12);

// d'_ijk = sum_abc R_ia R_jb R_kc d_abc.
Rank3Tensor rotate_tensor(const Rank3Tensor& t, const Rotation& r);

// sum_ijk e_out_i d_ijk e_in1_j e_in2_k, pm/V.
double effective_d(const Rank3Tensor& t, const PolarizationVector& e_out,
                   const PolarizationVector& e_in1, const PolarizationVector& e_in2);

}
