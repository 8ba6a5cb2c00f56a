use nalgebra::{Matrix3, SMatrix, Vector3};

use super::so3::skew;
use super::{Matrix9, Se23Tangent};
use crate::Scalar;

/// Matrix of `ad_ξ` in the `(ξ_R, ξ_v, ξ_x)` basis:
/// `[[ξ_R×, 0, 0], [ξ_v×, ξ_R×, 0], [ξ_x×, 0, ξ_R×]]`.
pub fn adjoint_matrix<T: Scalar>(xi: &Se23Tangent<T>) -> Matrix9<T> {
    let r = skew(&xi.rot);
    let mut m = Matrix9::zeros();
    for k in 0..3 {
        m.fixed_view_mut::<3, 3>(3 * k, 3 * k).copy_from(&r);
    }
    m.fixed_view_mut::<3, 3>(3, 0).copy_from(&skew(&xi.vel));
    m.fixed_view_mut::<3, 3>(6, 0).copy_from(&skew(&xi.pos));
    m
}

/// `F(v) = [-v× | 0 | I₃]`, so that `wedge(ξ) v̄` has top block `F(v) ξ`.
pub fn op_f<T: Scalar>(v: &Vector3<T>) -> SMatrix<T, 3, 9> {
    let mut m = SMatrix::<T, 3, 9>::zeros();
    m.fixed_view_mut::<3, 3>(0, 0).copy_from(&(-skew(v)));
    m.fixed_view_mut::<3, 3>(0, 6)
        .copy_from(&Matrix3::identity());
    m
}

/// Homogeneous form of [`op_f`]: `F(v)` over two zero rows.
pub fn op_fbar<T: Scalar>(v: &Vector3<T>) -> SMatrix<T, 5, 9> {
    let mut m = SMatrix::<T, 5, 9>::zeros();
    m.fixed_view_mut::<3, 9>(0, 0).copy_from(&op_f(v));
    m
}

/// `G(v) = [v× | 0 | 0]`, the top three rows of [`op_gbar`].
pub fn op_g<T: Scalar>(v: &Vector3<T>) -> SMatrix<T, 3, 9> {
    let mut m = SMatrix::<T, 3, 9>::zeros();
    m.fixed_view_mut::<3, 3>(0, 0).copy_from(&skew(v));
    m
}

/// `Ḡ(v) = blkdiag(v×, vᵀ, vᵀ)`, so that `wedge(ξ)ᵀ v̄ = Ḡ(v) ξ`.
pub fn op_gbar<T: Scalar>(v: &Vector3<T>) -> SMatrix<T, 5, 9> {
    let mut m = SMatrix::<T, 5, 9>::zeros();
    m.fixed_view_mut::<3, 3>(0, 0).copy_from(&skew(v));
    m.fixed_view_mut::<1, 3>(3, 3).copy_from(&v.transpose());
    m.fixed_view_mut::<1, 3>(4, 6).copy_from(&v.transpose());
    m
}

/// Symmetric part `(A + Aᵀ) / 2`.
pub fn proj_sym<T: Scalar, const N: usize>(a: &SMatrix<T, N, N>) -> SMatrix<T, N, N> {
    (a + a.transpose()) * T::lit(0.5)
}
