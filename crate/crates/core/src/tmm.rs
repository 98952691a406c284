//! Transfer-matrix cascade.
//!
//! Amplitude conventions (fixed everywhere in the crate):
//!
//! * inside a slab the state is `[E_L+, E_R+, E_L-, E_R-]`, referenced to the
//!   plane where the matrix is applied;
//! * in the incidence half-space it is `[E_i_par, E_i_perp, E_r_par, E_r_perp]`;
//! * in the exit half-space it is `[E_t_par, E_t_perp, 0, 0]`.
//!
//! A matching matrix maps right-side amplitudes to left-side amplitudes at a
//! shared interface, so the whole structure satisfies
//! `[E_i_par, E_i_perp, E_r_par, E_r_perp]^T = T [E_t_par, E_t_perp]^T`
//! with `T = M_1 P_A (M_AB P_B M_BA P_A)^m M_2` for the periodic stack.
//!
//! Tangential fields are stored as `(E_x, E_y, eta0 H_x, eta0 H_y)` so that
//! electric and magnetic rows carry comparable magnitudes.

use num_traits::Zero;

use crate::error::{Result, TmmError};
use crate::linalg::{solve2, Mat4, Mat4x2};
use crate::media::{check_angle, eigenwave_templates, kinematics, EigenwaveKinematics, MaterialParams};
use crate::scalar::{consts, j, real, Cx, Scalar};
use crate::stack::{Layer, Stack};

/// Medium on one side of an interface.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Medium<T: Scalar> {
    /// Air half-space, expanded in the linear parallel/perpendicular basis.
    Air,
    /// Slab material, expanded in its circular eigenwaves.
    Material(MaterialParams<T>),
}

impl<T: Scalar> From<MaterialParams<T>> for Medium<T> {
    fn from(m: MaterialParams<T>) -> Self {
        Medium::Material(m)
    }
}

/// Plane-wave basis of a medium: its tangential field matrix and inverse.
#[derive(Debug, Clone, Copy)]
struct Basis<T: Scalar> {
    fields: Mat4<T>,
    inverse: Mat4<T>,
    cond: T,
}

impl<T: Scalar> Basis<T> {
    fn new(medium: &Medium<T>, freq: T, theta_i: T) -> Result<Self> {
        let fields = field_matrix(medium, freq, theta_i)?;
        let (inverse, cond) = fields
            .inverse_with_cond()
            .map_err(|_| TmmError::SingularInterface { cond: f64::INFINITY })?;
        Ok(Self { fields, inverse, cond })
    }

    fn checked_inverse(&self) -> Result<&Mat4<T>> {
        let cond = self.cond.to_f64().unwrap_or(f64::INFINITY);
        if !(cond <= T::INTERFACE_COND_LIMIT) {
            return Err(TmmError::SingularInterface { cond });
        }
        Ok(&self.inverse)
    }

    /// `C_self^-1 C_right`.
    fn matching(&self, right: &Basis<T>) -> Result<Mat4<T>> {
        Ok(*self.checked_inverse()? * right.fields)
    }
}

/// Columns are the tangential fields `(E_x, E_y, eta0 H_x, eta0 H_y)` of the
/// medium's four unit basis waves at the interface plane.
fn field_matrix<T: Scalar>(medium: &Medium<T>, freq: T, theta_i: T) -> Result<Mat4<T>> {
    match medium {
        Medium::Air => {
            check_angle(theta_i)?;
            let c = real(theta_i.cos());
            let (o, z) = (real(T::one()), Cx::zero());
            Ok(Mat4::from_columns([
                [c, z, z, o],
                [z, o, -c, z],
                [c, z, z, -o],
                [z, o, c, z],
            ]))
        }
        Medium::Material(mat) => {
            let kin = kinematics(mat, freq, theta_i)?;
            let eta0 = real(consts::eta_0::<T>());
            let waves = eigenwave_templates(&kin)?.waves;
            Ok(Mat4::from_columns(
                waves.map(|w| [w.e[0], w.e[1], w.h[0] * eta0, w.h[1] * eta0]),
            ))
        }
    }
}

/// Matching matrix `M` with `v_left = M v_right` across a single interface.
pub fn matching_matrix<T: Scalar>(left: &Medium<T>, right: &Medium<T>, freq: T, theta_i: T) -> Result<Mat4<T>> {
    Basis::new(left, freq, theta_i)?.matching(&Basis::new(right, freq, theta_i)?)
}

/// Exit matching matrix: slab on the left, air on the right, keeping only
/// the two transmitted columns.
pub fn exit_matching_matrix<T: Scalar>(left: &Medium<T>, freq: T, theta_i: T) -> Result<Mat4x2<T>> {
    Ok(matching_matrix(left, &Medium::Air, freq, theta_i)?.left_columns())
}

fn phase_factors<T: Scalar>(kin: &EigenwaveKinematics<T>, d: T) -> Result<(Cx<T>, Cx<T>)> {
    let limit = T::lit(T::MAX_EXPONENT);
    for kz in [kin.kz_l, kin.kz_r] {
        let exponent = (kz.im * d).abs();
        if !(exponent <= limit) {
            return Err(TmmError::EvanescentOverflow {
                exponent: exponent.to_f64().unwrap_or(f64::INFINITY),
                limit: T::MAX_EXPONENT,
            });
        }
    }
    let phase = |kz: Cx<T>| (-j::<T>() * kz * d).exp();
    Ok((phase(kin.kz_l), phase(kin.kz_r)))
}

/// Diagonal matrix advancing slab amplitudes from the slab's entry face to
/// its exit face: `diag(e^{-j kzL d}, e^{-j kzR d}, e^{+j kzL d}, e^{+j kzR d})`.
pub fn propagation_matrix<T: Scalar>(layer: &Layer<T>, freq: T, theta_i: T) -> Result<Mat4<T>> {
    let kin = kinematics(layer.material(), freq, theta_i)?;
    let (pl, pr) = phase_factors(&kin, layer.thickness())?;
    Ok(Mat4::diagonal([pl, pr, pl.inv(), pr.inv()]))
}

/// Inverse of [`propagation_matrix`]: expresses entry-face amplitudes in
/// terms of exit-face amplitudes, which is the direction the cascade runs.
fn retreat_matrix<T: Scalar>(layer: &Layer<T>, freq: T, theta_i: T) -> Result<Mat4<T>> {
    let kin = kinematics(layer.material(), freq, theta_i)?;
    let (pl, pr) = phase_factors(&kin, layer.thickness())?;
    Ok(Mat4::diagonal([pl.inv(), pr.inv(), pl, pr]))
}

/// Transfer matrix of the whole stack. Periodic stacks use the
/// `M_1 P_A (M_AB P_B M_BA P_A)^m M_2` factorisation; anything else the
/// plain interface-by-interface cascade.
pub fn assemble_transfer<T: Scalar>(stack: &Stack<T>, freq: T, theta_i: T) -> Result<Mat4x2<T>> {
    match stack.periodic_form() {
        Some(p) => {
            let air = Basis::new(&Medium::Air, freq, theta_i)?;
            let a = Basis::new(&Medium::Material(*p.a.material()), freq, theta_i)?;
            let b = Basis::new(&Medium::Material(*p.b.material()), freq, theta_i)?;
            let m1 = air.matching(&a)?;
            let m_ab = a.matching(&b)?;
            let m_ba = b.matching(&a)?;
            let m2 = a.matching(&air)?.left_columns();
            let p_a = retreat_matrix(&p.a, freq, theta_i)?;
            let p_b = retreat_matrix(&p.b, freq, theta_i)?;
            let period = m_ab * p_b * m_ba * p_a;
            Ok(m1 * p_a * period.pow(p.periods) * m2)
        }
        None => assemble_transfer_general(stack, freq, theta_i),
    }
}

/// Interface-by-interface cascade, ignoring any periodic structure.
pub fn assemble_transfer_general<T: Scalar>(stack: &Stack<T>, freq: T, theta_i: T) -> Result<Mat4x2<T>> {
    let mut left = Basis::new(&Medium::Air, freq, theta_i)?;
    let mut acc = Mat4::identity();
    for layer in stack.layers() {
        let right = Basis::new(&Medium::Material(*layer.material()), freq, theta_i)?;
        acc = acc * left.matching(&right)? * retreat_matrix(layer, freq, theta_i)?;
        left = right;
    }
    let exit = Basis::new(&Medium::Air, freq, theta_i)?;
    Ok(acc * left.matching(&exit)?.left_columns())
}

/// Complex reflection and transmission amplitudes for one excitation, in
/// the parallel/perpendicular basis of the air half-spaces.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Response<T: Scalar> {
    /// `(E_i_par, E_i_perp)`.
    pub incident: [Cx<T>; 2],
    /// `(E_r_par, E_r_perp)`.
    pub reflected: [Cx<T>; 2],
    /// `(E_t_par, E_t_perp)`.
    pub transmitted: [Cx<T>; 2],
}

impl<T: Scalar> Response<T> {
    fn incident_norm(&self) -> T {
        (self.incident[0].norm_sqr() + self.incident[1].norm_sqr()).sqrt()
    }

    /// Unit vectors along and orthogonal to the incident polarisation.
    fn polarisation_axes(&self) -> ([Cx<T>; 2], [Cx<T>; 2]) {
        let n = real(self.incident_norm());
        let u = [self.incident[0] / n, self.incident[1] / n];
        (u, [-u[1].conj(), u[0].conj()])
    }

    fn project(axis: &[Cx<T>; 2], v: &[Cx<T>; 2]) -> Cx<T> {
        axis[0].conj() * v[0] + axis[1].conj() * v[1]
    }

    /// Reflected component along the incident polarisation.
    pub fn r_co(&self) -> Cx<T> {
        Self::project(&self.polarisation_axes().0, &self.reflected)
    }

    pub fn r_cross(&self) -> Cx<T> {
        Self::project(&self.polarisation_axes().1, &self.reflected)
    }

    pub fn t_co(&self) -> Cx<T> {
        Self::project(&self.polarisation_axes().0, &self.transmitted)
    }

    pub fn t_cross(&self) -> Cx<T> {
        Self::project(&self.polarisation_axes().1, &self.transmitted)
    }

    /// Largest modulus difference over the four raw coefficients.
    pub fn max_abs_diff(&self, other: &Self) -> T {
        self.reflected
            .iter()
            .zip(&other.reflected)
            .chain(self.transmitted.iter().zip(&other.transmitted))
            .map(|(a, b)| (a - b).norm())
            .fold(T::zero(), T::max)
    }
}

/// Solves `[E_i; E_r] = T E_t` for the transmitted and reflected amplitudes.
pub fn solve_coefficients<T: Scalar>(transfer: &Mat4x2<T>, incident: [Cx<T>; 2]) -> Result<Response<T>> {
    if incident.iter().all(|z| z.is_zero()) {
        return Err(TmmError::ZeroIncident);
    }
    let (t, cond) =
        solve2(transfer.top(), incident).map_err(|_| TmmError::ResonanceSingularity { cond: f64::INFINITY })?;
    let cond = cond.to_f64().unwrap_or(f64::INFINITY);
    if !(cond <= T::RESONANCE_COND_LIMIT) {
        return Err(TmmError::ResonanceSingularity { cond });
    }
    let bottom = transfer.bottom();
    let r = [
        bottom[0][0] * t[0] + bottom[0][1] * t[1],
        bottom[1][0] * t[0] + bottom[1][1] * t[1],
    ];
    Ok(Response {
        incident,
        reflected: r,
        transmitted: t,
    })
}

/// Assembles and solves in one step.
pub fn solve<T: Scalar>(stack: &Stack<T>, freq: T, theta_i: T, incident: [Cx<T>; 2]) -> Result<Response<T>> {
    solve_coefficients(&assemble_transfer(stack, freq, theta_i)?, incident)
}

/// Parallel-polarised unit excitation `(1, 0)`.
pub fn parallel<T: Scalar>() -> [Cx<T>; 2] {
    [real(T::one()), Cx::zero()]
}

/// Perpendicular-polarised unit excitation `(0, 1)`.
pub fn perpendicular<T: Scalar>() -> [Cx<T>; 2] {
    [Cx::zero(), real(T::one())]
}
