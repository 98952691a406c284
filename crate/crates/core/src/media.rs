//! Materials and their circular eigenwaves.
//!
//! A bi-isotropic reciprocal medium obeys
//! `D = eps E - j kappa sqrt(eps0 mu0) H` and `B = mu H + j kappa sqrt(eps0 mu0) E`
//! under the `exp(+j w t)` time convention with spatial factor `exp(-j k.r)`.
//! Its plane-wave eigenmodes are circularly polarised with wavenumbers
//! `k_L = w (sqrt(eps mu) - kappa/c)` and `k_R = w (sqrt(eps mu) + kappa/c)`.
//!
//! Geometry is handled through wavevector components only: every wave in the
//! stack shares the tangential component `k_x = k0 sin(theta_i)` and a forward
//! wave travels along `(-k_x, 0, k_z)`. No complex angles are ever formed,
//! which keeps backward (negative `k`) eigenwaves in chiral nihility media
//! unambiguous.

use num_traits::Zero;

use crate::error::{Result, TmmError};
use crate::scalar::{consts, j, principal_sqrt, real, Cx, Scalar};

/// Constitutive parameters of one homogeneous medium, relative to vacuum.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MaterialParams<T: Scalar> {
    eps_r: Cx<T>,
    mu_r: Cx<T>,
    kappa: T,
}

impl<T: Scalar> MaterialParams<T> {
    /// Validated constructor. Exact zeros of `eps_r` or `mu_r` are rejected.
    pub fn new(eps_r: Cx<T>, mu_r: Cx<T>, kappa: T) -> Result<Self> {
        let finite = |z: Cx<T>| z.re.is_finite() && z.im.is_finite();
        if !finite(eps_r) {
            return Err(TmmError::NonFiniteMaterial("eps_r"));
        }
        if !finite(mu_r) {
            return Err(TmmError::NonFiniteMaterial("mu_r"));
        }
        if !kappa.is_finite() {
            return Err(TmmError::NonFiniteMaterial("kappa"));
        }
        if eps_r.is_zero() {
            return Err(TmmError::ZeroMaterialParameter("eps_r"));
        }
        if mu_r.is_zero() {
            return Err(TmmError::ZeroMaterialParameter("mu_r"));
        }
        Ok(Self { eps_r, mu_r, kappa })
    }

    /// Lossless medium with real parameters.
    pub fn lossless(eps_r: T, mu_r: T, kappa: T) -> Result<Self> {
        Self::new(real(eps_r), real(mu_r), kappa)
    }

    pub fn vacuum() -> Self {
        Self {
            eps_r: real(T::one()),
            mu_r: real(T::one()),
            kappa: T::zero(),
        }
    }

    /// Non-magnetic achiral dielectric of refractive index `n`.
    pub fn dielectric(n: T) -> Result<Self> {
        Self::lossless(n * n, T::one(), T::zero())
    }

    pub fn eps_r(&self) -> Cx<T> {
        self.eps_r
    }

    pub fn mu_r(&self) -> Cx<T> {
        self.mu_r
    }

    pub fn kappa(&self) -> T {
        self.kappa
    }

    pub fn with_kappa(self, kappa: T) -> Self {
        Self { kappa, ..self }
    }

    pub fn is_lossless(&self) -> bool {
        self.eps_r.im == T::zero() && self.mu_r.im == T::zero()
    }

    /// `sqrt(eps_r mu_r)` on the principal branch.
    pub fn refractive_index(&self) -> Cx<T> {
        principal_sqrt(self.eps_r * self.mu_r)
    }

    /// Wave impedance relative to vacuum, `mu_r / n`, which equals
    /// `sqrt(mu_r / eps_r)` on the branch consistent with `n`.
    pub fn relative_impedance(&self) -> Cx<T> {
        self.mu_r / self.refractive_index()
    }
}

fn check_frequency<T: Scalar>(freq: T) -> Result<()> {
    if freq > T::zero() && freq.is_finite() {
        Ok(())
    } else {
        Err(TmmError::InvalidFrequency(freq.to_f64().unwrap_or(f64::NAN)))
    }
}

pub(crate) fn check_angle<T: Scalar>(theta: T) -> Result<()> {
    if theta >= T::zero() && theta < T::FRAC_PI_2() {
        Ok(())
    } else {
        Err(TmmError::InvalidAngle(theta.to_f64().unwrap_or(f64::NAN)))
    }
}

/// Wavenumbers `(k_L, k_R)` in rad/m of the two circular eigenwaves.
pub fn circular_wavenumbers<T: Scalar>(mat: &MaterialParams<T>, freq: T) -> Result<(Cx<T>, Cx<T>)> {
    check_frequency(freq)?;
    let k0 = consts::k0(freq);
    let n = mat.refractive_index();
    let k_l = (n - real(mat.kappa)) * k0;
    let k_r = (n + real(mat.kappa)) * k0;
    Ok((k_l, k_r))
}

/// Per-medium wavevector data at a given frequency and incidence angle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EigenwaveKinematics<T: Scalar> {
    pub k0: T,
    pub k_l: Cx<T>,
    pub k_r: Cx<T>,
    /// Tangential wavenumber shared by every wave in the stack.
    pub k_x: Cx<T>,
    /// Longitudinal component of the forward LCP wave, `Im <= 0`.
    pub kz_l: Cx<T>,
    /// Longitudinal component of the forward RCP wave, `Im <= 0`.
    pub kz_r: Cx<T>,
    /// Wave impedance in ohms.
    pub eta: Cx<T>,
}

/// Longitudinal wavenumber on the forward-decaying branch: `Im <= 0`, and
/// `Re >= 0` when purely real.
pub fn longitudinal<T: Scalar>(k: Cx<T>, k_x: Cx<T>) -> Cx<T> {
    let mut kz = principal_sqrt(k * k - k_x * k_x);
    if kz.im > T::zero() || (kz.im == T::zero() && kz.re < T::zero()) {
        kz = -kz;
    }
    kz
}

pub fn kinematics<T: Scalar>(mat: &MaterialParams<T>, freq: T, theta_i: T) -> Result<EigenwaveKinematics<T>> {
    check_angle(theta_i)?;
    let (k_l, k_r) = circular_wavenumbers(mat, freq)?;
    let k0 = consts::k0(freq);
    let k_x = real(k0 * theta_i.sin());
    Ok(EigenwaveKinematics {
        k0,
        k_l,
        k_r,
        k_x,
        kz_l: longitudinal(k_l, k_x),
        kz_r: longitudinal(k_r, k_x),
        eta: mat.relative_impedance() * consts::eta_0::<T>(),
    })
}

/// Handedness of a circular eigenwave.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Handedness {
    Left,
    Right,
}

/// Propagation sense along z.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Forward,
    Backward,
}

/// One plane eigenwave: unit-amplitude electric and magnetic polarisation
/// vectors together with its wavevector (all Cartesian `x, y, z`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Eigenwave<T: Scalar> {
    pub handedness: Handedness,
    pub direction: Direction,
    pub e: [Cx<T>; 3],
    /// Magnetic field in A/m per unit V/m of amplitude.
    pub h: [Cx<T>; 3],
    pub k_vec: [Cx<T>; 3],
}

/// Eigenwaves of a medium in the fixed order `L+, R+, L-, R-`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EigenwaveTemplate<T: Scalar> {
    pub waves: [Eigenwave<T>; 4],
}

fn wave<T: Scalar>(
    handedness: Handedness,
    direction: Direction,
    k: Cx<T>,
    kz: Cx<T>,
    k_x: Cx<T>,
    eta: Cx<T>,
) -> Eigenwave<T> {
    let kz = match direction {
        Direction::Forward => kz,
        Direction::Backward => -kz,
    };
    // x-component cos(theta) -> k_z/k, z-component sin(theta) -> k_x/k
    let (ey, h_factor) = match handedness {
        Handedness::Left => (j::<T>(), -j::<T>() / eta),
        Handedness::Right => (-j::<T>(), j::<T>() / eta),
    };
    let e = [kz / k, ey, k_x / k];
    Eigenwave {
        handedness,
        direction,
        e,
        h: e.map(|c| c * h_factor),
        k_vec: [-k_x, Cx::zero(), kz],
    }
}

pub fn eigenwave_templates<T: Scalar>(kin: &EigenwaveKinematics<T>) -> Result<EigenwaveTemplate<T>> {
    if kin.k_l.is_zero() {
        return Err(TmmError::DegenerateEigenwave("LCP"));
    }
    if kin.k_r.is_zero() {
        return Err(TmmError::DegenerateEigenwave("RCP"));
    }
    use Direction::*;
    use Handedness::*;
    let w = |h, d| {
        let (k, kz) = match h {
            Left => (kin.k_l, kin.kz_l),
            Right => (kin.k_r, kin.kz_r),
        };
        wave(h, d, k, kz, kin.k_x, kin.eta)
    };
    Ok(EigenwaveTemplate {
        waves: [
            w(Left, Forward),
            w(Right, Forward),
            w(Left, Backward),
            w(Right, Backward),
        ],
    })
}

fn cross<T: Scalar>(a: &[Cx<T>; 3], b: &[Cx<T>; 3]) -> [Cx<T>; 3] {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

fn norm3<T: Scalar>(v: &[Cx<T>; 3]) -> T {
    v.iter().fold(T::zero(), |acc, c| acc + c.norm_sqr()).sqrt()
}

/// Relative residual of both curl equations for one eigenwave:
/// `max(|k x E - w B| / |w B|, |k x H + w D| / |w D|)`, with `B` and `D`
/// taken from the medium's constitutive relations.
pub fn maxwell_residual<T: Scalar>(mat: &MaterialParams<T>, freq: T, wave: &Eigenwave<T>) -> T {
    let omega = T::TAU() * freq;
    let xi = real(mat.kappa / consts::c::<T>());
    let eps = mat.eps_r * consts::eps_0::<T>();
    let mu = mat.mu_r * T::lit(consts::MU_0);
    let jj = j::<T>();
    let b: [Cx<T>; 3] = std::array::from_fn(|i| (mu * wave.h[i] + jj * xi * wave.e[i]) * omega);
    let d: [Cx<T>; 3] = std::array::from_fn(|i| (eps * wave.e[i] - jj * xi * wave.h[i]) * omega);
    let kxe = cross(&wave.k_vec, &wave.e);
    let kxh = cross(&wave.k_vec, &wave.h);
    let r1: [Cx<T>; 3] = std::array::from_fn(|i| kxe[i] - b[i]);
    let r2: [Cx<T>; 3] = std::array::from_fn(|i| kxh[i] + d[i]);
    (norm3(&r1) / norm3(&b)).max(norm3(&r2) / norm3(&d))
}

/// Dispersion residual `|k_x^2 + k_z^2 - k^2|`, relative to the larger of
/// `|k|^2` and `|k_x|^2`.
pub fn dispersion_residual<T: Scalar>(k: Cx<T>, k_x: Cx<T>, k_z: Cx<T>) -> T {
    (k_x * k_x + k_z * k_z - k * k).norm() / k.norm_sqr().max(k_x.norm_sqr())
}
