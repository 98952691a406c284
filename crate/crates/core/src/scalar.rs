//! Floating-point abstraction shared by every solver module.
//!
//! All physics is written against [`Scalar`] so the same code runs in `f32`
//! and `f64`. Thresholds that only make sense relative to the working
//! precision live here as associated constants.

use std::fmt::{Debug, Display};

use num_complex::Complex;
use num_traits::{Float, FloatConst, FromPrimitive, NumAssign};

/// Real scalar type the solver is generic over (`f32` or `f64`).
pub trait Scalar:
    Float + FloatConst + FromPrimitive + NumAssign + Default + Debug + Display + Send + Sync + 'static
{
    /// Largest `|Im(k_z d)|` accepted in a single phase factor.
    const MAX_EXPONENT: f64;
    /// Condition number above which a 2x2 transmission block is treated as singular.
    const RESONANCE_COND_LIMIT: f64;
    /// Condition number above which an interface field basis is treated as singular.
    const INTERFACE_COND_LIMIT: f64;

    /// Converts an `f64` literal into this scalar type.
    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("f64 literal representable in scalar type")
    }
}

impl Scalar for f32 {
    const MAX_EXPONENT: f64 = 80.0;
    const RESONANCE_COND_LIMIT: f64 = 1e5;
    const INTERFACE_COND_LIMIT: f64 = 1e6;
}

impl Scalar for f64 {
    const MAX_EXPONENT: f64 = 700.0;
    const RESONANCE_COND_LIMIT: f64 = 1e12;
    const INTERFACE_COND_LIMIT: f64 = 1e14;
}

/// Complex number over a [`Scalar`].
pub type Cx<T> = Complex<T>;

#[inline]
pub(crate) fn real<T: Scalar>(re: T) -> Cx<T> {
    Complex::new(re, T::zero())
}

#[inline]
pub(crate) fn j<T: Scalar>() -> Cx<T> {
    Complex::new(T::zero(), T::one())
}

/// Principal square root: non-negative real part, and a non-positive
/// imaginary part when the real part vanishes.
pub fn principal_sqrt<T: Scalar>(z: Cx<T>) -> Cx<T> {
    let mut s = z.sqrt();
    if s.re == T::zero() && s.im > T::zero() {
        s = -s;
    }
    // normalise signed zeros so downstream branch tests see +0
    if s.re == T::zero() {
        s.re = T::zero();
    }
    s
}

/// Physical constants (SI, CODATA 2018).
pub mod consts {
    use super::Scalar;

    /// Speed of light in vacuum, m/s.
    pub const SPEED_OF_LIGHT: f64 = 299_792_458.0;
    /// Vacuum permeability, H/m.
    pub const MU_0: f64 = 1.256_637_062_12e-6;

    /// Vacuum permittivity, F/m.
    pub fn eps_0<T: Scalar>() -> T {
        T::lit(1.0 / (MU_0 * SPEED_OF_LIGHT * SPEED_OF_LIGHT))
    }

    /// Vacuum wave impedance, ohms.
    pub fn eta_0<T: Scalar>() -> T {
        T::lit(MU_0 * SPEED_OF_LIGHT)
    }

    pub fn c<T: Scalar>() -> T {
        T::lit(SPEED_OF_LIGHT)
    }

    /// Free-space wavenumber `2 pi f / c` in rad/m.
    pub fn k0<T: Scalar>(freq_hz: T) -> T {
        T::TAU() * freq_hz / c::<T>()
    }

    /// Free-space wavelength `c / f` in metres.
    pub fn wavelength<T: Scalar>(freq_hz: T) -> T {
        c::<T>() / freq_hz
    }
}
