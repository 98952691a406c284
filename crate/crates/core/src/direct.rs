//! Reference solver: all tangential boundary conditions of the stack are
//! written as one square linear system and solved at once.
//!
//! It shares nothing with the cascade beyond the eigenwave templates and the
//! generic dense LU. Forward slab waves are referenced to the slab's entry
//! face and backward waves to its exit face, so every phase factor in the
//! system has modulus at most one even for strongly evanescent slabs.

use num_traits::Zero;

use crate::error::{Result, TmmError};
use crate::linalg::DenseMatrix;
use crate::media::{eigenwave_templates, kinematics};
use crate::scalar::{consts, j, real, Cx, Scalar};
use crate::stack::Stack;
use crate::tmm::Response;

type Tangential<T> = [Cx<T>; 4];

/// Solution of the global system including the interior amplitudes.
#[derive(Debug, Clone, PartialEq)]
pub struct DirectSolution<T: Scalar> {
    pub response: Response<T>,
    /// Per slab `[E_L+, E_R+, E_L-, E_R-]`; forward amplitudes at the slab's
    /// entry face, backward amplitudes at its exit face.
    pub slab_amplitudes: Vec<[Cx<T>; 4]>,
}

struct SlabColumns<T: Scalar> {
    /// Tangential fields of `L+, R+, L-, R-` at unit amplitude.
    cols: [Tangential<T>; 4],
    /// Single-pass factors `e^{-j kz d}` for L and R.
    pass: [Cx<T>; 2],
}

impl<T: Scalar> SlabColumns<T> {
    /// Modal weights at the entry face (`exit == false`) or exit face.
    fn weights(&self, exit: bool) -> [Cx<T>; 4] {
        let one = real(T::one());
        let [pl, pr] = self.pass;
        if exit {
            [pl, pr, one, one]
        } else {
            [one, one, pl, pr]
        }
    }

    fn field(&self, amps: &[Cx<T>; 4], exit: bool) -> Tangential<T> {
        let w = self.weights(exit);
        let mut f = [Cx::zero(); 4];
        for k in 0..4 {
            for (row, fr) in f.iter_mut().enumerate() {
                *fr += self.cols[k][row] * w[k] * amps[k];
            }
        }
        f
    }
}

fn slab_columns<T: Scalar>(stack: &Stack<T>, freq: T, theta_i: T) -> Result<Vec<SlabColumns<T>>> {
    let eta0 = real(consts::eta_0::<T>());
    stack
        .layers()
        .iter()
        .map(|layer| {
            let kin = kinematics(layer.material(), freq, theta_i)?;
            let waves = eigenwave_templates(&kin)?.waves;
            let d = layer.thickness();
            let limit = T::lit(T::MAX_EXPONENT);
            for kz in [kin.kz_l, kin.kz_r] {
                let e = (kz.im * d).abs();
                if !(e <= limit) {
                    return Err(TmmError::EvanescentOverflow {
                        exponent: e.to_f64().unwrap_or(f64::INFINITY),
                        limit: T::MAX_EXPONENT,
                    });
                }
            }
            let pass = [kin.kz_l, kin.kz_r].map(|kz| (-j::<T>() * kz * d).exp());
            Ok(SlabColumns {
                cols: waves.map(|w| [w.e[0], w.e[1], w.h[0] * eta0, w.h[1] * eta0]),
                pass,
            })
        })
        .collect()
}

/// Air plane waves built from their physical field vectors:
/// `[incident par, incident perp, reflected par, reflected perp]`. The
/// transmitted waves share the incident tangential fields.
fn air_columns<T: Scalar>(theta_i: T) -> [Tangential<T>; 4] {
    let (s, c) = theta_i.sin_cos();
    let wave = |k_hat: [T; 3], e: [T; 3]| -> Tangential<T> {
        // eta0 H = k_hat x E
        let h = [
            k_hat[1] * e[2] - k_hat[2] * e[1],
            k_hat[2] * e[0] - k_hat[0] * e[2],
            k_hat[0] * e[1] - k_hat[1] * e[0],
        ];
        [real(e[0]), real(e[1]), real(h[0]), real(h[1])]
    };
    let (zero, one) = (T::zero(), T::one());
    let down = [-s, zero, c];
    let up = [-s, zero, -c];
    [
        wave(down, [c, zero, s]),
        wave(down, [zero, one, zero]),
        wave(up, [c, zero, -s]),
        wave(up, [zero, one, zero]),
    ]
}

fn check_inputs<T: Scalar>(theta_i: T, incident: &[Cx<T>; 2]) -> Result<()> {
    if !(theta_i >= T::zero() && theta_i < T::FRAC_PI_2()) {
        return Err(TmmError::InvalidAngle(theta_i.to_f64().unwrap_or(f64::NAN)));
    }
    if incident.iter().all(|z| z.is_zero()) {
        return Err(TmmError::ZeroIncident);
    }
    Ok(())
}

/// Solves the global boundary system and keeps the interior amplitudes.
pub fn solve_direct_full<T: Scalar>(
    stack: &Stack<T>,
    freq: T,
    theta_i: T,
    incident: [Cx<T>; 2],
) -> Result<DirectSolution<T>> {
    check_inputs(theta_i, &incident)?;
    let slabs = slab_columns(stack, freq, theta_i)?;
    let air = air_columns(theta_i);
    let n_slabs = slabs.len();
    let n = 4 * n_slabs + 4;
    let t_offset = 2 + 4 * n_slabs;
    let mut a = DenseMatrix::zeros(n, n);
    let mut rhs = vec![Cx::zero(); n];

    // interface q separates medium q (left) from medium q + 1 (right);
    // rows 4q..4q+4 enforce left - right = 0
    for q in 0..=n_slabs {
        let row0 = 4 * q;
        if q == 0 {
            for row in 0..4 {
                rhs[row0 + row] = -(air[0][row] * incident[0] + air[1][row] * incident[1]);
                a[(row0 + row, 0)] = air[2][row];
                a[(row0 + row, 1)] = air[3][row];
            }
        } else {
            let slab = &slabs[q - 1];
            let w = slab.weights(true);
            let col0 = 2 + 4 * (q - 1);
            for k in 0..4 {
                for row in 0..4 {
                    a[(row0 + row, col0 + k)] = slab.cols[k][row] * w[k];
                }
            }
        }
        if q == n_slabs {
            for row in 0..4 {
                a[(row0 + row, t_offset)] = -air[0][row];
                a[(row0 + row, t_offset + 1)] = -air[1][row];
            }
        } else {
            let slab = &slabs[q];
            let w = slab.weights(false);
            let col0 = 2 + 4 * q;
            for k in 0..4 {
                for row in 0..4 {
                    a[(row0 + row, col0 + k)] = -(slab.cols[k][row] * w[k]);
                }
            }
        }
    }

    let x = a
        .solve(&rhs)
        .map_err(|_| TmmError::ResonanceSingularity { cond: f64::INFINITY })?;
    let slab_amplitudes = (0..n_slabs)
        .map(|s| {
            let o = 2 + 4 * s;
            [x[o], x[o + 1], x[o + 2], x[o + 3]]
        })
        .collect();
    Ok(DirectSolution {
        response: Response {
            incident,
            reflected: [x[0], x[1]],
            transmitted: [x[t_offset], x[t_offset + 1]],
        },
        slab_amplitudes,
    })
}

pub fn solve_direct<T: Scalar>(stack: &Stack<T>, freq: T, theta_i: T, incident: [Cx<T>; 2]) -> Result<Response<T>> {
    Ok(solve_direct_full(stack, freq, theta_i, incident)?.response)
}

fn norm4<T: Scalar>(v: &Tangential<T>) -> T {
    v.iter().fold(T::zero(), |acc, z| acc + z.norm_sqr()).sqrt()
}

/// Largest tangential-field mismatch over all interfaces, relative to the
/// larger of the local field and the incident field.
pub fn field_residual<T: Scalar>(stack: &Stack<T>, freq: T, theta_i: T, solution: &DirectSolution<T>) -> Result<T> {
    let slabs = slab_columns(stack, freq, theta_i)?;
    let air = air_columns(theta_i);
    let resp = &solution.response;
    let combine = |cols: [&Tangential<T>; 2], amps: [Cx<T>; 2]| -> Tangential<T> {
        std::array::from_fn(|row| cols[0][row] * amps[0] + cols[1][row] * amps[1])
    };
    let incident_field = combine([&air[0], &air[1]], resp.incident);
    let scale = norm4(&incident_field);
    let mut worst = T::zero();
    for q in 0..=slabs.len() {
        let left = if q == 0 {
            let r = combine([&air[2], &air[3]], resp.reflected);
            std::array::from_fn(|row| incident_field[row] + r[row])
        } else {
            slabs[q - 1].field(&solution.slab_amplitudes[q - 1], true)
        };
        let right = if q == slabs.len() {
            combine([&air[0], &air[1]], resp.transmitted)
        } else {
            slabs[q].field(&solution.slab_amplitudes[q], false)
        };
        let diff: Tangential<T> = std::array::from_fn(|row| left[row] - right[row]);
        let denom = norm4(&left).max(norm4(&right)).max(scale);
        worst = worst.max(norm4(&diff) / denom);
    }
    Ok(worst)
}
