//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any
//! criterion fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use chiral_tmm::direct::{field_residual, solve_direct_full};
use chiral_tmm::spectra::{evaluate_point, powers, rotation_angle};
use chiral_tmm::tmm::{matching_matrix, parallel, solve, solve_coefficients};
use chiral_tmm::{consts, Engine, Layer, MaterialParams, Medium, Stack, SweepOutcome};
use chiral_tmm_cli::presets::{self, PRESETS};
use chiral_tmm_cli::{evaluate, ScenarioConfig};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const F0: f64 = 1e12;
const SEED: u64 = 2026;
const SCENARIOS: usize = 1000;
const TIME_LIMIT: Duration = Duration::from_secs(5);

struct Report {
    failed: usize,
}

impl Report {
    fn line(&mut self, id: &str, ok: bool, detail: String) {
        if !ok {
            self.failed += 1;
        }
        println!("{} {id}: {detail}", if ok { "PASS" } else { "FAIL" });
    }
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, Duration) {
    let t = Instant::now();
    let v = f();
    (v, t.elapsed())
}

fn preset(name: &str) -> ScenarioConfig {
    presets::find(name).unwrap().config()
}

fn run_preset(name: &str) -> (SweepOutcome<f64>, Duration) {
    let cfg = preset(name);
    timed(|| evaluate(&cfg).unwrap())
}

fn point(cfg: &ScenarioConfig, f: f64, theta_deg: f64) -> chiral_tmm::SweepRow64 {
    evaluate_point(&cfg.stack(), f, theta_deg, cfg.incident(), Engine::Cascade).unwrap()
}

/// Smallest grid angle beyond which every row up to `last_deg` is fully
/// reflected (`R > 0.99`, `T <= 0.01`).
fn transition_angle(out: &SweepOutcome<f64>, last_deg: f64) -> Option<f64> {
    let rows: Vec<_> = out.rows.iter().filter(|r| r.theta_deg <= last_deg + 1e-9).collect();
    let mut start = None;
    for r in rows.iter().rev() {
        if r.powers.r_total > 0.99 && r.powers.t_total <= 0.01 {
            start = Some(r.theta_deg);
        } else {
            break;
        }
    }
    start
}

fn fmt_opt(v: Option<f64>) -> String {
    v.map_or("none".into(), |v| format!("{v:.2}"))
}

fn criterion_1(rep: &mut Report) {
    let cfg = preset("fig2");
    let (out, dt) = run_preset("fig2");
    let nulls: Vec<f64> = [1e12, 2e12, 3e12, 4e12]
        .iter()
        .map(|&f| point(&cfg, f, 0.0).powers.r_total)
        .collect();
    let max_r = out.rows.iter().map(|r| r.powers.r_total).fold(0.0, f64::max);
    let rot: Vec<f64> = [1e12, 2e12, 3e12]
        .iter()
        .map(|&f| point(&cfg, f, 0.0).rotation_deg.unwrap())
        .collect();
    let ok = out.failures.is_empty()
        && nulls.iter().all(|&r| r < 0.01)
        && (max_r - 0.40).abs() <= 0.05
        && (rot[0] - 45.0).abs() <= 2.0
        && (rot[1] - 90.0).abs() <= 2.0
        && (rot[2] - 45.0).abs() <= 2.0
        && dt < TIME_LIMIT;
    rep.line(
        "1 fig2/3 CN-dielectric normal incidence",
        ok,
        format!(
            "R(1,2,3,4 THz) = {:.2e} {:.2e} {:.2e} {:.2e} (< 0.01); max R = {max_r:.3} (0.40 +/- 0.05); \
             rotation(1,2,3 THz) = {:.2} {:.2} {:.2} deg (45/90/45 +/- 2); {} failed points; {dt:.2?}",
            nulls[0],
            nulls[1],
            nulls[2],
            nulls[3],
            rot[0],
            rot[1],
            rot[2],
            out.failures.len()
        ),
    );
}

fn criterion_2(rep: &mut Report) {
    let (out, dt) = run_preset("fig6");
    let transition = transition_angle(&out, 89.0);
    let peak = out
        .rows
        .iter()
        .filter(|r| r.powers.t_total > 0.01)
        .filter_map(|r| r.rotation_deg.map(|a| (r.theta_deg, a)))
        .fold(None, |best: Option<(f64, f64)>, (th, a)| match best {
            Some((_, b)) if b >= a => best,
            _ => Some((th, a)),
        });
    let last_transmitting = out
        .rows
        .iter()
        .filter(|r| r.powers.t_total > 0.01)
        .map(|r| r.theta_deg)
        .fold(None, |m: Option<f64>, t| Some(m.map_or(t, |m| m.max(t))));
    let ok = out.failures.is_empty()
        && transition.is_some_and(|t| (t - 22.0).abs() <= 2.0)
        && last_transmitting.is_some_and(|t| t <= 22.0 + 2.0)
        && peak.is_some_and(|(th, _)| (th - 15.0).abs() <= 2.0)
        && dt < TIME_LIMIT;
    rep.line(
        "2 fig6/7 CN-dielectric angle sweep",
        ok,
        format!(
            "full reflection from {} deg (22 +/- 2); last T > 0.01 at {} deg; peak rotation {} deg at {} deg (15 +/- 2); \
             {} failed points; {dt:.2?}",
            fmt_opt(transition),
            fmt_opt(last_transmitting),
            fmt_opt(peak.map(|p| p.1)),
            fmt_opt(peak.map(|p| p.0)),
            out.failures.len()
        ),
    );
}

fn criterion_3(rep: &mut Report) {
    let cfg = preset("fig8");
    let (out, dt) = run_preset("fig8");
    let min_t = out.rows.iter().map(|r| r.powers.t_total).fold(f64::INFINITY, f64::min);
    let rot = point(&cfg, 2e12, 0.0).rotation_deg.unwrap();
    let ok = out.failures.is_empty()
        && out.rows.len() == out.points
        && min_t > 0.99
        && (rot - 90.0).abs() <= 2.0
        && dt < TIME_LIMIT;
    rep.line(
        "3 fig8/9 CN-CN normal incidence",
        ok,
        format!(
            "min T = {min_t:.6} (> 0.99); rotation(2 THz) = {rot:.3} deg (90 +/- 2); {} failed points; {dt:.2?}",
            out.failures.len()
        ),
    );
}

fn criterion_4(rep: &mut Report) {
    let (out, dt) = run_preset("fig12");
    let transition = transition_angle(&out, 89.0);
    let boundary = transition.unwrap_or(90.0);
    let below: Vec<_> = out.rows.iter().filter(|r| r.theta_deg < boundary).collect();
    let t_co: f64 = below.iter().map(|r| r.powers.t_co).sum();
    let t_cross: f64 = below.iter().map(|r| r.powers.t_cross).sum();
    let ok = out.failures.is_empty()
        && transition.is_some_and(|t| (t - 15.0).abs() <= 2.0)
        && t_co > t_cross
        && dt < TIME_LIMIT;
    rep.line(
        "4 fig12/13 CN-CN angle sweep",
        ok,
        format!(
            "full reflection from {} deg (15 +/- 2); below it sum T_co = {t_co:.2} vs sum T_cross = {t_cross:.2}; \
             {} failed points; {dt:.2?}",
            fmt_opt(transition),
            out.failures.len()
        ),
    );
}

struct Scenario {
    stack: Stack<f64>,
    freq: f64,
    theta: f64,
}

fn scenarios() -> Vec<Scenario> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let log_uniform = |rng: &mut ChaCha8Rng, lo: f64, hi: f64| rng.gen_range(lo.ln()..=hi.ln()).exp();
    (0..SCENARIOS)
        .map(|_| {
            let freq = rng.gen_range(0.1e12..=4e12);
            let theta = rng.gen_range(0.0..=85.0f64).to_radians();
            let n = rng.gen_range(1..=7);
            let layers = (0..n)
                .map(|_| {
                    let eps = log_uniform(&mut rng, 1e-5, 10.0);
                    let mu = log_uniform(&mut rng, 1e-5, 5.0);
                    let kappa = rng.gen_range(-0.5..=0.5);
                    let d = rng.gen_range(0.01..=0.25) * consts::wavelength(freq);
                    Layer::new(MaterialParams::lossless(eps, mu, kappa).unwrap(), d).unwrap()
                })
                .collect();
            Scenario {
                stack: Stack::new(layers),
                freq,
                theta,
            }
        })
        .collect()
}

fn criteria_5_and_6(rep: &mut Report) {
    let cases = scenarios();
    let mut worst_cons = 0.0f64;
    let mut cons_fail = 0;
    let mut errors = Vec::new();
    let mut worst_diff = 0.0f64;
    let mut worst_res = 0.0f64;
    let mut oracle_fail = 0;
    let (_, dt) = timed(|| {
        for (i, s) in cases.iter().enumerate() {
            let resp = match solve(&s.stack, s.freq, s.theta, parallel()) {
                Ok(r) => r,
                Err(e) => {
                    errors.push(format!("#{i}: {e}"));
                    continue;
                }
            };
            let c = powers(&resp).unwrap().conservation_residual;
            worst_cons = worst_cons.max(c);
            if c.is_nan() || c >= 1e-9 {
                cons_fail += 1;
            }
            let direct = solve_direct_full(&s.stack, s.freq, s.theta, parallel()).unwrap();
            let diff = resp.max_abs_diff(&direct.response);
            let res = field_residual(&s.stack, s.freq, s.theta, &direct).unwrap();
            worst_diff = worst_diff.max(diff);
            worst_res = worst_res.max(res);
            if !(diff < 1e-10 && res < 1e-10) {
                oracle_fail += 1;
            }
        }
    });
    let err_note = if errors.is_empty() {
        String::new()
    } else {
        format!("; errors: {}", errors.join(", "))
    };
    rep.line(
        "5 energy conservation, 1000 random lossless scenarios",
        cons_fail == 0 && errors.is_empty(),
        format!(
            "worst residual {worst_cons:.2e} (< 1e-9); {cons_fail} over tolerance; {} evaluation errors{err_note}; {dt:.2?}",
            errors.len()
        ),
    );
    rep.line(
        "6 cascade vs direct oracle, same scenarios",
        oracle_fail == 0 && errors.is_empty(),
        format!(
            "worst coefficient diff {worst_diff:.2e}, worst field residual {worst_res:.2e} (< 1e-10); {oracle_fail} over tolerance"
        ),
    );
}

fn criterion_7(rep: &mut Report) {
    let n = 2.2;
    let lam = consts::wavelength(F0);
    let glass = MaterialParams::dielectric(n).unwrap();
    let t = matching_matrix(&Medium::Air, &Medium::Material(glass), F0, 0.0)
        .unwrap()
        .left_columns();
    let fresnel = solve_coefficients(&t, parallel()).unwrap().r_co().norm_sqr();

    let half = Stack::new(vec![Layer::new(glass, lam / (2.0 * n)).unwrap()]);
    let t_half = solve(&half, F0, 0.0, parallel()).unwrap().t_co().norm();

    let (kappa, d) = (0.1, lam / 4.0);
    let chiral = Stack::new(vec![
        Layer::new(MaterialParams::lossless(2.0, 1.0, kappa).unwrap(), d).unwrap()
    ]);
    let rot = rotation_angle(&solve(&chiral, F0, 0.0, parallel()).unwrap()).unwrap();
    let expect = (consts::k0(F0) * kappa * d).to_degrees();

    let (e1, e2, e3) = ((fresnel - 0.140625).abs(), (t_half - 1.0).abs(), (rot - expect).abs());
    rep.line(
        "7 analytic regressions",
        e1 < 1e-12 && e2 < 1e-12 && e3 < 1e-12,
        format!(
            "Fresnel |r|^2 = {fresnel:.15} (err {e1:.1e}); half-wave |t| err {e2:.1e}; \
             chiral rotation {rot:.12} vs {expect:.12} deg (err {e3:.1e}); tolerance 1e-12"
        ),
    );
}

fn criterion_8(rep: &mut Report) {
    let mut worst = 0.0f64;
    let mut failures = 0;
    for p in &PRESETS {
        let out = evaluate(&p.config().achiral()).unwrap();
        failures += out.failures.len();
        for r in &out.rows {
            worst = worst.max(r.powers.r_cross).max(r.powers.t_cross);
        }
    }
    rep.line(
        "8 achiral reduction on every preset",
        worst < 1e-12 && failures == 0,
        format!("worst cross-polarised power {worst:.2e} (< 1e-12); {failures} failed points"),
    );
}

fn qualitative(rep: &mut Report) {
    for name in ["fig4", "fig5", "fig10", "fig11", "fig14", "fig15"] {
        let (out, dt) = run_preset(name);
        let worst = out
            .rows
            .iter()
            .map(|r| r.powers.conservation_residual)
            .fold(0.0, f64::max);
        rep.line(
            &format!("qualitative {name}"),
            out.failures.is_empty() && worst < 1e-9 && dt < TIME_LIMIT,
            format!(
                "{} of {} points, worst conservation residual {worst:.2e} (< 1e-9); {dt:.2?}",
                out.rows.len(),
                out.points
            ),
        );
    }
}

fn main() -> ExitCode {
    let mut rep = Report { failed: 0 };
    criterion_1(&mut rep);
    criterion_2(&mut rep);
    criterion_3(&mut rep);
    criterion_4(&mut rep);
    criteria_5_and_6(&mut rep);
    criterion_7(&mut rep);
    criterion_8(&mut rep);
    qualitative(&mut rep);
    println!("acceptance: {} failed", rep.failed);
    if rep.failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
