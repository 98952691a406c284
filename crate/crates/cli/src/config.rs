//! Scenario configuration: a TOML document with a named material table, a
//! layer sequence or periodic spec, and a sweep.
//!
//! ```toml
//! name = "cn-dielectric"
//! reference_frequency_hz = 1.0e12
//! engine = "cascade"
//!
//! [incident]
//! parallel = 1.0
//! perpendicular = 0.0
//!
//! [materials.cn]
//! eps_r = 1.6e-4
//! mu_r = 1.0e-5
//! kappa = 0.167
//!
//! [materials.glass]
//! n = 2.2
//!
//! [stack]
//! a = "cn"
//! b = "glass"
//! slab_count = 5
//!
//! [stack.thickness]
//! cn = "lambda0/4"
//! glass = "lambda0/(4n)"
//!
//! [sweep]
//! axis = "frequency"
//! start_hz = 0.05e12
//! stop_hz = 4.0e12
//! count = 801
//! theta_deg = 0.0
//! ```

use std::collections::BTreeMap;

use chiral_tmm::{consts, Cx, Engine, Layer, MaterialParams, Stack, SweepGrid};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use toml::Spanned;

use crate::error::ConfigError;

#[derive(Debug, Clone, Copy, PartialEq, Deserialize)]
#[serde(untagged)]
enum ComplexValue {
    Real(f64),
    Pair([f64; 2]),
}

impl ComplexValue {
    fn pair(self) -> [f64; 2] {
        match self {
            ComplexValue::Real(re) => [re, 0.0],
            ComplexValue::Pair(p) => p,
        }
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    name: Option<String>,
    reference_frequency_hz: Option<Spanned<f64>>,
    engine: Option<EngineName>,
    incident: Option<RawIncident>,
    #[serde(default)]
    materials: BTreeMap<String, Spanned<RawMaterial>>,
    stack: RawStack,
    sweep: Option<RawSweep>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum EngineName {
    Cascade,
    Direct,
}

impl From<EngineName> for Engine {
    fn from(e: EngineName) -> Self {
        match e {
            EngineName::Cascade => Engine::Cascade,
            EngineName::Direct => Engine::Direct,
        }
    }
}

impl From<Engine> for EngineName {
    fn from(e: Engine) -> Self {
        match e {
            Engine::Cascade => EngineName::Cascade,
            Engine::Direct => EngineName::Direct,
        }
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawIncident {
    parallel: Option<ComplexValue>,
    perpendicular: Option<ComplexValue>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawMaterial {
    eps_r: Option<ComplexValue>,
    mu_r: Option<ComplexValue>,
    /// Shorthand for a non-magnetic dielectric, `eps_r = n^2`, `mu_r = 1`.
    n: Option<f64>,
    #[serde(default)]
    kappa: f64,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawStack {
    a: Option<Spanned<String>>,
    b: Option<Spanned<String>>,
    slab_count: Option<Spanned<i64>>,
    #[serde(default)]
    thickness: BTreeMap<String, Spanned<ThicknessSpec>>,
    layers: Option<Vec<RawLayer>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawLayer {
    material: Spanned<String>,
    thickness: Spanned<ThicknessSpec>,
}

/// Thickness in metres, or a wavelength rule evaluated at the reference
/// frequency: `"lambda0/K"` (physical) or `"lambda0/(Kn)"` (optical, using
/// `|n|` of the layer's material).
#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(untagged)]
pub enum ThicknessSpec {
    Meters(f64),
    Rule(String),
}

#[derive(Debug, Deserialize)]
#[serde(tag = "axis", rename_all = "lowercase", deny_unknown_fields)]
enum RawSweep {
    Frequency {
        start_hz: f64,
        stop_hz: f64,
        count: usize,
        #[serde(default)]
        theta_deg: f64,
    },
    Angle {
        start_deg: f64,
        stop_deg: f64,
        count: usize,
        #[serde(default)]
        include_stop: bool,
        frequency_hz: Option<f64>,
    },
    Point {
        frequency_hz: Option<f64>,
        #[serde(default)]
        theta_deg: f64,
    },
}

/// Material entry of a resolved configuration.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MaterialEntry {
    pub eps_r: [f64; 2],
    pub mu_r: [f64; 2],
    pub kappa: f64,
}

impl MaterialEntry {
    pub fn params(&self) -> MaterialParams<f64> {
        MaterialParams::new(
            Cx::new(self.eps_r[0], self.eps_r[1]),
            Cx::new(self.mu_r[0], self.mu_r[1]),
            self.kappa,
        )
        .expect("validated during resolution")
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ResolvedLayer {
    pub material: String,
    pub thickness_m: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PeriodicSpec {
    pub a: String,
    pub b: String,
    pub slab_count: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "axis", rename_all = "lowercase")]
pub enum SweepSpec {
    Frequency {
        start_hz: f64,
        stop_hz: f64,
        count: usize,
        theta_deg: f64,
    },
    Angle {
        start_deg: f64,
        stop_deg: f64,
        count: usize,
        include_stop: bool,
        frequency_hz: f64,
    },
}

/// Fully resolved scenario: every name bound, every thickness in metres.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScenarioConfig {
    pub name: String,
    pub reference_frequency_hz: f64,
    pub engine: EngineName,
    /// `(E_par, E_perp)` as `[re, im]` pairs.
    pub incident: [[f64; 2]; 2],
    pub materials: BTreeMap<String, MaterialEntry>,
    pub periodic: Option<PeriodicSpec>,
    pub layers: Vec<ResolvedLayer>,
    pub sweep: SweepSpec,
}

fn line_of(text: &str, offset: usize) -> usize {
    text[..offset.min(text.len())].bytes().filter(|&b| b == b'\n').count() + 1
}

struct Ctx<'a> {
    text: &'a str,
}

impl Ctx<'_> {
    fn at<T>(&self, s: &Spanned<T>, message: impl Into<String>) -> ConfigError {
        ConfigError::AtLine {
            line: line_of(self.text, s.span().start),
            message: message.into(),
        }
    }
}

fn parse_rule(rule: &str) -> Option<(f64, bool)> {
    let rest = rule.trim().strip_prefix("lambda0/")?.trim();
    if let Some(inner) = rest.strip_prefix('(').and_then(|r| r.strip_suffix(')')) {
        let k = inner.trim().strip_suffix('n')?.trim();
        let k = if k.is_empty() {
            1.0
        } else {
            k.strip_suffix('*').unwrap_or(k).trim().parse().ok()?
        };
        Some((k, true))
    } else {
        Some((rest.parse().ok()?, false))
    }
}

impl ScenarioConfig {
    /// Parses and resolves a TOML scenario document.
    pub fn parse(text: &str) -> Result<Self, ConfigError> {
        let raw: RawConfig = toml::from_str(text).map_err(|e| ConfigError::Syntax(e.to_string()))?;
        let cx = Ctx { text };

        let f0 = match &raw.reference_frequency_hz {
            Some(f) if !(*f.get_ref() > 0.0 && f.get_ref().is_finite()) => {
                return Err(cx.at(f, "reference_frequency_hz must be positive"));
            }
            Some(f) => *f.get_ref(),
            None => 1e12,
        };

        let mut materials = BTreeMap::new();
        for (name, m) in &raw.materials {
            let entry = resolve_material(m.get_ref()).map_err(|msg| cx.at(m, format!("material `{name}`: {msg}")))?;
            materials.insert(name.clone(), entry);
        }

        let lookup = |s: &Spanned<String>| -> Result<MaterialEntry, ConfigError> {
            materials
                .get(s.get_ref())
                .copied()
                .ok_or_else(|| cx.at(s, format!("unresolved material `{}`", s.get_ref())))
        };
        let resolve_thickness = |spec: &Spanned<ThicknessSpec>, mat: &MaterialEntry| -> Result<f64, ConfigError> {
            let d = match spec.get_ref() {
                ThicknessSpec::Meters(d) => *d,
                ThicknessSpec::Rule(rule) => {
                    let (k, optical) = parse_rule(rule).ok_or_else(|| {
                        cx.at(
                            spec,
                            format!("unrecognised thickness rule `{rule}` (use \"lambda0/K\" or \"lambda0/(Kn)\")"),
                        )
                    })?;
                    let lam0 = consts::wavelength(f0);
                    if optical {
                        lam0 / (k * mat.params().refractive_index().norm())
                    } else {
                        lam0 / k
                    }
                }
            };
            if d > 0.0 && d.is_finite() {
                Ok(d)
            } else {
                Err(cx.at(spec, format!("thickness must be positive, got {d} m")))
            }
        };

        let st = &raw.stack;
        let periodic_keys = st.a.is_some() || st.b.is_some() || st.slab_count.is_some();
        let (periodic, layers) = match (&st.layers, periodic_keys) {
            (Some(_), true) => {
                return Err(ConfigError::Invalid(
                    "[stack] takes either `layers` or `a`/`b`/`slab_count`, not both".into(),
                ))
            }
            (Some(list), false) => {
                if !st.thickness.is_empty() {
                    return Err(ConfigError::Invalid(
                        "[stack.thickness] applies to periodic stacks only; give each layer its own thickness".into(),
                    ));
                }
                let layers = list
                    .iter()
                    .map(|l| {
                        let mat = lookup(&l.material)?;
                        Ok(ResolvedLayer {
                            material: l.material.get_ref().clone(),
                            thickness_m: resolve_thickness(&l.thickness, &mat)?,
                        })
                    })
                    .collect::<Result<Vec<_>, ConfigError>>()?;
                (None, layers)
            }
            (None, true) => {
                let (a, b, count) = match (&st.a, &st.b, &st.slab_count) {
                    (Some(a), Some(b), Some(c)) => (a, b, c),
                    _ => {
                        return Err(ConfigError::Invalid(
                            "periodic [stack] needs `a`, `b` and `slab_count`".into(),
                        ))
                    }
                };
                let n = *count.get_ref();
                if n <= 0 {
                    return Err(cx.at(count, "slab_count must be positive"));
                }
                if n % 2 == 0 {
                    return Err(cx.at(count, "periodic stack must have odd slab count"));
                }
                let mat_a = lookup(a)?;
                let mat_b = lookup(b)?;
                for key in st.thickness.keys() {
                    if key != a.get_ref() && key != b.get_ref() {
                        let span = &st.thickness[key];
                        return Err(cx.at(span, format!("thickness given for `{key}`, which is not in the stack")));
                    }
                }
                let thickness_of = |name: &Spanned<String>, mat: &MaterialEntry| {
                    let spec = st
                        .thickness
                        .get(name.get_ref())
                        .ok_or_else(|| cx.at(name, format!("no [stack.thickness] entry for `{}`", name.get_ref())))?;
                    resolve_thickness(spec, mat)
                };
                let da = thickness_of(a, &mat_a)?;
                let db = thickness_of(b, &mat_b)?;
                let layers = (0..n as usize)
                    .map(|i| {
                        let (name, d) = if i % 2 == 0 { (a, da) } else { (b, db) };
                        ResolvedLayer {
                            material: name.get_ref().clone(),
                            thickness_m: d,
                        }
                    })
                    .collect();
                (
                    Some(PeriodicSpec {
                        a: a.get_ref().clone(),
                        b: b.get_ref().clone(),
                        slab_count: n as usize,
                    }),
                    layers,
                )
            }
            (None, false) => (None, Vec::new()),
        };

        let sweep = match raw.sweep {
            None => SweepSpec::Frequency {
                start_hz: f0,
                stop_hz: f0,
                count: 1,
                theta_deg: 0.0,
            },
            Some(RawSweep::Frequency {
                start_hz,
                stop_hz,
                count,
                theta_deg,
            }) => SweepSpec::Frequency {
                start_hz,
                stop_hz,
                count,
                theta_deg,
            },
            Some(RawSweep::Angle {
                start_deg,
                stop_deg,
                count,
                include_stop,
                frequency_hz,
            }) => SweepSpec::Angle {
                start_deg,
                stop_deg,
                count,
                include_stop,
                frequency_hz: frequency_hz.unwrap_or(f0),
            },
            Some(RawSweep::Point {
                frequency_hz,
                theta_deg,
            }) => {
                let f = frequency_hz.unwrap_or(f0);
                SweepSpec::Frequency {
                    start_hz: f,
                    stop_hz: f,
                    count: 1,
                    theta_deg,
                }
            }
        };

        let incident = match raw.incident {
            None => [[1.0, 0.0], [0.0, 0.0]],
            Some(inc) => [
                inc.parallel.map(ComplexValue::pair).unwrap_or([0.0, 0.0]),
                inc.perpendicular.map(ComplexValue::pair).unwrap_or([0.0, 0.0]),
            ],
        };
        if incident.iter().flatten().all(|&v| v == 0.0) {
            return Err(ConfigError::Invalid("incident amplitude is zero".into()));
        }
        if !incident.iter().flatten().all(|v| v.is_finite()) {
            return Err(ConfigError::Invalid("incident amplitude must be finite".into()));
        }

        let cfg = ScenarioConfig {
            name: raw.name.unwrap_or_else(|| "scenario".into()),
            reference_frequency_hz: f0,
            engine: raw.engine.unwrap_or(EngineName::Cascade),
            incident,
            materials,
            periodic,
            layers,
            sweep,
        };
        cfg.grid()?;
        Ok(cfg)
    }

    pub fn stack(&self) -> Stack<f64> {
        let layer = |name: &str, d: f64| {
            Layer::new(self.materials[name].params(), d).expect("thickness validated during resolution")
        };
        match &self.periodic {
            Some(p) => {
                let a = layer(&p.a, self.layers[0].thickness_m);
                let b = if p.slab_count > 1 {
                    layer(&p.b, self.layers[1].thickness_m)
                } else {
                    a
                };
                Stack::periodic(a, b, p.slab_count).expect("odd count validated during resolution")
            }
            None => Stack::new(self.layers.iter().map(|l| layer(&l.material, l.thickness_m)).collect()),
        }
    }

    pub fn grid(&self) -> Result<SweepGrid<f64>, ConfigError> {
        let g = match self.sweep {
            SweepSpec::Frequency {
                start_hz,
                stop_hz,
                count,
                theta_deg,
            } => SweepGrid::frequency(start_hz, stop_hz, count, theta_deg),
            SweepSpec::Angle {
                start_deg,
                stop_deg,
                count,
                include_stop,
                frequency_hz,
            } => SweepGrid::angle(start_deg, stop_deg, count, include_stop, frequency_hz),
        };
        g.map_err(|e| ConfigError::Invalid(format!("[sweep]: {e}")))
    }

    pub fn incident(&self) -> [Cx<f64>; 2] {
        self.incident.map(|[re, im]| Cx::new(re, im))
    }

    pub fn engine(&self) -> Engine {
        self.engine.into()
    }

    /// Replaces the number of sweep points.
    pub fn with_points(mut self, n: usize) -> Result<Self, ConfigError> {
        match &mut self.sweep {
            SweepSpec::Frequency { count, .. } | SweepSpec::Angle { count, .. } => *count = n,
        }
        self.grid()?;
        Ok(self)
    }

    pub fn with_engine(mut self, engine: Engine) -> Self {
        self.engine = engine.into();
        self
    }

    /// Sets every material's chirality to zero.
    pub fn achiral(mut self) -> Self {
        for m in self.materials.values_mut() {
            m.kappa = 0.0;
        }
        self
    }

    /// SHA-256 of the canonical JSON form of the resolved configuration.
    pub fn hash(&self) -> String {
        let canonical = serde_json::to_vec(self).expect("config serialises");
        let digest = Sha256::digest(&canonical);
        digest.iter().map(|b| format!("{b:02x}")).collect()
    }
}

fn resolve_material(m: &RawMaterial) -> Result<MaterialEntry, String> {
    let (eps_r, mu_r) = match (m.n, m.eps_r, m.mu_r) {
        (Some(n), None, None) => ([n * n, 0.0], [1.0, 0.0]),
        (Some(_), _, _) => return Err("give either `n` or `eps_r`/`mu_r`, not both".into()),
        (None, Some(e), Some(u)) => (e.pair(), u.pair()),
        (None, _, _) => return Err("needs `eps_r` and `mu_r` (or `n`)".into()),
    };
    let entry = MaterialEntry {
        eps_r,
        mu_r,
        kappa: m.kappa,
    };
    MaterialParams::new(Cx::new(eps_r[0], eps_r[1]), Cx::new(mu_r[0], mu_r[1]), m.kappa).map_err(|e| e.to_string())?;
    Ok(entry)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rules() {
        assert_eq!(parse_rule("lambda0/4"), Some((4.0, false)));
        assert_eq!(parse_rule("lambda0/(4n)"), Some((4.0, true)));
        assert_eq!(parse_rule("lambda0/(2*n)"), Some((2.0, true)));
        assert_eq!(parse_rule("lambda0/(n)"), Some((1.0, true)));
        assert_eq!(parse_rule("lambda/4"), None);
        assert_eq!(parse_rule("lambda0/x"), None);
    }

    #[test]
    fn minimal_air_only() {
        let cfg = ScenarioConfig::parse("[stack]\nlayers = []\n").unwrap();
        assert!(cfg.stack().is_empty());
        assert_eq!(cfg.grid().unwrap().points().len(), 1);
    }

    #[test]
    fn even_slab_count_rejected_with_line() {
        let text = r#"
[materials.x]
n = 1.5

[stack]
a = "x"
b = "x"
slab_count = 4

[stack.thickness]
x = 1e-5
"#;
        let err = ScenarioConfig::parse(text).unwrap_err();
        assert_eq!(
            err,
            ConfigError::AtLine {
                line: 8,
                message: "periodic stack must have odd slab count".into()
            }
        );
    }

    #[test]
    fn unresolved_material_reports_line() {
        let text = "[stack]\nlayers = [\n  { material = \"ghost\", thickness = 1e-6 },\n]\n";
        match ScenarioConfig::parse(text).unwrap_err() {
            ConfigError::AtLine { line, message } => {
                assert_eq!(line, 3);
                assert!(message.contains("ghost"));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn unknown_key_rejected() {
        let err = ScenarioConfig::parse("colour = 3\n[stack]\nlayers = []\n").unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("colour") && msg.contains("line 1"), "{msg}");
    }

    #[test]
    fn non_positive_thickness_rejected() {
        let text = "[materials.g]\nn = 2.0\n[stack]\nlayers = [{ material = \"g\", thickness = -1e-6 }]\n";
        match ScenarioConfig::parse(text).unwrap_err() {
            ConfigError::AtLine { line, .. } => assert_eq!(line, 4),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn zero_permittivity_rejected() {
        let text = "[materials.bad]\neps_r = 0.0\nmu_r = 1.0\n[stack]\nlayers = []\n";
        let err = ScenarioConfig::parse(text).unwrap_err().to_string();
        assert!(err.contains("line 1") && err.contains("eps_r"), "{err}");
    }

    #[test]
    fn complex_and_explicit_layers() {
        let text = r#"
engine = "direct"
[incident]
perpendicular = [0.0, 1.0]
[materials.lossy]
eps_r = [2.0, -0.1]
mu_r = 1.0
kappa = 0.05
[stack]
layers = [
  { material = "lossy", thickness = "lambda0/(4n)" },
  { material = "lossy", thickness = 2e-5 },
]
[sweep]
axis = "angle"
start_deg = 0.0
stop_deg = 80.0
count = 9
include_stop = true
"#;
        let cfg = ScenarioConfig::parse(text).unwrap();
        assert_eq!(cfg.engine(), Engine::Direct);
        assert_eq!(cfg.incident[1], [0.0, 1.0]);
        assert_eq!(cfg.stack().len(), 2);
        assert_eq!(cfg.grid().unwrap().points().last().unwrap().1, 80.0);
        let n = Cx::new(2.0, -0.1).sqrt().norm();
        let expect = consts::wavelength(1e12) / (4.0 * n);
        assert!((cfg.layers[0].thickness_m - expect).abs() < 1e-18);
    }

    #[test]
    fn hash_ignores_formatting() {
        let a = ScenarioConfig::parse("[stack]\nlayers = []\n").unwrap();
        let b = ScenarioConfig::parse("# comment\n\n[stack]\n  layers = [ ]\n").unwrap();
        assert_eq!(a.hash(), b.hash());
        assert_ne!(a.hash(), a.clone().with_engine(Engine::Direct).hash());
    }
}
