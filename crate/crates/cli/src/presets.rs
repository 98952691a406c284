//! Built-in scenarios, one per published figure. Parameters are transcribed
//! from the figure captions. All stacks have five slabs, f0 = 1 THz, and a
//! parallel-polarised incident wave.

use crate::config::ScenarioConfig;
use crate::error::ConfigError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    CnDielectric,
    CnCn,
    CnChiral,
}

impl Family {
    pub fn label(self) -> &'static str {
        match self {
            Family::CnDielectric => "CN-dielectric",
            Family::CnCn => "CN-CN",
            Family::CnChiral => "CN-chiral",
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct Preset {
    pub name: &'static str,
    pub figure: u32,
    pub family: Family,
    pub caption: &'static str,
    pub sweep: &'static str,
    toml: &'static str,
}

impl Preset {
    pub fn source(&self) -> &'static str {
        self.toml
    }

    pub fn config(&self) -> ScenarioConfig {
        ScenarioConfig::parse(self.toml).expect("built-in preset parses")
    }
}

macro_rules! freq_sweep {
    ($theta:literal) => {
        concat!(
            "[sweep]\naxis = \"frequency\"\nstart_hz = 0.05e12\nstop_hz = 4.0e12\ncount = 801\ntheta_deg = ",
            $theta,
            "\n"
        )
    };
}

macro_rules! cn_dielectric {
    ($name:literal, $kappa_h:literal, $kappa_l:literal, $sweep:expr) => {
        concat!(
            "name = \"",
            $name,
            "\"\n",
            "reference_frequency_hz = 1.0e12\n\n",
            "[incident]\nparallel = 1.0\nperpendicular = 0.0\n\n",
            "[materials.H]\neps_r = 1.6e-4\nmu_r = 1.0e-5\nkappa = ",
            $kappa_h,
            "\n\n",
            "[materials.L]\nn = 2.2\nkappa = ",
            $kappa_l,
            "\n\n",
            "[stack]\na = \"H\"\nb = \"L\"\nslab_count = 5\n\n",
            "[stack.thickness]\nH = \"lambda0/4\"\nL = \"lambda0/(4n)\"\n\n",
            $sweep
        )
    };
}

macro_rules! cn_cn {
    ($name:literal, $sweep:expr) => {
        concat!(
            "name = \"",
            $name,
            "\"\n",
            "reference_frequency_hz = 1.0e12\n\n",
            "[incident]\nparallel = 1.0\nperpendicular = 0.0\n\n",
            "[materials.H]\neps_r = 1.6e-4\nmu_r = 1.0e-5\nkappa = 0.1\n\n",
            "[materials.L]\neps_r = 2.5e-5\nmu_r = 1.0e-5\nkappa = 0.1\n\n",
            "[stack]\na = \"H\"\nb = \"L\"\nslab_count = 5\n\n",
            "[stack.thickness]\nH = \"lambda0/4\"\nL = \"lambda0/4\"\n\n",
            $sweep
        )
    };
}

const CAP_2: &str = "ε_H=1.6×10⁻⁴, μ_H=1×10⁻⁵, n_L=2.2, d_H=|n_L|d_L=λ₀/4, κ_H=0.167";
const CAP_4: &str = "ε_H=1.6×10⁻⁴, μ_H=1×10⁻⁵, n_L=2.2, d_H=|n_L|d_L=λ₀/4, κ_H=κ_L=κ=0.1, θ_i=70°";
const CAP_6: &str = "ε_H=1.6×10⁻⁴, μ_H=1×10⁻⁵, n_L=2.2, d_H=|n_L|d_L=λ₀/4, κ_H=0.1, f/f₀=1";
const CAP_8: &str = "ε_H=1.6×10⁻⁴, ε_L=2.5×10⁻⁵, d_H=d_L=λ₀/4, κ_H=κ_L=0.1";
const CAP_10: &str = "ε_H=1.6×10⁻⁴, ε_L=2.5×10⁻⁵, μ_H=μ_L=10⁻⁵, d_H=d_L=λ₀/4, κ_H=κ_L=0.1, θ_i=45";
const CAP_11: &str = "ε_H=1.6×10⁻⁴, ε_L=2.5×10⁻⁵, μ_H=μ_L=10⁻⁵, d_H=d_L=λ₀/4, κ_H=κ_L=0.1, θ_i=15";
const CAP_12: &str = "ε_H=1.6×10⁻⁴, ε_L=2.5×10⁻⁵, μ_H=μ_L=10⁻⁵, d_H=d_L=λ₀/4, κ_H=κ_L=0.1, f/f₀=1";
const CAP_13: &str = "ε_H=1.6×10⁻⁴, ε_L=2.5×10⁻⁵, d_H=d_L=λ₀/4, μ_H=μ_L=10⁻⁵, κ_H=κ_L=0.1, f/f₀=1";

const ANGLE: &str = "angle 0-90 deg at f0, 901 pts";

pub static PRESETS: [Preset; 14] = [
    Preset {
        name: "fig2",
        figure: 2,
        family: Family::CnDielectric,
        caption: CAP_2,
        sweep: "frequency 0.05-4 THz at 0 deg, 801 pts",
        toml: cn_dielectric!("fig2", "0.167", "0.0", freq_sweep!("0.0")),
    },
    Preset {
        name: "fig3",
        figure: 3,
        family: Family::CnDielectric,
        caption: CAP_2,
        sweep: "frequency 0.05-4 THz at 0 deg, 801 pts",
        toml: cn_dielectric!("fig3", "0.167", "0.0", freq_sweep!("0.0")),
    },
    Preset {
        name: "fig4",
        figure: 4,
        family: Family::CnDielectric,
        caption: CAP_4,
        sweep: "frequency 0.05-4 THz at 70 deg, 801 pts",
        toml: cn_dielectric!("fig4", "0.1", "0.1", freq_sweep!("70.0")),
    },
    Preset {
        name: "fig5",
        figure: 5,
        family: Family::CnDielectric,
        caption: CAP_4,
        sweep: "frequency 0.05-4 THz at 70 deg, 801 pts",
        toml: cn_dielectric!("fig5", "0.1", "0.1", freq_sweep!("70.0")),
    },
    Preset {
        name: "fig6",
        figure: 6,
        family: Family::CnDielectric,
        caption: CAP_6,
        sweep: ANGLE,
        toml: cn_dielectric!(
            "fig6",
            "0.1",
            "0.0",
            "[sweep]\naxis = \"angle\"\nstart_deg = 0.0\nstop_deg = 90.0\ncount = 901\ninclude_stop = false\n"
        ),
    },
    Preset {
        name: "fig7",
        figure: 7,
        family: Family::CnDielectric,
        caption: CAP_6,
        sweep: ANGLE,
        toml: cn_dielectric!(
            "fig7",
            "0.1",
            "0.0",
            "[sweep]\naxis = \"angle\"\nstart_deg = 0.0\nstop_deg = 90.0\ncount = 901\ninclude_stop = false\n"
        ),
    },
    Preset {
        name: "fig8",
        figure: 8,
        family: Family::CnCn,
        caption: CAP_8,
        sweep: "frequency 0.05-4 THz at 0 deg, 801 pts",
        toml: cn_cn!("fig8", freq_sweep!("0.0")),
    },
    Preset {
        name: "fig9",
        figure: 9,
        family: Family::CnCn,
        caption: CAP_8,
        sweep: "frequency 0.05-4 THz at 0 deg, 801 pts",
        toml: cn_cn!("fig9", freq_sweep!("0.0")),
    },
    Preset {
        name: "fig10",
        figure: 10,
        family: Family::CnCn,
        caption: CAP_10,
        sweep: "frequency 0.05-4 THz at 45 deg, 801 pts",
        toml: cn_cn!("fig10", freq_sweep!("45.0")),
    },
    Preset {
        name: "fig11",
        figure: 11,
        family: Family::CnCn,
        caption: CAP_11,
        sweep: "frequency 0.05-4 THz at 15 deg, 801 pts",
        toml: cn_cn!("fig11", freq_sweep!("15.0")),
    },
    Preset {
        name: "fig12",
        figure: 12,
        family: Family::CnCn,
        caption: CAP_12,
        sweep: ANGLE,
        toml: cn_cn!(
            "fig12",
            "[sweep]\naxis = \"angle\"\nstart_deg = 0.0\nstop_deg = 90.0\ncount = 901\ninclude_stop = false\n"
        ),
    },
    Preset {
        name: "fig13",
        figure: 13,
        family: Family::CnCn,
        caption: CAP_13,
        sweep: ANGLE,
        toml: cn_cn!(
            "fig13",
            "[sweep]\naxis = \"angle\"\nstart_deg = 0.0\nstop_deg = 90.0\ncount = 901\ninclude_stop = false\n"
        ),
    },
    // The CN-chiral captions repeat the CN-CN values.
    Preset {
        name: "fig14",
        figure: 14,
        family: Family::CnChiral,
        caption: CAP_12,
        sweep: ANGLE,
        toml: cn_cn!(
            "fig14",
            "[sweep]\naxis = \"angle\"\nstart_deg = 0.0\nstop_deg = 90.0\ncount = 901\ninclude_stop = false\n"
        ),
    },
    Preset {
        name: "fig15",
        figure: 15,
        family: Family::CnChiral,
        caption: CAP_13,
        sweep: ANGLE,
        toml: cn_cn!(
            "fig15",
            "[sweep]\naxis = \"angle\"\nstart_deg = 0.0\nstop_deg = 90.0\ncount = 901\ninclude_stop = false\n"
        ),
    },
];

pub fn find(name: &str) -> Result<&'static Preset, ConfigError> {
    PRESETS
        .iter()
        .find(|p| p.name == name)
        .ok_or_else(|| ConfigError::UnknownPreset(name.to_string()))
}

/// Plain-text table for `list-presets`.
pub fn table() -> String {
    let mut out = format!(
        "{:<7} {:>6}  {:<14} {:<40} {}\n",
        "name", "figure", "family", "sweep", "parameters"
    );
    for p in &PRESETS {
        out.push_str(&format!(
            "{:<7} {:>6}  {:<14} {:<40} {}\n",
            p.name,
            p.figure,
            p.family.label(),
            p.sweep,
            p.caption
        ));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::SweepSpec;

    #[test]
    fn one_preset_per_figure() {
        let figures: Vec<u32> = PRESETS.iter().map(|p| p.figure).collect();
        assert_eq!(figures, (2..=15).collect::<Vec<_>>());
        for p in &PRESETS {
            assert_eq!(p.name, format!("fig{}", p.figure));
            let cfg = p.config();
            assert_eq!(cfg.name, p.name);
            assert_eq!(cfg.layers.len(), 5);
        }
    }

    #[test]
    fn fig2_thicknesses() {
        let cfg = find("fig2").unwrap().config();
        assert!((cfg.layers[0].thickness_m - 74.948e-6).abs() < 1e-9);
        assert!((cfg.layers[1].thickness_m - 34.067e-6).abs() < 1e-9);
        assert_eq!(cfg.materials["H"].kappa, 0.167);
    }

    #[test]
    fn fig10_and_fig13_sweeps() {
        match find("fig10").unwrap().config().sweep {
            SweepSpec::Frequency { theta_deg, .. } => assert_eq!(theta_deg, 45.0),
            other => panic!("{other:?}"),
        }
        match find("fig13").unwrap().config().sweep {
            SweepSpec::Angle { frequency_hz, .. } => assert_eq!(frequency_hz, 1e12),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn unknown_preset() {
        assert_eq!(find("fig1").unwrap_err(), ConfigError::UnknownPreset("fig1".into()));
    }
}
