//! Sweep configuration: a TOML file with one table per sweep.
//!
//! ```toml
//! [l1]
//! lattice = ["rotated_zn", "zn"]
//! n = 2
//! k = "infinite"
//! l = 1
//! m = 1.0
//! snr_db = [0.0, 5.0, 10.0]
//! targets = ["slb", "sub", "sim"]
//! ```
//!
//! Bounds use the geometry of the first lattice; `sim` adds one column per
//! lattice.

use std::collections::BTreeMap;
use std::fmt;
use std::path::{Path, PathBuf};

use latbound::lattice::{a2_generator, rotated_zn_generator, zn_generator, Constellation, GeneratorMatrix, RotationSpec};
use latbound::bounds::BoundKind;
use latbound::sim::SimConfig;
use serde::{Deserialize, Serialize};

use crate::genfile;
use crate::CliError;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum OneOrMany {
    One(String),
    Many(Vec<String>),
}

impl OneOrMany {
    pub fn to_vec(&self) -> Vec<String> {
        match self {
            OneOrMany::One(s) => vec![s.clone()],
            OneOrMany::Many(v) => v.clone(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PerDim {
    Finite(u32),
    Infinite,
}

impl Serialize for PerDim {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            PerDim::Finite(k) => s.serialize_u32(*k),
            PerDim::Infinite => s.serialize_str("infinite"),
        }
    }
}

impl<'de> Deserialize<'de> for PerDim {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Int(i64),
            Text(String),
        }
        match Raw::deserialize(d)? {
            Raw::Int(k) if k >= 1 && k <= u32::MAX as i64 => Ok(PerDim::Finite(k as u32)),
            Raw::Int(k) => Err(serde::de::Error::custom(format!("k = {k} must be a positive integer"))),
            Raw::Text(s) if s == "infinite" => Ok(PerDim::Infinite),
            Raw::Text(s) => Err(serde::de::Error::custom(format!("k = {s:?}: expected an integer or \"infinite\""))),
        }
    }
}

fn default_frames() -> u64 {
    SimConfig::default().frames
}
fn default_seed() -> u64 {
    SimConfig::default().seed
}
fn default_window() -> u32 {
    SimConfig::default().decode_window
}
fn default_ci() -> f64 {
    SimConfig::default().ci_level
}
fn default_samples() -> u64 {
    latbound::bounds::BoundOptions::default().samples
}

/// One sweep as written in the file.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepSpec {
    pub lattice: OneOrMany,
    pub n: usize,
    pub k: PerDim,
    pub l: u32,
    pub m: f64,
    pub snr_db: Vec<f64>,
    pub targets: Vec<String>,
    #[serde(default = "default_frames")]
    pub frames: u64,
    #[serde(default = "default_seed")]
    pub seed: u64,
    #[serde(default = "default_window")]
    pub decode_window: u32,
    #[serde(default = "default_ci")]
    pub ci_level: f64,
    /// Draws for bounds without a closed form.
    #[serde(default = "default_samples")]
    pub samples: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ConfigFile {
    pub sweeps: BTreeMap<String, SweepSpec>,
}

impl ConfigFile {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let f: ConfigFile = toml::from_str(text).map_err(|e| CliError::config("", e.message()))?;
        if f.sweeps.is_empty() {
            return Err(CliError::config("", "no sweep sections"));
        }
        Ok(f)
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
        Self::parse(&text)
    }

    /// Canonical text: sections sorted by name, keys in declaration order,
    /// defaults written out.
    pub fn to_canonical(&self) -> String {
        toml::to_string(self).expect("config values are always representable")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Target {
    Bound(BoundKind),
    Sim,
}

impl Target {
    pub fn parse(s: &str) -> Option<Self> {
        if s == "sim" {
            Some(Target::Sim)
        } else {
            BoundKind::from_name(s).map(Target::Bound)
        }
    }
}

impl fmt::Display for Target {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Target::Bound(k) => f.write_str(k.name()),
            Target::Sim => f.write_str("sim"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct LatticeEntry {
    pub label: String,
    pub constellation: Constellation,
}

/// A validated sweep ready to run.
#[derive(Clone, Debug)]
pub struct SweepConfig {
    pub name: String,
    pub lattices: Vec<LatticeEntry>,
    pub n: usize,
    pub k: PerDim,
    pub l: u32,
    pub m: f64,
    pub snr_db: Vec<f64>,
    pub targets: Vec<Target>,
    pub sim: SimConfig,
    pub samples: u64,
    pub output: String,
}

/// Command-line overrides applied before validation.
#[derive(Clone, Debug, Default)]
pub struct Overrides {
    pub seed: Option<u64>,
    pub frames: Option<u64>,
    pub targets: Option<Vec<String>>,
    pub out: Option<String>,
}

fn generator(name: &str, n: usize, base_dir: &Path) -> Result<GeneratorMatrix, CliError> {
    let field = "lattice";
    match name {
        "zn" => Ok(zn_generator(n)),
        "rotated_zn" => rotated_zn_generator(n, &RotationSpec::Cyclotomic).map_err(|e| CliError::config(field, e.to_string())),
        "a2" if n == 2 => Ok(a2_generator()),
        "a2" => Err(CliError::config(field, format!("a2 is two-dimensional, n = {n}"))),
        path => {
            let p: PathBuf = base_dir.join(path);
            let g = genfile::read_generator(&p)?;
            if g.dim() != n {
                return Err(CliError::config(field, format!("{} has dimension {}, n = {n}", p.display(), g.dim())));
            }
            Ok(g)
        }
    }
}

impl SweepConfig {
    pub fn from_spec(name: &str, spec: &SweepSpec, base_dir: &Path, ov: &Overrides) -> Result<Self, CliError> {
        if spec.n == 0 {
            return Err(CliError::config("n", "must be at least 1"));
        }
        if spec.l == 0 {
            return Err(CliError::config("l", "must be at least 1"));
        }
        if !(spec.m >= 0.5) {
            return Err(CliError::config("m", format!("{} is below 0.5", spec.m)));
        }
        if spec.snr_db.is_empty() {
            return Err(CliError::config("snr_db", "grid is empty"));
        }
        if spec.snr_db.iter().any(|x| !x.is_finite()) || spec.snr_db.windows(2).any(|w| w[1] <= w[0]) {
            return Err(CliError::config("snr_db", "grid must be finite and strictly increasing"));
        }
        let names = ov.targets.clone().unwrap_or_else(|| spec.targets.clone());
        if names.is_empty() {
            return Err(CliError::config("targets", "no targets"));
        }
        let mut targets = Vec::new();
        for t in &names {
            let t = Target::parse(t).ok_or_else(|| CliError::config("targets", format!("unknown target {t:?}")))?;
            if targets.contains(&t) {
                return Err(CliError::config("targets", format!("{t} listed twice")));
            }
            if let (Target::Bound(b), PerDim::Infinite) = (&t, spec.k) {
                if b.is_multi_sphere() {
                    return Err(CliError::config("targets", format!("{} needs a finite k", b.name())));
                }
            }
            targets.push(t);
        }
        let labels = spec.lattice.to_vec();
        if labels.is_empty() {
            return Err(CliError::config("lattice", "no lattice given"));
        }
        let mut lattices = Vec::new();
        for label in labels {
            let g = generator(&label, spec.n, base_dir)?;
            let c = match spec.k {
                PerDim::Finite(k) => Constellation::finite(g, k),
                PerDim::Infinite => Constellation::infinite(g, latbound::lattice::DEFAULT_WINDOW),
            }
            .map_err(|e| CliError::config("k", e.to_string()))?;
            lattices.push(LatticeEntry { label, constellation: c });
        }
        let sim = SimConfig {
            frames: ov.frames.unwrap_or(spec.frames),
            seed: ov.seed.unwrap_or(spec.seed),
            decode_window: spec.decode_window,
            ci_level: spec.ci_level,
        };
        sim.validate().map_err(|e| CliError::config("frames", e.to_string()))?;
        if spec.samples < 1000 {
            return Err(CliError::config("samples", "must be at least 1000"));
        }
        let output = format!("{}{}", ov.out.as_deref().unwrap_or(""), spec.output.as_deref().unwrap_or(name));
        Ok(SweepConfig {
            name: name.to_string(),
            lattices,
            n: spec.n,
            k: spec.k,
            l: spec.l,
            m: spec.m,
            snr_db: spec.snr_db.clone(),
            targets,
            sim,
            samples: spec.samples,
            output,
        })
    }
}

/// Every sweep of a file, validated, in section order.
pub fn load_sweeps(path: &Path, ov: &Overrides) -> Result<Vec<SweepConfig>, CliError> {
    let file = ConfigFile::load(path)?;
    let dir = path.parent().unwrap_or(Path::new("."));
    file.sweeps.iter().map(|(name, spec)| SweepConfig::from_spec(name, spec, dir, ov)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    const TEXT: &str = r#"
[b]
lattice = "zn"
n = 2
k = 4
l = 1
m = 1.0
snr_db = [0.0, 10.0]
targets = ["mslb", "sim"]

[a]
lattice = ["rotated_zn", "zn"]
n = 2
k = "infinite"
l = 100
m = 4
snr_db = [0, 5, 10]
targets = ["slb"]
seed = 7
"#;

    fn spec(text: &str) -> SweepSpec {
        ConfigFile::parse(text).unwrap().sweeps.into_values().next().unwrap()
    }

    #[test]
    fn canonical_round_trip() {
        let f = ConfigFile::parse(TEXT).unwrap();
        let canon = f.to_canonical();
        let again = ConfigFile::parse(&canon).unwrap();
        assert_eq!(f, again);
        assert_eq!(canon, again.to_canonical());
        assert!(canon.find("[a]").unwrap() < canon.find("[b]").unwrap());
        assert!(canon.contains("frames = 100000"));
    }

    #[test]
    fn field_level_errors() {
        let base = spec(TEXT);
        let check = |s: SweepSpec, field: &str| match SweepConfig::from_spec("x", &s, Path::new("."), &Overrides::default()) {
            Err(CliError::Config { field: f, .. }) => assert_eq!(f, field),
            other => panic!("expected config error on {field}, got {other:?}"),
        };
        check(SweepSpec { snr_db: vec![], ..base.clone() }, "snr_db");
        check(SweepSpec { snr_db: vec![5.0, 5.0], ..base.clone() }, "snr_db");
        check(SweepSpec { targets: vec![], ..base.clone() }, "targets");
        check(SweepSpec { targets: vec!["mslb".into()], k: PerDim::Infinite, ..base.clone() }, "targets");
        check(SweepSpec { targets: vec!["bogus".into()], ..base.clone() }, "targets");
        check(SweepSpec { m: 0.3, ..base.clone() }, "m");
        check(SweepSpec { lattice: OneOrMany::One("a2".into()), n: 3, ..base.clone() }, "lattice");
        check(SweepSpec { lattice: OneOrMany::One("rotated_zn".into()), n: 3, ..base }, "lattice");
    }

    #[test]
    fn unknown_keys_and_bad_k_rejected() {
        assert!(ConfigFile::parse("[a]\nlattice = \"zn\"\nn = 2\nk = 4\nl = 1\nm = 1.0\nsnr_db = [0.0]\ntargets = [\"slb\"]\nbogus = 1\n").is_err());
        assert!(ConfigFile::parse("[a]\nlattice = \"zn\"\nn = 2\nk = 0\nl = 1\nm = 1.0\nsnr_db = [0.0]\ntargets = [\"slb\"]\n").is_err());
        assert!(ConfigFile::parse("").is_err());
    }

    #[test]
    fn overrides_apply() {
        let ov = Overrides { seed: Some(3), frames: Some(10), targets: Some(vec!["sub".into()]), out: Some("out/".into()) };
        let c = SweepConfig::from_spec("b", &spec(TEXT), Path::new("."), &ov).unwrap();
        assert_eq!((c.sim.seed, c.sim.frames), (3, 10));
        assert_eq!(c.targets, vec![Target::Bound(BoundKind::Sub)]);
        assert_eq!(c.output, "out/b");
    }
}
