//! Evaluation of a sweep over its SNR grid.

use latbound::bounds::{evaluate, BoundOptions, BoundParams};
use latbound::channel::{db_to_linear, ChannelParams};
use latbound::exec::Executor;
use latbound::lattice::Size;
use latbound::sim::{simulate_fep_finite_with, simulate_fep_infinite_with, FepEstimate, SimConfig};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::config::{PerDim, SweepConfig, Target};
use crate::CliError;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SimPoint {
    pub errors: u64,
    pub frames: u64,
    pub ci_low: f64,
    pub ci_high: f64,
    pub boundary_errors: u64,
    pub window_suspect: bool,
}

impl From<&FepEstimate> for SimPoint {
    fn from(e: &FepEstimate) -> Self {
        SimPoint {
            errors: e.errors,
            frames: e.frames,
            ci_low: e.ci.0,
            ci_high: e.ci.1,
            boundary_errors: e.boundary_errors,
            window_suspect: e.window_suspect,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Column {
    pub name: String,
    pub values: Vec<f64>,
    pub stderr: Vec<f64>,
    /// `closed_form`, `numeric` or `simulation` per grid point.
    pub methods: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sim: Option<Vec<SimPoint>>,
}

/// Parameters echoed into the JSON record.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepInfo {
    pub lattices: Vec<String>,
    pub n: usize,
    pub k: Option<u32>,
    pub l: u32,
    pub m: f64,
    pub d_min: f64,
    pub w: f64,
    pub seed: u64,
    pub frames: u64,
    pub decode_window: u32,
    pub samples: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepResult {
    pub name: String,
    pub info: SweepInfo,
    pub snr_db: Vec<f64>,
    pub columns: Vec<Column>,
}

impl SweepResult {
    pub fn column(&self, name: &str) -> Option<&Column> {
        self.columns.iter().find(|c| c.name == name)
    }
}

fn sim_point<E: Executor>(cfg: &SweepConfig, idx: usize, rho: f64, exec: &E) -> Result<FepEstimate, CliError> {
    let c = &cfg.lattices[idx].constellation;
    let ch = ChannelParams { m: cfg.m, rho, n: cfg.n, l: cfg.l };
    let sim: SimConfig = cfg.sim;
    let r = match c.size() {
        Size::Finite(_) => simulate_fep_finite_with(c, &ch, &sim, exec),
        Size::Infinite { .. } => simulate_fep_infinite_with(c, &ch, &sim, exec),
    };
    r.map_err(CliError::from)
}

/// Evaluates every target at every grid point. Grid points run in
/// parallel; results are assembled in grid order.
pub fn run_sweep<E: Executor>(cfg: &SweepConfig, exec: &E) -> Result<SweepResult, CliError> {
    let first = &cfg.lattices[0].constellation;
    let ch0 = ChannelParams { m: cfg.m, rho: 1.0, n: cfg.n, l: cfg.l };
    let base = BoundParams::new(first, &ch0)?;
    let opts = BoundOptions { samples: cfg.samples, seed: cfg.sim.seed, ..BoundOptions::default() };
    let rhos: Vec<f64> = cfg.snr_db.iter().map(|&d| db_to_linear(d)).collect();

    let mut columns = Vec::new();
    for t in &cfg.targets {
        match t {
            Target::Bound(kind) => {
                let pts: Vec<_> = rhos.par_iter().map(|&rho| evaluate(*kind, &base.with_rho(rho), &opts, exec)).collect::<Result<_, _>>()?;
                columns.push(Column {
                    name: kind.name().to_string(),
                    values: pts.iter().map(|v| v.value).collect(),
                    stderr: pts.iter().map(|v| v.stderr).collect(),
                    methods: pts.iter().map(|v| v.method.name().to_string()).collect(),
                    sim: None,
                });
            }
            Target::Sim => {
                for (i, lat) in cfg.lattices.iter().enumerate() {
                    let pts: Vec<FepEstimate> = rhos.par_iter().map(|&rho| sim_point(cfg, i, rho, exec)).collect::<Result<_, _>>()?;
                    let name = if cfg.lattices.len() == 1 { "sim".to_string() } else { format!("sim_{}", lat.label) };
                    columns.push(Column {
                        name,
                        values: pts.iter().map(|e| e.fep).collect(),
                        stderr: pts.iter().map(|e| e.stderr).collect(),
                        methods: vec!["simulation".to_string(); pts.len()],
                        sim: Some(pts.iter().map(SimPoint::from).collect()),
                    });
                }
            }
        }
    }
    Ok(SweepResult {
        name: cfg.name.clone(),
        info: SweepInfo {
            lattices: cfg.lattices.iter().map(|l| l.label.clone()).collect(),
            n: cfg.n,
            k: match cfg.k {
                PerDim::Finite(k) => Some(k),
                PerDim::Infinite => None,
            },
            l: cfg.l,
            m: cfg.m,
            d_min: base.d_min,
            w: base.w,
            seed: cfg.sim.seed,
            frames: cfg.sim.frames,
            decode_window: cfg.sim.decode_window,
            samples: cfg.samples,
        },
        snr_db: cfg.snr_db.clone(),
        columns,
    })
}
