use std::path::PathBuf;

use crate::error::{Error, Result};
use crate::estimate::fit_sequential;
use crate::linalg::{derive_seed, Vector};
use crate::model::{generate_task_pair, sample_theta, ModelConfig, RelationKind};
use crate::parallel::{try_map_indexed, Execution};
use crate::theory::performance_drop;

#[derive(Clone, Debug, PartialEq)]
pub enum ThetaMode {
    /// The same `theta` in every cell.
    Fixed(Vector),
    /// Fresh `theta ~ N(0, I_d)` per cell.
    Gaussian,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SweepSpec {
    pub d: usize,
    pub n: usize,
    pub gamma: f64,
    pub theta_mode: ThetaMode,
    pub p_grid: Vec<usize>,
    pub reps: usize,
    pub relation: RelationKind,
    pub master_seed: u64,
    pub output_path: PathBuf,
}

/// Grid used when none is given.
pub const DEFAULT_P_GRID: [usize; 5] = [200, 350, 500, 1000, 2000];

impl Default for SweepSpec {
    fn default() -> Self {
        SweepSpec {
            d: 20,
            n: 100,
            gamma: 1.0,
            theta_mode: ThetaMode::Gaussian,
            p_grid: DEFAULT_P_GRID.to_vec(),
            reps: 100,
            relation: RelationKind::Orthogonal,
            master_seed: 0,
            output_path: PathBuf::from("sweep.csv"),
        }
    }
}

impl SweepSpec {
    pub fn validate(&self) -> Result<()> {
        if self.reps == 0 {
            return Err(Error::Config("reps must be at least 1".into()));
        }
        if self.p_grid.is_empty() {
            return Err(Error::Config("p grid is empty".into()));
        }
        if self.p_grid.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Config(format!(
                "p grid must be strictly increasing, got {:?}",
                self.p_grid
            )));
        }
        if let Some(&p) = self.p_grid.iter().find(|&&p| p <= self.n) {
            return Err(Error::Config(format!(
                "every p must exceed n = {}, got p = {p}",
                self.n
            )));
        }
        if let ThetaMode::Fixed(theta) = &self.theta_mode {
            if theta.len() != self.d {
                return Err(Error::DimensionMismatch {
                    expected: format!("theta of length d = {}", self.d),
                    actual: format!("length {}", theta.len()),
                });
            }
        }
        // Remaining checks are shared with every cell.
        ModelConfig::new(
            self.d,
            self.n,
            self.p_grid[0],
            self.gamma,
            Vector::zeros(self.d),
            self.relation,
            0,
        )?;
        Ok(())
    }

    pub fn cell_count(&self) -> usize {
        self.p_grid.len() * self.reps
    }

    /// Seed of cell `(p_index, rep)`; every random draw of the cell derives from it.
    pub fn cell_seed(&self, p_index: usize, rep: usize) -> u64 {
        derive_seed(self.master_seed, &[p_index as u64, rep as u64])
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SweepRow {
    pub p: usize,
    pub rep: usize,
    pub seed: u64,
    pub risk_null: f64,
    pub risk_a: f64,
    pub risk_ba: f64,
    pub drop: f64,
    pub bound: f64,
    pub bound_applicable: bool,
}

/// Mean and standard error (sample standard deviation over `sqrt(reps)`).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MeanSe {
    pub mean: f64,
    pub se: f64,
}

impl MeanSe {
    pub fn of(values: &[f64]) -> Self {
        let k = values.len() as f64;
        let mean = values.iter().sum::<f64>() / k;
        let se = if values.len() < 2 {
            0.0
        } else {
            let var = values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / (k - 1.0);
            (var / k).sqrt()
        };
        MeanSe { mean, se }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SummaryRow {
    pub p: usize,
    pub risk_null: MeanSe,
    pub risk_a: MeanSe,
    pub risk_ba: MeanSe,
    pub drop: MeanSe,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SweepResult {
    /// Sorted by `(p, rep)`.
    pub rows: Vec<SweepRow>,
    /// One entry per grid point, in grid order.
    pub summary: Vec<SummaryRow>,
}

impl SweepResult {
    /// Sorts the rows and recomputes the summary from them.
    pub fn from_rows(mut rows: Vec<SweepRow>) -> Self {
        rows.sort_by_key(|r| (r.p, r.rep));
        let mut summary = Vec::new();
        for group in rows.chunk_by(|a, b| a.p == b.p) {
            let col = |f: fn(&SweepRow) -> f64| group.iter().map(f).collect::<Vec<_>>();
            summary.push(SummaryRow {
                p: group[0].p,
                risk_null: MeanSe::of(&col(|r| r.risk_null)),
                risk_a: MeanSe::of(&col(|r| r.risk_a)),
                risk_ba: MeanSe::of(&col(|r| r.risk_ba)),
                drop: MeanSe::of(&col(|r| r.drop)),
            });
        }
        SweepResult { rows, summary }
    }

    /// Mean null risk over all rows.
    pub fn mean_risk_null(&self) -> f64 {
        self.rows.iter().map(|r| r.risk_null).sum::<f64>() / self.rows.len() as f64
    }
}

pub fn run_cell(spec: &SweepSpec, p_index: usize, rep: usize) -> Result<SweepRow> {
    let p = spec.p_grid[p_index];
    let seed = spec.cell_seed(p_index, rep);
    let cell = || -> Result<SweepRow> {
        let theta = match &spec.theta_mode {
            ThetaMode::Fixed(theta) => theta.clone(),
            ThetaMode::Gaussian => sample_theta(spec.d, seed),
        };
        let config = ModelConfig::new(spec.d, spec.n, p, spec.gamma, theta, spec.relation, seed)?;
        let tasks = generate_task_pair(&config)?;
        let arm = tasks.arm()?;
        let est = fit_sequential(&tasks, &arm)?;
        let report = performance_drop(&tasks, &est, &arm)?;
        Ok(SweepRow {
            p,
            rep,
            seed,
            risk_null: report.risk_null,
            risk_a: report.risk_a,
            risk_ba: report.risk_ba,
            drop: report.drop,
            bound: report.bound,
            bound_applicable: report.bound_applicable,
        })
    };
    cell().map_err(|e| Error::Cell {
        p,
        rep,
        seed,
        source: Box::new(e),
    })
}

/// Runs every `(p, rep)` cell. The result does not depend on `exec`.
pub fn run_sweep(spec: &SweepSpec, exec: Execution) -> Result<SweepResult> {
    spec.validate()?;
    let reps = spec.reps;
    let rows = try_map_indexed(exec, spec.cell_count(), |i| {
        run_cell(spec, i / reps, i % reps)
    })?;
    Ok(SweepResult::from_rows(rows))
}
