//! Job configuration: an optional JSON file overlaid with command-line flags.

use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::{Args, ValueEnum};
use serde::Deserialize;

use iontrap::compiler::Backend;
use iontrap::ham::{build_holstein, build_hubbard, Hamiltonian};
use iontrap::resources::TimingModel;
use iontrap::space::{DEFAULT_CUTOFF, DEFAULT_DIM_LIMIT};

use crate::files::{read_json, HamiltonianFile};

/// Environment variable overriding the dense simulation dimension limit.
pub const DIM_LIMIT_VAR: &str = "IONTRAP_DIM_LIMIT";

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ModelName {
    Hubbard,
    Holstein,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Csv,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Toggle {
    On,
    Off,
}

/// Flags shared by every subcommand.
#[derive(Clone, Debug, Default, Args)]
pub struct JobArgs {
    /// JSON job file; flags given on the command line take precedence.
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub model: Option<ModelName>,
    #[arg(long)]
    pub rows: Option<usize>,
    #[arg(long)]
    pub cols: Option<usize>,
    #[arg(long)]
    pub sites: Option<usize>,
    /// Hubbard hopping amplitude.
    #[arg(long)]
    pub w: Option<f64>,
    /// Hubbard on-site interaction.
    #[arg(long)]
    pub u: Option<f64>,
    /// Holstein hopping amplitude.
    #[arg(long = "h")]
    pub h: Option<f64>,
    /// Holstein electron-phonon coupling.
    #[arg(long)]
    pub g: Option<f64>,
    /// Holstein phonon frequency.
    #[arg(long)]
    pub omega0: Option<f64>,
    /// Hamiltonian file used instead of a built-in model.
    #[arg(long)]
    pub hamiltonian: Option<PathBuf>,
    /// Total evolution time.
    #[arg(long)]
    pub t: Option<f64>,
    #[arg(long)]
    pub steps: Option<usize>,
    #[arg(long)]
    pub order: Option<u32>,
    #[arg(long)]
    pub backend: Option<Backend>,
    /// Maximum phonon number per mode.
    #[arg(long)]
    pub cutoff: Option<usize>,
    #[arg(long, value_enum)]
    pub scaling: Option<Toggle>,
    #[arg(long)]
    pub ions: Option<usize>,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Gate-sequence file to estimate or check.
    #[arg(long)]
    pub sequence: Option<PathBuf>,
}

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelConfig {
    pub name: Option<ModelName>,
    pub rows: Option<usize>,
    pub cols: Option<usize>,
    pub sites: Option<usize>,
    pub w: Option<f64>,
    pub u: Option<f64>,
    pub h: Option<f64>,
    pub g: Option<f64>,
    pub omega0: Option<f64>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum HamiltonianSource {
    Path(PathBuf),
    Inline(HamiltonianFile),
}

#[derive(Clone, Copy, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TimingOverrides {
    pub t_ms_2ion: Option<f64>,
    pub t_local: Option<f64>,
    pub t_sideband_2ion: Option<f64>,
    pub resonant_speedup: Option<f64>,
    pub resonant_overhead: Option<f64>,
    pub per_gate_error: Option<f64>,
}

impl TimingOverrides {
    fn apply(&self, mut m: TimingModel) -> TimingModel {
        let set = |slot: &mut f64, v: Option<f64>| {
            if let Some(v) = v {
                *slot = v;
            }
        };
        set(&mut m.t_ms_2ion, self.t_ms_2ion);
        set(&mut m.t_local, self.t_local);
        set(&mut m.t_sideband_2ion, self.t_sideband_2ion);
        set(&mut m.resonant_speedup, self.resonant_speedup);
        set(&mut m.resonant_overhead, self.resonant_overhead);
        set(&mut m.per_gate_error, self.per_gate_error);
        m
    }
}

/// Contents of a `--config` file.
#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JobConfig {
    pub model: Option<ModelConfig>,
    pub hamiltonian: Option<HamiltonianSource>,
    pub t: Option<f64>,
    pub steps: Option<usize>,
    pub order: Option<u32>,
    pub backend: Option<String>,
    pub cutoff: Option<usize>,
    /// Per-mode cutoffs; overrides `cutoff`.
    pub cutoffs: Option<Vec<usize>>,
    pub scaling: Option<bool>,
    pub ions: Option<usize>,
    #[serde(default)]
    pub timing: TimingOverrides,
    pub out: Option<PathBuf>,
    pub sequence: Option<PathBuf>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum ModelSource {
    Hubbard { rows: usize, cols: usize, w: f64, u: f64 },
    Holstein { sites: usize, h: f64, g: f64, omega0: f64 },
    File(PathBuf),
    Inline(HamiltonianFile),
}

impl ModelSource {
    pub fn build(&self) -> Result<Hamiltonian> {
        Ok(match self {
            ModelSource::Hubbard { rows, cols, w, u } => build_hubbard(*rows, *cols, *w, *u)?,
            ModelSource::Holstein { sites, h, g, omega0 } => build_holstein(*sites, *h, *g, *omega0)?,
            ModelSource::File(path) => read_json::<HamiltonianFile>(path)?.to_hamiltonian()?,
            ModelSource::Inline(file) => file.to_hamiltonian()?,
        })
    }

    pub fn describe(&self) -> String {
        match self {
            ModelSource::Hubbard { rows, cols, w, u } => format!("hubbard {rows}x{cols} (w={w}, u={u})"),
            ModelSource::Holstein { sites, h, g, omega0 } => {
                format!("holstein {sites} sites (h={h}, g={g}, omega0={omega0})")
            }
            ModelSource::File(path) => format!("hamiltonian {}", path.display()),
            ModelSource::Inline(_) => "inline hamiltonian".into(),
        }
    }
}

/// Fully resolved job settings.
#[derive(Clone, Debug)]
pub struct Job {
    pub model: Option<ModelSource>,
    pub t: f64,
    pub steps: usize,
    pub order: u32,
    pub backend: Backend,
    pub cutoff: usize,
    pub cutoffs: Option<Vec<usize>>,
    pub scaling: bool,
    pub ions: Option<usize>,
    pub timing: TimingModel,
    pub out: Option<PathBuf>,
    pub format: Format,
    pub sequence: Option<PathBuf>,
    pub dim_limit: usize,
}

impl Job {
    pub fn resolve(args: &JobArgs) -> Result<Job> {
        let (cfg, base) = match &args.config {
            Some(path) => {
                let cfg: JobConfig = read_json(path)?;
                (cfg, path.parent().map(Path::to_path_buf).unwrap_or_default())
            }
            None => (JobConfig::default(), PathBuf::new()),
        };
        let rebase = |p: &PathBuf| if p.is_absolute() { p.clone() } else { base.join(p) };

        let model = resolve_model(args, &cfg, &rebase)?;
        let backend = match (args.backend, &cfg.backend) {
            (Some(b), _) => b,
            (None, Some(name)) => name.parse()?,
            (None, None) => Backend::Ms,
        };
        let t = args.t.or(cfg.t).unwrap_or(1.0);
        if !t.is_finite() || t < 0.0 {
            bail!("--t must be a finite non-negative time, got {t}");
        }
        let steps = args.steps.or(cfg.steps).unwrap_or(10);
        if steps == 0 {
            bail!("--steps must be at least 1");
        }
        let order = args.order.or(cfg.order).unwrap_or(1);
        if !(1..=2).contains(&order) {
            bail!("--order must be 1 or 2, got {order}");
        }
        let scaling = match args.scaling {
            Some(toggle) => toggle == Toggle::On,
            None => cfg.scaling.unwrap_or(false),
        };
        let mut timing = cfg.timing.apply(TimingModel::with_scaling(scaling));
        timing.ms_scaling = scaling;
        timing.sideband_scaling = scaling;
        timing.validate()?;
        let ions = args.ions.or(cfg.ions);
        if ions == Some(0) {
            bail!("--ions must be positive");
        }
        let dim_limit = match std::env::var(DIM_LIMIT_VAR) {
            Ok(v) => v
                .parse()
                .with_context(|| format!("{DIM_LIMIT_VAR}={v} is not a dimension"))?,
            Err(_) => DEFAULT_DIM_LIMIT,
        };
        Ok(Job {
            model,
            t,
            steps,
            order,
            backend,
            cutoff: args.cutoff.or(cfg.cutoff).unwrap_or(DEFAULT_CUTOFF),
            cutoffs: if args.cutoff.is_some() {
                None
            } else {
                cfg.cutoffs.clone()
            },
            scaling,
            ions,
            timing,
            out: args.out.clone().or_else(|| cfg.out.as_ref().map(&rebase)),
            format: args.format.unwrap_or_default(),
            sequence: args.sequence.clone().or_else(|| cfg.sequence.as_ref().map(&rebase)),
            dim_limit,
        })
    }

    pub fn require_model(&self) -> Result<&ModelSource> {
        self.model
            .as_ref()
            .context("no model given; use --model hubbard|holstein, --hamiltonian or --config")
    }

    /// Per-mode cutoffs for `n_modes` bosonic modes.
    pub fn mode_cutoffs(&self, n_modes: usize) -> Result<Vec<usize>> {
        match &self.cutoffs {
            Some(c) if c.len() == n_modes => Ok(c.clone()),
            Some(c) => bail!("{} cutoffs given for {n_modes} bosonic modes", c.len()),
            None => Ok(vec![self.cutoff; n_modes]),
        }
    }
}

fn resolve_model(args: &JobArgs, cfg: &JobConfig, rebase: &dyn Fn(&PathBuf) -> PathBuf) -> Result<Option<ModelSource>> {
    let file = match (&args.hamiltonian, &cfg.hamiltonian) {
        (Some(p), _) => Some(ModelSource::File(p.clone())),
        (None, Some(HamiltonianSource::Path(p))) => Some(ModelSource::File(rebase(p))),
        (None, Some(HamiltonianSource::Inline(f))) => Some(ModelSource::Inline(f.clone())),
        (None, None) => None,
    };
    let mut m = cfg.model.clone().unwrap_or_default();
    if args.model.is_some() && args.model != m.name {
        m = ModelConfig {
            name: args.model,
            ..ModelConfig::default()
        };
    }
    macro_rules! overlay {
        ($($f:ident),*) => {
            $(if args.$f.is_some() { m.$f = args.$f; })*
        };
    }
    overlay!(rows, cols, sites, w, u, h, g, omega0);

    let name = match (m.name, file) {
        (Some(_), Some(_)) => bail!("give either a built-in model or a Hamiltonian file, not both"),
        (None, Some(f)) => {
            if m.rows.or(m.cols).or(m.sites).is_some() || [m.w, m.u, m.h, m.g, m.omega0].iter().any(Option::is_some) {
                bail!("model parameters need --model");
            }
            return Ok(Some(f));
        }
        (None, None) => {
            if m.rows.or(m.cols).or(m.sites).is_some() {
                bail!("model parameters need --model");
            }
            return Ok(None);
        }
        (Some(name), None) => name,
    };
    let reject = |flag: &str, set: bool| -> Result<()> {
        if set {
            bail!("--{flag} does not apply to the {name:?} model");
        }
        Ok(())
    };
    Ok(Some(match name {
        ModelName::Hubbard => {
            reject("sites", m.sites.is_some())?;
            for (flag, v) in [("h", m.h), ("g", m.g), ("omega0", m.omega0)] {
                reject(flag, v.is_some())?;
            }
            ModelSource::Hubbard {
                rows: m.rows.context("hubbard needs --rows")?,
                cols: m.cols.context("hubbard needs --cols")?,
                w: m.w.unwrap_or(1.0),
                u: m.u.unwrap_or(4.0),
            }
        }
        ModelName::Holstein => {
            reject("rows", m.rows.is_some())?;
            reject("cols", m.cols.is_some())?;
            reject("w", m.w.is_some())?;
            reject("u", m.u.is_some())?;
            ModelSource::Holstein {
                sites: m.sites.context("holstein needs --sites")?,
                h: m.h.unwrap_or(1.0),
                g: m.g.unwrap_or(0.5),
                omega0: m.omega0.unwrap_or(1.0),
            }
        }
    }))
}
