//! The four subcommands.

use std::fmt::Write as _;
use std::io::Write;
use std::path::Path;

use anyhow::{bail, Context, Result};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use iontrap::compiler::{Compiler, GateKind, GateSequence};
use iontrap::ham::{fock_matrix_with_limit, Hamiltonian};
use iontrap::jw::{jw_transform, matrix_in, MixedPauliSum};
use iontrap::linalg::eigenvalues_hermitian;
use iontrap::resources::{classical_cost_per_mode, count_gates};
use iontrap::simulator::{
    common_phase_state_error, evolve_with_sequence, exact_evolution_states, state_error, term_evolution_state, State,
};
use iontrap::space::HilbertSpec;
use iontrap::trotter::{trotterize, TrotterPlan};
use iontrap::Complex64;

use crate::config::{Format, Job};
use crate::files::{read_json, to_json, HamiltonianFile, SequenceFile};
use crate::report::EstimateSummary;

/// Returned when `verify` finds a violated tolerance.
#[derive(Debug)]
pub struct VerificationFailed(pub Vec<String>);

impl std::fmt::Display for VerificationFailed {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "verification failed: {}", self.0.join(", "))
    }
}

impl std::error::Error for VerificationFailed {}

const UNITARY_TOL: f64 = 1e-10;
const SPECTRUM_TOL: f64 = 1e-10;
const SCAN_STEPS: [usize; 4] = [1, 2, 4, 8];
const N_PROBES: usize = 4;
const PROBE_SEED: u64 = 7;

fn write_file(path: &Path, text: &str) -> Result<()> {
    std::fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

fn text_only(job: &Job, command: &str) -> Result<()> {
    if job.format != Format::Text {
        bail!("--format applies to estimate only, not {command}");
    }
    Ok(())
}

struct Pipeline {
    hamiltonian: Hamiltonian,
    sum: MixedPauliSum,
    plan: TrotterPlan,
    compiler: Compiler,
}

impl Pipeline {
    fn new(job: &Job) -> Result<Self> {
        let hamiltonian = job.require_model()?.build()?;
        let sum = jw_transform(&hamiltonian)?;
        let plan = trotterize(&sum, job.t, job.steps, job.order)?;
        let compiler = Compiler::new(job.backend, sum.n_qubits, sum.n_modes);
        Ok(Pipeline {
            hamiltonian,
            sum,
            plan,
            compiler,
        })
    }

    fn sequence(&self) -> Result<GateSequence> {
        Ok(self.compiler.compile_plan(&self.plan)?)
    }
}

pub fn build(job: &Job, out: &mut dyn Write) -> Result<()> {
    text_only(job, "build")?;
    let h = job.require_model()?.build()?;
    let text = to_json(&HamiltonianFile::from_hamiltonian(&h))?;
    match &job.out {
        Some(path) => {
            write_file(path, &text)?;
            writeln!(
                out,
                "wrote {}: {} fermionic modes, {} bosonic modes, {} terms",
                path.display(),
                h.n_fermionic(),
                h.n_bosonic(),
                h.terms().len()
            )?;
        }
        None => out.write_all(text.as_bytes())?,
    }
    Ok(())
}

pub fn compile(job: &Job, out: &mut dyn Write) -> Result<()> {
    text_only(job, "compile")?;
    let p = Pipeline::new(job)?;
    let seq = p.sequence()?;
    if let Some(path) = &job.out {
        write_file(path, &to_json(&SequenceFile::from_sequence(&seq))?)?;
    }
    let counts = count_gates(&seq);
    let mut s = String::new();
    let _ = writeln!(s, "model: {}", job.require_model()?.describe());
    let _ = writeln!(
        s,
        "modes: {} fermionic, {} bosonic; {} Pauli terms after mapping",
        p.hamiltonian.n_fermionic(),
        p.hamiltonian.n_bosonic(),
        p.sum.len()
    );
    let _ = writeln!(
        s,
        "backend {}, order {}, {} steps, t = {}",
        job.backend, job.order, job.steps, job.t
    );
    let per_step: Vec<String> = GateKind::ALL
        .iter()
        .filter(|&&k| counts.get(k) > 0)
        .map(|&k| format!("{} {}", k.name(), counts.get(k) / job.steps))
        .collect();
    let _ = writeln!(s, "gates per step: {}", per_step.join(", "));
    let step_entangling = counts.entangling_per_step.first().copied().unwrap_or(0);
    let step_drives = counts.drives_per_step.first().copied().unwrap_or(0);
    let _ = writeln!(s, "entangling gates per step: {step_entangling}");
    let _ = writeln!(
        s,
        "entangling gates total: {} (~{:.1e})",
        counts.entangling_total, counts.entangling_total as f64
    );
    if counts.mode_drives > 0 {
        let _ = writeln!(s, "mode drives per step: {step_drives}");
        let _ = writeln!(
            s,
            "gate census (entangling + mode drives): {} per step, {} total",
            step_entangling + step_drives,
            counts.census_total()
        );
    }
    if let Some(path) = &job.out {
        let _ = writeln!(s, "wrote {}", path.display());
    }
    out.write_all(s.as_bytes())?;
    Ok(())
}

pub fn estimate(job: &Job, out: &mut dyn Write) -> Result<()> {
    let seq = match &job.sequence {
        Some(path) => read_json::<SequenceFile>(path)?.to_sequence()?,
        None => Pipeline::new(job)?.sequence()?,
    };
    let system = seq.system_qubits();
    let passive = usize::from(seq.n_modes > 0);
    let n_ions = job.ions.unwrap_or((system + passive).max(seq.n_qubits));
    let classical = classical_cost_per_mode(system, &job.mode_cutoffs(seq.n_modes)?);
    let text = EstimateSummary::new(&seq, &job.timing, n_ions, classical)?.render(job.format)?;
    match &job.out {
        Some(path) => {
            write_file(path, &text)?;
            writeln!(out, "wrote {}", path.display())?;
        }
        None => out.write_all(text.as_bytes())?,
    }
    Ok(())
}

struct Check {
    name: &'static str,
    passed: bool,
    detail: String,
}

pub fn verify(job: &Job, out: &mut dyn Write) -> Result<()> {
    text_only(job, "verify")?;
    let p = Pipeline::new(job)?;
    let cutoffs = job.mode_cutoffs(p.sum.n_modes)?;
    let spec = HilbertSpec::with_limit(p.sum.n_qubits, cutoffs.clone(), job.dim_limit)
        .context("model too large for dense verification; use estimate instead")?;
    let mut checks = Vec::new();

    checks.push(Check {
        name: "hermitian-mapping",
        passed: p.sum.is_hermitian(1e-12),
        detail: format!("{} terms", p.sum.len()),
    });

    let mapped = eigenvalues_hermitian(&matrix_in(&p.sum, &spec)?);
    let direct = eigenvalues_hermitian(&fock_matrix_with_limit(&p.hamiltonian, &cutoffs, job.dim_limit)?);
    let scale = direct.iter().fold(1.0f64, |m, x| m.max(x.abs()));
    let gap = mapped
        .iter()
        .zip(&direct)
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max);
    checks.push(Check {
        name: "spectrum",
        passed: mapped.len() == direct.len() && gap <= SPECTRUM_TOL * scale,
        detail: format!("dimension {}, max eigenvalue gap {gap:.2e}", spec.dim()),
    });

    let probes = probe_states(&spec)?;
    let mut template = p.sequence()?;
    template.steps.clear();
    let mut worst = 0.0f64;
    for s in p.plan.exponentials() {
        let exact: Vec<State> = probes
            .iter()
            .map(|psi| term_evolution_state(&s.operator, s.angle, psi))
            .collect::<iontrap::Result<_>>()?;
        let seq = GateSequence {
            steps: vec![p.compiler.compile_term(s)?],
            ..template.clone()
        };
        worst = worst.max(common_phase_state_error(&exact, &run(&probes, &seq)?)?);
    }
    checks.push(Check {
        name: "term-unitaries",
        passed: worst < UNITARY_TOL,
        detail: format!(
            "{} exponentials on {N_PROBES} probe states, max deviation {worst:.2e}",
            p.plan.schedule.len()
        ),
    });

    let exact = exact_evolution_states(&p.sum, job.t, &probes)?;
    let mut scan = Vec::new();
    for n in SCAN_STEPS {
        let seq = p.compiler.compile_plan(&trotterize(&p.sum, job.t, n, job.order)?)?;
        scan.push((n, state_error(&exact, &run(&probes, &seq)?)?));
    }
    let decreasing = scan.windows(2).all(|w| w[1].1 < w[0].1 || w[0].1 < 1e-12);
    let errors: Vec<String> = scan.iter().map(|(n, e)| format!("n={n}: {e:.2e}")).collect();
    checks.push(Check {
        name: "trotter-scan",
        passed: decreasing,
        detail: errors.join(", "),
    });

    if let Some(path) = &job.sequence {
        let given = read_json::<SequenceFile>(path)?.to_sequence()?;
        let reference = p.sequence()?;
        let (passed, detail) =
            if (given.system_qubits(), given.n_modes) != (reference.system_qubits(), reference.n_modes) {
                let shape = format!(
                    "{} qubits/{} modes, expected {}/{}",
                    given.system_qubits(),
                    given.n_modes,
                    reference.system_qubits(),
                    reference.n_modes
                );
                (false, shape)
            } else {
                let d = common_phase_state_error(&run(&probes, &reference)?, &run(&probes, &given)?)?;
                (
                    d < UNITARY_TOL,
                    format!("{}: deviation {d:.2e} from the compiled reference", path.display()),
                )
            };
        checks.push(Check {
            name: "sequence-file",
            passed,
            detail,
        });
    }

    let _ = writeln!(out, "model: {}", job.require_model()?.describe());
    for c in &checks {
        writeln!(
            out,
            "{} {}: {}",
            if c.passed { "PASS" } else { "FAIL" },
            c.name,
            c.detail
        )?;
    }
    let failed: Vec<String> = checks
        .iter()
        .filter(|c| !c.passed)
        .map(|c| c.name.to_string())
        .collect();
    if failed.is_empty() {
        Ok(())
    } else {
        Err(VerificationFailed(failed).into())
    }
}

/// Fixed pseudo-random states used to compare operators by their action.
fn probe_states(spec: &HilbertSpec) -> Result<Vec<State>> {
    let mut rng = StdRng::seed_from_u64(PROBE_SEED);
    (0..N_PROBES)
        .map(|_| {
            let amps = (0..spec.dim())
                .map(|_| Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
                .collect();
            Ok(State::from_amplitudes(spec, amps)?)
        })
        .collect()
}

fn run(states: &[State], seq: &GateSequence) -> Result<Vec<State>> {
    Ok(states
        .iter()
        .map(|s| evolve_with_sequence(s, seq))
        .collect::<iontrap::Result<_>>()?)
}
