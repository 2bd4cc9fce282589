//! `cposet`: witness posets of block-diagonal matrix algebras, signature
//! reconstruction, isomorphism testing, lattice factorization, and
//! matrix-oracle cross-validation.
//!
//! Exit codes: 0 success, 1 negative verdict (non-isomorphic inputs, failed
//! verification), 2 structural failure (malformed input, guard violations,
//! reconstruction failure stages, non-generic unitaries).

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use cposet_core::oracle::linalg::Matrix;
use cposet_core::oracle::scalar::{FloatComplex, RatComplex};
use cposet_core::oracle::unitary::{block_diagonal_unitary, random_block_unitary};
use cposet_core::oracle::{
    center, conjugate_span, diagonal_masa, generate_subalgebra, intersect_spans,
    maximal_completion, realize_witness, Ambient,
};
use cposet_core::reconstruct::{reconstruct, ReconstructionReport};
use cposet_core::util::SplitMix64;
use cposet_core::witness::witness_poset_with_guard;
use cposet_core::{
    partition_lattice_with_guard, poset_from_json, poset_to_dot, poset_to_json, AlgebraSpec,
    Error, FinitePoset, PosetJson,
};

#[derive(Parser)]
#[command(
    name = "cposet",
    about = "Subalgebra-poset toolkit: generate witness posets, reconstruct block-size signatures, test isomorphism, factor lattices, verify against the matrix oracle"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Dot,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    Exact,
    Float,
}

#[derive(Subcommand)]
enum Command {
    /// Generate the witness poset of a block-size spec.
    Gen {
        /// Comma-separated block sizes, e.g. `2,1`.
        #[arg(long)]
        spec: String,
        /// Number of maximal-subalgebra copies.
        #[arg(long, default_value_t = 2)]
        copies: usize,
        /// Spectrum guard (maximum total points).
        #[arg(long, default_value_t = cposet_core::DEFAULT_POINT_GUARD)]
        nmax: usize,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        /// Output path (stdout when omitted).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Recover the block-size signature from a poset JSON file.
    Reconstruct {
        #[arg(long = "in")]
        input: PathBuf,
        /// Also check each factor against the canonical partition lattice
        /// and re-run the analysis from every maximal element.
        #[arg(long)]
        strict: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Test two poset JSON files for order isomorphism.
    Iso {
        first: PathBuf,
        second: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Factor a bounded lattice into directly indecomposable factors.
    Factor {
        #[arg(long = "in")]
        input: PathBuf,
        /// Also compare each factor with the partition lattice of its height.
        #[arg(long)]
        strict: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Emit the lattice of partitions of an n-point spectrum.
    PartitionLattice {
        n: usize,
        #[arg(long, default_value_t = cposet_core::DEFAULT_POINT_GUARD)]
        nmax: usize,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Cross-validate the combinatorial witness against the matrix oracle.
    Verify {
        #[arg(long)]
        spec: String,
        #[arg(long, default_value_t = 2)]
        copies: usize,
        /// Base seed for the deterministic unitaries.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = Mode::Exact)]
        mode: Mode,
        /// Spectrum guard for the oracle realization.
        #[arg(long, default_value_t = cposet_core::oracle::DEFAULT_REALIZE_GUARD)]
        nmax: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}

fn run(command: Command) -> Result<ExitCode, String> {
    match command {
        Command::Gen {
            spec,
            copies,
            nmax,
            format,
            out,
        } => {
            let spec = AlgebraSpec::parse(&spec).map_err(|e| e.to_string())?;
            let witness =
                witness_poset_with_guard(&spec, copies, nmax).map_err(|e| e.to_string())?;
            emit(&render_poset(&witness.poset, format), out.as_deref())?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Reconstruct { input, strict, out } => {
            let poset = read_poset(&input)?;
            let report = reconstruct(&poset, strict);
            let ok = report.is_success();
            emit(&pretty(&report)?, out.as_deref())?;
            if ok {
                Ok(ExitCode::SUCCESS)
            } else {
                Ok(ExitCode::from(2))
            }
        }
        Command::Iso { first, second, out } => {
            let a = read_poset(&first)?;
            let b = read_poset(&second)?;
            let result = a.isomorphism_to(&b);
            #[derive(Serialize)]
            struct IsoResult {
                isomorphic: bool,
                #[serde(skip_serializing_if = "Option::is_none")]
                map: Option<Vec<usize>>,
            }
            let found = result.is_some();
            emit(
                &pretty(&IsoResult {
                    isomorphic: found,
                    map: result,
                })?,
                out.as_deref(),
            )?;
            Ok(if found {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
        Command::Factor { input, strict, out } => {
            let poset = read_poset(&input)?;
            let lattice =
                cposet_core::BoundedLattice::try_new(poset).map_err(|e| e.to_string())?;
            let factorization = lattice.factorize();
            let heights = factorization.heights();
            let strict_iso = strict.then(|| {
                factorization
                    .factors
                    .iter()
                    .map(|f| {
                        let h = f.poset().height();
                        partition_lattice_with_guard(h, h.max(7))
                            .map(|reference| f.poset().isomorphism_to(&reference).is_some())
                            .unwrap_or(false)
                    })
                    .collect::<Vec<bool>>()
            });
            #[derive(Serialize)]
            struct FactorReport {
                factor_count: usize,
                heights: Vec<usize>,
                #[serde(skip_serializing_if = "Option::is_none")]
                strict_iso: Option<Vec<bool>>,
                factors: Vec<PosetJson>,
            }
            emit(
                &pretty(&FactorReport {
                    factor_count: factorization.factors.len(),
                    heights,
                    strict_iso,
                    factors: factorization
                        .factors
                        .iter()
                        .map(|f| PosetJson::from(f.poset()))
                        .collect(),
                })?,
                out.as_deref(),
            )?;
            Ok(ExitCode::SUCCESS)
        }
        Command::PartitionLattice {
            n,
            nmax,
            format,
            out,
        } => {
            let lattice = partition_lattice_with_guard(n, nmax).map_err(|e| e.to_string())?;
            emit(&render_poset(&lattice, format), out.as_deref())?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify {
            spec,
            copies,
            seed,
            mode,
            nmax,
            out,
        } => {
            let spec = AlgebraSpec::parse(&spec).map_err(|e| e.to_string())?;
            let (summary, passed) = match mode {
                Mode::Exact => verify_exact(&spec, copies, seed, nmax)?,
                Mode::Float => verify_float(&spec, seed),
            };
            emit(&summary, out.as_deref())?;
            Ok(if passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
    }
}

#[derive(Serialize)]
struct VerifySummary {
    spec: String,
    mode: String,
    copies: usize,
    seed_requested: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    seed_used: Option<u64>,
    center_dimension: usize,
    expected_center_dimension: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    poset_elements: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    poset_match: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness_reconstruction: Option<ReconstructionReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    oracle_reconstruction_matches: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    genericity_samples: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    completions_contain_center: Option<bool>,
    passed: bool,
}

/// Exact-mode verification: realize the witness with deterministic rational
/// unitaries (retrying the seed past non-generic draws), compare the labeled
/// posets, and reconstruct the spec from both sides.
fn verify_exact(
    spec: &AlgebraSpec,
    copies: usize,
    seed: u64,
    nmax: usize,
) -> Result<(String, bool), String> {
    let witness = witness_poset_with_guard(spec, copies, nmax).map_err(|e| e.to_string())?;
    let k = spec.block_count();
    let mut seed_used = None;
    let mut realized: Option<FinitePoset> = None;
    let mut last_error = String::new();
    for attempt in 0..8 {
        let base = seed + attempt;
        let unitaries: Vec<Matrix<RatComplex>> = (2..=witness.copies)
            .map(|t| block_diagonal_unitary(spec, base + (t as u64 - 2) * k as u64))
            .collect();
        match realize_witness(spec, &unitaries, nmax) {
            Ok(p) => {
                seed_used = Some(base);
                realized = Some(p);
                break;
            }
            Err(Error::NonGenericUnitaries { .. }) => {
                last_error = format!("seed {base} is non-generic");
                continue;
            }
            Err(e) => return Err(e.to_string()),
        }
    }
    let Some(realized) = realized else {
        return Err(format!("no generic seed found after 8 attempts: {last_error}"));
    };
    let amb = Ambient::new(spec);
    let center_dimension = center::<RatComplex>(&amb).dimension();
    let poset_match = realized == witness.poset;
    let witness_report = reconstruct(&witness.poset, false);
    let oracle_report = reconstruct(&realized, false);
    let oracle_matches = witness_report.spec.as_ref() == Some(spec)
        && oracle_report.spec.as_ref() == Some(spec);
    let passed = poset_match && oracle_matches && center_dimension == k;
    let summary = VerifySummary {
        spec: spec.to_string(),
        mode: "exact".into(),
        copies: witness.copies,
        seed_requested: seed,
        seed_used,
        center_dimension,
        expected_center_dimension: k,
        poset_elements: Some(witness.poset.size()),
        poset_match: Some(poset_match),
        witness_reconstruction: Some(witness_report),
        oracle_reconstruction_matches: Some(oracle_matches),
        genericity_samples: None,
        completions_contain_center: None,
        passed,
    };
    Ok((pretty(&summary)?, passed))
}

/// Float-mode verification: center dimension, sampled-unitary genericity,
/// and completion containment, all through the floating tolerance.
fn verify_float(spec: &AlgebraSpec, seed: u64) -> (String, bool) {
    let amb = Ambient::new(spec);
    let k = spec.block_count();
    let center_dimension = center::<FloatComplex>(&amb).dimension();
    let diag = diagonal_masa::<FloatComplex>(&amb);
    let z = center::<FloatComplex>(&amb);
    let mut rng = SplitMix64::new(seed);
    let mut samples = Vec::new();
    let mut completions_ok = true;
    for _ in 0..5 {
        let u = random_block_unitary(spec, &mut rng);
        let conj = conjugate_span(&u, &diag).expect("unitary stays in ambient");
        let inter = intersect_spans(&diag, &conj).expect("same ambient");
        samples.push(inter.dimension());
        // Seeded completion: close a random self-adjoint element and
        // complete it; the center must be inside.
        let n = amb.matrix_size();
        let mut h = Matrix::<FloatComplex>::zeros(n, n);
        for range in spec.block_ranges() {
            for r in range.clone() {
                for c in range.clone() {
                    if r <= c {
                        let re = rng.next_f64() - 0.5;
                        let im = if r == c { 0.0 } else { rng.next_f64() - 0.5 };
                        h.set(r, c, FloatComplex::new(re, im));
                        if r != c {
                            h.set(c, r, FloatComplex::new(re, -im));
                        }
                    }
                }
            }
        }
        let closed = generate_subalgebra(&amb, &[h]).expect("seed in ambient");
        if closed.is_commutative() {
            let masa = maximal_completion(&amb, &closed).expect("commutative input");
            if !masa.contains_span(&z).unwrap_or(false) {
                completions_ok = false;
            }
        }
    }
    let generic_ok = samples.iter().all(|&d| d == k);
    let passed = center_dimension == k && generic_ok && completions_ok;
    let summary = VerifySummary {
        spec: spec.to_string(),
        mode: "float".into(),
        copies: 0,
        seed_requested: seed,
        seed_used: Some(seed),
        center_dimension,
        expected_center_dimension: k,
        poset_elements: None,
        poset_match: None,
        witness_reconstruction: None,
        oracle_reconstruction_matches: None,
        genericity_samples: Some(samples),
        completions_contain_center: Some(completions_ok),
        passed,
    };
    (pretty(&summary).expect("plain data"), passed)
}

fn render_poset(p: &FinitePoset, format: Format) -> String {
    match format {
        Format::Json => poset_to_json(p),
        Format::Dot => poset_to_dot(p),
    }
}

fn read_poset(path: &PathBuf) -> Result<FinitePoset, String> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    poset_from_json(&text).map_err(|e| e.to_string())
}

fn pretty<T: Serialize>(value: &T) -> Result<String, String> {
    let mut text = serde_json::to_string_pretty(value).map_err(|e| e.to_string())?;
    text.push('\n');
    Ok(text)
}

fn emit(text: &str, out: Option<&std::path::Path>) -> Result<(), String> {
    match out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| format!("cannot write {}: {e}", path.display())),
        None => {
            use std::io::Write;
            // A closed pipe (e.g. piping into `head`) is not an error.
            match std::io::stdout().write_all(text.as_bytes()) {
                Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => Ok(()),
                other => other.map_err(|e| e.to_string()),
            }
        }
    }
}
