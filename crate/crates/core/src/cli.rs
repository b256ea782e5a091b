//! Batch front end: one subcommand per experiment, `key=value` configuration files,
//! CSV and JSON artifacts, exit code 0 when every check holds, 1 when one fails and 2 on
//! usage errors.

use std::fmt::Write as _;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use crate::archfactors::{lefschetz_complex, lefschetz_real, smooth_zero_count, zero_count_average, HodgeJson, HodgeStructure, Place};
use crate::arith::{lift_unit, units, DirichletCharacter};
use crate::artin::{character_idempotent, compose, ArtinObject, Correspondence, CorrespondenceJson};
use crate::cyclic::{check_relations, FiniteAlgebra, StandardCyclic};
use crate::endomotive::{fabulous_check, sample_element, CrossedElement, CrossedJson};
use crate::error::Error;
use crate::explicit::{balance, BalanceOptions, IdeleTestFunction};
use crate::spectral::{l_factorizations, vanishing_check, ZeroTable};
use crate::testfn::{AdelicFunction, TestFunction};
use crate::thermo::{kms_verify, GibbsState, KmsPairJson};

/// Environment variable read for the worker-thread count when `--threads` is absent.
pub const THREADS_ENV: &str = "ENDOMOTIVE_THREADS";

#[derive(Parser, Debug)]
#[command(name = "endomotive", version, about = "Bost-Connes endomotive, KMS states, local factors and explicit formulas")]
#[command(args_override_self = true)]
struct Cli {
    /// `key=value` file supplying flag defaults; flags on the command line take precedence
    #[arg(long, global = true, value_name = "FILE")]
    config: Option<PathBuf>,
    /// Worker threads (default: $ENDOMOTIVE_THREADS, else all cores)
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Relations of the cyclic category on finite-dimensional algebras
    #[command(subcommand)]
    Cyclic(CyclicCmd),
    /// Artin motives: correspondences and character idempotents
    #[command(subcommand)]
    Artin(ArtinCmd),
    /// The crossed product Q[Q/Z] x N* and its Galois action
    #[command(subcommand)]
    Endo(EndoCmd),
    /// Gibbs states and the KMS condition
    #[command(subcommand)]
    Thermo(ThermoCmd),
    /// L-function factorization and vanishing at zeros
    #[command(subcommand)]
    Spectral(SpectralCmd),
    /// Archimedean local factors
    #[command(subcommand)]
    Arch(ArchCmd),
    /// The Riemann-Weil explicit formula
    #[command(subcommand)]
    Explicit(ExplicitCmd),
    /// Locate zeros of zeta or of a Dirichlet L-function on the critical line
    Zeros(ZerosArgs),
}

#[derive(Args, Debug)]
struct OutArg {
    /// Output file (default: standard output)
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct CharArg {
    /// Modulus of the Dirichlet character (1 for zeta)
    #[arg(long, default_value_t = 1)]
    modulus: u64,
    /// Index of the character among those mod N (0 is principal)
    #[arg(long, default_value_t = 0)]
    index: usize,
}

#[derive(Subcommand, Debug)]
enum CyclicCmd {
    /// Check every face, degeneracy and cyclic relation up to a degree
    Check {
        /// Q, Q^N, MK, trunc:K (Q[x]/x^K) or cyclic:K (group algebra)
        #[arg(long)]
        algebra: String,
        #[arg(long, default_value_t = 4)]
        degree: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        out: OutArg,
    },
}

#[derive(Subcommand, Debug)]
enum ArtinCmd {
    /// Compose two correspondences given as JSON (`right` first, then `left`)
    Compose {
        #[arg(long)]
        left: PathBuf,
        #[arg(long)]
        right: PathBuf,
        #[command(flatten)]
        out: OutArg,
    },
    /// Character idempotents on the N-th roots of unity
    Idempotents {
        #[arg(long)]
        modulus: u64,
        #[command(flatten)]
        out: OutArg,
    },
}

#[derive(Subcommand, Debug)]
enum EndoCmd {
    /// Multiply two crossed-product elements given as JSON
    Mul {
        #[arg(long)]
        left: PathBuf,
        #[arg(long)]
        right: PathBuf,
        #[command(flatten)]
        out: OutArg,
    },
    /// Galois equivariance of the evaluation states on random elements of level N
    Fabulous {
        #[arg(long)]
        modulus: u64,
        #[arg(long, default_value_t = 25)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        out: OutArg,
    },
}

#[derive(Subcommand, Debug)]
enum ThermoCmd {
    /// KMS residuals of pairs (JSON list of {"x": .., "y": ..}) as CSV `t,residual,bound`
    Kms {
        #[arg(long)]
        beta: f64,
        #[arg(long, default_value_t = 100_000)]
        nmax: usize,
        #[arg(long)]
        pairs: PathBuf,
        #[arg(long = "t-grid", value_delimiter = ',', default_value = "0,1,5", allow_hyphen_values = true)]
        t_grid: Vec<f64>,
        /// Allowed ratio of residual to tail bound
        #[arg(long, default_value_t = 10.0)]
        factor: f64,
        #[command(flatten)]
        out: OutArg,
    },
}

#[derive(Subcommand, Debug)]
enum SpectralCmd {
    /// Mellin transform of E(xi) against L(chi, s) times the local factors, for
    /// `xi = chi (x) l e^-l`; points as `re:im`
    Factorize {
        #[command(flatten)]
        chi: CharArg,
        #[arg(long = "s-grid", value_delimiter = ',', default_value = "2:0,1.5:3,3:-2", allow_hyphen_values = true)]
        s_grid: Vec<String>,
        #[arg(long, default_value_t = 1e-6)]
        tol: f64,
        #[command(flatten)]
        out: OutArg,
    },
    /// Transform of E(xi) - A/l at the first zeros, against its size nearby
    Vanish {
        #[command(flatten)]
        chi: CharArg,
        #[arg(long = "zeros-to", default_value_t = 40.0)]
        zeros_to: f64,
        /// Read ordinates from this file instead of locating them
        #[arg(long = "zeros-file")]
        zeros_file: Option<PathBuf>,
        #[arg(long, default_value_t = 5)]
        count: usize,
        /// Width of the Gaussian in log l
        #[arg(long, default_value_t = 0.1)]
        width: f64,
        #[arg(long, default_value_t = 1e-4)]
        tol: f64,
        #[command(flatten)]
        out: OutArg,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum PlaceArg {
    Real,
    Complex,
}

impl From<PlaceArg> for Place {
    fn from(p: PlaceArg) -> Place {
        match p {
            PlaceArg::Real => Place::Real,
            PlaceArg::Complex => Place::Complex,
        }
    }
}

#[derive(Subcommand, Debug)]
enum ArchCmd {
    /// Lefschetz formula at one place on a grid of s, as CSV `s,lhs,rhs,diff`
    Lefschetz {
        /// Hodge structure JSON, e.g. {"m":1,"hpq":{"1,0":1,"0,1":1}}
        #[arg(long)]
        hodge: PathBuf,
        #[arg(long, value_enum)]
        place: PlaceArg,
        #[arg(long = "s-grid", alias = "s", value_delimiter = ',', default_value = "0,0.5,3,10", allow_hyphen_values = true)]
        s_grid: Vec<f64>,
        #[arg(long, default_value_t = 1e-6)]
        tol: f64,
        #[command(flatten)]
        out: OutArg,
    },
    /// Average number of zeros from the local factors
    Count {
        #[arg(long)]
        hodge: PathBuf,
        #[arg(long, value_enum, value_delimiter = ',')]
        places: Vec<PlaceArg>,
        #[arg(long)]
        to: f64,
        /// Poles of the completed L-function (2 for zeta)
        #[arg(long, default_value_t = 0)]
        poles: u32,
        #[command(flatten)]
        out: OutArg,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Family {
    Gaussian,
}

#[derive(Subcommand, Debug)]
enum ExplicitCmd {
    /// Both sides of the explicit formula as a JSON report
    Balance {
        #[arg(long, value_enum, default_value = "gaussian")]
        family: Family,
        #[arg(long)]
        sigma: f64,
        /// Centre of the Gaussian in log u
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        center: f64,
        #[arg(long = "zeros-to", default_value_t = 200.0)]
        zeros_to: f64,
        #[arg(long = "zeros-file")]
        zeros_file: Option<PathBuf>,
        #[command(flatten)]
        chi: CharArg,
        #[arg(long, default_value_t = 1e-3)]
        tol: f64,
        #[command(flatten)]
        out: OutArg,
    },
}

#[derive(Args, Debug)]
struct ZerosArgs {
    #[arg(long)]
    to: f64,
    #[command(flatten)]
    chi: CharArg,
    #[command(flatten)]
    out: OutArg,
}

enum Failure {
    Usage(String),
    Check(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Io(_) | Error::Json(_) | Error::Parse(_) | Error::InvalidInput(_) | Error::InvalidHodge(_) => {
                Failure::Usage(e.to_string())
            }
            other => Failure::Check(other.to_string()),
        }
    }
}

type Outcome = std::result::Result<String, Failure>;

/// Runs the command line `args` (including the program name) and returns the exit code.
pub fn run<I, S>(args: I) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<String>,
{
    let args: Vec<String> = args.into_iter().map(Into::into).collect();
    let args = match with_config(args) {
        Ok(a) => a,
        Err(msg) => {
            eprintln!("error: {msg}");
            return 2;
        }
    };
    let cli = match Cli::try_parse_from(&args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let threads = cli.threads.or_else(|| std::env::var(THREADS_ENV).ok().and_then(|v| v.parse().ok()));
    if let Some(n) = threads {
        // a pool may already exist when called repeatedly from one process
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    match dispatch(cli.command) {
        Ok(summary) => {
            eprintln!("{summary}");
            0
        }
        Err(Failure::Check(msg)) => {
            eprintln!("check failed: {msg}");
            1
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            2
        }
    }
}

/// Splices `--key=value` tokens from the `--config` file in after the subcommand names, so
/// that flags given explicitly come later and win.
fn with_config(args: Vec<String>) -> std::result::Result<Vec<String>, String> {
    let mut rest = Vec::with_capacity(args.len());
    let mut path = None;
    let mut it = args.into_iter();
    while let Some(a) = it.next() {
        if a == "--config" {
            path = Some(it.next().ok_or("--config needs a file")?);
        } else if let Some(p) = a.strip_prefix("--config=") {
            path = Some(p.to_string());
        } else {
            rest.push(a);
        }
    }
    let Some(path) = path else { return Ok(rest) };
    let text = fs::read_to_string(&path).map_err(|e| format!("{path}: {e}"))?;
    let mut extra = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (k, v) = line.split_once('=').ok_or(format!("{path}:{}: expected key=value", i + 1))?;
        extra.push(format!("--{}={}", k.trim().replace('_', "-"), v.trim()));
    }
    let at = 1 + rest.iter().skip(1).take_while(|a| !a.starts_with('-')).count();
    rest.splice(at..at, extra);
    Ok(rest)
}

fn emit(out: &OutArg, text: &str) -> std::result::Result<(), Failure> {
    match &out.out {
        Some(p) => fs::write(p, text).map_err(|e| Failure::Usage(format!("{}: {e}", p.display()))),
        None => {
            let mut o = std::io::stdout().lock();
            o.write_all(text.as_bytes()).map_err(|e| Failure::Usage(e.to_string()))
        }
    }
}

fn read_json<T: serde::de::DeserializeOwned>(p: &Path) -> std::result::Result<T, Failure> {
    let text = fs::read_to_string(p).map_err(|e| Failure::Usage(format!("{}: {e}", p.display())))?;
    serde_json::from_str(&text).map_err(|e| Failure::Usage(format!("{}: {e}", p.display())))
}

fn pretty(v: &impl serde::Serialize) -> String {
    serde_json::to_string_pretty(v).expect("serializable") + "\n"
}

fn character(c: &CharArg) -> std::result::Result<DirichletCharacter, Failure> {
    Ok(DirichletCharacter::by_index(c.modulus, c.index)?)
}

fn zero_table(chi: &DirichletCharacter, to: f64, file: Option<&Path>) -> std::result::Result<ZeroTable, Failure> {
    let p = chi.primitive();
    Ok(match file {
        Some(f) => ZeroTable::read(f, p.modulus(), p.index())?,
        None => ZeroTable::dirichlet(&p, to)?,
    })
}

fn parse_point(s: &str) -> std::result::Result<Complex64, Failure> {
    let (re, im) = s.split_once(':').unwrap_or((s, "0"));
    match (re.trim().parse::<f64>(), im.trim().parse::<f64>()) {
        (Ok(a), Ok(b)) => Ok(Complex64::new(a, b)),
        _ => Err(Failure::Usage(format!("point {s:?} is not re:im"))),
    }
}

fn dispatch(cmd: Command) -> Outcome {
    match cmd {
        Command::Cyclic(CyclicCmd::Check { algebra, degree, seed, out }) => {
            let alg = FiniteAlgebra::by_name(&algebra)?;
            let report = check_relations(&alg, degree, &StandardCyclic, seed)?;
            emit(&out, &pretty(&report))?;
            if report.all_hold() {
                Ok(format!("{} relation instances hold on {}", report.instances.len(), alg.name()))
            } else {
                Err(Failure::Check(format!("failing families {:?}", report.failing_families())))
            }
        }
        Command::Artin(ArtinCmd::Compose { left, right, out }) => {
            let u = Correspondence::from_json(&read_json::<CorrespondenceJson>(&left)?)?;
            let v = Correspondence::from_json(&read_json::<CorrespondenceJson>(&right)?)?;
            let w = compose(&u, &v)?;
            emit(&out, &pretty(&w.to_json()))?;
            Ok("composed".into())
        }
        Command::Artin(ArtinCmd::Idempotents { modulus, out }) => {
            let x = ArtinObject::roots_of_unity(modulus);
            let chars = DirichletCharacter::all(modulus)?;
            let ps = chars.iter().map(|c| character_idempotent(c, &x)).collect::<crate::Result<Vec<_>>>()?;
            let idempotent = ps.iter().all(|p| p.is_idempotent());
            let mut orthogonal = true;
            for (i, p) in ps.iter().enumerate() {
                for (j, r) in ps.iter().enumerate() {
                    if i != j && !p.mul(r)?.is_zero() {
                        orthogonal = false;
                    }
                }
            }
            let mut total = ps[0].clone();
            for p in &ps[1..] {
                total = total.add(p)?;
            }
            let complete = total == total.identity_like(x.points());
            let rows: Vec<_> = chars
                .iter()
                .zip(&ps)
                .map(|(c, p)| {
                    json!({
                        "index": c.index(),
                        "conductor": c.conductor(),
                        "parity": c.parity(),
                        "rank": p.trace().as_rational().map(|r| r.to_string()).unwrap_or_default(),
                    })
                })
                .collect();
            let report = json!({
                "modulus": modulus,
                "characters": rows,
                "idempotent": idempotent,
                "orthogonal": orthogonal,
                "complete": complete,
            });
            emit(&out, &pretty(&report))?;
            if idempotent && orthogonal && complete {
                Ok(format!("{} character idempotents resolve the identity mod {modulus}", ps.len()))
            } else {
                Err(Failure::Check(format!("idempotent {idempotent}, orthogonal {orthogonal}, complete {complete}")))
            }
        }
        Command::Endo(EndoCmd::Mul { left, right, out }) => {
            let x = CrossedElement::from_json(&read_json::<CrossedJson>(&left)?)?;
            let y = CrossedElement::from_json(&read_json::<CrossedJson>(&right)?)?;
            emit(&out, &pretty(&x.mul(&y)?.to_json()))?;
            Ok("multiplied".into())
        }
        Command::Endo(EndoCmd::Fabulous { modulus, samples, seed, out }) => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let us = units(modulus);
            let (mut checks, mut failures) = (0usize, Vec::new());
            for k in 0..samples {
                let x = sample_element(&mut rng, modulus, 3, 6);
                for &c in &us {
                    for &alpha in &us {
                        checks += 1;
                        let alpha = lift_unit(alpha, modulus, x.level());
                        if !fabulous_check(c, modulus, alpha, &x)? {
                            failures.push(json!({ "sample": k, "c": c, "alpha": alpha }));
                        }
                    }
                }
            }
            let ok = failures.is_empty();
            let report = json!({ "modulus": modulus, "samples": samples, "checks": checks, "failures": failures });
            emit(&out, &pretty(&report))?;
            if ok {
                Ok(format!("{checks} equivariance checks hold mod {modulus}"))
            } else {
                Err(Failure::Check(format!("equivariance fails mod {modulus}")))
            }
        }
        Command::Thermo(ThermoCmd::Kms { beta, nmax, pairs, t_grid, factor, out }) => {
            let pairs: Vec<KmsPairJson> = read_json(&pairs)?;
            let state = GibbsState::truncated(beta, nmax)?;
            let mut csv = String::from("t,residual,bound\n");
            let mut worst: f64 = 0.0;
            for p in &pairs {
                let x = CrossedElement::from_json(&p.x)?;
                let y = CrossedElement::from_json(&p.y)?;
                for r in kms_verify(&x, &y, &state, &t_grid)? {
                    let _ = writeln!(csv, "{},{:.6e},{:.6e}", r.t, r.residual, r.bound);
                    worst = worst.max(r.residual - factor * r.bound);
                }
            }
            emit(&out, &csv)?;
            if worst <= 1e-14 {
                Ok(format!("KMS holds within {factor} x tail bound for {} pairs", pairs.len()))
            } else {
                Err(Failure::Check(format!("residual exceeds {factor} x bound by {worst:e}")))
            }
        }
        Command::Spectral(SpectralCmd::Factorize { chi, s_grid, tol, out }) => {
            let c = character(&chi)?;
            let f0: Vec<Complex64> = (0..c.modulus()).map(|a| c.value(a)).collect();
            let f = TestFunction::power_exp(1.0, 1.0);
            let mut csv = String::from("s_re,s_im,lhs_re,lhs_im,rhs_re,rhs_im,difference\n");
            let mut bad = Vec::new();
            let points = s_grid.iter().map(|s| parse_point(s)).collect::<Result<Vec<_>, _>>()?;
            for (&s, r) in points.iter().zip(l_factorizations(&f0, &c, &f, 1, &points)?) {
                let _ = writeln!(csv, "{},{},{:e},{:e},{:e},{:e},{:e}", s.re, s.im, r.lhs.re, r.lhs.im, r.rhs.re, r.rhs.im, r.difference);
                if r.difference > tol * (1.0 + r.lhs.norm()) {
                    bad.push(s);
                }
            }
            emit(&out, &csv)?;
            if bad.is_empty() {
                Ok(format!("factorization holds at {} points", s_grid.len()))
            } else {
                Err(Failure::Check(format!("factorization fails at {bad:?}")))
            }
        }
        Command::Spectral(SpectralCmd::Vanish { chi, zeros_to, zeros_file, count, width, tol, out }) => {
            let c = character(&chi)?;
            let zeros = zero_table(&c, zeros_to, zeros_file.as_deref())?;
            let g = TestFunction::log_gaussian(0.0, width);
            let xi = if c.modulus() == 1 {
                AdelicFunction::level_one(g)
            } else {
                AdelicFunction::product((0..c.modulus()).map(|a| c.value(a)).collect(), g)?
            };
            let rows = vanishing_check(&xi, &zeros, count)?;
            let mut csv = String::from("gamma,value,line_scale,ratio\n");
            let mut worst: f64 = 0.0;
            for r in &rows {
                let ratio = r.value / r.line_scale;
                worst = worst.max(ratio);
                let _ = writeln!(csv, "{},{:e},{:e},{:e}", r.gamma, r.value, r.line_scale, ratio);
            }
            emit(&out, &csv)?;
            if rows.len() < count {
                Err(Failure::Check(format!("only {} zeros below {zeros_to}", rows.len())))
            } else if worst <= tol {
                Ok(format!("transform vanishes at {} zeros (worst ratio {worst:e})", rows.len()))
            } else {
                Err(Failure::Check(format!("ratio {worst:e} above {tol:e}")))
            }
        }
        Command::Arch(ArchCmd::Lefschetz { hodge, place, s_grid, tol, out }) => {
            let h = HodgeStructure::from_json(&read_json::<HodgeJson>(&hodge)?)?;
            let mut csv = String::from("s,lhs,rhs,diff\n");
            let mut worst: f64 = 0.0;
            for &s in &s_grid {
                let r = match place {
                    PlaceArg::Real => lefschetz_real(&h, s)?,
                    PlaceArg::Complex => lefschetz_complex(&h, s)?,
                };
                worst = worst.max(r.diff);
                let _ = writeln!(csv, "{},{:.15e},{:.15e},{:e}", r.s, r.lhs, r.rhs, r.diff);
            }
            emit(&out, &csv)?;
            if worst <= tol {
                Ok(format!("Lefschetz formula holds on {} points (worst {worst:e})", s_grid.len()))
            } else {
                Err(Failure::Check(format!("difference {worst:e} above {tol:e}")))
            }
        }
        Command::Arch(ArchCmd::Count { hodge, places, to, poles, out }) => {
            let h = HodgeStructure::from_json(&read_json::<HodgeJson>(&hodge)?)?;
            let places: Vec<Place> = places.into_iter().map(Place::from).collect();
            if places.is_empty() {
                return Err(Failure::Usage("--places needs at least one place".into()));
            }
            let sym = zero_count_average(&h, &places, to)?;
            let one = smooth_zero_count(&h, &places, to, poles)?;
            emit(&out, &pretty(&json!({ "E": to, "symmetric": sym, "one_sided": one })))?;
            Ok(format!("average count {one:.6} below {to}"))
        }
        Command::Explicit(ExplicitCmd::Balance { family: Family::Gaussian, sigma, center, zeros_to, zeros_file, chi, tol, out }) => {
            let c = character(&chi)?;
            let zeros = zero_table(&c, zeros_to, zeros_file.as_deref())?;
            let mut f = IdeleTestFunction::gaussian(1.0, center, sigma);
            if c.modulus() > 1 {
                f = f.with_twist(c);
            }
            let r = balance(&f, &zeros, zeros_to, &BalanceOptions::default())?;
            emit(&out, &pretty(&r.to_json()))?;
            if r.residual <= tol {
                Ok(format!("explicit formula balances to {:e} with {} zeros", r.residual, r.zeros))
            } else {
                Err(Failure::Check(format!("residual {:e} above {tol:e}", r.residual)))
            }
        }
        Command::Zeros(ZerosArgs { to, chi, out }) => {
            let c = character(&chi)?.primitive();
            let t = ZeroTable::dirichlet(&c, to)?;
            emit(&out, &t.to_text())?;
            Ok(format!("{} zeros with |gamma| <= {to}", t.len()))
        }
    }
}
