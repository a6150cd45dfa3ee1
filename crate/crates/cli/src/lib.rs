//! Command-line front end for `tgrs-core`: key files, encryption, the
//! square-code distinguisher, key recovery and the lemma checks.
//!
//! Exit status is 0 on success, 1 on usage, I/O or file-format errors and 2
//! on domain failures (decoding failure, exhausted budget, unsupported
//! parameters, rejected inputs).

pub mod format;
pub mod threads;

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use thiserror::Error;
use tgrs_core::attack::{full_attack, AttackConfig};
use tgrs_core::distinguisher::{distinguish, DistinguishConfig, Verdict};
use tgrs_core::exec::Executor;
use tgrs_core::lemmas::{
    dim_sum_check, dim_sum_instances, g_density_mc, gcd_census, predicted_density_below, triple_census, CensusStop,
    TripleSetup,
};
use tgrs_core::mceliece::{decrypt, encrypt, keygen, TwistParams};
use tgrs_core::{Elem, Field, LinearCode};

use crate::format::{FormatError, Lines};
use crate::threads::Threads;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{path}: {source}")]
    Format { path: PathBuf, source: FormatError },
    #[error("{0}")]
    Domain(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Domain(_) => 2,
            _ => 1,
        }
    }
}

fn domain<E: std::fmt::Display>(e: E) -> CliError {
    CliError::Domain(e.to_string())
}

#[derive(Parser, Debug)]
#[command(name = "tgrs", version, about = "Twisted GRS McEliece toolkit")]
struct Cli {
    /// Root seed; every random choice derives from it.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Worker threads; outputs do not depend on it.
    #[arg(long, global = true, default_value_t = 1)]
    threads: usize,
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Generate a key pair, written to PREFIX.key and PREFIX.pub.
    Keygen {
        /// Field order, a prime power.
        #[arg(long)]
        q: u32,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        /// Twist offsets t_j, comma separated.
        #[arg(long, value_delimiter = ',')]
        t: Vec<usize>,
        /// Hook positions h_j, comma separated.
        #[arg(long, value_delimiter = ',')]
        h: Vec<usize>,
        /// Twist coefficients; drawn from the seed when omitted.
        #[arg(long, value_delimiter = ',')]
        eta: Option<Vec<Elem>>,
        #[arg(short = 'o', long = "out")]
        prefix: PathBuf,
    },
    /// Encrypt a message line under a public key.
    Encrypt {
        #[arg(long = "pub")]
        public: PathBuf,
        #[arg(long)]
        msg: PathBuf,
        #[arg(short = 'o', long = "out")]
        out: Option<PathBuf>,
    },
    /// Decrypt a ciphertext line with the secret key.
    Decrypt {
        #[arg(long)]
        key: PathBuf,
        #[arg(long = "pub")]
        public: PathBuf,
        #[arg(long)]
        ct: PathBuf,
        #[arg(short = 'o', long = "out")]
        out: Option<PathBuf>,
    },
    /// Shortened-square measurements against the random baseline.
    Distinguish {
        #[arg(long = "pub")]
        public: PathBuf,
        /// Assumed number of twists.
        #[arg(long, default_value_t = 1)]
        l: usize,
        /// Degree d_l when known; tightens the reported bound.
        #[arg(long)]
        d: Option<usize>,
        #[arg(long, default_value_t = 3)]
        trials: usize,
        #[arg(short = 'o', long = "out")]
        out: Option<PathBuf>,
    },
    /// Recover a one-twist secret key from the public key.
    Attack {
        #[arg(long = "pub")]
        public: PathBuf,
        #[arg(long, default_value_t = 20)]
        budget_factor: u64,
        #[arg(short = 'o', long = "out")]
        out: Option<PathBuf>,
    },
    /// Exhaustive and Monte-Carlo checks of the counting lemmas.
    Lemmas {
        #[arg(long, value_enum)]
        check: Check,
        #[arg(long)]
        q: Option<u32>,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        t: Option<usize>,
        #[arg(long)]
        s: Option<usize>,
        #[arg(long)]
        u: Option<usize>,
        /// Hook of the twisted space for `triples`.
        #[arg(long)]
        h: Option<usize>,
        #[arg(long)]
        eta: Option<Elem>,
        /// Sample or instance count.
        #[arg(long)]
        samples: Option<u64>,
        /// For `triples`: stop after this many triples of small product
        /// dimension (bounded by --samples).
        #[arg(long)]
        accepted: Option<u64>,
        #[arg(short = 'o', long = "out")]
        out: Option<PathBuf>,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum Check {
    Sum,
    Census,
    Density,
    Gdensity,
    Triples,
}

/// Parses `args` (program name first) and runs the command; returns the
/// process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let start = Instant::now();
    let result = execute(&cli);
    eprintln!("# wall-time={:.3}s", start.elapsed().as_secs_f64());
    match result {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.into(), source })
}

fn write(path: Option<&Path>, text: &str) -> Result<(), CliError> {
    match path {
        Some(p) => std::fs::write(p, text).map_err(|source| CliError::Io { path: p.into(), source }),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn parse<T>(path: &Path, f: impl FnOnce(&mut Lines) -> Result<T, FormatError>) -> Result<T, CliError> {
    let text = read(path)?;
    let parsed = f(&mut Lines::new(&text));
    parsed.map_err(|source| CliError::Format { path: path.into(), source })
}

/// `# tgrs <version> <subcommand> seed=<s> <params>`; thread count and wall
/// time are left out so that outputs are reproducible byte for byte.
fn manifest(cmd: &str, seed: u64, params: &str) -> String {
    let sep = if params.is_empty() { "" } else { " " };
    format!("# tgrs {} {cmd} seed={seed}{sep}{params}\n", env!("CARGO_PKG_VERSION"))
}

fn field(q: u32) -> Result<Field, CliError> {
    Field::from_order(q).map_err(|e| CliError::Usage(format!("--q {q}: {e}")))
}

fn execute(cli: &Cli) -> Result<(), CliError> {
    let exec = Threads::new(cli.threads);
    let seed = cli.seed;
    match &cli.cmd {
        Command::Keygen { q, n, k, t, h, eta, prefix } => {
            let f = field(*q)?;
            let twist = TwistParams { t: t.clone(), h: h.clone(), eta: eta.clone() };
            let (sk, pk) = keygen(&f, *n, *k, &twist, seed).map_err(domain)?;
            let list = |xs: &[usize]| xs.iter().map(ToString::to_string).collect::<Vec<_>>().join(",");
            let params = format!("q={q} n={n} k={k} t={} h={}", list(t), list(h));
            let mut key = manifest("keygen", seed, &params);
            format::write_key(&mut key, &sk);
            let mut public = manifest("keygen", seed, &params);
            format::write_public(&mut public, &pk);
            let with_ext = |ext: &str| {
                let mut p = prefix.clone().into_os_string();
                p.push(ext);
                PathBuf::from(p)
            };
            write(Some(&with_ext(".key")), &key)?;
            write(Some(&with_ext(".pub")), &public)
        }
        Command::Encrypt { public, msg, out } => {
            let pk = parse(public, format::read_public)?;
            let m = parse(msg, |l| format::read_vector(l, pk.field(), pk.k()))?;
            let c = encrypt(&pk, &m, seed).map_err(domain)?;
            let mut text = String::new();
            format::write_vector(&mut text, &c);
            write(out.as_deref(), &text)
        }
        Command::Decrypt { key, public, ct, out } => {
            let sk = parse(key, format::read_key)?;
            let pk = parse(public, format::read_public)?;
            let c = parse(ct, |l| format::read_vector(l, pk.field(), pk.n()))?;
            let m = decrypt(&sk, &pk, &c).map_err(domain)?;
            let mut text = String::new();
            format::write_vector(&mut text, &m);
            write(out.as_deref(), &text)
        }
        Command::Distinguish { public, l, d, trials, out } => {
            let pk = parse(public, format::read_public)?;
            let mut code = LinearCode::from_generator(pk.g_pub());
            let dual = 2 * code.k() > code.n();
            if dual {
                code = code.dual();
            }
            let cfg = DistinguishConfig { l_hint: *l, d_hint: *d, trials_per_a: *trials, seed };
            let res = distinguish(&code, &cfg, &exec).map_err(domain)?;
            let d_text = d.map_or("unknown".to_string(), |d| d.to_string());
            let mut text = manifest("distinguish", seed, &format!("l={l} d={d_text} trials={trials}"));
            writeln!(text, "code={} n={} k={}", if dual { "dual" } else { "public" }, code.n(), code.k()).unwrap();
            for r in &res.reports {
                writeln!(
                    text,
                    "a={} I_seed={} dim={} bound={} random={}",
                    r.a, r.i_seed, r.observed, r.predicted_max, r.random_expected
                )
                .unwrap();
            }
            let verdict = match res.verdict {
                Verdict::Structured => "structured",
                Verdict::Inconclusive => "inconclusive",
            };
            writeln!(text, "verdict={verdict}").unwrap();
            write(out.as_deref(), &text)
        }
        Command::Attack { public, budget_factor, out } => {
            let pk = parse(public, format::read_public)?;
            let cfg = AttackConfig { budget_factor: *budget_factor, seed, ..AttackConfig::default() };
            let r = full_attack(&pk, &cfg, &exec).map_err(domain)?;
            let key = &r.recovered;
            let mut text = manifest("attack", seed, &format!("budget_factor={budget_factor}"));
            writeln!(
                text,
                "case={} trials={} h={} t={} eta={} verified={}",
                r.case.number(),
                r.trials_used,
                key.h()[0],
                key.t()[0],
                key.eta()[0],
                r.verified
            )
            .unwrap();
            format::write_key(&mut text, key);
            write(out.as_deref(), &text)?;
            if r.verified {
                Ok(())
            } else {
                Err(CliError::Domain("recovered key failed verification".into()))
            }
        }
        Command::Lemmas { check, q, k, t, s, u, h, eta, samples, accepted, out } => {
            let text = lemmas(*check, LemmaArgs { q: *q, k: *k, t: *t, s: *s, u: *u, h: *h, eta: *eta }, *samples, *accepted, seed, &exec)?;
            write(out.as_deref(), &text)
        }
    }
}

#[derive(Clone, Copy)]
struct LemmaArgs {
    q: Option<u32>,
    k: Option<usize>,
    t: Option<usize>,
    s: Option<usize>,
    u: Option<usize>,
    h: Option<usize>,
    eta: Option<Elem>,
}

fn verdict(ok: bool) -> &'static str {
    if ok {
        "PASS"
    } else {
        "FAIL"
    }
}

fn lemmas<E: Executor>(
    check: Check,
    a: LemmaArgs,
    samples: Option<u64>,
    accepted: Option<u64>,
    seed: u64,
    exec: &E,
) -> Result<String, CliError> {
    let mut text;
    match check {
        Check::Sum => {
            let (q, k_max, count) = (a.q.unwrap_or(5), a.k.unwrap_or(8), samples.unwrap_or(500));
            let f = field(q)?;
            text = manifest("lemmas", seed, &format!("check=sum q={q} k={k_max} samples={count}"));
            let mut matches = 0;
            for (f1, f2, k) in dim_sum_instances(&f, k_max, count as usize, seed) {
                let (m, p) = dim_sum_check(&f1, &f2, k).map_err(domain)?;
                if m == p {
                    matches += 1;
                } else {
                    writeln!(text, "sum_instance k={k} f={:?} g={:?} measured={m} predicted={p} verdict=FAIL", f1.coeffs(), f2.coeffs())
                        .unwrap();
                }
            }
            writeln!(text, "sum q={q} k<={k_max} instances={count} measured={matches} predicted={count} verdict={}", verdict(matches == count))
                .unwrap();
        }
        Check::Census | Check::Density => {
            let q = a.q.unwrap_or(3);
            let (s, u) = (a.s.unwrap_or(2), a.u.unwrap_or(2));
            let f = field(q)?;
            let census = gcd_census(&f, s, u, exec).map_err(domain)?;
            let name = if matches!(check, Check::Census) { "census" } else { "density" };
            text = manifest("lemmas", seed, &format!("check={name} q={q} s={s} u={u}"));
            if matches!(check, Check::Census) {
                writeln!(
                    text,
                    "census q={q} s={s} u={u} i=all measured={} predicted={} verdict={}",
                    census.total,
                    census.predicted_total(),
                    verdict(census.total == census.predicted_total())
                )
                .unwrap();
                for (i, &c) in census.counts.iter().enumerate() {
                    let p = census.predicted(i);
                    writeln!(text, "census q={q} s={s} u={u} i={i} measured={c} predicted={p} verdict={}", verdict(p == c.into())).unwrap();
                }
            } else {
                for j in 0..census.counts.len() {
                    let (m, p) = (census.density_below(j), predicted_density_below(q as u64, j));
                    writeln!(text, "density q={q} s={s} u={u} j={j} measured={m} predicted={p} verdict={}", verdict(m == p)).unwrap();
                }
            }
        }
        Check::Gdensity => {
            let (q, k, t, n) = (a.q.unwrap_or(11), a.k.unwrap_or(17), a.t.unwrap_or(17), samples.unwrap_or(1_000_000));
            let f = field(q)?;
            let est = g_density_mc(&f, k, t, n, seed, exec).map_err(domain)?;
            let p0 = 1.0 - (q as f64).powi(-7);
            let sigma = est.sigma_at(p0);
            text = manifest("lemmas", seed, &format!("check=gdensity q={q} k={k} t={t} samples={n}"));
            writeln!(
                text,
                "gdensity q={q} k={k} t={t} samples={n} seed={seed} hits={} measured={:.9} predicted>={p0:.9} sigma={sigma:.3e} verdict={}",
                est.hits,
                est.frequency(),
                verdict(est.frequency() >= p0 - 3.0 * sigma)
            )
            .unwrap();
        }
        Check::Triples => {
            let (q, k, t) = (a.q.unwrap_or(17), a.k.unwrap_or(17), a.t.unwrap_or(17));
            let (h, eta) = (a.h.unwrap_or(4), a.eta.unwrap_or(1));
            let f = field(q)?;
            let setup = TripleSetup::twisted(&f, k, t, h, eta).map_err(domain)?;
            let stop = match accepted {
                Some(target) => CensusStop::Accepted { target, max_samples: samples.unwrap_or(100_000_000) },
                None => CensusStop::Samples(samples.unwrap_or(1_000_000)),
            };
            let c = triple_census(&setup, stop, seed, exec).map_err(domain)?;
            let est = c.outside_fraction();
            let p0 = 1.0 / (q as f64 * q as f64);
            let (measured, sigma) = if est.samples == 0 { (0.0, 0.0) } else { (est.frequency(), est.sigma_at(p0)) };
            text = manifest("lemmas", seed, &format!("check=triples q={q} k={k} t={t} h={h} eta={eta}"));
            writeln!(
                text,
                "triples q={q} k={k} t={t} samples={} inside={} gamma={} psi={} measured={measured:.6} predicted<={p0:.6} sigma={sigma:.3e} verdict={}",
                c.samples,
                c.inside,
                c.gamma,
                c.psi,
                verdict(est.samples > 0 && measured <= p0 + 3.0 * sigma)
            )
            .unwrap();
        }
    }
    Ok(text)
}
