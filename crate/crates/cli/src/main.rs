//! `braid-cones`: Poincare polynomials of poset cones, the bijections
//! between transverse permutations and linear extensions, and Foata's
//! intercalation monoid from the command line.

use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

use braid_cones::bijections::{self, word_to_string, Permutation};
use braid_cones::foata::{self, MultisetPermutation};
use braid_cones::genfun;
use braid_cones::partition::enumerate_transverse;
use braid_cones::roots::count_real_roots;
use braid_cones::selfcheck::{run_selfcheck, SelfCheckConfig};
use braid_cones::whitney::{self, Method};
use braid_cones::{BigInt, ChainDecomposition, Error, IntPolynomial, Poset, SetPartition};

const EXIT_PARSE: u8 = 2;
const EXIT_PRECONDITION: u8 = 3;
const EXIT_SELFCHECK: u8 = 4;

#[derive(Parser)]
#[command(name = "braid-cones", version, about)]
struct Cli {
    /// Worker threads (defaults to the number of CPUs).
    #[arg(long, global = true)]
    workers: Option<usize>,
    /// Seed for randomized commands.
    #[arg(long, global = true, default_value_t = 42)]
    seed: u64,
    /// Print machine-readable output only.
    #[arg(long, global = true)]
    machine: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Auto,
    Transverse,
    Lrmax,
    Foata,
    Width2,
}

impl From<MethodArg> for Method {
    fn from(m: MethodArg) -> Method {
        match m {
            MethodArg::Auto => Method::Auto,
            MethodArg::Transverse => Method::Transverse,
            MethodArg::Lrmax => Method::LrMax,
            MethodArg::Foata => Method::Foata,
            MethodArg::Width2 => Method::Width2,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Poincare polynomial of a poset file (`-` for stdin).
    Poin {
        poset: PathBuf,
        #[arg(long, value_enum, default_value = "auto")]
        method: MethodArg,
    },
    /// List (or count) linear extensions.
    Linext {
        poset: PathBuf,
        #[arg(long)]
        count: bool,
    },
    /// List (or count) transverse partitions with their Mobius weights.
    Transverse {
        poset: PathBuf,
        #[arg(long)]
        count: bool,
    },
    /// Bijections between transverse permutations, linear extensions and
    /// transverse partitions.
    Bij {
        #[command(subcommand)]
        map: BijCommand,
    },
    /// Intercalation monoid of multiset permutations.
    Foata {
        #[command(subcommand)]
        op: FoataCommand,
    },
    /// Generating function of Poincare polynomials of unions of chains.
    Genfun {
        #[command(subcommand)]
        op: GenfunCommand,
    },
    /// Poincare polynomials of the 3 x n grid for n = 2..=n_max.
    Table {
        #[arg(long, default_value_t = 8)]
        n_max: usize,
    },
    /// Cross-check all methods and bijections on random posets.
    Selfcheck {
        #[arg(long, default_value_t = 7)]
        n_max: usize,
        #[arg(long, default_value_t = 200)]
        trials: usize,
        /// Perturb one computed coefficient per trial (negative control).
        #[arg(long, hide = true)]
        corrupt: bool,
    },
    /// Number of distinct real roots of a polynomial given by its
    /// coefficients in ascending degree, e.g. `"1 12 43 30 4"`.
    Roots { coefficients: String },
}

#[derive(Subcommand)]
enum BijCommand {
    /// Transverse permutation to linear extension via standard form.
    Phi {
        poset: PathBuf,
        /// One-line `[a,b,...]` or cycle form `(a,b)(c)`.
        permutation: String,
        /// Allow fixed points to be omitted from cycle form.
        #[arg(long)]
        implicit_fixed: bool,
    },
    /// Linear extension to transverse permutation via P-LR-maxima.
    Psi { poset: PathBuf, word: String },
    /// Width-two bijection from linear extensions to transverse partitions.
    Omega {
        poset: PathBuf,
        /// A linear extension, or a partition `1,3|2,4` with `--inverse`.
        input: String,
        #[arg(long)]
        inverse: bool,
        /// Elements of the first chain; defaults to the computed cover.
        #[arg(long, value_delimiter = ',')]
        first: Option<Vec<usize>>,
    },
}

#[derive(Subcommand)]
enum FoataCommand {
    /// Left-greedy prime cycle factorization.
    Decompose {
        sigma: String,
        #[arg(long, value_delimiter = ',')]
        support: Option<Vec<usize>>,
    },
    /// Intercalation product of two elements in `top;bottom` form.
    Intercalate { left: String, right: String },
    /// Number of prime cycles.
    Fcyc {
        sigma: String,
        #[arg(long, value_delimiter = ',')]
        support: Option<Vec<usize>>,
    },
    /// Linear extension of a union of chains to a transverse permutation.
    Phi {
        word: String,
        #[arg(long, value_delimiter = ',', required = true)]
        support: Vec<usize>,
    },
    /// Inverse of `phi`.
    PhiInv {
        permutation: String,
        #[arg(long, value_delimiter = ',', required = true)]
        support: Vec<usize>,
        #[arg(long)]
        implicit_fixed: bool,
    },
}

#[derive(Subcommand)]
enum GenfunCommand {
    /// Coefficients of the series side up to the given total degree.
    Rhs {
        #[arg(long)]
        ell: usize,
        #[arg(long)]
        degree: usize,
    },
    /// Compare every coefficient with a direct computation.
    Verify {
        #[arg(long)]
        ell: usize,
        #[arg(long)]
        degree: usize,
    },
    /// Antichain polynomial against Stirling numbers of the first kind.
    Stirling {
        #[arg(long)]
        n: usize,
    },
}

struct Out {
    machine: bool,
    buf: String,
}

impl Out {
    fn line(&mut self, s: impl AsRef<str>) {
        self.buf.push_str(s.as_ref());
        self.buf.push('\n');
    }

    /// Printed only in human mode.
    fn human(&mut self, s: impl AsRef<str>) {
        if !self.machine {
            self.line(s);
        }
    }

    fn poly(&mut self, label: &str, p: &IntPolynomial) {
        if self.machine {
            self.line(p.to_machine());
        } else {
            self.line(format!("{label}{p}"));
        }
    }
}

fn read_input(path: &PathBuf) -> Result<String> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        io::stdin()
            .read_to_string(&mut s)
            .context("reading stdin")?;
        Ok(s)
    } else {
        std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
    }
}

fn load_poset(path: &PathBuf) -> Result<Poset> {
    Ok(Poset::parse(&read_input(path)?)?)
}

/// `[a,b,c]` or `a,b,c`.
fn parse_word(text: &str) -> Result<Vec<usize>> {
    let t: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let t = t.strip_prefix('[').unwrap_or(&t);
    let t = t.strip_suffix(']').unwrap_or(t);
    if t.is_empty() {
        return Ok(Vec::new());
    }
    t.split(',')
        .map(|f| {
            f.parse::<usize>().map_err(|_| {
                Error::Parse {
                    line: 1,
                    msg: format!("bad element {f:?}"),
                }
                .into()
            })
        })
        .collect()
}

fn parse_multiset(text: &str, support: &Option<Vec<usize>>) -> Result<MultisetPermutation> {
    Ok(match support {
        Some(a) => MultisetPermutation::parse_word(text, a)?,
        None => MultisetPermutation::parse(text)?,
    })
}

fn decomposition(p: &Poset, first: &Option<Vec<usize>>) -> Result<ChainDecomposition> {
    Ok(match first {
        Some(first) => {
            let second: Vec<usize> = (1..=p.len()).filter(|x| !first.contains(x)).collect();
            ChainDecomposition::from_sets(p, first, &second)?
        }
        None => p.chain_cover_width2()?,
    })
}

fn run(cli: Cli, out: &mut Out) -> Result<u8> {
    match cli.command {
        Command::Poin { poset, method } => {
            let p = load_poset(&poset)?;
            let method = Method::from(method);
            let resolved = match method {
                Method::Auto => whitney::auto_method(&p),
                m => m,
            };
            let poly = whitney::poincare(&p, resolved)?;
            let at_one = poly.eval(&1.into());
            let linext = BigInt::from(p.count_linear_extensions());
            out.poly("Poin(P,t) = ", &poly);
            out.human(format!("coefficients: {}", poly.to_machine()));
            out.human(format!("method: {resolved}"));
            out.human(format!("Poin(P,1) = {at_one}"));
            let agrees = at_one == linext;
            out.human(format!(
                "#LinExt(P) = {linext} ({})",
                if agrees { "agrees" } else { "DISAGREES" }
            ));
            Ok(if agrees { 0 } else { EXIT_SELFCHECK })
        }
        Command::Linext { poset, count } => {
            let p = load_poset(&poset)?;
            if count {
                out.line(p.count_linear_extensions().to_string());
            } else {
                for w in p.linear_extensions() {
                    out.line(word_to_string(&w));
                }
            }
            Ok(0)
        }
        Command::Transverse { poset, count } => {
            let p = load_poset(&poset)?;
            let parts = enumerate_transverse(&p);
            if count {
                out.line(parts.len().to_string());
            } else {
                for pi in parts {
                    if out.machine {
                        out.line(pi.to_string());
                    } else {
                        out.line(format!("{pi}  weight {}", pi.mobius_abs()));
                    }
                }
            }
            Ok(0)
        }
        Command::Bij { map } => run_bij(map, out),
        Command::Foata { op } => run_foata(op, out),
        Command::Genfun { op } => run_genfun(op, out),
        Command::Table { n_max } => {
            if n_max > 8 {
                eprintln!("warning: rows beyond n = 8 take a long time");
            }
            for n in 2..=n_max {
                let poly = whitney::poincare_via_lrmax(&Poset::grid(3, n));
                if out.machine {
                    out.line(format!("{n}: {}", poly.to_machine()));
                } else {
                    out.line(format!("n={n}: {poly}"));
                }
            }
            Ok(0)
        }
        Command::Selfcheck {
            n_max,
            trials,
            corrupt,
        } => {
            let report = run_selfcheck(&SelfCheckConfig {
                n_max,
                trials,
                seed: cli.seed,
                corrupt,
            });
            if out.machine {
                out.line(if report.passed() { "PASS" } else { "FAIL" });
            } else {
                out.line(report.to_string());
            }
            Ok(if report.passed() { 0 } else { EXIT_SELFCHECK })
        }
        Command::Roots { coefficients } => {
            let p = IntPolynomial::parse_machine(&coefficients)?;
            let k = count_real_roots(&p)?;
            if out.machine {
                out.line(k.to_string());
            } else {
                out.line(format!("{p} has {k} distinct real roots"));
            }
            Ok(0)
        }
    }
}

fn run_bij(map: BijCommand, out: &mut Out) -> Result<u8> {
    match map {
        BijCommand::Phi {
            poset,
            permutation,
            implicit_fixed,
        } => {
            let p = load_poset(&poset)?;
            let tau = Permutation::parse(&permutation, implicit_fixed.then_some(p.len()))?;
            if !out.machine {
                let form = bijections::standard_form(&p, &tau)?;
                out.line(format!(
                    "standard form: {}",
                    bijections::cycles_to_string(&form)
                ));
            }
            out.line(word_to_string(&bijections::phi(&p, &tau)?));
        }
        BijCommand::Psi { poset, word } => {
            let p = load_poset(&poset)?;
            let sigma = parse_word(&word)?;
            let cycles = bijections::psi_cycles(&p, &sigma)?;
            out.line(bijections::cycles_to_string(&cycles));
            out.human(format!("P-LR-maxima: {}", cycles.len()));
        }
        BijCommand::Omega {
            poset,
            input,
            inverse,
            first,
        } => {
            let p = load_poset(&poset)?;
            let d = decomposition(&p, &first)?;
            out.human(format!(
                "chains: {} | {}",
                word_to_string(&d.first),
                word_to_string(&d.second)
            ));
            if inverse {
                let pi = SetPartition::parse(&input)?;
                out.line(word_to_string(&bijections::omega_inv(&p, &d, &pi)?));
            } else {
                let sigma = parse_word(&input)?;
                let pi = bijections::omega(&p, &d, &sigma)?;
                out.line(pi.to_string());
                out.human(format!("pairs: {}", pi.pairs()));
            }
        }
    }
    Ok(0)
}

fn run_foata(op: FoataCommand, out: &mut Out) -> Result<u8> {
    match op {
        FoataCommand::Decompose { sigma, support } => {
            let s = parse_multiset(&sigma, &support)?;
            let f = foata::prime_decompose(&s);
            if out.machine {
                for factor in &f.factors {
                    out.line(factor.to_string());
                }
            } else {
                out.line(f.to_string());
                out.line(format!("fcyc: {}", f.len()));
                out.line(format!(
                    "factorizations: {}",
                    foata::factorization_count(&s)?
                ));
            }
        }
        FoataCommand::Intercalate { left, right } => {
            let l = MultisetPermutation::parse(&left)?;
            let r = MultisetPermutation::parse(&right)?;
            let prod = foata::intercalation(&l, &r);
            out.line(prod.to_string());
            out.human(prod.to_two_line());
        }
        FoataCommand::Fcyc { sigma, support } => {
            let s = parse_multiset(&sigma, &support)?;
            out.line(foata::fcyc(&s).to_string());
        }
        FoataCommand::Phi { word, support } => {
            let lambda = parse_word(&word)?;
            let tau = foata::foata_phi(&support, &lambda)?;
            out.line(tau.to_cycle_string());
            out.human(format!("one-line: {tau}"));
        }
        FoataCommand::PhiInv {
            permutation,
            support,
            implicit_fixed,
        } => {
            let n = support.iter().sum();
            let tau = Permutation::parse(&permutation, implicit_fixed.then_some(n))?;
            out.line(word_to_string(&foata::foata_phi_inv(&support, &tau)?));
        }
    }
    Ok(0)
}

fn run_genfun(op: GenfunCommand, out: &mut Out) -> Result<u8> {
    match op {
        GenfunCommand::Rhs { ell, degree } => {
            let series = genfun::chains_gf_rhs(ell, degree);
            for (a, c) in series.terms() {
                let exps: Vec<String> = a.iter().map(usize::to_string).collect();
                if out.machine {
                    out.line(format!("{} : {}", exps.join(","), c.to_machine()));
                } else {
                    out.line(format!("{} : {}", exps.join(","), c));
                }
            }
            Ok(0)
        }
        GenfunCommand::Verify { ell, degree } => {
            let rows = genfun::verify_chains_gf(ell, degree);
            for row in &rows {
                out.line(row.to_string());
            }
            let bad = rows.iter().filter(|r| !r.matches()).count();
            out.human(format!("{} rows, {} mismatched", rows.len(), bad));
            Ok(if bad == 0 { 0 } else { EXIT_SELFCHECK })
        }
        GenfunCommand::Stirling { n } => {
            let ok = genfun::stirling_row_check(n);
            if !out.machine {
                let poly = whitney::poincare_via_lrmax(&Poset::antichain(n));
                out.line(format!("Poin(antichain {n}) = {poly}"));
            }
            out.line(if ok { "MATCH" } else { "MISMATCH" });
            Ok(if ok { 0 } else { EXIT_SELFCHECK })
        }
    }
}

fn exit_code(err: &anyhow::Error) -> u8 {
    match err.downcast_ref::<Error>() {
        Some(Error::Parse { .. }) => EXIT_PARSE,
        Some(_) => EXIT_PRECONDITION,
        None if err.downcast_ref::<io::Error>().is_some() => EXIT_PARSE,
        None => EXIT_PRECONDITION,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.workers {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n.max(1))
            .build_global()
            .expect("thread pool is configured once");
    }
    let mut out = Out {
        machine: cli.machine,
        buf: String::new(),
    };
    let result = run(cli, &mut out);
    let mut stdout = io::stdout().lock();
    let _ = stdout.write_all(out.buf.as_bytes());
    let _ = stdout.flush();
    match result {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(exit_code(&err))
        }
    }
}
