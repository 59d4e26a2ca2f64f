//! `chardecode`: encode, corrupt and decode character-code words from the
//! shell, plus the oracles and a few experiment drivers.
//!
//! Files use the library's text formats: a polynomial is one line of
//! comma-separated coefficient indices (constant term first), a word is the
//! three-line `field:` / `alphabet:` / symbols block. `-` means stdin.

mod experiments;

use std::fs;
use std::io::{self, BufWriter, Read, Write};
use std::process::ExitCode;

use chardecode::codes::{corrupt, encode_addp, encode_dbch, encode_mth, encode_qr};
use chardecode::decode_dbch::{decode_addp, decode_dbch};
use chardecode::decode_qr::{decode_mth, decode_qr};
use chardecode::oracle::{
    brute_force_decode_addp, brute_force_decode_dbch, brute_force_decode_mth, brute_force_decode_qr,
    min_weight_dbch, weil_sum_add, weil_sum_mult,
};
use chardecode::{DecoderParams, Error, Field, FieldSpec, Mode, Poly, Validation, Word};
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_rational::Ratio;

#[derive(Parser)]
#[command(name = "chardecode", version, about = "Character-code decoders over finite fields")]
struct Cli {
    /// Field as `p=<p> b=<b> [mod=<c0,..,cb>]`, or a file holding that line.
    #[arg(long, global = true, env = "CHARDECODE_FIELD")]
    field: Option<String>,

    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FamilyArg {
    Qr,
    Mth,
    Dbch,
    Addp,
}

#[derive(Args, Clone)]
pub struct FamilyOpts {
    #[arg(long, value_enum)]
    pub family: FamilyArg,
    /// Character order for `--family mth`.
    #[arg(long, default_value_t = 3)]
    pub m: u64,
}

#[derive(Args, Clone)]
pub struct DecodeOpts {
    #[command(flatten)]
    pub fam: FamilyOpts,
    #[arg(long)]
    pub d: usize,
    #[arg(long, default_value_t = 0)]
    pub e: usize,
    /// ε as `num/den`.
    #[arg(long, default_value = "1/16")]
    pub eps: String,
    #[arg(long = "M")]
    pub big_m: Option<usize>,
    #[arg(long)]
    pub c: Option<usize>,
    #[arg(long)]
    pub h: Option<usize>,
    /// Degree cap of `F` (Algorithms A and A_m).
    #[arg(long = "D")]
    pub big_d: Option<usize>,
    /// Degree cap of the `U_ℓ`.
    #[arg(long)]
    pub u: Option<usize>,
    /// Run outside the theorem hypotheses.
    #[arg(long)]
    pub lab: bool,
}

#[derive(Subcommand)]
enum Cmd {
    /// Print the field's parameters.
    FieldInfo,
    /// Encode the message polynomial in `--g`.
    Encode {
        #[command(flatten)]
        fam: FamilyOpts,
        #[arg(long)]
        g: String,
        /// Encode messages outside the family's message space.
        #[arg(long)]
        lab: bool,
    },
    /// Change `--e` seeded-random positions of a word.
    Corrupt {
        #[arg(long)]
        e: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value = "-")]
        input: String,
    },
    /// Decode a word.
    Decode {
        #[command(flatten)]
        opts: DecodeOpts,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value = "-")]
        input: String,
    },
    /// Nearest codeword by exhaustive search.
    Oracle {
        #[command(flatten)]
        fam: FamilyOpts,
        #[arg(long)]
        d: usize,
        #[arg(long, default_value = "-")]
        input: String,
    },
    /// Character sum of `--f` against its Weil bound.
    Weil {
        #[arg(long, value_enum)]
        family: WeilFamily,
        #[arg(long)]
        f: String,
    },
    /// Minimum weight of the dual-BCH code of degree `--d`.
    Minweight {
        #[arg(long)]
        d: usize,
    },
    /// Timing table over a built-in parameter suite.
    Bench {
        #[arg(long, value_enum)]
        suite: experiments::Suite,
    },
    /// Encode, corrupt and decode random messages; report the success rate.
    Roundtrip {
        #[command(flatten)]
        opts: DecodeOpts,
        #[arg(long)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum WeilFamily {
    Mult,
    Add,
}

/// Exit status 1: a decoder ran and failed, or a bound check failed.
/// Exit status 2: bad input. A closed stdout (`| head`) ends quietly.
pub enum Failure {
    Failed(String),
    Usage(String),
    Closed,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Decode(f) => Failure::Failed(format!("decoding failed: {}\n{}", f.kind, f.diagnostics)),
            other => Failure::Usage(other.to_string()),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        if e.kind() == io::ErrorKind::BrokenPipe {
            return Failure::Closed;
        }
        Failure::Usage(e.to_string())
    }
}

type CliResult<T = ()> = Result<T, Failure>;

fn read_input(path: &str) -> CliResult<String> {
    if path == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s)?;
        Ok(s)
    } else {
        fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{path}: {e}")))
    }
}

fn field_of(spec: &Option<String>) -> CliResult<Field> {
    let spec = spec.as_deref().ok_or_else(|| Failure::Usage("no field given (--field or CHARDECODE_FIELD)".into()))?;
    let text = if spec.contains('=') { spec.to_string() } else { read_input(spec)? };
    let line = text.lines().next().unwrap_or("").trim();
    let line = line.strip_prefix("field:").unwrap_or(line);
    Ok(line.parse::<FieldSpec>()?.build()?)
}

fn read_poly(path: &str, f: &Field) -> CliResult<Poly> {
    let text = read_input(path)?;
    let line = text.lines().find(|l| !l.trim().is_empty()).unwrap_or("0");
    Ok(Poly::parse(line, f)?)
}

fn read_word(path: &str) -> CliResult<Word> {
    Ok(Word::parse(&read_input(path)?)?)
}

pub fn parse_eps(s: &str) -> CliResult<Ratio<u64>> {
    let bad = || Failure::Usage(format!("bad --eps `{s}`, expected num/den"));
    let (n, d) = s.split_once('/').ok_or_else(bad)?;
    let (n, d): (u64, u64) = (n.trim().parse().map_err(|_| bad())?, d.trim().parse().map_err(|_| bad())?);
    if d == 0 {
        return Err(bad());
    }
    Ok(Ratio::new(n, d))
}

impl DecodeOpts {
    pub fn params(&self) -> CliResult<DecoderParams> {
        let mode = if self.lab { Mode::Lab } else { Mode::Theorem };
        let mut p = DecoderParams::new(self.d, self.e).with_eps(parse_eps(&self.eps)?).with_mode(mode);
        p.overrides.m = self.big_m;
        p.overrides.c = self.c;
        p.overrides.h = self.h;
        p.overrides.big_d = self.big_d;
        p.overrides.u = self.u;
        Ok(p)
    }
}

pub fn encode(fam: &FamilyOpts, f: &Field, g: &Poly, mode: Validation) -> CliResult<Word> {
    Ok(match fam.family {
        FamilyArg::Qr => encode_qr(f, g, mode),
        FamilyArg::Mth => encode_mth(f, fam.m, g, mode),
        FamilyArg::Dbch => encode_dbch(f, g, mode),
        FamilyArg::Addp => encode_addp(f, g, mode),
    }?)
}

pub fn decode(fam: &FamilyOpts, r: &Word, params: &DecoderParams, seed: u64) -> chardecode::Result<chardecode::Decoded> {
    match fam.family {
        FamilyArg::Qr => decode_qr(r, params, seed),
        FamilyArg::Mth => decode_mth(r, fam.m, params, seed),
        FamilyArg::Dbch => decode_dbch(r, params, seed),
        FamilyArg::Addp => decode_addp(r, params, seed),
    }
}

fn run(cli: Cli, out: &mut impl Write) -> CliResult {
    match cli.cmd {
        Cmd::FieldInfo => {
            let f = field_of(&cli.field)?;
            writeln!(out, "field: {f}")?;
            writeln!(out, "q={} p={} b={}", f.q(), f.p(), f.b())?;
            writeln!(out, "characteristic={}", if f.is_odd() { "odd" } else { "two" })?;
            let gen = f.elements().find(|&a| a.index() > 0 && (1..f.q() as u64 - 1).all(|k| f.pow(a, k) != chardecode::Fe::ONE));
            if let Some(g) = gen {
                writeln!(out, "least-primitive={g}")?;
            }
        }
        Cmd::Encode { fam, g, lab } => {
            let f = field_of(&cli.field)?;
            let g = read_poly(&g, &f)?;
            let mode = if lab { Validation::Lab } else { Validation::Strict };
            write!(out, "{}", encode(&fam, &f, &g, mode)?)?;
        }
        Cmd::Corrupt { e, seed, input } => {
            let w = read_word(&input)?;
            write!(out, "{}", corrupt(&w, e, seed)?)?;
        }
        Cmd::Decode { opts, seed, input } => {
            let r = read_word(&input)?;
            let dec = decode(&opts.fam, &r, &opts.params()?, seed)?;
            writeln!(out, "{}", dec.poly)?;
            write!(out, "{}", dec.diagnostics)?;
        }
        Cmd::Oracle { fam, d, input } => {
            let r = read_word(&input)?;
            let n = match fam.family {
                FamilyArg::Qr => brute_force_decode_qr(&r, d),
                FamilyArg::Mth => brute_force_decode_mth(&r, fam.m, d),
                FamilyArg::Dbch => brute_force_decode_dbch(&r, d),
                FamilyArg::Addp => brute_force_decode_addp(&r, d),
            }?;
            writeln!(out, "{}", n.message)?;
            writeln!(out, "distance={}", n.distance)?;
            writeln!(out, "unique={}", n.unique)?;
        }
        Cmd::Weil { family, f: path } => {
            let f = field_of(&cli.field)?;
            let g = read_poly(&path, &f)?;
            let report = match family {
                WeilFamily::Mult => weil_sum_mult(&f, &g)?,
                WeilFamily::Add => weil_sum_add(&f, &g),
            };
            let bound = report.bound_factor as f64 * (report.q as f64).sqrt();
            let value = report.magnitude as f64 / report.scale as f64;
            let ok = !report.applicable || report.within_bound();
            writeln!(out, "magnitude={value}")?;
            writeln!(out, "bound={bound:.4}")?;
            writeln!(out, "applicable={}", report.applicable)?;
            writeln!(out, "{}", if ok { "PASS" } else { "FAIL" })?;
            if !ok {
                return Err(Failure::Failed("Weil bound violated".into()));
            }
        }
        Cmd::Minweight { d } => {
            let f = field_of(&cli.field)?;
            writeln!(out, "{}", min_weight_dbch(&f, d)?)?;
        }
        Cmd::Bench { suite } => experiments::bench(suite, out)?,
        Cmd::Roundtrip { opts, trials, seed } => {
            let f = field_of(&cli.field)?;
            experiments::roundtrip(&f, &opts, trials, seed, out)?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let mut out = BufWriter::new(io::stdout().lock());
    let result = run(Cli::parse(), &mut out).and_then(|()| Ok(out.flush()?));
    drop(out);
    match result {
        Ok(()) | Err(Failure::Closed) => ExitCode::SUCCESS,
        Err(Failure::Failed(msg)) => {
            println!("{msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
