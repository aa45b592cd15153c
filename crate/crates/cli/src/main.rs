use std::fmt::Write as _;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

use garside::automata::{build_nf_automaton, NfAutomaton, Variant};
use garside::checks::{self, CheckOptions};
use garside::normal_forms::NfPair;
use garside::zappa_szep::Action;
use garside::{Element, Germ, GermSpec, Side, ZsStructure};

#[derive(Parser)]
#[command(name = "garside", version, about = "Garside germs, normal forms and Zappa–Szép decompositions")]
struct Cli {
    /// Germ source: braid:N, abelian:K, wreath, file:PATH or prod:A,B
    #[arg(long, global = true, default_value = "wreath")]
    germ: String,
    /// Atoms generating the left factor G, comma separated
    #[arg(long, global = true, value_delimiter = ',')]
    left: Vec<String>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Check the germ axioms
    Validate,
    /// Left normal form of a word
    Nf { word: String },
    /// Greatest common prefix (or suffix with --right)
    Gcd {
        x: String,
        y: String,
        #[arg(long)]
        right: bool,
    },
    /// Least common multiple on the right (or left with --right)
    Lcm {
        x: String,
        y: String,
        #[arg(long)]
        right: bool,
    },
    /// Whether x is a prefix (or suffix with --right) of y
    Divides {
        x: String,
        y: String,
        #[arg(long)]
        right: bool,
    },
    /// Δ_a for every atom
    Deltas,
    /// Atom classes with their deltas
    Classes,
    /// Whether all atoms share one Δ_a
    Pure,
    /// Build and verify the decomposition given by --left
    Decompose,
    /// GH-decomposition of an element
    Gh { word: String },
    /// HG-decomposition of an element
    Hg { word: String },
    /// Apply one of the eight actions to words over H and G
    Act {
        #[arg(long)]
        op: String,
        #[arg(long)]
        h: String,
        #[arg(long)]
        g: String,
    },
    /// Normal forms of the GH-components of an element
    SplitNf { word: String },
    /// Normal form of g·h from normal forms over G and H
    MergeNf { g: String, h: String },
    /// Normal-form automaton
    Automaton {
        #[arg(long, value_enum, default_value_t = Lang::K)]
        lang: Lang,
        #[arg(long, value_enum, default_value_t = VariantArg::Proper)]
        variant: VariantArg,
        #[arg(long, value_enum, default_value_t = Format::Dot)]
        format: Format,
    },
    /// Number of normal words of each length up to N
    Count {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = Lang::K)]
        lang: Lang,
        #[arg(long, value_enum, default_value_t = VariantArg::Proper)]
        variant: VariantArg,
    },
    /// Run a property suite (or `all`)
    Check {
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = 4)]
        max_len: usize,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[arg(long)]
        seed: Option<u64>,
    },
}

#[derive(Copy, Clone, ValueEnum)]
enum Lang {
    #[value(name = "K", alias = "k")]
    K,
    #[value(name = "G", alias = "g")]
    G,
    #[value(name = "H", alias = "h")]
    H,
}

#[derive(Copy, Clone, ValueEnum)]
enum VariantArg {
    Proper,
    Full,
}

#[derive(Copy, Clone, ValueEnum)]
enum Format {
    Dot,
    Tsv,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(&cli) {
        Ok((out, ok)) => {
            print!("{out}");
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) if e.downcast_ref::<Usage>().is_some() => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

#[derive(Debug)]
struct Usage(String);

impl std::fmt::Display for Usage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Usage {}

fn usage(msg: impl Into<String>) -> anyhow::Error {
    Usage(msg.into()).into()
}

fn load_germ(spec: &str) -> Result<Germ> {
    let spec: GermSpec = spec.parse().map_err(|e| usage(format!("{e}")))?;
    spec.build().with_context(|| format!("building germ {spec}"))
}

fn structure<'g>(germ: &'g Germ, left: &[String]) -> Result<ZsStructure<'g>> {
    if left.is_empty() {
        return Err(usage("this subcommand needs --left"));
    }
    let names: Vec<&str> = left.iter().map(String::as_str).collect();
    Ok(ZsStructure::build_named(germ, &names)?)
}

fn element(germ: &Germ, text: &str) -> Result<Element> {
    germ.parse_element(text).with_context(|| format!("reading `{text}`"))
}

fn bool_line(b: bool) -> &'static str {
    if b {
        "true"
    } else {
        "false"
    }
}

/// Output text and whether the command succeeded.
fn run(cli: &Cli) -> Result<(String, bool)> {
    if let Cmd::Validate = cli.cmd {
        return validate(&cli.germ);
    }
    let germ = load_germ(&cli.germ)?;
    let k = &germ;
    let mut out = String::new();
    match &cli.cmd {
        Cmd::Validate => unreachable!(),
        Cmd::Nf { word } => writeln!(out, "{}", k.format_normal(&element(k, word)?))?,
        Cmd::Gcd { x, y, right } => {
            let (x, y) = (element(k, x)?, element(k, y)?);
            let r = if *right { k.rgcd(&x, &y) } else { k.gcd(&x, &y) };
            writeln!(out, "{}", k.format_normal(&r))?;
        }
        Cmd::Lcm { x, y, right } => {
            let (x, y) = (element(k, x)?, element(k, y)?);
            let r = if *right { k.rlcm(&x, &y) } else { k.lcm(&x, &y) };
            writeln!(out, "{}", k.format_normal(&r))?;
        }
        Cmd::Divides { x, y, right } => {
            let (x, y) = (element(k, x)?, element(k, y)?);
            let r = if *right { k.rdivides(&x, &y) } else { k.divides(&x, &y) };
            writeln!(out, "{}", bool_line(r))?;
        }
        Cmd::Deltas => {
            for &a in k.atoms() {
                writeln!(out, "{} -> {}", k.name(a), k.name(k.delta_of_simple(a)))?;
            }
            if !cli.left.is_empty() {
                let zs = structure(k, &cli.left)?;
                for side in [Side::G, Side::H] {
                    let f = zs.factor(side);
                    for &a in f.germ.atoms() {
                        let d = f.ambient(f.germ.delta_of_simple(a));
                        writeln!(out, "{side}: {} -> {}", k.name(f.ambient(a)), k.name(d))?;
                    }
                }
            }
        }
        Cmd::Classes => {
            let p = k.atom_classes()?;
            for (class, &d) in p.classes.iter().zip(&p.class_delta) {
                let names: Vec<&str> = class.iter().map(|&a| k.name(a)).collect();
                writeln!(out, "{{{}}} -> {}", names.join(","), k.name(d))?;
            }
        }
        Cmd::Pure => {
            let p = k.atom_classes()?;
            writeln!(out, "delta-pure: {}", bool_line(k.is_delta_pure()))?;
            writeln!(out, "classes: {}", p.len())?;
        }
        Cmd::Decompose => {
            let zs = structure(k, &cli.left)?;
            let n = |s| k.name(s);
            writeln!(out, "Delta: {}", n(k.delta()))?;
            writeln!(out, "Delta_G: {}", n(zs.delta_g()))?;
            writeln!(out, "Delta_H: {}", n(zs.delta_h()))?;
            for side in [Side::G, Side::H] {
                let atoms = if side == Side::G { zs.left_atoms() } else { zs.right_atoms() };
                let names: Vec<&str> = atoms.iter().map(|&a| n(a)).collect();
                writeln!(out, "atoms {side}: {}", names.join(","))?;
            }
            let gh = k.product(zs.delta_g(), zs.delta_h()) == Some(k.delta());
            let hg = k.product(zs.delta_h(), zs.delta_g()) == Some(k.delta());
            writeln!(out, "Delta_G.Delta_H = Delta: {}", bool_line(gh))?;
            writeln!(out, "Delta_H.Delta_G = Delta: {}", bool_line(hg))?;
            writeln!(out, "verified: {}", bool_line(gh && hg))?;
        }
        Cmd::Gh { word } => {
            let zs = structure(k, &cli.left)?;
            let (g, h) = zs.gh_decompose(&element(k, word)?)?;
            writeln!(out, "G: {}", k.format_normal(&g))?;
            writeln!(out, "H: {}", k.format_normal(&h))?;
        }
        Cmd::Hg { word } => {
            let zs = structure(k, &cli.left)?;
            let (h, g) = zs.hg_decompose(&element(k, word)?)?;
            writeln!(out, "H: {}", k.format_normal(&h))?;
            writeln!(out, "G: {}", k.format_normal(&g))?;
        }
        Cmd::Act { op, h, g } => {
            let zs = structure(k, &cli.left)?;
            let op = Action::from_name(op).ok_or_else(|| {
                let names: Vec<&str> = Action::ALL.iter().map(|a| a.name()).collect();
                usage(format!("unknown action `{op}`; expected one of {}", names.join(", ")))
            })?;
            let hw = k.parse_word(h).with_context(|| format!("reading `{h}`"))?;
            let gw = k.parse_word(g).with_context(|| format!("reading `{g}`"))?;
            let res = zs.act_word(op, &hw, &gw)?;
            let nf = k.normal_form(&res);
            let w = zs.to_factor_word(op.output_side(), &nf)?;
            writeln!(out, "{}", zs.format_factor(&w))?;
        }
        Cmd::SplitNf { word } => {
            let zs = structure(k, &cli.left)?;
            let p = zs.split_nf(&element(k, word)?)?;
            writeln!(out, "G: {}", zs.format_factor(&p.g))?;
            writeln!(out, "H: {}", zs.format_factor(&p.h))?;
        }
        Cmd::MergeNf { g, h } => {
            let zs = structure(k, &cli.left)?;
            let p = NfPair {
                g: zs.parse_factor_word(Side::G, g)?,
                h: zs.parse_factor_word(Side::H, h)?,
            };
            writeln!(out, "{}", k.format_normal(&zs.merge_nf(&p)?))?;
        }
        Cmd::Automaton { lang, variant, format } => {
            let a = automaton(k, &cli.left, *lang, *variant)?;
            match format {
                Format::Dot => out.push_str(&a.to_dot()),
                Format::Tsv => out.push_str(&a.to_tsv()),
            }
        }
        Cmd::Count { n, lang, variant } => {
            let a = automaton(k, &cli.left, *lang, *variant)?;
            for i in 0..=*n {
                writeln!(out, "{i}\t{}", a.count_accepted(i))?;
            }
        }
        Cmd::Check {
            suite,
            max_len,
            samples,
            seed,
        } => {
            let zs = if cli.left.is_empty() {
                None
            } else {
                Some(structure(k, &cli.left)?)
            };
            let mut opts = CheckOptions {
                max_len: *max_len,
                samples: *samples,
                ..CheckOptions::default()
            };
            if let Some(seed) = seed {
                opts.seed = *seed;
            }
            let reports = if suite == "all" {
                checks::run_all(k, zs.as_ref(), &opts)
            } else {
                match checks::run_suite(suite, k, zs.as_ref(), &opts) {
                    Ok(r) => vec![r],
                    Err(e @ checks::CheckError::UnknownSuite(_)) => {
                        return Err(usage(format!("{e}; known suites: {}", checks::SUITES.join(", "))))
                    }
                    Err(e) => return Err(usage(e.to_string())),
                }
            };
            let ok = reports.iter().all(|r| r.passed());
            for r in &reports {
                writeln!(out, "{r}")?;
            }
            return Ok((out, ok));
        }
    }
    Ok((out, true))
}

fn validate(spec: &str) -> Result<(String, bool)> {
    let parsed: GermSpec = spec.parse().map_err(|e| usage(format!("{e}")))?;
    let report = match &parsed {
        GermSpec::File(path) => {
            let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
            garside::germ::parse_raw_germ(&text)?.validate()
        }
        other => other.build()?.validate(),
    };
    let ok = report.is_valid();
    Ok((format!("{report}valid: {}\n", bool_line(ok)), ok))
}

fn automaton(k: &Germ, left: &[String], lang: Lang, variant: VariantArg) -> Result<NfAutomaton> {
    let variant = match variant {
        VariantArg::Proper => Variant::Proper,
        VariantArg::Full => Variant::Full,
    };
    let side = match lang {
        Lang::K => return Ok(build_nf_automaton(k, variant)),
        Lang::G => Side::G,
        Lang::H => Side::H,
    };
    let zs = structure(k, left)?;
    Ok(build_nf_automaton(&zs.factor(side).germ, variant))
}
