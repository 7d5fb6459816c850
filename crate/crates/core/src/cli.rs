//! Command-line front end. Subcommands that act on a code read it as JSON
//! from `--from-json FILE`, from `--code SPEC`, or from standard input, so
//! they compose in pipelines.

use std::fmt::Write as _;
use std::io::{Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use shortcode::code::{lambda_t_w, supports_design_check, weight_distribution, CoordSet, LinearCode, Limits};
use shortcode::construct::{build_code, positions_in, special_elements, MonomialCodeSpec, SpecialT};
use shortcode::gf::{Field, FieldSpec};
use shortcode::harness::{run_suite, Sampling, Suite};
use shortcode::predict::{table_wd, TableTag};
use shortcode::report::{from_json, to_json, CodeJson, WdJson};
use shortcode::sums::run_all;
use shortcode::{Error, Result};

#[derive(Debug, Parser)]
#[command(name = "shortcode", version, about = "Shortened codes from APN and PN monomials")]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Enumeration cap in codewords (overrides SHORTCODE_CAP).
    #[arg(long, global = true)]
    cap: Option<u128>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Table,
}

#[derive(Debug, Args)]
struct CodeInput {
    /// Read the code from this JSON file.
    #[arg(long)]
    from_json: Option<PathBuf>,
    /// Build the code from a spec such as `apn:p=2,m=5,e=1` instead.
    #[arg(long, conflicts_with = "from_json")]
    code: Option<String>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Describe GF(p^m): modulus, generator, and per-element log and trace.
    Field {
        /// `p=<p>,m=<m>` with optional `,mod=<digits>`.
        spec: String,
    },
    /// Build the code of a monomial: `apn:p=2,m=<m>,e=<e>`,
    /// `apn:p=2,m=<m>,s=<s>` or `pn:p=<p>,m=<m>,s=<s>`.
    Build { spec: String },
    /// Weight distribution of a code.
    Wd {
        #[command(flatten)]
        input: CodeInput,
    },
    /// Shorten a code on a coordinate set (`T=GF(p)`, `T=GF(4)`, or
    /// `0,1,alpha^k`).
    Shorten {
        t: String,
        #[command(flatten)]
        input: CodeInput,
    },
    /// Puncture a code on a coordinate set.
    Puncture {
        t: String,
        #[command(flatten)]
        input: CodeInput,
    },
    /// Dual code.
    Dual {
        #[command(flatten)]
        input: CodeInput,
    },
    /// Number of weight-w supports containing T, in the code or its dual.
    Lambda {
        t: String,
        #[arg(long)]
        w: usize,
        #[arg(long)]
        dual: bool,
        #[command(flatten)]
        input: CodeInput,
    },
    /// Test whether the supports of each weight class form t-designs.
    Designs {
        /// Design strength.
        #[arg(long)]
        t: usize,
        /// Restrict to one weight.
        #[arg(long)]
        w: Option<usize>,
        #[command(flatten)]
        input: CodeInput,
    },
    /// Closed-form weight distribution from a table.
    Predict {
        /// tab1 .. tab16, or gf4.
        #[arg(long)]
        table: String,
        #[arg(long, default_value_t = 2)]
        p: u32,
        #[arg(long)]
        m: u32,
        /// Required by the lambda table.
        #[arg(long, allow_negative_numbers = true)]
        lambda: Option<i64>,
    },
    /// Check every character-sum and counting lemma over its sweep.
    Sums {
        /// Only report this lemma, e.g. `4.6`.
        #[arg(long)]
        lemma: Option<String>,
    },
    /// Run a verification suite.
    Verify {
        /// paper-examples, tables, lambda-sweeps or sums.
        #[arg(long)]
        suite: String,
        /// Also write the full report here.
        #[arg(long)]
        json: Option<PathBuf>,
        /// Seed for sampled subset sweeps.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Number of sampled subsets where a sweep is too large.
        #[arg(long, default_value_t = 500)]
        samples: usize,
    },
}

/// Outcome of a subcommand: text to print and whether a check failed.
struct Output {
    text: String,
    failed: bool,
}

impl Output {
    fn ok(text: String) -> Self {
        Self { text, failed: false }
    }
}

pub fn run(cli: Cli) -> ExitCode {
    let mut limits = Limits::default();
    if let Some(cap) = cli.cap {
        limits.cap = cap;
    }
    match dispatch(&cli, &limits) {
        Ok(out) => {
            let mut stdout = std::io::stdout().lock();
            let nl = if out.text.ends_with('\n') { "" } else { "\n" };
            // A closed pipe downstream is not an error of ours.
            let _ = write!(stdout, "{}{nl}", out.text).and_then(|_| stdout.flush());
            if out.failed {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn read_code(input: &CodeInput) -> Result<LinearCode> {
    if let Some(spec) = &input.code {
        return build_code(&spec.parse::<MonomialCodeSpec>()?);
    }
    let text = match &input.from_json {
        Some(path) => std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?,
        None => {
            let mut s = String::new();
            std::io::stdin()
                .read_to_string(&mut s)
                .map_err(|e| Error::Parse(format!("stdin: {e}")))?;
            s
        }
    };
    from_json::<CodeJson>(&text)?.to_code()
}

/// Positions in `code` of the elements named by `t`.
fn resolve_t(code: &LinearCode, t: &str) -> Result<CoordSet> {
    let spec = code
        .field_spec()
        .ok_or_else(|| Error::Parse("the code carries no field, so T cannot be resolved".into()))?;
    let fld = Field::new(spec)?;
    let kind: SpecialT = t.parse()?;
    positions_in(code, &special_elements(&fld, &kind)?)
}

fn dispatch(cli: &Cli, limits: &Limits) -> Result<Output> {
    let fmt = cli.format;
    match &cli.command {
        Command::Field { spec } => field_cmd(spec, fmt).map(Output::ok),
        Command::Build { spec } => Ok(Output::ok(code_out(&build_code(&spec.parse()?)?, fmt))),
        Command::Wd { input } => {
            let code = read_code(input)?;
            let wd = weight_distribution(&code, limits)?;
            Ok(Output::ok(wd_out(&WdJson::new(code.p(), code.k(), &wd), fmt)))
        }
        Command::Shorten { t, input } => {
            let code = read_code(input)?;
            let t = resolve_t(&code, t)?;
            Ok(Output::ok(code_out(&code.shorten(&t)?, fmt)))
        }
        Command::Puncture { t, input } => {
            let code = read_code(input)?;
            let t = resolve_t(&code, t)?;
            Ok(Output::ok(code_out(&code.puncture(&t)?, fmt)))
        }
        Command::Dual { input } => Ok(Output::ok(code_out(&read_code(input)?.dual(), fmt))),
        Command::Lambda { t, w, dual, input } => {
            let code = read_code(input)?;
            let set = resolve_t(&code, t)?;
            let lambda = lambda_t_w(&code, &set, *w, *dual, limits)?;
            #[derive(Serialize)]
            struct L {
                t: Vec<usize>,
                w: usize,
                dual: bool,
                lambda: u64,
            }
            let l = L {
                t: set.positions().to_vec(),
                w: *w,
                dual: *dual,
                lambda,
            };
            Ok(Output::ok(match fmt {
                Format::Json => to_json(&l),
                Format::Csv => format!("w,dual,lambda\n{},{},{}\n", l.w, l.dual, l.lambda),
                Format::Table => format!("lambda_(T,{}) = {}\n", l.w, l.lambda),
            }))
        }
        Command::Designs { t, w, input } => {
            let code = read_code(input)?;
            let wd = weight_distribution(&code, limits)?;
            let weights: Vec<usize> = match w {
                Some(w) => vec![*w],
                None => wd.nonzero_weights().into_iter().filter(|&w| w > 0).collect(),
            };
            #[derive(Serialize)]
            struct D {
                w: usize,
                check: shortcode::code::DesignCheck,
            }
            let ds = weights
                .into_iter()
                .map(|w| Ok(D { w, check: supports_design_check(&code, w, *t, limits)? }))
                .collect::<Result<Vec<_>>>()?;
            Ok(Output::ok(match fmt {
                Format::Json => to_json(&ds),
                _ => {
                    let mut s = String::from(if fmt == Format::Csv { "w,design,v,k,t,lambda,b\n" } else { "" });
                    for d in &ds {
                        match (&d.check, fmt) {
                            (shortcode::code::DesignCheck::Design(x), Format::Csv) => {
                                let _ = writeln!(s, "{},true,{},{},{},{},{}", d.w, x.v, x.k, x.t, x.lambda, x.b);
                            }
                            (shortcode::code::DesignCheck::Design(x), _) => {
                                let _ = writeln!(s, "w={:<4} {}-({}, {}, {}) design, {} blocks", d.w, x.t, x.v, x.k, x.lambda, x.b);
                            }
                            (_, Format::Csv) => {
                                let _ = writeln!(s, "{},false,,,,,", d.w);
                            }
                            _ => {
                                let _ = writeln!(s, "w={:<4} not a {t}-design", d.w);
                            }
                        }
                    }
                    s
                }
            }))
        }
        Command::Predict { table, p, m, lambda } => {
            let tag: TableTag = table.parse()?;
            let pred = table_wd(tag, *p, *m, *lambda)?;
            Ok(Output::ok(wd_out(&WdJson::from_prediction(&pred), fmt)))
        }
        Command::Sums { lemma } => {
            let mut reports = run_all();
            if let Some(l) = lemma {
                reports.retain(|r| &r.lemma == l);
                if reports.is_empty() {
                    return Err(Error::Parse(format!("unknown lemma {l:?}")));
                }
            }
            let failed = reports.iter().any(|r| !r.pass());
            let text = match fmt {
                Format::Json => to_json(&reports),
                _ => {
                    let sep = if fmt == Format::Csv { "," } else { "  " };
                    let mut s = if fmt == Format::Csv { "lemma,cases,failures\n".to_string() } else { String::new() };
                    for r in &reports {
                        let _ = writeln!(s, "{}{sep}{}{sep}{}", r.lemma, r.cases, r.failures.len());
                    }
                    s
                }
            };
            Ok(Output { text, failed })
        }
        Command::Verify { suite, json, seed, samples } => {
            let suite: Suite = suite.parse()?;
            let sampling = Sampling {
                seed: *seed,
                samples: *samples,
                ..Sampling::default()
            };
            let report = run_suite(suite, limits, &sampling)?;
            if let Some(path) = json {
                std::fs::write(path, to_json(&report)).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
            }
            let text = match fmt {
                Format::Json => to_json(&report),
                _ => {
                    let mut s = String::new();
                    for c in &report.cases {
                        let _ = writeln!(s, "{} {} {}", if c.pass { "PASS" } else { "FAIL" }, c.id, c.detail);
                    }
                    let _ = writeln!(s, "{}: {}", report.suite, if report.pass { "PASS" } else { "FAIL" });
                    s
                }
            };
            Ok(Output { text, failed: !report.pass })
        }
    }
}

fn field_cmd(spec: &str, fmt: Format) -> Result<String> {
    let spec: FieldSpec = spec.parse()?;
    let fld = Field::new(&spec)?;
    #[derive(Serialize)]
    struct Element {
        index: u32,
        label: String,
        log: Option<u32>,
        trace: u32,
    }
    #[derive(Serialize)]
    struct F {
        field: String,
        q: u32,
        generator: u32,
        elements: Vec<Element>,
    }
    let f = F {
        field: fld.spec().to_string(),
        q: fld.q(),
        generator: fld.generator().index(),
        elements: fld
            .elements()
            .map(|x| Element {
                index: x.index(),
                label: fld.label(x),
                log: fld.log(x).ok(),
                trace: fld.trace(x),
            })
            .collect(),
    };
    Ok(match fmt {
        Format::Json => to_json(&f),
        Format::Csv | Format::Table => {
            let sep = if fmt == Format::Csv { "," } else { "\t" };
            let mut s = format!("index{sep}label{sep}log{sep}trace\n");
            for e in &f.elements {
                let log = e.log.map(|l| l.to_string()).unwrap_or_default();
                let _ = writeln!(s, "{}{sep}{}{sep}{log}{sep}{}", e.index, e.label, e.trace);
            }
            s
        }
    })
}

fn code_out(code: &LinearCode, fmt: Format) -> String {
    let j = CodeJson::from_code(code);
    match fmt {
        Format::Json => to_json(&j),
        Format::Csv => j.generator.join("\n") + "\n",
        Format::Table => {
            let mut s = format!("[{}, {}] code over GF({})\n", j.n, j.k, j.p);
            for row in &j.generator {
                let _ = writeln!(s, "  {row}");
            }
            s
        }
    }
}

fn wd_out(wd: &WdJson, fmt: Format) -> String {
    match fmt {
        Format::Json => to_json(wd),
        Format::Csv => {
            let mut s = String::from("weight,count\n");
            for (w, c) in &wd.weights {
                let _ = writeln!(s, "{w},{c}");
            }
            s
        }
        Format::Table => {
            let mut s = format!("[{}, {}] over GF({})\n", wd.n, wd.k, wd.p);
            for (w, c) in &wd.weights {
                let _ = writeln!(s, "{w:>6}  {c}");
            }
            s
        }
    }
}
