//! The `trip` command line: one subcommand per pipeline, JSON on stdout by default.

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::json;

use crate::algebra::TripTriple;
use crate::dynamics::{code_point, Point3};
use crate::e13e::predict_and_verify;
use crate::e23e::{e23e_bound_check, e23e_bound_check_seeded};
use crate::eee::{certify_eee, certify_eee_seeded};
use crate::equivalence::enumerate_classes;
use crate::error::{Error, Result};
use crate::language::{complexity_profile, enumerate_bispecial, profile_csv, verify_difference_identities};
use crate::render::{render_gauss_svg, render_partition_svg, render_regions_svg};
use crate::reproduction::{
    class_verdict_suite, e23e_word_experiment, hidden_r2_experiment, reproduce_counterexample_tables,
    search_high_complexity,
};
use crate::sample::{expand_language_sample, sample_random_gauss};
use crate::word::{expansion_prefix, CodingSeq, Variant};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "trip", version, about = "TRIP maps, their S-adic languages and factor complexity")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub opts: Opts,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct Opts {
    /// Map triple, e.g. "(e,13,e)".
    #[arg(long = "map", global = true, default_value = "(e,e,e)")]
    pub map: String,
    /// canonical13 or variant31.
    #[arg(long, global = true)]
    pub variant: Option<Variant>,
    /// Farey coding as a bit string.
    #[arg(long, global = true, conflicts_with = "gauss")]
    pub farey: Option<String>,
    /// Gauss coding k0,k1,…
    #[arg(long, global = true)]
    pub gauss: Option<String>,
    /// Point x,y,z with rational coordinates.
    #[arg(long, global = true)]
    pub point: Option<String>,
    #[arg(long = "n-max", global = true)]
    pub n_max: Option<usize>,
    #[arg(long, global = true)]
    pub trials: Option<usize>,
    #[arg(long, global = true, env = "TRIP_SEED", default_value_t = 0)]
    pub seed: u64,
    /// Worker threads for the experiment subcommands.
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true)]
    pub csv: bool,
    #[arg(long, global = true)]
    pub svg: bool,
}

#[derive(Subcommand, Debug, Clone, Serialize)]
#[serde(tag = "subcommand", rename_all = "kebab-case")]
pub enum Command {
    /// Farey and Gauss codes of a point.
    CodePoint {
        #[arg(long, default_value_t = 20)]
        steps: usize,
    },
    /// Expansion of a letter under a coding.
    Word {
        #[arg(long, default_value_t = 1)]
        letter: u8,
    },
    /// Complexity profile of a sampled language.
    Complexity,
    /// Bispecial factors with extension diagrams.
    Bispecial,
    /// Certify the (e,e,e) bound for one Gauss coding.
    Certify,
    /// Predict and verify the (e,13,e) complexity form.
    AnalyzeE13e,
    /// Check p(n) ≤ 3n for (e,23,e): one pair coding, or a seeded word experiment.
    CheckE23e {
        #[arg(long = "word-len", default_value_t = 5000)]
        word_len: usize,
    },
    /// The 21 conjugacy and twinning classes.
    Classes,
    /// Reproduce the golden counterexample tables.
    ReproduceTables,
    /// Search Farey bit strings for a word above 3n.
    Search {
        #[arg(long = "max-bits", default_value_t = 12)]
        max_bits: usize,
        #[arg(long, default_value_t = 1 << 14)]
        budget: usize,
    },
    /// Degenerate, Cassaigne and (e,e,e) verdicts on random codings.
    Verdicts,
    /// Hidden-ℝ² orbit experiment on random integer points.
    HiddenR2 {
        #[arg(long = "sum-bound", default_value_t = 1 << 31)]
        sum_bound: u64,
        #[arg(long = "max-steps", default_value_t = 100_000)]
        max_steps: u64,
    },
    /// SVG of the Farey partition, the Gauss fan or the (e,13,e) regions.
    Render {
        #[arg(long, default_value_t = 2)]
        depth: usize,
        #[arg(long = "gauss-fan")]
        gauss_fan: Option<usize>,
        #[arg(long)]
        regions: bool,
    },
}

/// Rendered output and whether every assertion held.
#[derive(Debug)]
pub struct Outcome {
    pub text: String,
    pub passed: bool,
}

fn usage(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

fn is_usage(e: &Error) -> bool {
    matches!(
        e,
        Error::Parse(_) | Error::InvalidPerm(_) | Error::InvalidTriple(_) | Error::OutsideSimplex(_)
    )
}

impl Opts {
    fn triple(&self) -> Result<TripTriple> {
        self.map.parse()
    }

    fn variant(&self) -> Variant {
        self.variant.unwrap_or_default()
    }

    fn coding(&self) -> Result<Option<CodingSeq>> {
        match (&self.farey, &self.gauss) {
            (Some(b), _) => CodingSeq::parse_farey(b).map(Some),
            (None, Some(g)) => CodingSeq::parse_gauss(g).map(Some),
            (None, None) => Ok(None),
        }
    }

    fn gauss_ks(&self) -> Result<Option<Vec<u64>>> {
        if self.farey.is_some() {
            return Err(usage("this subcommand takes --gauss k0,k1,… rather than --farey"));
        }
        Ok(self.coding()?.and_then(|c| c.gauss_ks().map(<[u64]>::to_vec)))
    }

    fn require_coding(&self) -> Result<CodingSeq> {
        self.coding()?
            .ok_or_else(|| usage("a coding is required: --farey BITS or --gauss k0,k1,…"))
    }
}

fn report(cli: &Cli, body: impl Serialize, passed: bool) -> Result<Outcome> {
    let value = json!({
        "config": { "options": &cli.opts, "command": &cli.command },
        "passed": passed,
        "report": body,
    });
    Ok(Outcome {
        text: serde_json::to_string_pretty(&value).map_err(|e| Error::Parse(e.to_string()))? + "\n",
        passed,
    })
}

fn to_csv<T: Serialize>(rows: impl IntoIterator<Item = T>) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.serialize(r).map_err(|e| Error::Parse(e.to_string()))?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Parse(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| Error::Parse(e.to_string()))
}

/// Runs the parsed command without touching stdout or the filesystem.
pub fn execute(cli: &Cli) -> Result<Outcome> {
    let o = &cli.opts;
    o.triple()?;
    o.coding()?;
    match &cli.command {
        Command::CodePoint { steps } => {
            let p: Point3 = o
                .point
                .as_deref()
                .ok_or_else(|| usage("--point x,y,z is required"))?
                .parse()?;
            let (farey, gauss) = code_point(&p, o.triple()?, *steps)?;
            let bits: String = farey.symbols.iter().map(|b| char::from(b'0' + b)).collect();
            report(cli, json!({ "point": p, "farey": bits, "farey_code": farey, "gauss": gauss }), true)
        }
        Command::Word { letter } => {
            if !(1..=3).contains(letter) {
                return Err(usage("--letter must be 1, 2 or 3"));
            }
            let seq = o.require_coding()?;
            let limit = o.n_max.unwrap_or(200);
            let w = expansion_prefix(&seq.substitutions(o.triple()?, o.variant()), *letter, limit);
            report(cli, json!({ "word": w, "length": w.len(), "limit": limit }), true)
        }
        Command::Complexity => {
            let n_max = o.n_max.unwrap_or(30);
            let l = match o.coding()? {
                Some(seq) => expand_language_sample(&seq, o.triple()?, o.variant(), n_max + 2)?,
                None => sample_random_gauss(o.triple()?, o.variant(), o.seed, n_max + 2, 1)?,
            };
            let p = complexity_profile(&l, n_max)?;
            let identities = verify_difference_identities(&l, n_max)?;
            if o.csv {
                return Ok(Outcome {
                    text: profile_csv(&p),
                    passed: identities.passed,
                });
            }
            let body = json!({
                "profile": p,
                "reliable_window": l.reliable_window(),
                "difference_identities_hold": identities.passed,
            });
            report(cli, body, identities.passed)
        }
        Command::Bispecial => {
            let n_max = o.n_max.unwrap_or(20);
            let seq = o.require_coding()?;
            let l = expand_language_sample(&seq, o.triple()?, o.variant(), n_max + 2)?;
            l.require_window(n_max + 1)?;
            let list = enumerate_bispecial(&l, n_max)?;
            report(cli, list, true)
        }
        Command::Certify => {
            let n_max = o.n_max.unwrap_or(150);
            let r = match o.gauss_ks()? {
                Some(ks) => certify_eee(&ks, n_max)?,
                None => certify_eee_seeded(o.seed, n_max)?,
            };
            let passed = r.passed;
            report(cli, r, passed)
        }
        Command::AnalyzeE13e => {
            let ks = o.gauss_ks()?.ok_or_else(|| usage("--gauss k0,k1,… is required"))?;
            let r = predict_and_verify(&ks, o.n_max.unwrap_or(60))?;
            let passed = r.passed;
            report(cli, r, passed)
        }
        Command::CheckE23e { word_len } => {
            let n_max = o.n_max.unwrap_or(200);
            match o.gauss_ks()? {
                Some(ks) => {
                    let (seq, dropped) = CodingSeq::pair_up(&ks);
                    let CodingSeq::DoubleGauss(pairs) = seq else { unreachable!() };
                    let r = e23e_bound_check(&pairs, n_max)?;
                    let passed = r.passed;
                    report(cli, json!({ "dropped_unpaired_entry": dropped, "check": r }), passed)
                }
                None if o.trials.is_some() => {
                    let r = e23e_word_experiment(o.trials.unwrap(), *word_len, n_max, o.seed);
                    let passed = r.passed;
                    report(cli, r, passed)
                }
                None => {
                    let r = e23e_bound_check_seeded(o.seed, n_max)?;
                    let passed = r.passed;
                    report(cli, r, passed)
                }
            }
        }
        Command::Classes => {
            let classes = enumerate_classes();
            if o.csv {
                let rows = classes.iter().map(|c| {
                    let members: Vec<String> = c.members.iter().map(ToString::to_string).collect();
                    (c.representative.to_string(), c.size, c.starred, format!("{:?}", c.verdict), members.join(" "))
                });
                let header = "representative,size,starred,verdict,members\n";
                return Ok(Outcome {
                    text: header.to_string() + &to_csv(rows)?,
                    passed: true,
                });
            }
            report(cli, classes, true)
        }
        Command::ReproduceTables => {
            let variants = match o.variant {
                Some(v) => vec![v],
                None => vec![Variant::Canonical13, Variant::Variant31],
            };
            let reports = variants
                .into_iter()
                .map(reproduce_counterexample_tables)
                .collect::<Result<Vec<_>>>()?;
            let passed = reports.iter().all(|r| r.passed);
            if o.csv {
                let rows = reports.iter().flat_map(|r| {
                    r.rows.iter().map(move |x| {
                        (r.variant.to_string(), x.row.triple.to_string(), x.row.farey_bits.clone(), x.row.n, x.row.p_expected, x.p_computed, x.passed)
                    })
                });
                let header = "variant,triple,bits,n,p_expected,p_computed,passed\n";
                return Ok(Outcome {
                    text: header.to_string() + &to_csv(rows)?,
                    passed,
                });
            }
            let summary: Vec<String> = reports
                .iter()
                .map(|r| format!("{}: {}/{} rows pass", r.variant, r.rows.iter().filter(|x| x.passed).count(), r.rows.len()))
                .collect();
            report(cli, json!({ "summary": summary, "tables": reports }), passed)
        }
        Command::Search { max_bits, budget } => {
            let r = search_high_complexity(o.triple()?, o.variant(), *max_bits, *budget);
            report(cli, r, true)
        }
        Command::Verdicts => {
            let r = class_verdict_suite(o.n_max.unwrap_or(200), o.trials.unwrap_or(10), o.seed)?;
            let passed = r.passed;
            report(cli, r, passed)
        }
        Command::HiddenR2 { sum_bound, max_steps } => {
            let r = hidden_r2_experiment(o.trials.unwrap_or(100_000), *sum_bound, o.seed, *max_steps)?;
            if o.csv {
                let rows = r.step_histogram.iter().map(|(s, c)| (*s, *c));
                return Ok(Outcome {
                    text: "steps,count\n".to_string() + &to_csv(rows)?,
                    passed: true,
                });
            }
            report(cli, r, true)
        }
        Command::Render { depth, gauss_fan, regions } => {
            let svg = if *regions {
                render_regions_svg()
            } else if let Some(k) = gauss_fan {
                render_gauss_svg(o.triple()?, *k)?
            } else {
                render_partition_svg(o.triple()?, *depth)?
            };
            Ok(Outcome { text: svg, passed: true })
        }
    }
}

fn with_pool<T: Send>(jobs: Option<usize>, f: impl FnOnce() -> T + Send) -> T {
    match jobs.and_then(|j| rayon::ThreadPoolBuilder::new().num_threads(j).build().ok()) {
        Some(pool) => pool.install(f),
        None => f(),
    }
}

/// Parses `args`, runs the command and returns the process exit code.
pub fn run(args: impl IntoIterator<Item = OsString>) -> i32 {
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_PASS };
        }
    };
    match with_pool(cli.opts.jobs, || execute(&cli)) {
        Ok(out) => {
            let written = match &cli.opts.out {
                Some(path) => std::fs::write(path, &out.text).map_err(|e| e.to_string()),
                None => {
                    print!("{}", out.text);
                    Ok(())
                }
            };
            if let Err(e) = written {
                eprintln!("error: cannot write output: {e}");
                return EXIT_FAIL;
            }
            if out.passed {
                EXIT_PASS
            } else {
                EXIT_FAIL
            }
        }
        Err(e) if is_usage(&e) => {
            eprintln!("usage error: {e}");
            eprintln!("maps look like \"(e,13,e)\", Farey codings like 0110, Gauss codings like 0,2,1, points like 1/6,1/3,1/2");
            EXIT_USAGE
        }
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_FAIL
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::Value;

    fn exec(args: &[&str]) -> Result<Outcome> {
        let cli = Cli::try_parse_from(std::iter::once("trip").chain(args.iter().copied())).expect("parses");
        execute(&cli)
    }

    fn json_of(out: &Outcome) -> Value {
        serde_json::from_str(&out.text).unwrap()
    }

    #[test]
    fn code_point_prefix() {
        let out = exec(&["code-point", "--map", "(e,e,e)", "--point", "1/6,1/3,1/2", "--steps", "4"]).unwrap();
        let v = json_of(&out);
        assert_eq!(v["report"]["farey"], "0110");
        assert_eq!(v["config"]["command"]["steps"], 4);
    }

    #[test]
    fn tables_and_classes() {
        let out = exec(&["reproduce-tables", "--variant", "canonical13"]).unwrap();
        assert!(out.passed);
        assert_eq!(json_of(&out)["report"]["summary"][0], "canonical13: 14/14 rows pass");
        let csv = exec(&["classes", "--csv"]).unwrap().text;
        assert_eq!(csv.lines().count(), 22);
    }

    #[test]
    fn certify_reports_and_echoes() {
        let out = exec(&["certify", "--gauss", "0,2,1,0,3,1,1,2,0,1,4,2,1,0,2,1,1,3,0,2,1,2,1,1", "--n-max", "40"]).unwrap();
        assert!(out.passed);
        let v = json_of(&out);
        assert_eq!(v["config"]["options"]["n_max"], 40);
        assert_eq!(v["config"]["command"]["subcommand"], "certify");
        let again = exec(&["certify", "--gauss", "0,2,1,0,3,1,1,2,0,1,4,2,1,0,2,1,1,3,0,2,1,2,1,1", "--n-max", "40"]).unwrap();
        assert_eq!(out.text, again.text);
    }

    #[test]
    fn usage_errors() {
        let e = exec(&["complexity", "--map", "(e,14,e)"]).unwrap_err();
        assert!(is_usage(&e));
        assert!(is_usage(&exec(&["code-point"]).unwrap_err()));
        assert!(is_usage(&exec(&["certify", "--farey", "0101"]).unwrap_err()));
        assert_eq!(run(["trip", "no-such-command"].map(OsString::from)), EXIT_USAGE);
        assert_eq!(run(["trip", "complexity", "--map", "(e,x,e)"].map(OsString::from)), EXIT_USAGE);
    }

    #[test]
    fn render_and_csv_outputs() {
        let svg = exec(&["render", "--depth", "1"]).unwrap().text;
        assert!(svg.contains("(1/2,0,1/2)"));
        let csv = exec(&["complexity", "--gauss", &"0,1,2,1".repeat(10), "--n-max", "10", "--csv"]).unwrap();
        assert!(csv.text.starts_with("n,p,dp\n"));
        assert!(csv.passed);
    }
}
