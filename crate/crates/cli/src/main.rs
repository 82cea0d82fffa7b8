mod args;
mod output;

use std::process::ExitCode;

use clap::Parser;
use serde_json::{json, Value};
use trace_moments::curves::ShapeCensus;
use trace_moments::finitefield::FieldCtx;
use trace_moments::numtheory::prime_power;
use trace_moments::quadforms::hurwitz_h_int;
use trace_moments::traceformula::{main_theorem_rhs, t_dual, t_ell, t_hyp, t_id, TraceParams};
use trace_moments::verify::{self, Check, MainFilter};
use trace_moments::{rat_string, ExactRat};

use args::{parse_group, Cli, Command};
use output::{Report, Table};

/// Invalid configuration; reported with exit status 2.
#[derive(Debug)]
struct Failure(String);

impl From<trace_moments::Error> for Failure {
    fn from(e: trace_moments::Error) -> Self {
        Failure(e.to_string())
    }
}

impl From<String> for Failure {
    fn from(e: String) -> Self {
        Failure(e)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let report = match run(&cli.command) {
        Ok(report) => report,
        Err(Failure(msg)) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
    };
    if let Err(e) = report.write(cli.format, cli.output.as_deref()) {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    if report.checks.iter().all(|c| c.pass) {
        ExitCode::SUCCESS
    } else {
        let failed = report.checks.iter().filter(|c| !c.pass).count();
        eprintln!("{failed} check(s) failed");
        ExitCode::from(1)
    }
}

fn census_for(q: u64, workers: usize) -> Result<ShapeCensus, Failure> {
    if workers == 0 {
        return Err(Failure("--workers must be at least 1".into()));
    }
    let ctx = FieldCtx::for_order(q)?;
    Ok(ShapeCensus::compute(&ctx, workers)?)
}

fn rat(x: &ExactRat) -> Value {
    Value::String(rat_string(x))
}

fn run(command: &Command) -> Result<Report, Failure> {
    match command {
        Command::Hurwitz { delta } => {
            let h: ExactRat = hurwitz_h_int(*delta);
            let mut table = Table::new(&["delta", "H"]);
            table.push(vec![delta.to_string(), rat_string(&h)]);
            Ok(Report::new(
                "hurwitz",
                json!({ "delta": delta }),
                rat(&h),
                table,
            ))
        }
        Command::Census {
            field,
            group,
            workers,
        } => {
            let q = field.order()?;
            let spec = parse_group(group)?;
            let census = census_for(q, *workers)?;
            let report = census.report(&spec);
            let mut table = Table::new(&["t", "mass_all", "mass_A"]);
            for (t, (all, with_a)) in &report.buckets {
                table.push(vec![t.to_string(), rat_string(all), rat_string(with_a)]);
            }
            table.push(vec![
                "total".into(),
                rat_string(&report.total_mass),
                String::new(),
            ]);
            let params = json!({ "q": q, "A": [spec.m1, spec.m2] });
            Ok(Report::new("census", params, report.to_json_value(), table))
        }
        Command::Moment {
            field,
            group,
            k,
            workers,
        } => {
            let q = field.order()?;
            let spec = parse_group(group)?;
            let rhs: ExactRat = main_theorem_rhs(&spec, q, *k)?;
            let lhs = census_for(q, *workers)?.moment(&spec, *k)?;
            let params = json!({ "q": q, "A": [spec.m1, spec.m2], "k": k });
            let check = Check::compare("main_theorem", params.clone(), lhs.clone(), rhs.clone());
            let result = json!({ "lhs": rat(&lhs), "rhs": rat(&rhs), "equal": check.pass });
            let mut table = Table::new(&["q", "m1", "m2", "k", "lhs", "rhs", "equal"]);
            table.push(vec![
                q.to_string(),
                spec.m1.to_string(),
                spec.m2.to_string(),
                k.to_string(),
                rat_string(&lhs),
                rat_string(&rhs),
                check.pass.to_string(),
            ]);
            Ok(Report::new("moment", params, result, table).with_checks(vec![check]))
        }
        Command::Trace {
            field,
            level_n: n,
            level_m: m,
            d,
            k,
            r,
        } => {
            let q = field.order()?;
            let params = TraceParams::new(*n, *m, q, *d, *k, *r)?;
            let id: ExactRat = t_id(&params);
            let ell: ExactRat = t_ell(&params)?;
            let hyp: ExactRat = t_hyp(&params);
            let dual: ExactRat = t_dual(&params);
            let trace = &id - &ell - &hyp + &dual;
            let terms = [
                ("id", &id),
                ("ell", &ell),
                ("hyp", &hyp),
                ("dual", &dual),
                ("trace", &trace),
            ];
            let mut table = Table::new(&["term", "value"]);
            let mut result = serde_json::Map::new();
            for (name, value) in terms {
                table.push(vec![name.to_string(), rat_string(value)]);
                result.insert(name.to_string(), rat(value));
            }
            let (p, _) = prime_power(q)?;
            let json_params = json!({
                "q": q, "N": n, "M": m, "d": d, "k": k, "r": r, "level": p.pow(*r) * n
            });
            Ok(Report::new(
                "trace",
                json_params,
                Value::Object(result),
                table,
            ))
        }
        Command::VerifyMain {
            q,
            k,
            group,
            workers,
        } => {
            let spec = group.as_deref().map(parse_group).transpose()?;
            if let Some(q) = q {
                prime_power(*q)?;
            }
            if *workers == 0 {
                return Err(Failure("--workers must be at least 1".into()));
            }
            let filter = MainFilter {
                q: *q,
                k: *k,
                spec,
                workers: *workers,
            };
            let checks = verify::verify_main(&filter)?;
            let params = json!({ "q": q, "k": k, "A": spec.map(|s| [s.m1, s.m2]) });
            Ok(Report::for_checks("verify-main", params, checks))
        }
        Command::VerifyLemmas { only } => {
            let checks = match only {
                Some(name) => verify::verify_lemma(name)?,
                None => verify::verify_lemmas()?,
            };
            Ok(Report::for_checks(
                "verify-lemmas",
                json!({ "only": only }),
                checks,
            ))
        }
    }
}
