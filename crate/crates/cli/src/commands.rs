use std::fmt;
use std::fs::{self, File};
use std::io::{self, BufWriter, Write};
use std::path::Path;

use num_rational::BigRational;
use serde::Serialize;

use symca_core::census::{self, census_sim, compare, write_census_csv, CensusSeries};
use symca_core::fractal::{
    decimal, fraction, salem_eval, sample_grid, write_samples_csv, Dyadic, F_eval, G_eval, H_eval,
};
use symca_core::grid::{single_site_seed, snapshot};
use symca_core::quadrature::{
    riemann_sum_F, riemann_sum_F_census, riemann_sum_G, riemann_sum_G_exact, write_report_csv,
    RiemannReport, MAX_GRID_LEVEL,
};
use symca_core::rules::{resolve_rule_ambiguity, RuleJson};
use symca_core::{Automaton, BuiltinRule, PatternBitmap, RuleName, SymRuleTable, Window};

use crate::{EvalFn, Format, IntegrateFn};

#[derive(Debug)]
pub enum CliError {
    /// Bad input; exit status 2.
    Validation(String),
    /// A computed result disagrees with its closed form; exit status 3.
    Mismatch(String),
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Validation(_) => 2,
            CliError::Mismatch(_) => 3,
            CliError::Io(_) => 1,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Validation(m) => write!(f, "invalid input: {m}"),
            CliError::Mismatch(m) => write!(f, "verification failed: {m}"),
            CliError::Io(m) => write!(f, "{m}"),
        }
    }
}

fn invalid(e: impl fmt::Display) -> CliError {
    CliError::Validation(e.to_string())
}

fn io_err(path: &Path) -> impl Fn(io::Error) -> CliError + '_ {
    move |e| CliError::Io(format!("{}: {e}", path.display()))
}

/// A rule from the command line: a builtin name or a JSON file.
struct LoadedRule {
    label: String,
    builtin: Option<RuleName>,
    table: SymRuleTable,
}

fn load_rule(arg: &str) -> Result<LoadedRule, CliError> {
    if let Ok(name) = arg.parse::<RuleName>() {
        return Ok(LoadedRule {
            label: name.to_string(),
            builtin: Some(name),
            table: BuiltinRule::get(name).pinned,
        });
    }
    let path = Path::new(arg);
    if !path.is_file() {
        return Err(invalid(format!("`{arg}` is neither ta, tb, ts0 nor a rule file")));
    }
    let text = fs::read_to_string(path).map_err(io_err(path))?;
    let table = RuleJson::parse(&text).map_err(invalid)?;
    let label = table.name.clone().unwrap_or_else(|| "rule".to_string());
    Ok(LoadedRule {
        label,
        builtin: None,
        table,
    })
}

fn automaton(rule: &LoadedRule) -> Result<Automaton, CliError> {
    // wildcards read as 0
    Automaton::from_sym(&rule.table, false).map_err(invalid)
}

fn output(out: Option<&Path>) -> Result<Box<dyn Write>, CliError> {
    Ok(match out {
        Some(path) => Box::new(BufWriter::new(File::create(path).map_err(io_err(path))?)),
        None => Box::new(io::stdout().lock()),
    })
}

fn write_image(bitmap: &PatternBitmap, path: &Path, format: Format) -> Result<(), CliError> {
    let mut w = BufWriter::new(File::create(path).map_err(io_err(path))?);
    match format {
        Format::Pgm => bitmap.write_pgm(&mut w),
        Format::Pbm => bitmap.write_pbm(&mut w),
        _ => unreachable!("checked by caller"),
    }
    .and_then(|_| w.flush())
    .map_err(io_err(path))
}

fn image_format(format: Format) -> Result<&'static str, CliError> {
    match format {
        Format::Pgm => Ok("pgm"),
        Format::Pbm => Ok("pbm"),
        other => Err(invalid(format!("images are pgm or pbm, not {other:?}"))),
    }
}

#[derive(Serialize)]
struct SimRow {
    t: u64,
    num_sim: u64,
    cum_sim: u64,
}

pub fn evolve(rule: &str, steps: u64, out: &Path, format: Format) -> Result<(), CliError> {
    let ext = image_format(format)?;
    let rule = load_rule(rule)?;
    let automaton = automaton(&rule)?;
    fs::create_dir_all(out).map_err(io_err(out))?;
    let width = (steps.to_string().len()).max(4);
    let window = Window::square(steps);
    let orbit = automaton.orbit(&single_site_seed(), steps);
    for (t, c) in orbit.iter().enumerate() {
        let path = out.join(format!("{}_{t:0width$}.{ext}", rule.label));
        write_image(&snapshot(c, window), &path, format)?;
    }
    let pops: Vec<u64> = orbit.iter().map(|c| c.population()).collect();
    let csv_path = out.join("census.csv");
    let file = File::create(&csv_path).map_err(io_err(&csv_path))?;
    match rule.builtin {
        Some(name) => {
            let sim = CensusSeries::from_num(name.as_str(), pops.iter().map(|&p| p.into()));
            let closed = CensusSeries::closed(name, steps + 1).map_err(invalid)?;
            let rows = compare(&sim, &closed);
            write_census_csv(&rows, file).map_err(|e| CliError::Io(e.to_string()))?;
            if let Some(bad) = rows.iter().find(|r| r.matched == 0) {
                return Err(CliError::Mismatch(format!("{name} census differs at t={}", bad.t)));
            }
        }
        None => {
            let mut w = csv::Writer::from_writer(file);
            let mut cum = 0;
            for (i, &p) in pops.iter().enumerate() {
                cum += p;
                w.serialize(SimRow {
                    t: i as u64 + 1,
                    num_sim: p,
                    cum_sim: cum,
                })
                .map_err(|e| CliError::Io(e.to_string()))?;
            }
            w.flush().map_err(io_err(&csv_path))?;
        }
    }
    Ok(())
}

pub fn census(rule: &str, tmax: u64, out: Option<&Path>) -> Result<(), CliError> {
    if tmax == 0 {
        return Err(invalid("--tmax must be at least 1"));
    }
    let rule = load_rule(rule)?;
    let Some(name) = rule.builtin else {
        return Err(invalid("closed forms exist only for ta, tb and ts0"));
    };
    let sim = census_sim(name.as_str(), &automaton(&rule)?, tmax);
    let closed = CensusSeries::closed(name, tmax).map_err(invalid)?;
    let rows = compare(&sim, &closed);
    write_census_csv(&rows, output(out)?).map_err(|e| CliError::Io(e.to_string()))?;
    match rows.iter().find(|r| r.matched == 0) {
        Some(bad) => Err(CliError::Mismatch(format!("{name} census differs at t={}", bad.t))),
        None => Ok(()),
    }
}

fn parse_alpha(alpha: &str) -> Result<BigRational, CliError> {
    alpha
        .trim()
        .parse::<BigRational>()
        .map_err(|_| invalid(format!("cannot parse alpha `{alpha}` as a fraction")))
}

pub fn eval(
    function: Option<EvalFn>,
    x: Option<&str>,
    k: Option<u32>,
    alpha: &str,
    out: Option<&Path>,
) -> Result<(), CliError> {
    let function = function.ok_or_else(|| invalid("--fn is required"))?;
    let x: Dyadic = x
        .ok_or_else(|| invalid("--x is required"))?
        .parse()
        .map_err(invalid)?;
    let mut lines = Vec::new();
    let value = match function {
        EvalFn::F => {
            let v = F_eval(x);
            let r = x.reduced();
            let num_a = census::num_a_closed(r.numerator());
            let scaled = BigRational::new(num_a.clone().into(), (four_pow(r.level())).into());
            if scaled != v {
                return Err(CliError::Mismatch(format!("F({x}) != num_a/4^k")));
            }
            lines.push(format!(
                "num_a({})/4^{} = {}/{}",
                r.numerator(),
                r.level(),
                num_a,
                four_pow(r.level())
            ));
            v
        }
        EvalFn::G => G_eval(x),
        EvalFn::Hk => {
            let k = k.ok_or_else(|| invalid("H_k needs --k"))?;
            H_eval(k, x)
        }
        EvalFn::Salem => salem_eval(&parse_alpha(alpha)?, x).map_err(invalid)?,
    };
    let mut w = output(out)?;
    let mut text = format!("{}\n{}\n", fraction(&value), decimal(&value));
    for line in lines {
        text.push_str(&line);
        text.push('\n');
    }
    w.write_all(text.as_bytes())
        .and_then(|_| w.flush())
        .map_err(|e| CliError::Io(e.to_string()))
}

fn four_pow(level: u32) -> num_bigint::BigUint {
    num_bigint::BigUint::from(1u8) << (2 * level as usize)
}

pub fn sample(level: u32, k: Option<u32>, alpha: &str, out: Option<&Path>) -> Result<(), CliError> {
    if level > 20 {
        return Err(invalid("--grid is limited to level 20"));
    }
    let rows = sample_grid(level, k.unwrap_or(level), &parse_alpha(alpha)?).map_err(invalid)?;
    write_samples_csv(&rows, output(out)?).map_err(|e| CliError::Io(e.to_string()))
}

pub fn integrate(
    function: IntegrateFn,
    kmax: u32,
    format: Option<Format>,
    out: Option<&Path>,
) -> Result<(), CliError> {
    if kmax == 0 {
        return Err(invalid("--kmax must be at least 1"));
    }
    let reports = (1..=kmax)
        .map(|k| match function {
            IntegrateFn::F if k <= MAX_GRID_LEVEL => riemann_sum_F(k),
            IntegrateFn::F => riemann_sum_F_census(k),
            IntegrateFn::G => riemann_sum_G(k),
            IntegrateFn::GExact => riemann_sum_G_exact(k),
        })
        .collect::<Result<Vec<_>, _>>()
        .map_err(invalid)?;
    let mut w = output(out)?;
    match format {
        Some(Format::Csv) => write_report_csv(&reports, &mut w).map_err(|e| CliError::Io(e.to_string()))?,
        None => write_table(&reports, &mut w).map_err(|e| CliError::Io(e.to_string()))?,
        Some(other) => return Err(invalid(format!("integrate writes csv or a table, not {other:?}"))),
    }
    w.flush().map_err(|e| CliError::Io(e.to_string()))?;
    if let Some(r) = reports
        .iter()
        .find(|r| r.closed_error.as_ref().is_some_and(|c| *c != r.error))
    {
        return Err(CliError::Mismatch(format!("error at k={} differs from its closed form", r.level)));
    }
    Ok(())
}

fn write_table(reports: &[RiemannReport], w: &mut dyn Write) -> io::Result<()> {
    writeln!(w, "{:>3}  {:<24}  {:<24}  {:<24}  {}", "k", "sum", "error", "closed_error", "sum_exact")?;
    for r in reports {
        let closed = r.closed_error.as_ref().map_or("-".to_string(), decimal);
        writeln!(
            w,
            "{:>3}  {:<24}  {:<24}  {:<24}  {}",
            r.level,
            decimal(&r.sum),
            decimal(&r.error),
            closed,
            fraction(&r.sum)
        )?;
    }
    Ok(())
}

#[derive(Serialize)]
struct TargetReport {
    target: String,
    count: usize,
    matches: Vec<String>,
    pattern: Option<String>,
    pinned: Option<String>,
    printed: String,
    printed_admits_all: bool,
}

#[derive(Serialize)]
struct SearchReport {
    horizon: u64,
    targets: Vec<TargetReport>,
    pinned_ta_differs_from_ts0: bool,
    first_difference_t: Option<u64>,
}

pub fn rulesearch(target: &str, horizon: u64, out: Option<&Path>) -> Result<(), CliError> {
    let names: Vec<RuleName> = match target {
        "all" => RuleName::ALL.to_vec(),
        t => vec![t.parse().map_err(invalid)?],
    };
    let res = resolve_rule_ambiguity(horizon).map_err(invalid)?;
    let targets: Vec<TargetReport> = names
        .iter()
        .map(|&n| {
            let r = res.get(n);
            TargetReport {
                target: n.to_string(),
                count: r.matches.len(),
                matches: r.matches.iter().map(|m| m.row()).collect(),
                pattern: r.pattern.as_ref().map(|p| p.row()),
                pinned: r.pinned.as_ref().map(|p| p.row()),
                printed: BuiltinRule::get(n).printed.row(),
                printed_admits_all: r.printed_admits_all,
            }
        })
        .collect();
    let first = res.ta_ts0_first_difference();
    let report = SearchReport {
        horizon,
        targets,
        pinned_ta_differs_from_ts0: first.is_some(),
        first_difference_t: first,
    };
    let mut w = output(out)?;
    serde_json::to_writer_pretty(&mut w, &report).map_err(|e| CliError::Io(e.to_string()))?;
    writeln!(w).and_then(|_| w.flush()).map_err(|e| CliError::Io(e.to_string()))?;
    match report.targets.iter().find(|t| t.count == 0) {
        Some(t) => Err(CliError::Mismatch(format!("no table reproduces the {} census", t.target))),
        None => Ok(()),
    }
}

pub fn render_spacetime(rule: &str, steps: u64, out: &Path, format: Format) -> Result<(), CliError> {
    image_format(format)?;
    let rule = load_rule(rule)?;
    let automaton = automaton(&rule)?;
    let window = Window::square(steps);
    let frames: Vec<PatternBitmap> = automaton
        .orbit(&single_site_seed(), steps)
        .iter()
        .map(|c| snapshot(c, window))
        .collect();
    let columns = (frames.len() as f64).sqrt().ceil() as usize;
    let tiled = PatternBitmap::montage(&frames, columns).expect("equal frames");
    if let Some(dir) = out.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir).map_err(io_err(dir))?;
    }
    write_image(&tiled, out, format)
}
