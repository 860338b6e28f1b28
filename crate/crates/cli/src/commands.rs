use std::io::Write;
use std::path::Path;

use finfiber_core::{
    christoffel_from_discount, financial_translate, force_of_interest, induced_discount, project_compound,
    project_general, rate_isomorphism, trace_test, CapitalEvolution, DerivativeSource, Fiber, FinancialEvent, Interval,
    LawKind, Rate,
};

use crate::input::read_evolution_csv;
use crate::output::{fmt_g17, Format, OutputRecord, RowWriter};
use crate::CliError;

pub fn project_rate(t: f64, c: f64, rate: f64) -> Result<OutputRecord, CliError> {
    let base = project_compound(FinancialEvent::new(t, c)?, Rate::new(rate)?)?;
    Ok(OutputRecord::new("project").input("t", t).input("c", c).input("rate", rate).output("base", base))
}

pub fn project_law(t: f64, c: f64, law: LawKind, param: f64) -> Result<OutputRecord, CliError> {
    let f = law.capitalization(param)?;
    let base = project_general(FinancialEvent::new(t, c)?, &f)?;
    Ok(OutputRecord::new("project")
        .input("t", t)
        .input("c", c)
        .input("law", law.id())
        .input("param", param)
        .output("base", base))
}

pub fn fiber(
    rate: f64,
    base: f64,
    t_min: f64,
    t_max: f64,
    steps: usize,
    format: Format,
    out: &mut impl Write,
) -> Result<(), CliError> {
    let fb = Fiber::new(Rate::new(rate)?, base)?;
    let mut rows = RowWriter::new(out, format, &["t", "M"])?;
    for t in Interval::linspace(t_min, t_max, steps) {
        rows.row(&[t, fb.eval(t)?])?;
    }
    Ok(())
}

pub fn section_check(
    input: &Path,
    rate: f64,
    lo: f64,
    hi: f64,
    tol: f64,
    witness_out: Option<&Path>,
) -> Result<OutputRecord, CliError> {
    let rate_value = Rate::new(rate)?;
    let (times, values) = read_evolution_csv(input)?;
    let evolution = CapitalEvolution::from_samples(times, values)?;
    let report = trace_test(&evolution, rate_value, Interval::new(lo, hi)?, tol);

    let witness_path = match (&report.witness, witness_out) {
        (Some(samples), Some(path)) => {
            let mut file = std::io::BufWriter::new(std::fs::File::create(path)?);
            writeln!(file, "t,v")?;
            for &(t, v) in samples {
                writeln!(file, "{},{}", fmt_g17(t), fmt_g17(v))?;
            }
            file.flush()?;
            Some(path.display().to_string())
        }
        _ => None,
    };

    Ok(OutputRecord::new("section-check")
        .input("input", input.display().to_string())
        .input("rate", rate)
        .input("targets_lo", lo)
        .input("targets_hi", hi)
        .input("tol", tol)
        .output("is_trace", report.is_trace)
        .output("injective", report.injective)
        .output("failure_reason", report.failure.as_ref().map(|f| f.reason()))
        .output("witness", witness_path))
}

pub fn transport(t: f64, c: f64, h: f64, law: LawKind, param: f64) -> Result<OutputRecord, CliError> {
    let u = law.capitalization(param)?;
    let f = induced_discount(&u, t)?;
    let moved = financial_translate(FinancialEvent::new(t, c)?, h, &f)?;
    Ok(OutputRecord::new("transport")
        .input("t", t)
        .input("c", c)
        .input("h", h)
        .input("law", law.id())
        .input("param", param)
        .output("time", moved.time())
        .output("capital", moved.capital()))
}

pub fn christoffel(t: f64, law: LawKind, param: f64) -> Result<OutputRecord, CliError> {
    let u = law.capitalization(param)?;
    let g = christoffel_from_discount(&induced_discount(&u, t)?, t)?;
    let source = match g.source {
        Some(DerivativeSource::Analytic) => "analytic",
        Some(DerivativeSource::FiniteDifference { .. }) => "finite_difference",
        None => "given",
    };
    Ok(OutputRecord::new("christoffel")
        .input("t", t)
        .input("law", law.id())
        .input("param", param)
        .output("gamma", g.gamma)
        .output("derivative", source))
}

pub fn force(t: f64, law: LawKind, param: f64) -> Result<OutputRecord, CliError> {
    let u = law.capitalization(param)?;
    let delta = force_of_interest(&u, t)?;
    Ok(OutputRecord::new("force").input("t", t).input("law", law.id()).input("param", param).output("delta", delta))
}

pub fn isomap(t: f64, c: f64, from: f64, to: f64) -> Result<OutputRecord, CliError> {
    let e = rate_isomorphism(FinancialEvent::new(t, c)?, Rate::new(from)?, Rate::new(to)?)?;
    Ok(OutputRecord::new("isomap")
        .input("t", t)
        .input("c", c)
        .input("from", from)
        .input("to", to)
        .output("time", e.time())
        .output("capital", e.capital()))
}
