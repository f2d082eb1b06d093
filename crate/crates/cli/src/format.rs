use std::io::Write;
use std::path::Path;

use num_rational::Ratio;
use qclearn::SweepRow;

/// Column names of the sweep CSV, in order.
pub const CSV_HEADER: [&str; 12] = [
    "family",
    "N",
    "param",
    "s",
    "theta",
    "m",
    "membership_queries",
    "equivalence_queries",
    "avg_success",
    "gamma",
    "conj1_bound",
    "conj2_bound",
];

/// Formats `x` with 12 significant digits, trailing zeros removed.
///
/// Plain decimal notation is used for exponents in `[-5, 12)`, scientific otherwise.
pub fn sig12(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let sci = format!("{x:.11e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent marker");
    let exp: i32 = exp.parse().expect("integer exponent");
    if !(-5..12).contains(&exp) {
        let mantissa = trim_zeros(mantissa);
        return format!("{mantissa}e{exp}");
    }
    let decimals = (11 - exp).max(0) as usize;
    trim_zeros(&format!("{x:.decimals$}")).to_string()
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

fn ratio_value(r: Ratio<usize>) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

/// The twelve CSV fields of a row; missing data becomes an empty field.
pub fn row_fields(row: &SweepRow) -> Vec<String> {
    vec![
        row.family.to_string(),
        row.size.to_string(),
        row.param.clone(),
        sig12(row.s),
        sig12(row.theta),
        row.m.to_string(),
        row.membership_queries.to_string(),
        row.equivalence_queries.to_string(),
        sig12(row.avg_success),
        row.gamma.map(|g| sig12(ratio_value(g))).unwrap_or_default(),
        sig12(row.conj1_bound),
        row.conj2_bound.map(sig12).unwrap_or_default(),
    ]
}

/// Writes the header and one line per row, LF-terminated.
pub fn write_csv<W: Write>(rows: &[SweepRow], out: W) -> std::io::Result<()> {
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(out);
    w.write_record(CSV_HEADER)?;
    for row in rows {
        w.write_record(row_fields(row))?;
    }
    w.flush()
}

/// [`write_csv`] into a file at `path`.
pub fn emit_csv(rows: &[SweepRow], path: &Path) -> qclearn::Result<()> {
    let file = std::fs::File::create(path)?;
    write_csv(rows, std::io::BufWriter::new(file))?;
    Ok(())
}

/// Space-aligned table with the CSV columns.
pub fn write_table<W: Write>(rows: &[SweepRow], mut out: W) -> std::io::Result<()> {
    let mut cells: Vec<Vec<String>> = vec![CSV_HEADER.iter().map(|s| s.to_string()).collect()];
    cells.extend(rows.iter().map(row_fields));
    let widths: Vec<usize> =
        (0..CSV_HEADER.len()).map(|c| cells.iter().map(|r| r[c].len()).max().unwrap_or(0)).collect();
    for line in &cells {
        let padded: Vec<String> = line.iter().zip(&widths).map(|(s, w)| format!("{s:<w$}")).collect();
        writeln!(out, "{}", padded.join("  ").trim_end())?;
    }
    Ok(())
}
