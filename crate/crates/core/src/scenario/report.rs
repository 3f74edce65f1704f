use std::fmt::Write as _;

use serde::Serialize;

use super::document::{payload_from_matrix, MatrixPayload, Settings, StepOp};
use super::pipeline::{Report, StepReport};
use crate::linalg::{Complex, ComplexMatrix};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum ReportFormat {
    #[default]
    Human,
    Machine,
}

#[derive(Serialize)]
struct MachineStep<'a> {
    id: usize,
    op: StepOp,
    #[serde(rename = "as", skip_serializing_if = "Option::is_none")]
    binding: Option<&'a str>,
    output: Option<MatrixPayload>,
    trace: Option<f64>,
    purity: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    probabilities: Option<&'a [f64]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    verdict: Option<bool>,
}

#[derive(Serialize)]
struct MachineReport<'a> {
    steps: Vec<MachineStep<'a>>,
    settings: &'a Settings,
}

/// Renders a report as aligned text or as JSON.
pub fn format_report(report: &Report, format: ReportFormat) -> Vec<u8> {
    match format {
        ReportFormat::Human => human(report).into_bytes(),
        ReportFormat::Machine => machine(report),
    }
}

fn machine(report: &Report) -> Vec<u8> {
    let doc = MachineReport {
        steps: report
            .steps
            .iter()
            .map(|s| MachineStep {
                id: s.id,
                op: s.op,
                binding: s.binding.as_deref(),
                output: s.output.as_ref().map(payload_from_matrix),
                trace: s.trace,
                purity: s.purity,
                probabilities: s.probabilities.as_deref(),
                verdict: s.verdict,
            })
            .collect(),
        settings: &report.settings,
    };
    let mut out = serde_json::to_vec(&doc).expect("report serializes");
    out.push(b'\n');
    out
}

/// `x` at `precision` fractional digits, without a negative zero.
pub fn format_real(x: f64, precision: usize) -> String {
    let s = format!("{x:.precision$}");
    match s.strip_prefix('-') {
        Some(rest) if rest.bytes().all(|b| b == b'0' || b == b'.') => rest.to_string(),
        _ => s,
    }
}

/// `a+bi` / `a-bi`.
pub fn format_complex(z: Complex, precision: usize) -> String {
    let re = format_real(z.re, precision);
    let im = format_real(z.im, precision);
    match im.strip_prefix('-') {
        Some(mag) => format!("{re}-{mag}i"),
        None => format!("{re}+{im}i"),
    }
}

fn matrix_lines(m: &ComplexMatrix, precision: usize, indent: &str) -> String {
    let cells: Vec<Vec<String>> = m
        .to_rows()
        .into_iter()
        .map(|r| r.into_iter().map(|z| format_complex(z, precision)).collect())
        .collect();
    let widths: Vec<usize> = (0..m.cols())
        .map(|j| cells.iter().map(|r| r[j].len()).max().unwrap_or(0))
        .collect();
    let mut out = String::new();
    for row in &cells {
        let line: Vec<String> = row
            .iter()
            .zip(&widths)
            .map(|(c, w)| format!("{c:>w$}"))
            .collect();
        let _ = writeln!(out, "{indent}{}", line.join("  "));
    }
    out
}

fn human_step(out: &mut String, s: &StepReport, precision: usize) {
    let _ = write!(out, "[{}] {}", s.id, s.op);
    if let Some(b) = &s.binding {
        let _ = write!(out, " -> {b}");
    }
    out.push('\n');
    if let Some(m) = &s.output {
        let _ = writeln!(out, "  output ({}x{}):", m.rows(), m.cols());
        out.push_str(&matrix_lines(m, precision, "    "));
    }
    if let Some(t) = s.trace {
        let _ = writeln!(out, "  trace: {}", format_real(t, precision));
    }
    if let Some(p) = s.purity {
        let _ = writeln!(out, "  purity: {}", format_real(p, precision));
    }
    if let Some(ps) = &s.probabilities {
        let ps: Vec<String> = ps.iter().map(|p| format_real(*p, precision)).collect();
        let _ = writeln!(out, "  probabilities: [{}]", ps.join(", "));
    }
    if let Some(v) = s.verdict {
        let _ = writeln!(out, "  verdict: {v}");
    }
}

fn human(report: &Report) -> String {
    let settings = &report.settings;
    let mut out = format!(
        "qsignals report: {} steps (tolerance {:e}, precision {})\n",
        report.steps.len(),
        settings.tolerance,
        settings.output_precision
    );
    for s in &report.steps {
        human_step(&mut out, s, settings.output_precision);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn negative_zero_is_normalized() {
        assert_eq!(format_real(-1e-9, 3), "0.000");
        assert_eq!(format_real(-0.0, 2), "0.00");
        assert_eq!(format_real(-0.5, 1), "-0.5");
    }

    #[test]
    fn complex_signs() {
        assert_eq!(format_complex(Complex::new(0.25, -0.5), 3), "0.250-0.500i");
        assert_eq!(format_complex(Complex::new(-1.0, 0.0), 3), "-1.000+0.000i");
        assert_eq!(format_complex(Complex::new(1.0, -1e-12), 2), "1.00+0.00i");
    }

    #[test]
    fn empty_report_is_header_only() {
        let r = Report::empty(Settings::default());
        let text = String::from_utf8(format_report(&r, ReportFormat::Human)).unwrap();
        assert_eq!(text.lines().count(), 1);
        assert!(text.starts_with("qsignals report: 0 steps"));
        let json: serde_json::Value =
            serde_json::from_slice(&format_report(&r, ReportFormat::Machine)).unwrap();
        assert_eq!(json["steps"].as_array().unwrap().len(), 0);
        assert_eq!(json["settings"]["output_precision"], 6);
    }

    #[test]
    fn precision_controls_digits() {
        let m = ComplexMatrix::real_diagonal(&[0.5, 0.5]);
        let text = matrix_lines(&m, 3, "");
        assert!(text.contains("0.500+0.000i"));
        assert!(!text.contains("0.5000"));
    }
}
