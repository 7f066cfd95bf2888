//! Human-readable report rendering: evaluation tables in the classic
//! true/predicted layout and an SVG bar chart for scan distributions.
//! Machine-readable exports are plain serde serializations of the metric
//! types themselves.

use crate::ensemble::NO_AGREEMENT_NAME;
use crate::metrics::{ConfusionMatrix, MetricsReport, ScanReport};

fn pad_left(s: &str, width: usize) -> String {
    format!("{s:>width$}")
}

/// Render a confusion matrix with its derived metrics as a fixed-width text
/// table: one row per true class, predicted-class columns (plus a
/// no-agreement column when the matrix has abstention data), then precision,
/// recall, and F-beta columns, with macro lines underneath.
pub fn render_table(cm: &ConfusionMatrix, report: &MetricsReport) -> String {
    let names = cm.labels().names();
    let k = names.len();
    let beta = report.beta;
    let f_header = format!("Fbeta({beta})");

    let mut headers: Vec<String> = vec!["True/Predicted".into()];
    headers.extend(names.iter().cloned());
    if cm.no_agreement().is_some() {
        headers.push(NO_AGREEMENT_NAME.into());
    }
    headers.extend([
        "Precision".to_string(),
        "Recall".to_string(),
        f_header.clone(),
    ]);

    let mut rows: Vec<Vec<String>> = Vec::with_capacity(k);
    for i in 0..k {
        let mut row = vec![names[i].clone()];
        for j in 0..k {
            row.push(cm.count(i, j).to_string());
        }
        if let Some(na) = cm.no_agreement() {
            row.push(na[i].to_string());
        }
        let class = &report.per_class[i];
        row.push(format!("{:.4}", class.precision));
        row.push(format!("{:.4}", class.recall));
        row.push(format!("{:.4}", class.f_beta));
        rows.push(row);
    }

    let widths: Vec<usize> = headers
        .iter()
        .enumerate()
        .map(|(col, h)| {
            rows.iter()
                .map(|r| r[col].len())
                .chain([h.len()])
                .max()
                .unwrap_or(0)
        })
        .collect();

    let render_row = |cells: &[String]| {
        cells
            .iter()
            .zip(&widths)
            .map(|(c, &w)| pad_left(c, w))
            .collect::<Vec<_>>()
            .join("  ")
    };

    let mut out = String::new();
    out.push_str(&render_row(&headers));
    out.push('\n');
    out.push_str(&"-".repeat(widths.iter().sum::<usize>() + 2 * (widths.len() - 1)));
    out.push('\n');
    for row in &rows {
        out.push_str(&render_row(row));
        out.push('\n');
    }
    if let (Some(total), Some(rate)) = (report.no_agreement_total, report.no_agreement_rate) {
        out.push_str(&format!(
            "Total no agreement: {total} ({:.2}%)\n",
            rate * 100.0
        ));
    }
    out.push_str(&format!(
        "Macro-averaged {f_header} = {:.4}, Macro-averaged FPR = {:.4}\n",
        report.macro_f_beta, report.macro_fpr
    ));
    if report.exclusion_mode {
        out.push_str("Rates computed after excluding the no-agreement category.\n");
    }
    if report.per_class.iter().any(|c| c.degenerate) {
        out.push_str("Note: some rates had zero denominators and were reported as 0.\n");
    }
    out
}

/// Render a scan distribution as plain text, one line per outcome.
pub fn render_scan_text(scan: &ScanReport) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "Scanned {} texts ({:?} voting):\n",
        scan.total, scan.strategy
    ));
    for (label, (&count, &fraction)) in scan
        .labels
        .iter()
        .zip(scan.counts.iter().zip(&scan.fractions))
    {
        out.push_str(&format!("  {label:<16} {count:>8}  {:>7.2}%\n", fraction * 100.0));
    }
    out.push_str(&format!(
        "  {NO_AGREEMENT_NAME:<16} {:>8}  {:>7.2}%\n",
        scan.no_agreement_count,
        scan.no_agreement_fraction * 100.0
    ));
    out
}

/// Render a scan distribution as a standalone SVG bar chart.
pub fn render_scan_svg(scan: &ScanReport) -> String {
    let mut bars: Vec<(String, f64)> = scan
        .labels
        .iter()
        .cloned()
        .zip(scan.fractions.iter().copied())
        .collect();
    bars.push((NO_AGREEMENT_NAME.to_string(), scan.no_agreement_fraction));

    let width = 720.0;
    let height = 420.0;
    let margin_left = 50.0;
    let margin_bottom = 60.0;
    let margin_top = 40.0;
    let plot_w = width - margin_left - 20.0;
    let plot_h = height - margin_top - margin_bottom;
    let n = bars.len() as f64;
    let slot = plot_w / n;
    let bar_w = slot * 0.6;

    let mut svg = String::new();
    svg.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{width}\" height=\"{height}\" \
         viewBox=\"0 0 {width} {height}\">\n"
    ));
    svg.push_str("<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n");
    svg.push_str(&format!(
        "<text x=\"{}\" y=\"24\" font-family=\"sans-serif\" font-size=\"16\" \
         text-anchor=\"middle\">Ensemble label distribution ({} texts)</text>\n",
        width / 2.0,
        scan.total
    ));
    // Y axis with 0/50/100% gridlines.
    for tick in [0.0, 0.25, 0.5, 0.75, 1.0] {
        let y = margin_top + plot_h * (1.0 - tick);
        svg.push_str(&format!(
            "<line x1=\"{margin_left}\" y1=\"{y}\" x2=\"{}\" y2=\"{y}\" \
             stroke=\"#ddd\" stroke-width=\"1\"/>\n",
            margin_left + plot_w
        ));
        svg.push_str(&format!(
            "<text x=\"{}\" y=\"{}\" font-family=\"sans-serif\" font-size=\"11\" \
             text-anchor=\"end\">{:.0}%</text>\n",
            margin_left - 6.0,
            y + 4.0,
            tick * 100.0
        ));
    }
    for (i, (label, fraction)) in bars.iter().enumerate() {
        let x = margin_left + slot * i as f64 + (slot - bar_w) / 2.0;
        let bar_h = plot_h * fraction;
        let y = margin_top + plot_h - bar_h;
        let fill = if label == NO_AGREEMENT_NAME {
            "#b0413e"
        } else {
            "#4472a8"
        };
        svg.push_str(&format!(
            "<rect x=\"{x:.1}\" y=\"{y:.1}\" width=\"{bar_w:.1}\" height=\"{bar_h:.1}\" \
             fill=\"{fill}\"/>\n"
        ));
        svg.push_str(&format!(
            "<text x=\"{:.1}\" y=\"{:.1}\" font-family=\"sans-serif\" font-size=\"12\" \
             text-anchor=\"middle\">{:.1}%</text>\n",
            x + bar_w / 2.0,
            y - 5.0,
            fraction * 100.0
        ));
        svg.push_str(&format!(
            "<text x=\"{:.1}\" y=\"{:.1}\" font-family=\"sans-serif\" font-size=\"12\" \
             text-anchor=\"middle\">{label}</text>\n",
            x + bar_w / 2.0,
            margin_top + plot_h + 18.0
        ));
    }
    svg.push_str("</svg>\n");
    svg
}
