//! Plain-text outputs: significant-digit number formatting, CSV export of
//! sweep records, and a self-contained SVG heatmap of the normalized gap.

use crate::experiments::SweepResult;

/// Formats `value` with `sig` significant digits, trimming trailing zeros.
///
/// Values with decimal exponent below −4 or at/above `sig` switch to
/// scientific notation, mirroring how hand-written numerics are usually
/// quoted. Zero prints as `0`; non-finite values print as Rust's `Display`
/// renders them.
pub fn fmt_sig(value: f64, sig: usize) -> String {
    let sig = sig.max(1);
    if value == 0.0 {
        return "0".to_string();
    }
    if !value.is_finite() {
        return value.to_string();
    }
    let exponent = value.abs().log10().floor() as i32;
    if exponent < -4 || exponent >= sig as i32 {
        let formatted = format!("{:.*e}", sig - 1, value);
        trim_exponential(&formatted)
    } else {
        let decimals = (sig as i32 - 1 - exponent).max(0) as usize;
        trim_decimal(&format!("{:.*}", decimals, value))
    }
}

fn trim_decimal(text: &str) -> String {
    if !text.contains('.') {
        return text.to_string();
    }
    text.trim_end_matches('0').trim_end_matches('.').to_string()
}

fn trim_exponential(text: &str) -> String {
    match text.split_once('e') {
        Some((mantissa, exponent)) => format!("{}e{exponent}", trim_decimal(mantissa)),
        None => text.to_string(),
    }
}

/// Renders sweep records as CSV with the fixed column set
/// `x1,y1,lambda01,lambda02,lambda12,r_cdf,r_pdf,g,g_bar`, one row per
/// evaluated relay position in record order, numbers at `precision`
/// significant digits.
pub fn sweep_to_csv(result: &SweepResult, precision: usize) -> String {
    let mut out = String::with_capacity(64 * (result.records.len() + 1));
    out.push_str("x1,y1,lambda01,lambda02,lambda12,r_cdf,r_pdf,g,g_bar\n");
    for record in &result.records {
        let fields = [
            record.position.x(),
            record.position.y(),
            record.snr.lambda01(),
            record.snr.lambda02(),
            record.snr.lambda12(),
            record.report.r_cdf,
            record.report.r_pdf,
            record.report.g,
            record.report.g_bar,
        ];
        for (i, field) in fields.iter().enumerate() {
            if i > 0 {
                out.push(',');
            }
            out.push_str(&fmt_sig(*field, precision));
        }
        out.push('\n');
    }
    out
}

/// Color for a normalized gap `t` ∈ [0, 1] of the maximum: a linear
/// componentwise blend from `#0d1b2a` (zero gap) to `#e63946` (the sweep's
/// maximum). The scale is linear in Ḡ, not rank-based, so two sweeps with
/// the same maximum are directly comparable.
fn heat_color(t: f64) -> String {
    const LOW: (f64, f64, f64) = (13.0, 27.0, 42.0);
    const HIGH: (f64, f64, f64) = (230.0, 57.0, 70.0);
    let t = if t.is_finite() { t.clamp(0.0, 1.0) } else { 0.0 };
    let channel = |lo: f64, hi: f64| (lo + (hi - lo) * t).round() as u8;
    format!(
        "#{:02x}{:02x}{:02x}",
        channel(LOW.0, HIGH.0),
        channel(LOW.1, HIGH.1),
        channel(LOW.2, HIGH.2)
    )
}

/// Renders the sweep as a standalone SVG heatmap.
///
/// Each evaluated lattice cell becomes a rectangle colored by its
/// normalized gap on the linear scale of [`heat_color`]; filtered cells
/// stay background, which makes the evaluation region itself visible.
/// Source and destination are drawn as outlined circles, and a caption
/// reports the maximum and its position.
pub fn sweep_to_svg(result: &SweepResult) -> String {
    let spec = &result.spec;
    let nx = ((spec.x_range.1 - spec.x_range.0) / spec.step).round() as usize;
    let ny = ((spec.y_range.1 - spec.y_range.0) / spec.step).round() as usize;
    let cell = (900 / (nx + 1).max(ny + 1)).max(1);
    let width = (nx + 1) * cell;
    let caption_height = 40;
    let height = (ny + 1) * cell + caption_height;
    let max = if result.max_g_bar > 0.0 {
        result.max_g_bar
    } else {
        1.0
    };

    let mut svg = String::with_capacity(96 * result.records.len() + 1024);
    svg.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 {width} {height}\" \
         width=\"{width}\" height=\"{height}\">\n\
         <rect width=\"{width}\" height=\"{height}\" fill=\"#f4f1ea\"/>\n"
    ));
    for record in &result.records {
        let col = ((record.position.x() - spec.x_range.0) / spec.step).round() as usize;
        let row = ((record.position.y() - spec.y_range.0) / spec.step).round() as usize;
        let x = col * cell;
        let y = (ny - row.min(ny)) * cell;
        let color = heat_color(record.report.g_bar / max);
        svg.push_str(&format!(
            "<rect x=\"{x}\" y=\"{y}\" width=\"{cell}\" height=\"{cell}\" fill=\"{color}\"/>\n"
        ));
    }

    let mark = |p: &crate::channel::Point| -> Option<(usize, usize)> {
        let col = (p.x() - spec.x_range.0) / spec.step;
        let row = (p.y() - spec.y_range.0) / spec.step;
        if col < -0.5 || row < -0.5 || col > nx as f64 + 0.5 || row > ny as f64 + 0.5 {
            return None;
        }
        let col = col.round().max(0.0) as usize;
        let row = row.round().max(0.0) as usize;
        Some((
            col * cell + cell / 2,
            (ny - row.min(ny)) * cell + cell / 2,
        ))
    };
    for (node, label) in [(spec.source, "S"), (spec.destination, "D")] {
        if let Some((cx, cy)) = mark(&node) {
            svg.push_str(&format!(
                "<circle cx=\"{cx}\" cy=\"{cy}\" r=\"{r}\" fill=\"none\" \
                 stroke=\"#1b4332\" stroke-width=\"2\"/>\n\
                 <text x=\"{tx}\" y=\"{cy}\" font-family=\"sans-serif\" font-size=\"12\" \
                 fill=\"#1b4332\">{label}</text>\n",
                r = cell.max(3),
                tx = cx + cell.max(3) + 3,
            ));
        }
    }

    let caption = match result.argmax {
        Some(p) => format!(
            "max normalized gap {} at ({}, {})",
            fmt_sig(result.max_g_bar, 6),
            fmt_sig(p.x(), 6),
            fmt_sig(p.y(), 6)
        ),
        None => "no positions evaluated".to_string(),
    };
    svg.push_str(&format!(
        "<text x=\"8\" y=\"{y}\" font-family=\"sans-serif\" font-size=\"14\" \
         fill=\"#222222\">{caption}</text>\n</svg>\n",
        y = height - 14
    ));
    svg
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::experiments::{position_sweep, SweepSpec};

    #[test]
    fn significant_digit_formatting_covers_all_branches() {
        assert_eq!(fmt_sig(0.0, 12), "0");
        assert_eq!(fmt_sig(1234.56789, 4), "1235");
        assert_eq!(fmt_sig(0.075, 12), "0.075");
        assert_eq!(fmt_sig(-2.5, 3), "-2.5");
        assert_eq!(fmt_sig(0.000123456, 3), "0.000123");
        assert_eq!(fmt_sig(1.5e-7, 12), "1.5e-7");
        assert_eq!(fmt_sig(3e15, 4), "3e15");
        assert_eq!(fmt_sig(f64::INFINITY, 4), "inf");
    }

    #[test]
    fn formatting_round_trips_at_full_precision() {
        for value in [
            0.07924463236461163,
            1.146746594326908,
            62000.0,
            2.2695512150623084e-05,
            -0.5448883636102015,
        ] {
            let text = fmt_sig(value, 12);
            let parsed: f64 = text.parse().unwrap();
            let scale = value.abs().max(1e-300);
            assert!(
                ((parsed - value) / scale).abs() < 1e-11,
                "{value} -> {text} -> {parsed}"
            );
        }
    }

    fn tiny_sweep() -> crate::experiments::SweepResult {
        let spec = SweepSpec {
            x_range: (0.0, 0.2),
            y_range: (0.2, 0.6),
            step: 0.2,
            ..SweepSpec::default()
        };
        position_sweep(&spec).unwrap()
    }

    #[test]
    fn csv_has_the_documented_columns_and_row_count() {
        let result = tiny_sweep();
        let csv = sweep_to_csv(&result, 12);
        let mut lines = csv.lines();
        assert_eq!(
            lines.next().unwrap(),
            "x1,y1,lambda01,lambda02,lambda12,r_cdf,r_pdf,g,g_bar"
        );
        let rows: Vec<&str> = lines.collect();
        assert_eq!(rows.len(), result.records.len());
        let first: Vec<&str> = rows[0].split(',').collect();
        assert_eq!(first.len(), 9);
        let x: f64 = first[0].parse().unwrap();
        let r_cdf: f64 = first[5].parse().unwrap();
        assert_eq!(x, result.records[0].position.x());
        assert!((r_cdf - result.records[0].report.r_cdf).abs() < 1e-9);
    }

    #[test]
    fn svg_draws_one_cell_per_record_on_the_linear_scale() {
        let result = tiny_sweep();
        let svg = sweep_to_svg(&result);
        assert!(svg.starts_with("<svg"));
        assert!(svg.trim_end().ends_with("</svg>"));
        let cells = svg.matches("<rect").count() - 1; // minus background
        assert_eq!(cells, result.records.len());
        // Extremes of the color ramp: the argmax cell is pure #e63946.
        assert!(svg.contains("#e63946"));
        assert!(svg.contains("max normalized gap"));
    }

    #[test]
    fn color_ramp_endpoints_and_clamping() {
        assert_eq!(heat_color(0.0), "#0d1b2a");
        assert_eq!(heat_color(1.0), "#e63946");
        assert_eq!(heat_color(-0.5), "#0d1b2a");
        assert_eq!(heat_color(2.0), "#e63946");
        assert_eq!(heat_color(f64::NAN), "#0d1b2a");
    }
}
