//! Minimal SVG charts: mean `U/m` against `delta`, and the flip-change histogram.

use std::fmt::Write;

use locuniq_core::Summary;

const W: f64 = 480.0;
const H: f64 = 320.0;
const PAD: f64 = 48.0;
const PALETTE: [&str; 6] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf"];

fn header(out: &mut String, title: &str) {
    let _ = write!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{W}" height="{H}" viewBox="0 0 {W} {H}" font-family="sans-serif" font-size="11">"#
    );
    let _ = write!(out, r#"<rect width="{W}" height="{H}" fill="white"/>"#);
    let _ = write!(out, r#"<text x="{}" y="18" text-anchor="middle" font-size="13">{}</text>"#, W / 2.0, escape(title));
    let (x0, y0, x1) = (PAD, H - PAD, W - PAD / 2.0);
    let _ = write!(out, r#"<line x1="{x0}" y1="{y0}" x2="{x1}" y2="{y0}" stroke="black"/>"#);
    let _ = write!(out, r#"<line x1="{x0}" y1="{y0}" x2="{x0}" y2="{}" stroke="black"/>"#, PAD / 2.0);
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

fn sx(v: f64, lo: f64, hi: f64) -> f64 {
    let span = if hi > lo { hi - lo } else { 1.0 };
    PAD + (v - lo) / span * (W - 1.5 * PAD)
}

fn sy(v: f64, lo: f64, hi: f64) -> f64 {
    let span = if hi > lo { hi - lo } else { 1.0 };
    H - PAD - (v - lo) / span * (H - 1.5 * PAD)
}

/// Mean `U/m` as a function of `delta`, one polyline per `(n, epsilon)`.
pub fn u_fraction_plot(summaries: &[Summary]) -> String {
    let mut out = String::new();
    header(&mut out, "mean U/m vs delta");
    let (dlo, dhi) =
        summaries.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), s| (a.min(s.delta), b.max(s.delta)));
    let (dlo, dhi) = if dlo.is_finite() { (dlo, dhi) } else { (0.0, 1.0) };
    let umax = summaries.iter().map(|s| s.mean_u_fraction).fold(0.0, f64::max).max(1e-9);

    let mut keys: Vec<(usize, u64)> = summaries.iter().map(|s| (s.n, s.epsilon.to_bits())).collect();
    keys.sort_unstable();
    keys.dedup();
    for (k, &(n, eb)) in keys.iter().enumerate() {
        let mut pts: Vec<&Summary> = summaries.iter().filter(|s| s.n == n && s.epsilon.to_bits() == eb).collect();
        pts.sort_by(|a, b| a.delta.total_cmp(&b.delta));
        let colour = PALETTE[k % PALETTE.len()];
        let path: Vec<String> = pts
            .iter()
            .map(|s| format!("{:.2},{:.2}", sx(s.delta, dlo, dhi), sy(s.mean_u_fraction, 0.0, umax)))
            .collect();
        let _ =
            write!(out, r#"<polyline fill="none" stroke="{colour}" stroke-width="1.5" points="{}"/>"#, path.join(" "));
        for p in &path {
            let (x, y) = p.split_once(',').unwrap_or(("0", "0"));
            let _ = write!(out, r#"<circle cx="{x}" cy="{y}" r="2.5" fill="{colour}"/>"#);
        }
        let _ = write!(
            out,
            r#"<text x="{}" y="{}" fill="{colour}">n={n} eps={}</text>"#,
            W - 130.0,
            34.0 + 14.0 * k as f64,
            f64::from_bits(eb)
        );
    }
    for (v, anchor) in [(dlo, "start"), (dhi, "end")] {
        let _ =
            write!(out, r#"<text x="{:.2}" y="{}" text-anchor="{anchor}">{v}</text>"#, sx(v, dlo, dhi), H - PAD + 14.0);
    }
    let _ = write!(out, r#"<text x="{}" y="{}" text-anchor="middle">delta</text>"#, W / 2.0, H - 12.0);
    let _ =
        write!(out, r#"<text x="{}" y="{}" text-anchor="end">{umax:.3}</text>"#, PAD - 4.0, sy(umax, 0.0, umax) + 4.0);
    let _ = write!(out, r#"<text x="{}" y="{}" text-anchor="end">0</text>"#, PAD - 4.0, H - PAD);
    out.push_str("</svg>\n");
    out
}

/// Bar chart of the counts of flip changes -1, 0, +1.
pub fn delta_histogram(summary: &Summary) -> String {
    let mut out = String::new();
    header(&mut out, &format!("flip change, n={} delta={}", summary.n, summary.delta));
    let counts = summary.delta_histogram;
    let top = counts.iter().copied().max().unwrap_or(0).max(1) as f64;
    let slot = (W - 1.5 * PAD) / 3.0;
    for (k, (&c, label)) in counts.iter().zip(["-1", "0", "+1"]).enumerate() {
        let x = PAD + slot * k as f64 + slot * 0.15;
        let y = sy(c as f64, 0.0, top);
        let _ = write!(
            out,
            r#"<rect x="{x:.2}" y="{y:.2}" width="{:.2}" height="{:.2}" fill="{}"/>"#,
            slot * 0.7,
            H - PAD - y,
            PALETTE[0]
        );
        let cx = x + slot * 0.35;
        let _ = write!(out, r#"<text x="{cx:.2}" y="{}" text-anchor="middle">{label}</text>"#, H - PAD + 14.0);
        let _ = write!(out, r#"<text x="{cx:.2}" y="{:.2}" text-anchor="middle">{c}</text>"#, y - 4.0);
    }
    out.push_str("</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use locuniq_core::{run_experiment, ExperimentConfig};

    #[test]
    fn plot_is_well_formed() {
        let s: Vec<_> =
            [0.1, 0.3].iter().map(|&d| run_experiment(&ExperimentConfig::new(30, d, 0.2, 10, 3)).unwrap()).collect();
        let svg = u_fraction_plot(&s);
        assert!(svg.starts_with("<svg") && svg.trim_end().ends_with("</svg>"));
        assert_eq!(svg.matches("<polyline").count(), 1);
        assert_eq!(svg.matches("<circle").count(), 2);
    }

    #[test]
    fn histogram_has_three_bars() {
        let s = run_experiment(&ExperimentConfig::new(30, 0.1, 0.2, 20, 3)).unwrap();
        let svg = delta_histogram(&s);
        assert_eq!(svg.matches("<rect").count(), 4);
    }

    #[test]
    fn empty_plot_does_not_panic() {
        assert!(u_fraction_plot(&[]).contains("</svg>"));
    }
}
