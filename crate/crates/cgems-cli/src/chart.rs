//! A small, dependency-free SVG bar chart for signed feature weights.

use std::fmt::Write;

const LABEL_WIDTH: f64 = 260.0;
const PLOT_WIDTH: f64 = 400.0;
const VALUE_WIDTH: f64 = 90.0;
const BAR_HEIGHT: f64 = 20.0;
const BAR_GAP: f64 = 8.0;
const TOP: f64 = 48.0;
const BOTTOM: f64 = 16.0;
const NEGATIVE_FILL: &str = "#c0504d";
const POSITIVE_FILL: &str = "#4f81bd";

/// Render a horizontal diverging bar chart: one bar per `(label, value)`
/// pair, positive values to the right of a central zero axis, negative
/// values to the left. The output is deterministic for a given input.
pub fn bar_chart(title: &str, items: &[(String, f64)]) -> String {
    let rows = items.len();
    let width = LABEL_WIDTH + PLOT_WIDTH + VALUE_WIDTH;
    let height = TOP + rows as f64 * (BAR_HEIGHT + BAR_GAP) + BOTTOM;
    let max_abs = items
        .iter()
        .map(|(_, value)| value.abs())
        .fold(0.0_f64, f64::max)
        .max(1e-12);
    let scale = (PLOT_WIDTH / 2.0) / max_abs;
    let zero_x = LABEL_WIDTH + PLOT_WIDTH / 2.0;

    let mut svg = String::new();
    let _ = writeln!(
        svg,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{width:.0}\" height=\"{height:.0}\" \
         viewBox=\"0 0 {width:.0} {height:.0}\" font-family=\"monospace\" font-size=\"12\">"
    );
    let _ = writeln!(svg, "  <rect width=\"{width:.0}\" height=\"{height:.0}\" fill=\"white\"/>");
    let _ = writeln!(
        svg,
        "  <text x=\"16\" y=\"24\" font-size=\"14\" font-weight=\"bold\">{}</text>",
        escape(title)
    );
    let _ = writeln!(
        svg,
        "  <line x1=\"{zero_x:.1}\" y1=\"{:.1}\" x2=\"{zero_x:.1}\" y2=\"{:.1}\" \
         stroke=\"#888888\" stroke-width=\"1\"/>",
        TOP - 6.0,
        height - BOTTOM + 2.0
    );
    for (row, (label, value)) in items.iter().enumerate() {
        let y = TOP + row as f64 * (BAR_HEIGHT + BAR_GAP);
        let bar_width = value.abs() * scale;
        let (x, fill) = if *value < 0.0 {
            (zero_x - bar_width, NEGATIVE_FILL)
        } else {
            (zero_x, POSITIVE_FILL)
        };
        let _ = writeln!(
            svg,
            "  <rect x=\"{x:.2}\" y=\"{y:.1}\" width=\"{bar_width:.2}\" \
             height=\"{BAR_HEIGHT:.0}\" fill=\"{fill}\"/>"
        );
        let label_y = y + BAR_HEIGHT - 5.0;
        let _ = writeln!(
            svg,
            "  <text x=\"{:.1}\" y=\"{label_y:.1}\" text-anchor=\"end\">{}</text>",
            LABEL_WIDTH - 8.0,
            escape(label)
        );
        let (value_x, anchor) = if *value < 0.0 {
            (zero_x - bar_width - 4.0, "end")
        } else {
            (zero_x + bar_width + 4.0, "start")
        };
        let _ = writeln!(
            svg,
            "  <text x=\"{value_x:.2}\" y=\"{label_y:.1}\" text-anchor=\"{anchor}\">{value:+.4}</text>"
        );
    }
    svg.push_str("</svg>\n");
    svg
}

fn escape(text: &str) -> String {
    let mut out = String::with_capacity(text.len());
    for ch in text.chars() {
        match ch {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '"' => out.push_str("&quot;"),
            _ => out.push(ch),
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn renders_one_bar_per_item() {
        let items = vec![
            ("alpha".to_string(), 1.5),
            ("beta".to_string(), -0.75),
            ("gamma".to_string(), 0.0),
        ];
        let svg = bar_chart("weights", &items);
        assert!(svg.starts_with("<svg "));
        assert!(svg.trim_end().ends_with("</svg>"));
        // One background rect plus one bar per item.
        assert_eq!(svg.matches("<rect ").count(), 1 + items.len());
        assert!(svg.contains("alpha"));
        assert!(svg.contains("+1.5000"));
        assert!(svg.contains("-0.7500"));
    }

    #[test]
    fn escapes_markup_in_labels() {
        let items = vec![("a<b & \"c\"".to_string(), 1.0)];
        let svg = bar_chart("t", &items);
        assert!(svg.contains("a&lt;b &amp; &quot;c&quot;"));
        assert!(!svg.contains("a<b"));
    }

    #[test]
    fn deterministic_output() {
        let items = vec![("x".to_string(), 0.3), ("y".to_string(), -2.0)];
        assert_eq!(bar_chart("t", &items), bar_chart("t", &items));
    }
}
