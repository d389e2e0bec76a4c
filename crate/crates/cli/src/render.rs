//! Output builders shared by the subcommands: exact-string JSON values,
//! CSV rows, and the profile SVG.

use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde_json::{json, Value};

use skew_howe::measure::ProbMeasure;
use skew_howe::shape::{Profile, ProfileStats};
use skew_howe::Partition;

/// A rational as `{"exact": "5/14", "float": 0.357...}`. The exact string is
/// authoritative; the float is a convenience companion.
pub(crate) fn ratio_value(r: &BigRational) -> Value {
    json!({ "exact": r.to_string(), "float": r.to_f64() })
}

pub(crate) fn partition_value(p: &Partition) -> Value {
    serde_json::to_value(p).expect("partitions serialize as integer arrays")
}

/// CSV field for a partition: space-separated parts, empty for the empty
/// partition. Contains no commas or quotes, so it needs no escaping.
pub(crate) fn partition_field(p: &Partition) -> String {
    p.parts()
        .iter()
        .map(|part| part.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

/// One-line rendering of a whole measure, used when a report must show both
/// exact sides of an identity.
pub(crate) fn measure_string(measure: &ProbMeasure) -> String {
    let atoms: Vec<String> = measure
        .atoms()
        .iter()
        .map(|(lambda, weight)| format!("{lambda}:{weight}"))
        .collect();
    format!("{{{}}}", atoms.join(", "))
}

pub(crate) fn finish_json(value: &Value) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("reports are valid JSON");
    text.push('\n');
    text
}

const SVG_MARGIN: f64 = 30.0;
const SVG_PLOT: f64 = 400.0;

fn svg_x(x: f64) -> f64 {
    SVG_MARGIN + SVG_PLOT * x
}

fn svg_y(y: f64) -> f64 {
    SVG_MARGIN + SVG_PLOT * (1.0 - y)
}

/// Staircase path through the unit square for column heights given as
/// fractions of the rectangle height; constant on each ((j-1)/n, j/n].
fn staircase_path(heights: &[f64]) -> String {
    let n = heights.len();
    let mut d = format!("M {:.2} {:.2}", svg_x(0.0), svg_y(heights[0]));
    for j in 0..n {
        d.push_str(&format!(" H {:.2}", svg_x((j + 1) as f64 / n as f64)));
        if j + 1 < n {
            d.push_str(&format!(" V {:.2}", svg_y(heights[j + 1])));
        }
    }
    d
}

/// SVG overlay: up to the first 20 sampled profiles in light blue, the mean
/// staircase in red, axes as a box. The seed travels in a comment so every
/// picture names the stream that produced it.
pub(crate) fn shape_svg(
    stats: &ProfileStats,
    overlays: &[Profile],
    seed: u64,
    sampler: &str,
) -> String {
    let (m, n, p) = stats.context();
    let side = SVG_PLOT + 2.0 * SVG_MARGIN;
    let mut svg = String::new();
    svg.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    svg.push_str(&format!(
        "<!-- m={m} n={n} p={p} samples={} sampler={sampler} seed={seed} -->\n",
        stats.count()
    ));
    svg.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 {side} {side}\" width=\"{side}\" height=\"{side}\">\n"
    ));
    svg.push_str(&format!(
        "  <rect x=\"{m0}\" y=\"{m0}\" width=\"{p0}\" height=\"{p0}\" fill=\"white\" stroke=\"#333333\"/>\n",
        m0 = SVG_MARGIN,
        p0 = SVG_PLOT
    ));
    for profile in overlays {
        let heights: Vec<f64> = (0..profile.len()).map(|j| profile.height(j)).collect();
        svg.push_str(&format!(
            "  <path d=\"{}\" fill=\"none\" stroke=\"#9ecae1\" stroke-width=\"1\"/>\n",
            staircase_path(&heights)
        ));
    }
    let means: Vec<f64> = (0..stats.len()).map(|j| stats.mean(j)).collect();
    svg.push_str(&format!(
        "  <path d=\"{}\" fill=\"none\" stroke=\"#d62728\" stroke-width=\"2\"/>\n",
        staircase_path(&means)
    ));
    svg.push_str("</svg>\n");
    svg
}
