//! Browser bindings for three small experiments. Each binding wraps a plain
//! Rust function so the numerics can be tested natively.

use cascade_lab::cascade::run_star_cascade;
use cascade_lab::generators::two_three_sequence;
use cascade_lab::harness::{
    run_failure_tail, run_first_disconnect, ExperimentSpec, GraphFamily, Threshold,
};
use cascade_lab::rng::replicate;
use cascade_lab::theory;
use wasm_bindgen::prelude::*;

/// Interleaved `[k, k^1/2 P̂(A* >= k), k^1/2 theory, ...]` for the star.
pub fn star_curve(
    m: usize,
    theta: f64,
    reps: usize,
    seed: u64,
    ks: &[u32],
) -> cascade_lab::Result<Vec<f64>> {
    let sizes: Vec<usize> = replicate(seed, reps, |_, rng| run_star_cascade(m, theta, rng));
    let mut out = Vec::with_capacity(3 * ks.len());
    for &k in ks {
        let k = k as usize;
        let hits = sizes.iter().filter(|&&a| a >= k).count();
        let root = (k as f64).sqrt();
        out.extend([
            k as f64,
            root * hits as f64 / reps as f64,
            root * theory::star_tail(m, k, theta)?,
        ]);
    }
    Ok(out)
}

/// Histogram of `T/sqrt(m)` on the connected model with half degree-2 and
/// half degree-3 vertices. Returns `[x_left, width, density, rayleigh, ...]`
/// per bin.
pub fn disconnect_histogram(
    n: usize,
    reps: usize,
    seed: u64,
    bins: usize,
) -> cascade_lab::Result<Vec<f64>> {
    let seq = two_three_sequence(n)?;
    let spec = ExperimentSpec::new(GraphFamily::ConnectedCm(seq), 1.0, reps, seed)?;
    let samples = run_first_disconnect(&spec)?.values();
    let (p2, d) = (0.5, 2.5);
    let hi = theory::rayleigh_quantile(0.999, p2, d)?;
    let width = hi / bins as f64;
    let mut counts = vec![0usize; bins];
    for x in &samples {
        let b = ((x / width) as usize).min(bins - 1);
        counts[b] += 1;
    }
    let total = samples.len().max(1) as f64;
    let mut out = Vec::with_capacity(4 * bins);
    for (b, c) in counts.iter().enumerate() {
        let left = b as f64 * width;
        out.extend([
            left,
            width,
            *c as f64 / (total * width),
            theory::rayleigh_pdf(left + width / 2.0, p2, d)?,
        ]);
    }
    Ok(out)
}

/// Interleaved `[k, k^1/2 P̂(A >= k), ci_low k^1/2, ci_high k^1/2, ...]` on
/// the connected model.
pub fn cm_curve(
    n: usize,
    theta: f64,
    reps: usize,
    seed: u64,
    ks: &[u32],
) -> cascade_lab::Result<Vec<f64>> {
    let seq = two_three_sequence(n)?;
    let grid = ks.iter().map(|&k| Threshold::Abs(k as usize)).collect();
    let spec =
        ExperimentSpec::new(GraphFamily::ConnectedCm(seq), theta, reps, seed)?.with_k_grid(grid);
    let report = run_failure_tail(&spec)?;
    let mut out = Vec::with_capacity(4 * ks.len());
    for e in report.estimates {
        let root = (e.k as f64).sqrt();
        out.extend([e.k as f64, e.scaled(), e.ci_low * root, e.ci_high * root]);
    }
    Ok(out)
}

fn js<T>(r: cascade_lab::Result<T>) -> Result<T, JsError> {
    r.map_err(|e| JsError::new(&e.to_string()))
}

#[wasm_bindgen(js_name = starCurve)]
pub fn star_curve_js(
    m: usize,
    theta: f64,
    reps: usize,
    seed: u32,
    ks: Vec<u32>,
) -> Result<Vec<f64>, JsError> {
    js(star_curve(m, theta, reps, seed as u64, &ks))
}

#[wasm_bindgen(js_name = disconnectHistogram)]
pub fn disconnect_histogram_js(
    n: usize,
    reps: usize,
    seed: u32,
    bins: usize,
) -> Result<Vec<f64>, JsError> {
    js(disconnect_histogram(n, reps, seed as u64, bins.max(1)))
}

#[wasm_bindgen(js_name = cmCurve)]
pub fn cm_curve_js(
    n: usize,
    theta: f64,
    reps: usize,
    seed: u32,
    ks: Vec<u32>,
) -> Result<Vec<f64>, JsError> {
    js(cm_curve(n, theta, reps, seed as u64, &ks))
}

#[wasm_bindgen(js_name = tailConstant)]
pub fn tail_constant_js(theta: f64) -> f64 {
    theory::tail_constant(theta)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn star_curve_tracks_theory() {
        let v = star_curve(2000, 1.0, 20_000, 3, &[10, 40]).unwrap();
        assert_eq!(v.len(), 6);
        for row in v.chunks(3) {
            assert!((row[1] - row[2]).abs() < 0.05, "{row:?}");
        }
    }

    #[test]
    fn histogram_is_a_density() {
        let v = disconnect_histogram(400, 400, 5, 12).unwrap();
        assert_eq!(v.len(), 48);
        let mass: f64 = v.chunks(4).map(|b| b[1] * b[2]).sum();
        assert!((mass - 1.0).abs() < 1e-9);
        let rayleigh: f64 = v.chunks(4).map(|b| b[1] * b[3]).sum();
        assert!((rayleigh - 1.0).abs() < 0.02, "{rayleigh}");
    }

    #[test]
    fn cm_curve_shape() {
        let v = cm_curve(400, 1.0, 300, 9, &[5, 20]).unwrap();
        assert_eq!(v.len(), 8);
        assert_eq!(v[0], 5.0);
        assert!(v[2] <= v[1] && v[1] <= v[3]);
        assert!(cm_curve(401, 1.0, 10, 1, &[5]).is_err());
    }
}
