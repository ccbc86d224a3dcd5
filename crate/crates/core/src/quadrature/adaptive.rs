//! Globally adaptive 21-point Gauss–Kronrod integration over a set of
//! panels, each optionally carried by a change of variables that maps a
//! finite parameter interval onto a half-line tail.

use super::QuadratureError;
use crate::specfun::Complex;
use std::cmp::Ordering;
use std::collections::BinaryHeap;

#[allow(clippy::excessive_precision)]
const XGK: [f64; 11] = [
    0.995_657_163_025_808_080_735_527_280_689_003,
    0.973_906_528_517_171_720_077_964_012_084_452,
    0.930_157_491_355_708_226_001_207_180_059_508,
    0.865_063_366_688_984_510_732_096_688_423_493,
    0.780_817_726_586_416_897_063_717_578_345_042,
    0.679_409_568_299_024_406_234_327_365_114_874,
    0.562_757_134_668_604_683_339_000_099_272_694,
    0.433_395_394_129_247_190_799_265_943_165_784,
    0.294_392_862_701_460_198_131_126_603_103_866,
    0.148_874_338_981_631_210_884_826_001_129_720,
    0.0,
];

#[allow(clippy::excessive_precision)]
const WG: [f64; 5] = [
    0.066_671_344_308_688_137_593_568_809_893_332,
    0.149_451_349_150_580_593_145_776_339_657_697,
    0.219_086_362_515_982_043_995_534_934_228_163,
    0.269_266_719_309_996_355_091_226_921_569_469,
    0.295_524_224_714_752_870_173_892_994_651_338,
];

#[allow(clippy::excessive_precision)]
const WGK: [f64; 11] = [
    0.011_694_638_867_371_874_278_064_396_062_192,
    0.032_558_162_307_964_727_478_818_972_459_390,
    0.054_755_896_574_351_996_031_381_300_244_580,
    0.075_039_674_810_919_952_767_043_140_916_190,
    0.093_125_454_583_697_605_535_065_465_083_366,
    0.109_387_158_802_297_641_899_210_590_325_805,
    0.123_491_976_262_065_851_077_958_109_831_074,
    0.134_709_217_311_473_325_928_054_001_771_707,
    0.142_775_938_577_060_080_797_094_273_138_717,
    0.147_739_104_901_338_491_374_841_515_972_068,
    0.149_445_554_002_916_905_664_936_468_389_821,
];

pub(crate) const EVALS_PER_PANEL: usize = 21;

/// Change of variables from the panel parameter `u` to the abscissa `x`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) enum Map {
    Identity,
    /// `x = start + u/(1-u)`, `u ∈ [0, 1)`.
    ExpTail {
        start: f64,
    },
    /// `x = start/(1-u)^2`, `u ∈ [0, 1)`; turns an `x^{-3/2}` tail into a
    /// bounded integrand.
    PowerTail {
        start: f64,
    },
}

impl Map {
    fn apply(self, u: f64) -> (f64, f64) {
        match self {
            Map::Identity => (u, 1.0),
            Map::ExpTail { start } => {
                let w = 1.0 - u;
                (start + u / w, 1.0 / (w * w))
            }
            Map::PowerTail { start } => {
                let w = 1.0 - u;
                (start / (w * w), 2.0 * start / (w * w * w))
            }
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub(crate) struct PanelSpec {
    pub a: f64,
    pub b: f64,
    pub map: Map,
}

#[derive(Debug, Clone, Copy)]
struct Panel {
    spec: PanelSpec,
    value: Complex,
    error: f64,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}
impl Eq for Panel {}
impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Panel {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error
            .total_cmp(&other.error)
            .then_with(|| other.spec.a.total_cmp(&self.spec.a))
    }
}

#[derive(Debug, Clone, Copy)]
pub(crate) struct Outcome {
    pub value: Complex,
    pub error: f64,
    pub evaluations: usize,
    pub converged: bool,
}

fn gauss_kronrod<F>(f: &F, spec: PanelSpec) -> Result<(Complex, f64), QuadratureError>
where
    F: Fn(f64) -> Complex + ?Sized,
{
    let center = 0.5 * (spec.a + spec.b);
    let half = 0.5 * (spec.b - spec.a);
    let eval = |u: f64| -> Result<Complex, QuadratureError> {
        let (x, jac) = spec.map.apply(u);
        let fx = f(x);
        if !(fx.re.is_finite() && fx.im.is_finite()) {
            return Err(QuadratureError::NonFinite { x });
        }
        let v = fx * jac;
        if !(v.re.is_finite() && v.im.is_finite()) {
            return Err(QuadratureError::NonFinite { x });
        }
        Ok(v)
    };

    let mut fvals = [Complex::new(0.0, 0.0); 21];
    fvals[20] = eval(center)?;
    for j in 0..10 {
        let dx = half * XGK[j];
        fvals[2 * j] = eval(center - dx)?;
        fvals[2 * j + 1] = eval(center + dx)?;
    }

    let fc = fvals[20];
    let mut kronrod = fc * WGK[10];
    let mut gauss = Complex::new(0.0, 0.0);
    let mut abs_sum = fc.norm() * WGK[10];
    for j in 0..10 {
        let pair = fvals[2 * j] + fvals[2 * j + 1];
        kronrod += pair * WGK[j];
        abs_sum += (fvals[2 * j].norm() + fvals[2 * j + 1].norm()) * WGK[j];
        if j % 2 == 1 {
            gauss += pair * WG[j / 2];
        }
    }
    let mean = kronrod * 0.5;
    let mut asc = (fc - mean).norm() * WGK[10];
    for j in 0..10 {
        asc += ((fvals[2 * j] - mean).norm() + (fvals[2 * j + 1] - mean).norm()) * WGK[j];
    }

    let scale = half.abs();
    let result = kronrod * half;
    let res_abs = abs_sum * scale;
    let res_asc = asc * scale;
    let mut err = ((kronrod - gauss) * half).norm();
    if res_asc != 0.0 && err != 0.0 {
        err = res_asc * (200.0 * err / res_asc).powf(1.5).min(1.0);
    }
    if res_abs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        err = err.max(50.0 * f64::EPSILON * res_abs);
    }
    Ok((result, err))
}

/// Integrates `f` over the union of `panels`, bisecting the panel with the
/// largest error estimate until the total estimate satisfies the tolerance
/// or the evaluation budget is spent.
pub(crate) fn integrate_panels<F>(
    f: &F,
    panels: &[PanelSpec],
    abs_tol: f64,
    rel_tol: f64,
    max_evaluations: usize,
) -> Result<Outcome, QuadratureError>
where
    F: Fn(f64) -> Complex + ?Sized,
{
    let mut heap = BinaryHeap::with_capacity(panels.len() * 2);
    let mut frozen: Vec<Panel> = Vec::new();
    let mut evaluations = 0;
    let mut total = Complex::new(0.0, 0.0);
    let mut total_err = 0.0;

    for &spec in panels {
        let (value, error) = gauss_kronrod(f, spec)?;
        evaluations += EVALS_PER_PANEL;
        total += value;
        total_err += error;
        heap.push(Panel { spec, value, error });
    }

    let target = |v: Complex| abs_tol.max(rel_tol * v.norm());
    while total_err > target(total) {
        if evaluations + 2 * EVALS_PER_PANEL > max_evaluations {
            break;
        }
        let Some(worst) = heap.pop() else { break };
        let PanelSpec { a, b, map } = worst.spec;
        let mid = 0.5 * (a + b);
        if !(mid > a && mid < b) || (b - a) < 4.0 * f64::EPSILON * a.abs().max(b.abs()) {
            frozen.push(worst);
            continue;
        }
        let left = PanelSpec { a, b: mid, map };
        let right = PanelSpec { a: mid, b, map };
        let (lv, le) = gauss_kronrod(f, left)?;
        let (rv, re) = gauss_kronrod(f, right)?;
        evaluations += 2 * EVALS_PER_PANEL;
        total += lv + rv - worst.value;
        total_err += le + re - worst.error;
        heap.push(Panel {
            spec: left,
            value: lv,
            error: le,
        });
        heap.push(Panel {
            spec: right,
            value: rv,
            error: re,
        });
    }

    // Final sums in a fixed order so the result does not depend on heap
    // history.
    let mut all: Vec<Panel> = heap.into_vec();
    all.extend(frozen);
    all.sort_by(|p, q| {
        map_rank(p.spec.map)
            .cmp(&map_rank(q.spec.map))
            .then(p.spec.a.total_cmp(&q.spec.a))
    });
    let value = all
        .iter()
        .fold(Complex::new(0.0, 0.0), |acc, p| acc + p.value);
    let error = all.iter().map(|p| p.error).sum::<f64>();
    Ok(Outcome {
        value,
        error,
        evaluations,
        converged: error <= target(value),
    })
}

fn map_rank(map: Map) -> u8 {
    match map {
        Map::Identity => 0,
        Map::ExpTail { .. } => 1,
        Map::PowerTail { .. } => 2,
    }
}
